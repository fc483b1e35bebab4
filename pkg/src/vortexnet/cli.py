"""Command-line pipelines: gen, eig, cluster, bench, render.

Every command is deterministic given its full argument list (wall-clock
timings in metadata sidecars excepted). Vector/label outputs are CSV
with a header row, LF line endings, and floats at 17 significant digits;
eigensolver runs also write a JSON metadata sidecar (<out>.meta.json).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .analysis import kmeans_points, sign_partition
from .bench import (
    RANDOMIZED_METHODS,
    SAMPLERS,
    run_sweep,
    sample_count,
    summarize,
    write_records_csv,
    write_summary_csv,
)
from .eigensolvers import EigenApproximation, nystrom, power_dominant, sketch_svd
from .errors import MemoryCapError, VortexNetError
from .field import GridSpec, load_field, save_field, synth_vortex_field, synth_wake_field
from .graph import DEFAULT_DENSE_CAP, AdjacencyOperator
from .render import render_labels, render_values
from .sampling import sample_halton, sample_uniform


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"fraction must lie in (0, 1], got {text}")
    return value


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    grid = GridSpec(args.nx, args.ny, args.dx, args.dy)
    if args.kind == "random":
        field = synth_vortex_field(
            grid, args.vortices, args.seed,
            strength_range=(args.strength_min, args.strength_max),
            core_range=((args.core_min, args.core_max)
                        if args.core_min is not None else None),
        )
    else:
        field = synth_wake_field(grid, pairs=args.pairs)
    save_field(field, args.out, format=args.format)
    print(f"{args.out} sha256={_sha256(args.out)}")
    return 0


# ---------------------------------------------------------------------------
# eig
# ---------------------------------------------------------------------------

def _write_vectors_csv(approx: EigenApproximation, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node"] + [f"ev{i + 1}" for i in range(approx.k)])
        for node in range(approx.n):
            writer.writerow([node] + [_fmt(v) for v in approx.vectors[node]])


def read_vectors_csv(path) -> np.ndarray:
    """(n, k) eigenvector table written by the eig command."""
    with open(path, "r", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        k = len(header) - 1
        rows = [[float(cell) for cell in row[1:]] for row in reader]
    arr = np.asarray(rows, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != k:
        raise VortexNetError(f"{path}: malformed eigenvector table")
    return arr


def _write_meta(approx: EigenApproximation, grid: GridSpec, args_extra: dict, path) -> None:
    info = {key: value for key, value in approx.info.items()
            if not isinstance(value, np.ndarray)}
    meta = {
        "method": approx.method,
        "n": approx.n,
        "k": approx.k,
        "grid": {"nx": grid.nx, "ny": grid.ny, "dx": grid.dx, "dy": grid.dy},
        "eigenvalues": [float(v) for v in approx.values],
        "sampler": approx.sample.sampler if approx.sample else None,
        "l": approx.sample.l if approx.sample else None,
        "info": info,
        "timings_s": {
            "sketch": approx.times.sketch_s,
            "decompose": approx.times.decompose_s,
            "reconstruct": approx.times.reconstruct_s,
            "total": approx.times.total_s,
        },
        **args_extra,
    }
    with open(path, "w", newline="\n") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _try_materialize(op: AdjacencyOperator, cap: int) -> None:
    try:
        op.materialize(cap)
    except MemoryCapError:
        pass  # matrix-free fallback


def cmd_eig(args) -> int:
    field = load_field(args.field, format=args.field_format)
    op = AdjacencyOperator(field)
    n = field.n
    extra = {"seed": args.seed, "fraction": None}
    if args.method == "power":
        _try_materialize(op, args.cap)
        approx = power_dominant(op, k=args.k, tol=args.tol,
                                max_iters=args.max_iters, seed=args.seed)
    else:
        l = sample_count(args.fraction, n, args.k)
        extra["fraction"] = args.fraction
        if args.sampler == "uniform":
            sample = sample_uniform(n, l, args.seed)
        else:
            sample = sample_halton(field.grid, l, seed_offset=args.seed * l)
        if args.method == "sketch":
            approx = sketch_svd(op, sample, args.k, gram=args.gram)
        else:
            approx = nystrom(op, sample, args.k, pinv_rtol=args.pinv_rtol)
    out_csv = args.out + ".csv"
    out_meta = args.out + ".meta.json"
    _write_vectors_csv(approx, out_csv)
    _write_meta(approx, field.grid, extra, out_meta)
    values = " ".join(_fmt(v) for v in approx.values)
    print(f"{out_csv} {out_meta} eigenvalues=[{values}]")
    return 0


# ---------------------------------------------------------------------------
# cluster
# ---------------------------------------------------------------------------

def cmd_cluster(args) -> int:
    vectors = read_vectors_csv(args.vectors)
    n, available = vectors.shape
    if args.mode == "kmeans":
        use_k = args.use_k
        if use_k > available:
            raise VortexNetError(
                f"--use-k {use_k} exceeds the {available} stored eigenvectors"
            )
        scores = vectors[:, :use_k]
        assignment = kmeans_points(scores, args.clusters, seed=args.seed,
                                   max_iters=args.max_iters, tol=args.tol)
    else:
        if args.depth > available:
            raise VortexNetError(
                f"--depth {args.depth} exceeds the {available} stored eigenvectors"
            )
        scores = vectors[:, :args.depth]
        approx = EigenApproximation(vectors, np.zeros(available), "power")
        assignment = sign_partition(approx, args.depth)
    labels_path = args.out + ".labels.csv"
    scores_path = args.out + ".scores.csv"
    with open(labels_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node", "label"])
        for node, label in enumerate(assignment.labels):
            writer.writerow([node, int(label)])
    with open(scores_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node"] + [f"score{i + 1}" for i in range(scores.shape[1])])
        for node in range(n):
            writer.writerow([node] + [_fmt(v) for v in scores[node]])
    print(f"{labels_path} {scores_path} clusters={assignment.c} "
          f"inertia={_fmt(assignment.inertia)}")
    return 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def cmd_bench(args) -> int:
    field = load_field(args.field, format=args.field_format)
    records = run_sweep(
        field, k=args.k, fractions=args.fractions, samplers=args.samplers,
        methods=args.methods, trials=args.trials, base_seed=args.base_seed,
        field_id=args.field, materialize_cap=args.cap,
    )
    records_path = args.out + ".records.csv"
    summary_path = args.out + ".summary.csv"
    write_records_csv(records, records_path)
    write_summary_csv(summarize(records), summary_path)
    print(f"{records_path} rows={len(records)}")
    print(summary_path)
    return 0


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------

def _render_grid(args, n: int) -> GridSpec:
    if args.nx is not None and args.ny is not None:
        grid = GridSpec(args.nx, args.ny)
    elif args.meta is not None:
        with open(args.meta) as fh:
            g = json.load(fh)["grid"]
        grid = GridSpec(g["nx"], g["ny"], g["dx"], g["dy"])
    else:
        raise VortexNetError("need --nx/--ny or --meta to shape this source")
    if grid.n != n:
        raise VortexNetError(f"grid {grid.nx}x{grid.ny} does not hold {n} values")
    return grid


def cmd_render(args) -> int:
    if args.source == "field":
        field = load_field(args.input, format=args.field_format)
        render_values(field.omega, field.grid, args.out, args.normalization)
    elif args.source in ("eigenvector", "centrality"):
        vectors = read_vectors_csv(args.input)
        if args.column >= vectors.shape[1]:
            raise VortexNetError(
                f"--column {args.column} exceeds the {vectors.shape[1]} stored columns"
            )
        values = vectors[:, args.column]
        if args.source == "centrality":
            values = np.abs(values)
        grid = _render_grid(args, values.size)
        render_values(values, grid, args.out, args.normalization)
    else:  # labels
        with open(args.input, "r", newline="") as fh:
            reader = csv.reader(fh)
            next(reader)
            labels = np.array([int(row[1]) for row in reader], dtype=np.int64)
        grid = _render_grid(args, labels.size)
        render_labels(labels, grid, args.out)
    print(args.out)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vortexnet",
        description="Randomized eigendecomposition of vortical interaction networks.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="synthesize a vorticity field file")
    p.add_argument("--nx", type=_positive_int, required=True)
    p.add_argument("--ny", type=_positive_int, required=True)
    p.add_argument("--dx", type=float, default=1.0)
    p.add_argument("--dy", type=float, default=1.0)
    p.add_argument("--kind", choices=("random", "wake"), default="random")
    p.add_argument("--vortices", type=_positive_int, default=50,
                   help="vortex count for --kind random")
    p.add_argument("--pairs", type=_positive_int, default=3,
                   help="vortex pairs for --kind wake")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strength-min", type=float, default=-1.0)
    p.add_argument("--strength-max", type=float, default=1.0)
    p.add_argument("--core-min", type=float, default=None)
    p.add_argument("--core-max", type=float, default=None)
    p.add_argument("--format", choices=("binary", "text"), default="binary")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("eig", help="compute dominant eigenpairs of a field's network")
    p.add_argument("--field", required=True)
    p.add_argument("--field-format", choices=("binary", "text"), default="binary")
    p.add_argument("--method", choices=("power", "sketch", "nystrom"), required=True)
    p.add_argument("--sampler", choices=SAMPLERS, default="uniform")
    p.add_argument("--fraction", type=_fraction, default=0.1)
    p.add_argument("--k", type=_positive_int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gram", action="store_true",
                   help="factor C^T C instead of C (sketch only)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=_positive_int, default=10_000)
    p.add_argument("--pinv-rtol", type=float, default=1e-12)
    p.add_argument("--cap", type=int, default=DEFAULT_DENSE_CAP,
                   help="dense materialization cap in bytes (power only)")
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("cluster", help="cluster nodes in eigenvector coordinates")
    p.add_argument("--vectors", required=True, help="eigenvector CSV from eig")
    p.add_argument("--mode", choices=("kmeans", "sign"), default="kmeans")
    p.add_argument("--use-k", type=_positive_int, default=3)
    p.add_argument("--clusters", type=_positive_int, default=7)
    p.add_argument("--depth", type=_positive_int, default=1,
                   help="sign-code depth for --mode sign")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=_positive_int, default=300)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("bench", help="sweep error/time across samplers and fractions")
    p.add_argument("--field", required=True)
    p.add_argument("--field-format", choices=("binary", "text"), default="binary")
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--fractions", type=_fraction, nargs="+",
                   default=[0.01, 0.02, 0.05, 0.10, 0.20])
    p.add_argument("--samplers", choices=SAMPLERS, nargs="+", default=list(SAMPLERS))
    p.add_argument("--methods", choices=RANDOMIZED_METHODS, nargs="+",
                   default=list(RANDOMIZED_METHODS))
    p.add_argument("--trials", type=_positive_int, default=20)
    p.add_argument("--base-seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_DENSE_CAP)
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="render a field/eigenvector/labels map to PGM")
    p.add_argument("--source", choices=("field", "eigenvector", "centrality", "labels"),
                   required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--field-format", choices=("binary", "text"), default="binary")
    p.add_argument("--column", type=int, default=0,
                   help="eigenvector column index (0-based)")
    p.add_argument("--normalization", choices=("minmax", "symmetric"),
                   default="symmetric")
    p.add_argument("--nx", type=_positive_int, default=None)
    p.add_argument("--ny", type=_positive_int, default=None)
    p.add_argument("--meta", default=None, help="metadata sidecar naming the grid")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (VortexNetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

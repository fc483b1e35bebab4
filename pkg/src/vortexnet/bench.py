"""Error/time sweeps over (method, sampler, fraction, trial) grids.

Records are emitted one per trial with no pre-aggregation; summarize()
computes medians and quartiles downstream. Reruns with identical
arguments reproduce identical records except for the wall-time fields.

CSV column order (records):
    field_id,n,method,sampler,fraction,seed,l,angle_error_deg,
    wall_time_s,sketch_time_s,decompose_time_s,reconstruct_time_s
CSV column order (summary):
    method,sampler,fraction,trials,
    angle_median_deg,angle_p25_deg,angle_p75_deg,angle_mean_deg,
    time_median_s,time_p25_s,time_p75_s,time_mean_s
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import angle_error
from .eigensolvers import EigenApproximation, nystrom, power_dominant, sketch_svd
from .errors import MemoryCapError
from .field import VorticityField
from .graph import DEFAULT_DENSE_CAP, AdjacencyOperator
from .sampling import SampleIndexSet, sample_halton, sample_uniform

#: Environment variable naming the worker-pool size for sweep trials.
WORKERS_ENV = "VORTEXNET_WORKERS"

RANDOMIZED_METHODS = ("sketch_svd", "nystrom")
SAMPLERS = ("uniform", "halton")

RECORD_COLUMNS = (
    "field_id", "n", "method", "sampler", "fraction", "seed", "l",
    "angle_error_deg", "wall_time_s", "sketch_time_s", "decompose_time_s",
    "reconstruct_time_s",
)
SUMMARY_COLUMNS = (
    "method", "sampler", "fraction", "trials",
    "angle_median_deg", "angle_p25_deg", "angle_p75_deg", "angle_mean_deg",
    "time_median_s", "time_p25_s", "time_p75_s", "time_mean_s",
)

TIMING_COLUMNS = frozenset(
    {"wall_time_s", "sketch_time_s", "decompose_time_s", "reconstruct_time_s",
     "time_median_s", "time_p25_s", "time_p75_s", "time_mean_s"}
)


@dataclass(frozen=True)
class BenchmarkRecord:
    """One (method, sampler, fraction, seed) trial."""

    field_id: str
    n: int
    method: str
    sampler: str
    fraction: float
    seed: int
    l: int
    angle_error_deg: float | None
    wall_time_s: float
    sketch_time_s: float
    decompose_time_s: float
    reconstruct_time_s: float


def sample_count(fraction: float, n: int, k: int) -> int:
    """Columns to draw for a sampling fraction: round(fraction * n) to
    the nearest integer (half away from zero), clamped to [k, n]."""
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    l = int(math.floor(fraction * n + 0.5))
    return max(k, min(l, n))


def draw_sample(sampler: str, field: VorticityField, l: int, seed: int) -> SampleIndexSet:
    if sampler == "uniform":
        return sample_uniform(field.n, l, seed)
    if sampler == "halton":
        # Halton has no intrinsic randomness: trials vary by skipping into
        # the sequence, spaced by l so the windows do not overlap.
        return sample_halton(field.grid, l, seed_offset=seed * l)
    raise ValueError(f"unknown sampler {sampler!r}")


def _solve(method: str, op, sample: SampleIndexSet, k: int) -> EigenApproximation:
    if method == "sketch_svd":
        return sketch_svd(op, sample, k)
    if method == "nystrom":
        return nystrom(op, sample, k)
    raise ValueError(f"unknown method {method!r}")


def run_sweep(
    field: VorticityField,
    k: int,
    fractions,
    samplers=SAMPLERS,
    methods=RANDOMIZED_METHODS,
    trials: int = 20,
    base_seed: int = 0,
    field_id: str = "field",
    materialize_cap: int = DEFAULT_DENSE_CAP,
    workers: int | None = None,
    baseline: EigenApproximation | None = None,
) -> list[BenchmarkRecord]:
    """One record per (method, sampler, fraction, trial), errors measured
    against the deterministic power baseline's leading eigenvector.

    The baseline is computed once (dense mat-vec when the operator fits
    `materialize_cap`, matrix-free otherwise) unless one is passed in.
    Trial seeds are base_seed + trial. Trials run on a thread pool of
    `workers` (default: the WORKERS_ENV variable, else all cores); record
    order is by (method, sampler, fraction, trial) key regardless of
    completion order. Baseline non-convergence aborts the whole sweep.
    """
    fractions = list(fractions)
    samplers = list(samplers)
    methods = list(methods)
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")
    for m in methods:
        if m not in RANDOMIZED_METHODS:
            raise ValueError(
                f"sweep methods must be randomized ({RANDOMIZED_METHODS}); "
                f"the power baseline is computed internally"
            )
    for f in fractions:
        sample_count(f, field.n, k)  # validates the range
    op = AdjacencyOperator(field)
    try:
        op.materialize(materialize_cap)
    except MemoryCapError:
        pass  # matrix-free baseline
    if baseline is None:
        baseline = power_dominant(op, k=1, seed=base_seed)
    reference = baseline.leading

    tasks = [
        (method, sampler, fraction, trial)
        for method in methods
        for sampler in samplers
        for fraction in fractions
        for trial in range(trials)
    ]

    def run_one(task) -> BenchmarkRecord:
        method, sampler, fraction, trial = task
        seed = base_seed + trial
        l = sample_count(fraction, field.n, k)
        sample = draw_sample(sampler, field, l, seed)
        approx = _solve(method, op, sample, k)
        err = angle_error(reference, approx.leading)
        t = approx.times
        return BenchmarkRecord(
            field_id=field_id, n=field.n, method=method, sampler=sampler,
            fraction=fraction, seed=seed, l=l, angle_error_deg=err,
            wall_time_s=t.total_s, sketch_time_s=t.sketch_s,
            decompose_time_s=t.decompose_s, reconstruct_time_s=t.reconstruct_s,
        )

    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, 0)) or (os.cpu_count() or 1)
    if workers <= 1:
        return [run_one(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_one, tasks))


@dataclass(frozen=True)
class SummaryRow:
    method: str
    sampler: str
    fraction: float
    trials: int
    angle_median_deg: float
    angle_p25_deg: float
    angle_p75_deg: float
    angle_mean_deg: float
    time_median_s: float
    time_p25_s: float
    time_p75_s: float
    time_mean_s: float


def summarize(records: list[BenchmarkRecord]) -> list[SummaryRow]:
    """Median / 25th / 75th percentile (and mean) of angle error and
    wall time per (method, sampler, fraction) group."""
    if not records:
        raise ValueError("no records to summarize")
    groups: dict[tuple, list[BenchmarkRecord]] = {}
    for rec in records:
        groups.setdefault((rec.method, rec.sampler, rec.fraction), []).append(rec)
    rows = []
    for (method, sampler, fraction), recs in sorted(groups.items()):
        errs = np.array([r.angle_error_deg for r in recs
                         if r.angle_error_deg is not None])
        times = np.array([r.wall_time_s for r in recs])
        if errs.size == 0:
            errs = np.array([np.nan])
        rows.append(SummaryRow(
            method=method, sampler=sampler, fraction=fraction, trials=len(recs),
            angle_median_deg=float(np.median(errs)),
            angle_p25_deg=float(np.percentile(errs, 25)),
            angle_p75_deg=float(np.percentile(errs, 75)),
            angle_mean_deg=float(np.mean(errs)),
            time_median_s=float(np.median(times)),
            time_p25_s=float(np.percentile(times, 25)),
            time_p75_s=float(np.percentile(times, 75)),
            time_mean_s=float(np.mean(times)),
        ))
    return rows


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_records_csv(records: list[BenchmarkRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORD_COLUMNS)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, col)) for col in RECORD_COLUMNS])


def read_records_csv(path) -> list[BenchmarkRecord]:
    records = []
    with open(path, "r", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            records.append(BenchmarkRecord(
                field_id=row["field_id"], n=int(row["n"]),
                method=row["method"], sampler=row["sampler"],
                fraction=float(row["fraction"]), seed=int(row["seed"]),
                l=int(row["l"]),
                angle_error_deg=(float(row["angle_error_deg"])
                                 if row["angle_error_deg"] else None),
                wall_time_s=float(row["wall_time_s"]),
                sketch_time_s=float(row["sketch_time_s"]),
                decompose_time_s=float(row["decompose_time_s"]),
                reconstruct_time_s=float(row["reconstruct_time_s"]),
            ))
    return records


def write_summary_csv(rows: list[SummaryRow], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(getattr(row, col)) for col in SUMMARY_COLUMNS])

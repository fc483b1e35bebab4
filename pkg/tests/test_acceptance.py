"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with `pytest tests/test_acceptance.py -v -s` to see
them live).

Criterion 1 carries a documented expected failure: the 214.67 GiB
reference figure quoted for the 421^2 grid is arithmetically the value
for a 412^2 grid ((421^2)^2 * 8 bytes is 234.05 GiB), so that single
sub-check cannot pass and is pinned as a strict xfail; the other three
reference values are asserted normally.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from vortexnet import (
    AdjacencyOperator,
    DenseOperator,
    EigenApproximation,
    GridSpec,
    SampleIndexSet,
    VorticityField,
    angle_error,
    kmeans_cluster,
    label_agreement,
    memory_estimate_gib,
    nystrom,
    power_dominant,
    radical_inverse,
    run_sweep,
    sample_count,
    sample_halton,
    sample_uniform,
    sketch_svd,
    summarize,
    synth_vortex_field,
    synth_wake_field,
)
from vortexnet.bench import TIMING_COLUMNS
from vortexnet.cli import main as cli_main


def report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:02d} {name}: {status}  {detail}")
    return ok


# ---------------------------------------------------------------------------
# Shared workloads
# ---------------------------------------------------------------------------

FRACTIONS = [0.01, 0.02, 0.05, 0.10, 0.20]


@pytest.fixture(scope="module")
def turbulence_sweep():
    grid = GridSpec(64, 64, 1 / 64, 1 / 64)
    field = synth_vortex_field(grid, 80, seed=42)
    records = run_sweep(field, k=1, fractions=FRACTIONS,
                        samplers=("uniform", "halton"), methods=("nystrom",),
                        trials=20, base_seed=0, workers=1)
    stats = {}
    for row in summarize(records):
        stats[(row.sampler, row.fraction)] = (
            row.angle_median_deg, row.angle_p75_deg - row.angle_p25_deg)
    return stats


@pytest.fixture(scope="module")
def wake_data():
    grid = GridSpec(64, 64, 1 / 64, 1 / 64)
    field = synth_wake_field(grid)
    op = AdjacencyOperator(field)
    dense = op.materialize()
    w, v = np.linalg.eigh(dense)
    exact = EigenApproximation(v[:, ::-1][:, :3].copy(), w[::-1][:3].copy(), "power")
    l = sample_count(0.10, field.n, 3)
    approxes = [
        nystrom(op, sample_halton(field.grid, l, seed_offset=t * l), k=3)
        for t in range(20)
    ]
    return field, exact, approxes


# ---------------------------------------------------------------------------
# 1. Memory arithmetic
# ---------------------------------------------------------------------------

def test_criterion_01_memory_arithmetic():
    checks = {316 * 316: 74.29, 256 * 256: 32.00, 342 * 342: 101.92}
    ok = all(abs(memory_estimate_gib(n) - ref) / ref < 0.005
             for n, ref in checks.items())
    detail = ", ".join(f"{int(math.sqrt(n))}^2 -> {memory_estimate_gib(n):.2f} GiB"
                       for n in checks)
    detail += "; 421^2 reference value documented as unattainable (see xfail)"
    assert report(1, "memory arithmetic", ok, detail)


@pytest.mark.xfail(
    strict=True,
    reason="the quoted 214.67 GiB corresponds to a 412^2 grid; "
    "(421^2)^2 * 8 bytes is 234.05 GiB, 9% away, so the +-0.5% check "
    "cannot pass",
)
def test_criterion_01_memory_reference_421():
    got = memory_estimate_gib(421 * 421)
    assert abs(got - 214.67) / 214.67 < 0.005


# ---------------------------------------------------------------------------
# 2. Full-sample oracle equivalence
# ---------------------------------------------------------------------------

def test_criterion_02_oracle_equivalence():
    grid = GridSpec(12, 12, 1 / 12, 1 / 12)
    worst_angle = 0.0
    worst_value = 0.0
    for fs in range(20):
        field = synth_vortex_field(grid, 10, seed=1000 + fs)
        op = AdjacencyOperator(field)
        w, v = np.linalg.eigh(op.materialize())
        lam1 = np.abs(w).max()
        sample = SampleIndexSet(np.arange(op.n), "uniform", 0, op.n)
        ny = nystrom(op, sample, k=3)
        sk = sketch_svd(op, sample, k=3)
        mag = np.argsort(-np.abs(w), kind="stable")
        for i in range(3):
            worst_angle = max(
                worst_angle,
                angle_error(ny.vectors[:, i], v[:, -1 - i]),
                angle_error(sk.vectors[:, i], v[:, mag[i]]),
            )
            worst_value = max(
                worst_value,
                abs(ny.values[i] - w[-1 - i]) / lam1,
                abs(sk.values[i] - abs(w[mag[i]])) / lam1,
            )
    ok = worst_angle < 1e-6 and worst_value < 1e-8
    assert report(2, "full-sample oracle equivalence", ok,
                  f"worst angle {worst_angle:.2e} deg, worst value {worst_value:.2e}")


# ---------------------------------------------------------------------------
# 3. Power-method correctness
# ---------------------------------------------------------------------------

def test_criterion_03_power_correctness():
    rng = np.random.default_rng(20260808)
    worst_angle_rad = 0.0
    worst_value = 0.0
    for trial in range(50):
        m = rng.uniform(0.0, 1.0, size=(20, 20))
        m = 0.5 * (m + m.T)
        np.fill_diagonal(m, 0.0)
        approx = power_dominant(DenseOperator(m), k=3, tol=1e-13,
                                max_iters=100_000, seed=trial)
        w, v = np.linalg.eigh(m)
        lam1 = np.abs(w).max()
        for i in range(3):
            worst_angle_rad = max(worst_angle_rad, math.radians(
                angle_error(approx.vectors[:, i], v[:, -1 - i])))
            worst_value = max(worst_value, abs(approx.values[i] - w[-1 - i]) / lam1)
    ok = worst_angle_rad < 1e-8 and worst_value < 1e-10
    assert report(3, "power-method correctness", ok,
                  f"worst angle {worst_angle_rad:.2e} rad, worst dvalue {worst_value:.2e}")


# ---------------------------------------------------------------------------
# 4. Sampler ordering
# ---------------------------------------------------------------------------

def test_criterion_04_sampler_ordering(turbulence_sweep):
    stats = turbulence_sweep
    median_ok = all(stats[("halton", f)][0] <= stats[("uniform", f)][0]
                    for f in (0.01, 0.02, 0.05, 0.10))
    iqr_ok = all(stats[("halton", f)][1] <= stats[("uniform", f)][1]
                 for f in (0.05, 0.10))
    pairs = "; ".join(
        f"{f:.0%}: {stats[('halton', f)][0]:.2f} vs {stats[('uniform', f)][0]:.2f}"
        for f in (0.01, 0.02, 0.05, 0.10))
    assert report(4, "halton beats uniform (median, IQR)", median_ok and iqr_ok,
                  f"medians halton vs uniform: {pairs}")


# ---------------------------------------------------------------------------
# 5. Error decay across fractions
# ---------------------------------------------------------------------------

def test_criterion_05_error_decay(turbulence_sweep):
    stats = turbulence_sweep
    ok = True
    details = []
    for sampler in ("halton", "uniform"):
        medians = [stats[(sampler, f)][0] for f in FRACTIONS]
        inversions = [max(b - a, 0.0) for a, b in zip(medians, medians[1:])]
        bad = [x for x in inversions if x > 0.0]
        ok &= len(bad) <= 1 and all(x <= 0.5 for x in bad)
        details.append(f"{sampler}: " + " -> ".join(f"{m:.2f}" for m in medians))
    assert report(5, "median error decays with fraction", ok, "; ".join(details))


# ---------------------------------------------------------------------------
# 6. Ten-percent quality on the wake
# ---------------------------------------------------------------------------

def test_criterion_06_ten_percent_quality(wake_data):
    _, exact, approxes = wake_data
    errs = [angle_error(exact.leading, a.leading) for a in approxes]
    med = float(np.median(errs))
    assert report(6, "nystrom+halton at 10% under 10 deg", med < 10.0,
                  f"median {med:.2f} deg over 20 trials")


# ---------------------------------------------------------------------------
# 7. Clustering agreement
# ---------------------------------------------------------------------------

def test_criterion_07_clustering_agreement(wake_data):
    _, exact, approxes = wake_data
    hits = 0
    worst = 1.0
    for seed, approx in enumerate(approxes):
        ref = kmeans_cluster(exact, use_k=3, c=7, seed=seed, restarts=16)
        got = kmeans_cluster(approx, use_k=3, c=7, seed=seed, restarts=16)
        agreement = label_agreement(ref.labels, got.labels)
        worst = min(worst, agreement)
        hits += agreement >= 0.95
    assert report(7, "7-cluster agreement >= 95% on >= 18/20 seeds", hits >= 18,
                  f"{hits}/20 seeds passed, worst agreement {worst:.3f}")


# ---------------------------------------------------------------------------
# 8. Complexity ordering
# ---------------------------------------------------------------------------

def test_criterion_08_decompose_complexity_ordering():
    grid = GridSpec(96, 96, 1 / 96, 1 / 96)
    field = synth_vortex_field(grid, 120, seed=8)
    op = AdjacencyOperator(field)
    l = sample_count(0.10, field.n, 3)
    sketch_times, nystrom_times = [], []
    for trial in range(10):
        sample = sample_uniform(field.n, l, seed=trial)
        sketch_times.append(sketch_svd(op, sample, k=3).times.decompose_s)
        nystrom_times.append(nystrom(op, sample, k=3).times.decompose_s)
    med_sk = float(np.median(sketch_times))
    med_ny = float(np.median(nystrom_times))
    assert report(8, "nystrom decompose faster than sketch svd", med_ny < med_sk,
                  f"medians {med_ny:.3f}s vs {med_sk:.3f}s at n={field.n}, l={l}")


# ---------------------------------------------------------------------------
# 9. Structural property suite
# ---------------------------------------------------------------------------

def test_criterion_09_structural_properties():
    ok = True
    # adjacency symmetry / zero diagonal / nonnegativity on random pairs
    grid = GridSpec(32, 32, 1 / 32, 1 / 32)
    op = AdjacencyOperator(synth_vortex_field(grid, 30, seed=9))
    rng = np.random.default_rng(99)
    for _ in range(1000):
        i, j = (int(x) for x in rng.integers(op.n, size=2))
        e = op.entry(i, j)
        ok &= e == op.entry(j, i) and e >= 0.0
    ok &= all(op.entry(i, i) == 0.0 for i in range(0, op.n, 7))

    # radical inverses against exact digit reversal
    for base in (2, 3):
        for t in (1, 2, 3):
            digits = []
            value, x = Fraction(0), t
            scale = Fraction(1, base)
            while x > 0:
                value += (x % base) * scale
                scale /= base
                x //= base
            ok &= abs(radical_inverse(base, t)[0] - float(value)) < 1e-15

    # angle metric reference points
    ok &= angle_error([1.0, 0.0], [2.0, 0.0]) == 0.0
    ok &= abs(angle_error([1.0, 0.0], [1.0, 1.0]) - 45.0) < 1e-9
    ok &= abs(angle_error([1.0, 0.0], [0.0, 1.0]) - 90.0) < 1e-9

    # scale equivariance of the eigensolve under omega scaling
    small = GridSpec(10, 10, 0.1, 0.1)
    base_field = synth_vortex_field(small, 6, seed=17)
    scaled_field = VorticityField(small, 2.5 * base_field.omega)
    a = power_dominant(AdjacencyOperator(base_field), k=2, seed=1)
    b = power_dominant(AdjacencyOperator(scaled_field), k=2, seed=1)
    ok &= np.allclose(b.values, 2.5 * a.values, rtol=1e-8)
    ok &= all(angle_error(a.vectors[:, i], b.vectors[:, i]) < 1e-6 for i in range(2))

    assert report(9, "structural property suite", bool(ok))


# ---------------------------------------------------------------------------
# 10. CLI determinism
# ---------------------------------------------------------------------------

def masked_csv_rows(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    keep = [i for i, name in enumerate(header) if name not in TIMING_COLUMNS]
    rows = [",".join(line.split(",")[i] for i in keep) for line in lines]
    return rows


def test_criterion_10_cli_determinism(tmp_path):
    field = tmp_path / "f.vort"
    assert cli_main(["gen", "--nx", "32", "--ny", "32", "--vortices", "12",
                     "--seed", "5", "--out", str(field)]) == 0
    for name in ("e1", "e2"):
        assert cli_main(["eig", "--field", str(field), "--method", "nystrom",
                         "--sampler", "halton", "--fraction", "0.2", "--k", "2",
                         "--seed", "3", "--out", str(tmp_path / name)]) == 0
    eig_ok = (tmp_path / "e1.csv").read_bytes() == (tmp_path / "e2.csv").read_bytes()

    for name in ("b1", "b2"):
        assert cli_main(["bench", "--field", str(field), "--k", "1",
                         "--fractions", "0.1", "0.25", "--trials", "3",
                         "--base-seed", "1", "--out", str(tmp_path / name)]) == 0
    bench_ok = (
        masked_csv_rows(tmp_path / "b1.records.csv")
        == masked_csv_rows(tmp_path / "b2.records.csv")
        and masked_csv_rows(tmp_path / "b1.summary.csv")
        == masked_csv_rows(tmp_path / "b2.summary.csv")
    )
    assert report(10, "cmd_eig / cmd_bench rerun byte-identical", eig_ok and bench_ok,
                  "timing columns excluded by mask")

"""The full benchmarking protocol in miniature.

run_sweep crosses methods x samplers x fractions x trials, measures each
trial's leading-eigenvector angle error against the power baseline, and
emits one record per trial; summarize reduces them to medians and
quartiles. The table below is the desk-scale version of the error-vs-
sampling-fraction story: Halton stays below uniform at every fraction,
and errors shrink as more columns are read.

Run:  python demos/05_benchmark_sweep.py
"""

from pathlib import Path

from vortexnet import (
    GridSpec,
    run_sweep,
    summarize,
    synth_vortex_field,
    write_records_csv,
    write_summary_csv,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

grid = GridSpec(64, 64, dx=1 / 64, dy=1 / 64)
field = synth_vortex_field(grid, m=80, seed=42)

records = run_sweep(
    field, k=1,
    fractions=[0.01, 0.02, 0.05, 0.10, 0.20],
    samplers=("uniform", "halton"),
    methods=("nystrom",),
    trials=10, base_seed=0, field_id="turbulence-64",
)
rows = summarize(records)

print(f"{'method':>8} {'sampler':>8} {'fraction':>9} | "
      f"{'median':>7} {'p25':>7} {'p75':>7} (deg)")
for row in rows:
    print(f"{row.method:>8} {row.sampler:>8} {row.fraction:>8.0%} | "
          f"{row.angle_median_deg:>7.2f} {row.angle_p25_deg:>7.2f} "
          f"{row.angle_p75_deg:>7.2f}")

write_records_csv(records, OUT / "sweep.records.csv")
write_summary_csv(rows, OUT / "sweep.summary.csv")
print(f"\nwrote {OUT}/sweep.records.csv and {OUT}/sweep.summary.csv")
print("(the CLI equivalent: vortexnet bench --field <field> --out <prefix>)")

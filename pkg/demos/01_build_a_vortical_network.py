"""Build a vortical interaction network from a synthetic vorticity field.

Every grid cell is a network node; the edge weight between two cells is
the averaged Biot-Savart induced speed between them. The adjacency
matrix is dense and n x n, so for realistic grids it is never stored:
the operator serves single entries, columns, and matrix-vector products
on demand.

Run:  python demos/01_build_a_vortical_network.py
"""

from pathlib import Path

import numpy as np

from vortexnet import (
    AdjacencyOperator,
    GridSpec,
    format_memory,
    memory_estimate,
    render_values,
    save_field,
    synth_vortex_field,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# A turbulence-like field: 40 Gaussian vortices with random strengths,
# core sizes, and centers on a 96 x 96 grid.
grid = GridSpec(96, 96, dx=1 / 96, dy=1 / 96)
field = synth_vortex_field(grid, m=40, seed=11)
print(f"grid {grid.nx} x {grid.ny} -> n = {grid.n} nodes")

# Why matrix-free: dense storage grows with the fourth power of the
# grid side length.
for side in (96, 256, 512, 1024):
    n = side * side
    print(f"  dense adjacency for {side}^2 grid: {format_memory(memory_estimate(n))}")

op = AdjacencyOperator(field)

# Entries and columns come straight from the closed form.
i, j = grid.node_index(40, 30), grid.node_index(41, 30)
print(f"\nedge weight between neighbors {i}, {j}: {op.entry(i, j):.6f}")
print(f"induced speed {i} -> {j}: {op.induced_velocity(i, j):+.6f}")

col = op.column(j)
print(f"column {j}: max {col.max():.4f}, zero diagonal entry: {col[j] == 0.0}")

# Node strength (row sums) marks the most strongly interacting cells.
strength = op.node_strength()
hub = int(np.argmax(strength))
print(f"strongest node: {hub} at (row, col) = {grid.node_coords(hub)}, "
      f"strength {strength[hub]:.4f}")

save_field(field, OUT / "turbulence.vort")
render_values(field.omega, grid, OUT / "turbulence_omega.pgm", "symmetric")
render_values(strength, grid, OUT / "turbulence_strength.pgm", "minmax")
print(f"\nwrote {OUT}/turbulence.vort and PGM maps of omega and strength")

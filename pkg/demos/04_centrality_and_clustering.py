"""Downstream analysis: who matters in the flow, and how does it split?

Eigenvector centrality (absolute entries of the leading eigenvector)
highlights the most influential vortical structures. Spectral clustering
on the top-3 eigenvector coordinates groups grid cells into coherent
regions, and the groups survive the switch from exact to sampled
eigenvectors almost node for node.

Run:  python demos/04_centrality_and_clustering.py
"""

from pathlib import Path

import numpy as np

from vortexnet import (
    AdjacencyOperator,
    EigenApproximation,
    GridSpec,
    eigenvector_centrality,
    kmeans_cluster,
    label_agreement,
    nystrom,
    render_labels,
    render_values,
    sample_count,
    sample_halton,
    sign_partition,
    synth_wake_field,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

grid = GridSpec(64, 64, dx=1 / 64, dy=1 / 64)
field = synth_wake_field(grid)
op = AdjacencyOperator(field)

# Exact reference from a dense eigensolve (fine at this size).
w, v = np.linalg.eigh(op.materialize())
exact = EigenApproximation(v[:, ::-1][:, :3].copy(), w[::-1][:3].copy(), "power")
print(f"top-3 eigenvalues: {np.round(exact.values, 4)}")

centrality = eigenvector_centrality(exact)
hub = int(np.argmax(centrality))
print(f"most central node: {hub} at (row, col) = {grid.node_coords(hub)}")

# Sign-based bipartition of the second eigenvector separates structures.
signs = sign_partition(exact, depth=2)
print(f"sign partition at depth 2: {signs.c} groups, "
      f"sizes {np.bincount(signs.labels).tolist()}")

# k-means on the top-3 coordinates, exact versus 10% Halton Nystrom.
l = sample_count(0.10, field.n, 3)
approx = nystrom(op, sample_halton(grid, l, seed_offset=0), k=3)
ref = kmeans_cluster(exact, use_k=3, c=7, seed=0, restarts=16)
got = kmeans_cluster(approx, use_k=3, c=7, seed=0, restarts=16)
agree = label_agreement(ref.labels, got.labels)
print(f"7-cluster agreement, exact vs 10%-sampled eigenvectors: {agree:.1%}")

render_values(field.omega, grid, OUT / "wake_omega.pgm", "symmetric")
render_values(centrality, grid, OUT / "wake_centrality.pgm", "minmax")
render_labels(ref.labels, grid, OUT / "wake_clusters_exact.pgm")
render_labels(got.labels, grid, OUT / "wake_clusters_sampled.pgm")
print(f"wrote wake field, centrality, and cluster maps to {OUT}/")

"""Error metrics, centrality, and spectral clustering on eigenpairs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import linear_sum_assignment

from .eigensolvers import EigenApproximation

FloatArray = NDArray[np.float64]
IntArray = NDArray[np.int64]


def angle_error(v, w) -> float:
    """Acute angle between two vectors, in degrees in [0, 90].

    Sign- and scale-invariant: arccos(|v.w| / (|v||w|)) with the cosine
    clamped to [0, 1], evaluated through the equivalent chord form
    2 arcsin(|v/|v| -+ w/|w|| / 2) so that angles far below the arccos
    resolution floor (~1e-6 degrees) are still resolved. Raises
    ValueError on zero vectors.
    """
    v = np.asarray(v, dtype=np.float64).ravel()
    w = np.asarray(w, dtype=np.float64).ravel()
    if v.shape != w.shape:
        raise ValueError("vectors must have equal length")
    nv = np.linalg.norm(v)
    nw = np.linalg.norm(w)
    if nv == 0.0 or nw == 0.0:
        raise ValueError("angle undefined for zero vectors")
    vu = v / nv
    wu = w / nw
    if float(vu @ wu) < 0.0:
        wu = -wu
    half_chord = 0.5 * np.linalg.norm(vu - wu)
    return min(math.degrees(2.0 * math.asin(min(half_chord, 1.0))), 90.0)


def eigenvector_centrality(approx: EigenApproximation) -> FloatArray:
    """Entrywise absolute value of the leading eigenvector; large entries
    mark influential nodes regardless of the vector's arbitrary sign."""
    if approx.k < 1:
        raise ValueError("approximation holds no eigenvectors")
    return np.abs(approx.leading)


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    """Node labels in [0, c) with per-cluster centroids (in eigenvector
    coordinates) and the total within-cluster squared distance."""

    labels: IntArray
    c: int
    centroids: FloatArray
    inertia: float

    def __post_init__(self):
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if labels.min() < 0 or labels.max() >= self.c:
            raise ValueError("labels outside [0, c)")
        if np.unique(labels).size != self.c:
            raise ValueError("every cluster must be nonempty")
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)


def sign_partition(approx: EigenApproximation, depth: int) -> ClusterAssignment:
    """Partition nodes by the sign pattern of the first `depth`
    eigenvectors (zero entries count as nonnegative). Unused sign codes
    are dropped and labels compacted to 0..c-1 in code order."""
    if not 1 <= depth <= approx.k:
        raise ValueError(f"need 1 <= depth <= k={approx.k}, got {depth}")
    scores = approx.vectors[:, :depth]
    bits = (scores >= 0.0).astype(np.int64)
    codes = bits @ (1 << np.arange(depth, dtype=np.int64))
    present = np.unique(codes)
    labels = np.searchsorted(present, codes)
    c = present.size
    centroids = np.vstack([scores[labels == i].mean(axis=0) for i in range(c)])
    inertia = float(((scores - centroids[labels]) ** 2).sum())
    return ClusterAssignment(labels, c, centroids, inertia)


def kmeans_cluster(
    approx: EigenApproximation,
    use_k: int,
    c: int,
    seed: int = 0,
    max_iters: int = 300,
    tol: float = 1e-9,
    restarts: int = 8,
) -> ClusterAssignment:
    """Lloyd k-means on the n x use_k eigenvector coordinates.

    Each restart runs k-means++ seeding (sub-seeded deterministically
    from `seed`) followed by Lloyd iterations until the largest centroid
    shift drops below `tol` or `max_iters` is hit; the restart with the
    lowest inertia wins. Emptied clusters are reseeded at the point
    farthest from its current centroid; distance ties go to the lowest
    centroid index. Fully deterministic given its arguments.
    """
    if not 1 <= use_k <= approx.k:
        raise ValueError(f"need 1 <= use_k <= k={approx.k}, got {use_k}")
    points = np.ascontiguousarray(approx.vectors[:, :use_k])
    return kmeans_points(points, c, seed=seed, max_iters=max_iters,
                         tol=tol, restarts=restarts)


def kmeans_points(
    points: FloatArray,
    c: int,
    seed: int = 0,
    max_iters: int = 300,
    tol: float = 1e-9,
    restarts: int = 8,
) -> ClusterAssignment:
    """kmeans_cluster on a raw (n, d) coordinate array."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    n = points.shape[0]
    if not 1 <= c <= n:
        raise ValueError(f"need 1 <= c <= n={n}, got c={c}")
    if restarts < 1:
        raise ValueError("need restarts >= 1")
    seeds = np.random.SeedSequence(seed).spawn(restarts)
    best: tuple[float, IntArray, FloatArray] | None = None
    for sub in seeds:
        rng = np.random.default_rng(sub)
        labels, centroids, inertia = _lloyd(points, c, rng, max_iters, tol)
        if best is None or inertia < best[0]:
            best = (inertia, labels, centroids)
    assert best is not None
    inertia, labels, centroids = best
    return ClusterAssignment(labels, c, centroids, float(inertia))


def _plusplus_init(points: FloatArray, c: int, rng) -> FloatArray:
    n = points.shape[0]
    centroids = np.empty((c, points.shape[1]))
    centroids[0] = points[int(rng.integers(n))]
    d2 = ((points - centroids[0]) ** 2).sum(axis=1)
    for i in range(1, c):
        total = d2.sum()
        if total > 0:
            idx = int(rng.choice(n, p=d2 / total))
        else:
            idx = int(rng.integers(n))
        centroids[i] = points[idx]
        d2 = np.minimum(d2, ((points - centroids[i]) ** 2).sum(axis=1))
    return centroids


def _lloyd(points, c, rng, max_iters, tol):
    centroids = _plusplus_init(points, c, rng)
    labels = np.zeros(points.shape[0], dtype=np.int64)
    for _ in range(max_iters):
        d2 = _sq_distances(points, centroids)
        labels = np.argmin(d2, axis=1)  # exact ties: lowest index
        new_centroids = centroids.copy()
        for i in range(c):
            members = labels == i
            if members.any():
                new_centroids[i] = points[members].mean(axis=0)
            else:
                # Reseed an emptied cluster at the farthest point.
                nearest = d2[np.arange(points.shape[0]), labels]
                far = int(np.argmax(nearest))
                new_centroids[i] = points[far]
                labels[far] = i
        shift = np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max()
        centroids = new_centroids
        if shift < tol:
            break
    d2 = _sq_distances(points, centroids)
    labels = np.argmin(d2, axis=1)
    # A post-update relabel can in principle empty a reseeded cluster;
    # fall back to pinning the farthest point per empty cluster.
    for i in range(c):
        if not (labels == i).any():
            nearest = d2[np.arange(points.shape[0]), labels]
            labels[int(np.argmax(nearest))] = i
    inertia = float(_sq_distances(points, centroids)[
        np.arange(points.shape[0]), labels].sum())
    return labels, centroids, inertia


def _sq_distances(points: FloatArray, centroids: FloatArray) -> FloatArray:
    d2 = (
        (points * points).sum(axis=1)[:, None]
        - 2.0 * points @ centroids.T
        + (centroids * centroids).sum(axis=1)[None, :]
    )
    return np.maximum(d2, 0.0, out=d2)


def label_agreement(a, b) -> float:
    """Fraction of nodes on which two cluster assignments agree after the
    optimal one-to-one matching of their (arbitrary) label ids."""
    a = np.asarray(a, dtype=np.int64).ravel()
    b = np.asarray(b, dtype=np.int64).ravel()
    if a.shape != b.shape:
        raise ValueError("label arrays must have equal length")
    ca, cb = int(a.max()) + 1, int(b.max()) + 1
    confusion = np.zeros((ca, cb), dtype=np.int64)
    np.add.at(confusion, (a, b), 1)
    rows, cols = linear_sum_assignment(-confusion)
    return float(confusion[rows, cols].sum()) / a.size

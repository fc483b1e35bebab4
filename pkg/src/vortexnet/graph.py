"""Implicit adjacency matrix of the vortical interaction network.

Edge weights follow the Biot-Savart induced-velocity rule: node i with
circulation G_i = omega_i*dx*dy induces speed |G_i| / (2 pi d_ij) at node
j, and the undirected weight is the average of the two induced speeds,

    A[i, j] = (|G_i| + |G_j|) / (4 pi d_ij),    A[i, i] = 0.

The matrix is served column-by-column so that nothing ever requires the
full n^2 storage; a dense copy is available behind an explicit byte cap
for desk-scale baselines and oracle tests. The scalar, column, and dense
paths share one algebraic form and agree bit-for-bit.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import NDArray

from .errors import MemoryCapError
from .field import VorticityField

FloatArray = NDArray[np.float64]

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi

#: Default ceiling for dense materialization (2 GiB).
DEFAULT_DENSE_CAP = 2 * 1024**3

# Column-block sizing keeps peak scratch memory near 32 MB per buffer.
_BLOCK_DOUBLES = 4_000_000


def memory_estimate(n: int) -> int:
    """Bytes needed for a dense float64 n x n adjacency matrix."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return int(n) * int(n) * 8


def memory_estimate_gib(n: int) -> float:
    """memory_estimate reported in GiB (1024^3 bytes)."""
    return memory_estimate(n) / 1024**3


def format_memory(num_bytes: int) -> str:
    return f"{num_bytes / 1024**3:.2f} GiB"


class AdjacencyOperator:
    """Matrix-free view of the symmetric vortical adjacency matrix.

    Immutable once built; safe to share across threads. Column extraction
    is the primitive everything else (sampling, strengths, mat-vec,
    materialization) is built on.
    """

    def __init__(self, field: VorticityField):
        self.field = field
        self.n = field.n
        gamma = field.circulation()
        self._abs_gamma = np.abs(gamma)
        self._gamma = gamma
        self._x, self._y = field.grid.positions()
        self._dense: FloatArray | None = None

    # -- scalar access ------------------------------------------------

    def induced_velocity(self, i: int, j: int) -> float:
        """Signed speed node i induces at node j: G_i / (2 pi d_ij)."""
        self._check_index(i)
        self._check_index(j)
        if i == j:
            raise ValueError("self-induction is undefined (i == j)")
        ddx = self._x[i] - self._x[j]
        ddy = self._y[i] - self._y[j]
        d = math.sqrt(ddx * ddx + ddy * ddy)
        return float(self._gamma[i] / (TWO_PI * d))

    def entry(self, i: int, j: int) -> float:
        """A[i, j]; zero on the diagonal."""
        self._check_index(i)
        self._check_index(j)
        if i == j:
            return 0.0
        # Same operation order as the vectorized column path, so the
        # implicit and dense representations agree bit-exactly.
        ddx = self._x[i] - self._x[j]
        ddy = self._y[i] - self._y[j]
        d = math.sqrt(ddx * ddx + ddy * ddy)
        return float((self._abs_gamma[i] + self._abs_gamma[j]) / (FOUR_PI * d))

    # -- vector access ------------------------------------------------

    def column(self, j: int, out: FloatArray | None = None) -> FloatArray:
        """Write column j of A into `out` (allocated when omitted)."""
        self._check_index(j)
        if out is None:
            out = np.empty(self.n, dtype=np.float64)
        elif out.shape != (self.n,):
            raise ValueError(f"out must have shape ({self.n},)")
        block = self.columns(np.array([j], dtype=np.int64))
        out[:] = block[:, 0]
        return out

    def columns(self, indices) -> FloatArray:
        """Dense (n, l) block of the columns listed in `indices`."""
        idx = np.asarray(indices, dtype=np.int64)
        if idx.ndim != 1:
            raise ValueError("indices must be one-dimensional")
        if idx.size and (idx.min() < 0 or idx.max() >= self.n):
            raise IndexError("column index out of range")
        n, l = self.n, idx.size
        out = np.empty((n, l), dtype=np.float64)
        step = max(1, _BLOCK_DOUBLES // max(n, 1))
        for s in range(0, l, step):
            jb = idx[s:s + step]
            dx = self._x[:, None] - self._x[jb][None, :]
            dy = self._y[:, None] - self._y[jb][None, :]
            np.multiply(dx, dx, out=dx)
            np.multiply(dy, dy, out=dy)
            dx += dy
            d = np.sqrt(dx, out=dx)
            cols = np.arange(jb.size)
            d[jb, cols] = 1.0  # placeholder; diagonal zeroed below
            np.multiply(d, FOUR_PI, out=d)
            num = self._abs_gamma[:, None] + self._abs_gamma[jb][None, :]
            np.divide(num, d, out=out[:, s:s + jb.size])
            out[jb, s + cols] = 0.0
        return out

    def matvec(self, v: FloatArray) -> FloatArray:
        """A @ v, using the dense cache when present, else column blocks."""
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.n,):
            raise ValueError(f"v must have shape ({self.n},)")
        if self._dense is not None:
            return self._dense @ v
        y = np.zeros(self.n, dtype=np.float64)
        step = max(1, _BLOCK_DOUBLES // max(self.n, 1))
        all_idx = np.arange(self.n, dtype=np.int64)
        for s in range(0, self.n, step):
            jb = all_idx[s:s + step]
            y += self.columns(jb) @ v[jb]
        return y

    def node_strength(self) -> FloatArray:
        """Row sums of A, accumulated column block by column block."""
        s = np.zeros(self.n, dtype=np.float64)
        step = max(1, _BLOCK_DOUBLES // max(self.n, 1))
        all_idx = np.arange(self.n, dtype=np.int64)
        for start in range(0, self.n, step):
            jb = all_idx[start:start + step]
            s += self.columns(jb).sum(axis=1)
        return s

    def row_abs_sums(self) -> FloatArray:
        """Gershgorin radii; equals node_strength for this nonnegative matrix."""
        return self.node_strength()

    # -- dense fallback -----------------------------------------------

    def materialize(self, cap_bytes: int = DEFAULT_DENSE_CAP) -> FloatArray:
        """Dense n x n copy of A, refused when it would exceed `cap_bytes`.

        The result is cached on the operator (and reused by matvec), so
        repeated calls are free. Intended for oracle tests and the
        deterministic baseline at desk scale only.
        """
        need = memory_estimate(self.n)
        if need > cap_bytes:
            raise MemoryCapError(
                f"dense matrix needs {format_memory(need)}, cap is "
                f"{format_memory(cap_bytes)}"
            )
        if self._dense is None:
            self._dense = self.columns(np.arange(self.n, dtype=np.int64))
        return self._dense

    @property
    def is_materialized(self) -> bool:
        return self._dense is not None

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"node index {i} outside [0, {self.n})")


class DenseOperator:
    """Column-access adapter over an explicit symmetric matrix.

    Lets the eigensolvers run against arbitrary symmetric matrices (unit
    tests, oracles) through the same interface AdjacencyOperator serves.
    """

    def __init__(self, matrix):
        m = np.ascontiguousarray(matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        if not np.array_equal(m, m.T):
            raise ValueError("matrix must be exactly symmetric")
        self._m = m
        self.n = m.shape[0]

    def entry(self, i: int, j: int) -> float:
        return float(self._m[i, j])

    def column(self, j: int, out: FloatArray | None = None) -> FloatArray:
        if out is None:
            return self._m[:, j].copy()
        out[:] = self._m[:, j]
        return out

    def columns(self, indices) -> FloatArray:
        idx = np.asarray(indices, dtype=np.int64)
        return self._m[:, idx].copy()

    def matvec(self, v: FloatArray) -> FloatArray:
        return self._m @ np.asarray(v, dtype=np.float64)

    def row_abs_sums(self) -> FloatArray:
        return np.abs(self._m).sum(axis=1)

    def materialize(self, cap_bytes: int = DEFAULT_DENSE_CAP) -> FloatArray:
        need = memory_estimate(self.n)
        if need > cap_bytes:
            raise MemoryCapError(
                f"dense matrix needs {format_memory(need)}, cap is "
                f"{format_memory(cap_bytes)}"
            )
        return self._m

    @property
    def is_materialized(self) -> bool:
        return True

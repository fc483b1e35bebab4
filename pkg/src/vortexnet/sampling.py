"""Column-index samplers: seeded uniform draws and 2D Halton sequences.

Both samplers return an ordered set of distinct node indices. The Halton
sampler works in the spatial domain (bases 2 and 3 over the grid
rectangle) because coverage of the flow domain, not of the flat index
range, is what drives approximation quality.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np
from numpy.typing import NDArray

from .field import GridSpec

IntArray = NDArray[np.int64]

# Hard ceiling on Halton points examined; generation is declared stalled
# beyond this (never reached for any sane grid/l combination).
_HALTON_MAX_POINTS = 50_000_000


@dataclass(frozen=True, eq=False)
class SampleIndexSet:
    """Ordered list of l distinct column indices plus provenance.

    For the uniform sampler `seed` seeds the RNG; for Halton it is the
    sequence offset (the draw starts at Halton point seed + 1).
    """

    indices: IntArray
    sampler: str
    seed: int
    n: int
    extra: dict = dataclass_field(default_factory=dict, compare=False)

    def __post_init__(self):
        idx = np.ascontiguousarray(self.indices, dtype=np.int64)
        if idx.ndim != 1 or idx.size < 1:
            raise ValueError("indices must be a nonempty 1D array")
        if idx.min() < 0 or idx.max() >= self.n:
            raise ValueError(f"indices must lie in [0, {self.n})")
        if np.unique(idx).size != idx.size:
            raise ValueError("indices must be distinct")
        if self.sampler not in ("uniform", "halton"):
            raise ValueError(f"unknown sampler {self.sampler!r}")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @property
    def l(self) -> int:
        return self.indices.size


def sample_uniform(n: int, l: int, seed: int) -> SampleIndexSet:
    """Draw l of n column indices uniformly without replacement.

    Seeded partial Fisher-Yates; the order of the draw is preserved, and
    l = n yields a full permutation of [0, n).
    """
    _check_counts(n, l)
    rng = np.random.default_rng(seed)
    pool = np.arange(n, dtype=np.int64)
    for t in range(l):
        j = t + int(rng.integers(n - t))
        pool[t], pool[j] = pool[j], pool[t]
    return SampleIndexSet(pool[:l].copy(), "uniform", seed, n)


def radical_inverse(base: int, t) -> np.ndarray:
    """Van der Corput radical inverse: reflect the base-`base` digits of
    t about the radix point. Accepts scalars or integer arrays."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    rem = np.atleast_1d(np.asarray(t, dtype=np.int64)).copy()
    if (rem < 0).any():
        raise ValueError("radical inverse needs nonnegative arguments")
    inv = np.zeros(rem.shape, dtype=np.float64)
    denom = np.ones(rem.shape, dtype=np.float64)
    while (rem > 0).any():
        denom *= base
        inv += (rem % base) / denom
        rem //= base
    return inv


def halton_points(count: int, start: int = 1) -> np.ndarray:
    """(count, 2) Halton points (bases 2 and 3) for t = start, start+1, ..."""
    ts = np.arange(start, start + count, dtype=np.int64)
    return np.column_stack([radical_inverse(2, ts), radical_inverse(3, ts)])


def sample_halton(grid: GridSpec, l: int, seed_offset: int = 0) -> SampleIndexSet:
    """Quasi-random column draw: map 2D Halton points onto grid cells.

    Point (hx, hy) lands in cell (col, row) = (floor(hx*nx), floor(hy*ny))
    and thus node row*nx + col. Duplicate cells are skipped; generation
    continues until l distinct indices exist. `seed_offset` skips the
    first `seed_offset` points of the sequence, which is how independent
    trials are produced from an otherwise deterministic generator.
    """
    n = grid.n
    _check_counts(n, l)
    if seed_offset < 0:
        raise ValueError(f"seed_offset must be nonnegative, got {seed_offset}")
    nx, ny = grid.nx, grid.ny
    seen = np.zeros(n, dtype=bool)
    found = np.empty(l, dtype=np.int64)
    got = 0
    t = seed_offset + 1
    chunk = max(256, 4 * l)
    while got < l:
        if t - seed_offset > _HALTON_MAX_POINTS:
            raise RuntimeError("halton sampling stalled; grid too adversarial")
        pts = halton_points(chunk, start=t)
        t += chunk
        cols = np.minimum((pts[:, 0] * nx).astype(np.int64), nx - 1)
        rows = np.minimum((pts[:, 1] * ny).astype(np.int64), ny - 1)
        idx = rows * nx + cols
        # First occurrence within the chunk, in draw order.
        _, first = np.unique(idx, return_index=True)
        ordered = idx[np.sort(first)]
        fresh = ordered[~seen[ordered]]
        take = fresh[: l - got]
        seen[take] = True
        found[got:got + take.size] = take
        got += take.size
    return SampleIndexSet(found, "halton", seed_offset, n, extra={"grid": grid})


def save_index_set(sample: SampleIndexSet, path) -> None:
    """One index per line, with a provenance comment header."""
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# sampler={sample.sampler} seed={sample.seed} "
                 f"n={sample.n} l={sample.l}\n")
        for i in sample.indices:
            fh.write(f"{int(i)}\n")


def load_index_set(path) -> SampleIndexSet:
    sampler, seed, n = "uniform", 0, None
    indices: list[int] = []
    with open(path, "r") as fh:
        for line in fh:
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith("#"):
                for token in stripped[1:].split():
                    key, _, value = token.partition("=")
                    if key == "sampler":
                        sampler = value
                    elif key == "seed":
                        seed = int(value)
                    elif key == "n":
                        n = int(value)
                continue
            indices.append(int(stripped))
    if n is None:
        n = max(indices) + 1
    return SampleIndexSet(np.array(indices, dtype=np.int64), sampler, seed, n)


def _check_counts(n: int, l: int) -> None:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 1 <= l <= n:
        raise ValueError(f"need 1 <= l <= n, got l={l}, n={n}")

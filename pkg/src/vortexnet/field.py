"""2D vorticity fields on uniform grids: containers, file I/O, generators.

Node convention: grid point i in [0, n) with n = nx*ny maps to
(row, col) = (i // nx, i % nx) and sits at position (col*dx, row*dy).
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from .errors import DimensionMismatchError, FieldFormatError, NonFiniteValueError

FloatArray = NDArray[np.float64]

BINARY_MAGIC = b"VORT1\n"

FieldFormat = Literal["text", "binary"]


@dataclass(frozen=True)
class GridSpec:
    """Uniform 2D grid: nx*ny nodes with spacings dx, dy."""

    nx: int
    ny: int
    dx: float = 1.0
    dy: float = 1.0

    def __post_init__(self):
        if not (isinstance(self.nx, (int, np.integer)) and self.nx >= 2):
            raise ValueError(f"nx must be an integer >= 2, got {self.nx!r}")
        if not (isinstance(self.ny, (int, np.integer)) and self.ny >= 2):
            raise ValueError(f"ny must be an integer >= 2, got {self.ny!r}")
        if not (math.isfinite(self.dx) and self.dx > 0):
            raise ValueError(f"dx must be positive and finite, got {self.dx!r}")
        if not (math.isfinite(self.dy) and self.dy > 0):
            raise ValueError(f"dy must be positive and finite, got {self.dy!r}")

    @property
    def n(self) -> int:
        """Total node count, which is also the adjacency dimension."""
        return self.nx * self.ny

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    @property
    def extent(self) -> tuple[float, float]:
        """(Lx, Ly) span of node positions."""
        return ((self.nx - 1) * self.dx, (self.ny - 1) * self.dy)

    def node_index(self, row: int, col: int) -> int:
        if not (0 <= row < self.ny and 0 <= col < self.nx):
            raise IndexError(f"(row={row}, col={col}) outside {self.ny}x{self.nx} grid")
        return row * self.nx + col

    def node_coords(self, i: int) -> tuple[int, int]:
        """Inverse of node_index: i -> (row, col)."""
        if not 0 <= i < self.n:
            raise IndexError(f"node index {i} outside [0, {self.n})")
        return i // self.nx, i % self.nx

    def positions(self) -> tuple[FloatArray, FloatArray]:
        """Per-node (x, y) coordinate arrays in row-major node order."""
        idx = np.arange(self.n, dtype=np.int64)
        x = (idx % self.nx).astype(np.float64) * self.dx
        y = (idx // self.nx).astype(np.float64) * self.dy
        return x, y


@dataclass(frozen=True, eq=False)
class VorticityField:
    """Immutable vorticity samples, one per grid node, row-major."""

    grid: GridSpec
    omega: FloatArray

    def __post_init__(self):
        omega = np.ascontiguousarray(self.omega, dtype=np.float64)
        if omega.ndim != 1 or omega.shape[0] != self.grid.n:
            raise DimensionMismatchError(
                f"omega has {omega.size} values, grid needs {self.grid.n}"
            )
        if not np.isfinite(omega).all():
            raise NonFiniteValueError("omega contains NaN or infinite entries")
        omega.setflags(write=False)
        object.__setattr__(self, "omega", omega)

    @property
    def n(self) -> int:
        return self.grid.n

    def circulation(self) -> FloatArray:
        """Per-node circulation: omega * dx * dy."""
        return self.omega * self.grid.cell_area


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def save_field(field: VorticityField, path, format: FieldFormat = "binary") -> None:
    """Write a field to `path`.

    Binary round-trips are value-exact; the text format stores 17
    significant digits, which also reloads exactly for IEEE doubles.
    """
    g = field.grid
    if format == "binary":
        with open(path, "wb") as fh:
            fh.write(BINARY_MAGIC)
            fh.write(struct.pack("<QQdd", g.nx, g.ny, g.dx, g.dy))
            fh.write(field.omega.astype("<f8", copy=False).tobytes())
    elif format == "text":
        with open(path, "w", newline="\n") as fh:
            fh.write(f"{g.nx} {g.ny} {g.dx:.17g} {g.dy:.17g}\n")
            vals = field.omega
            for start in range(0, vals.size, 6):
                chunk = vals[start:start + 6]
                fh.write(" ".join(f"{v:.17g}" for v in chunk) + "\n")
    else:
        raise ValueError(f"unknown field format {format!r}")


def load_field(path, format: FieldFormat = "binary") -> VorticityField:
    """Read a field written by save_field.

    Raises FieldFormatError for a bad header, DimensionMismatchError when
    the payload size disagrees with the header, NonFiniteValueError for
    NaN/Inf values, and OSError on I/O failure.
    """
    if format == "binary":
        return _load_binary(path)
    if format == "text":
        return _load_text(path)
    raise ValueError(f"unknown field format {format!r}")


def _load_binary(path) -> VorticityField:
    with open(path, "rb") as fh:
        magic = fh.read(len(BINARY_MAGIC))
        if magic != BINARY_MAGIC:
            raise FieldFormatError(f"{path}: bad magic bytes {magic!r}")
        header = fh.read(32)
        if len(header) != 32:
            raise FieldFormatError(f"{path}: truncated header")
        nx, ny, dx, dy = struct.unpack("<QQdd", header)
        try:
            grid = GridSpec(int(nx), int(ny), dx, dy)
        except ValueError as exc:
            raise FieldFormatError(f"{path}: invalid header ({exc})") from exc
        payload = fh.read()
    n = grid.n
    if len(payload) != 8 * n:
        raise DimensionMismatchError(
            f"{path}: header declares {n} values, payload holds "
            f"{len(payload) / 8:g}"
        )
    omega = np.frombuffer(payload, dtype="<f8").astype(np.float64)
    if not np.isfinite(omega).all():
        raise NonFiniteValueError(f"{path}: non-finite vorticity values")
    return VorticityField(grid, omega)


def _load_text(path) -> VorticityField:
    tokens: list[str] = []
    header: list[str] | None = None
    with open(path, "r") as fh:
        for line in fh:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if header is None:
                header = stripped.split()
                continue
            tokens.extend(stripped.split())
    if header is None:
        raise FieldFormatError(f"{path}: empty file")
    if len(header) != 4:
        raise FieldFormatError(
            f"{path}: header must be 'nx ny dx dy', got {len(header)} tokens"
        )
    try:
        nx, ny = int(header[0]), int(header[1])
        dx, dy = float(header[2]), float(header[3])
        grid = GridSpec(nx, ny, dx, dy)
    except ValueError as exc:
        raise FieldFormatError(f"{path}: invalid header ({exc})") from exc
    if len(tokens) != grid.n:
        raise DimensionMismatchError(
            f"{path}: header declares {grid.n} values, file holds {len(tokens)}"
        )
    try:
        omega = np.array([float(t) for t in tokens], dtype=np.float64)
    except ValueError as exc:
        raise FieldFormatError(f"{path}: unparseable value ({exc})") from exc
    if not np.isfinite(omega).all():
        raise NonFiniteValueError(f"{path}: non-finite vorticity values")
    return VorticityField(grid, omega)


# ---------------------------------------------------------------------------
# Synthetic generators
# ---------------------------------------------------------------------------

def gaussian_vortex_field(
    grid: GridSpec,
    strengths,
    radii,
    centers,
) -> VorticityField:
    """Superpose Gaussian vortices: each contributes
    strength / (pi r^2) * exp(-((x-cx)^2 + (y-cy)^2) / r^2), so its
    integrated circulation over the plane equals `strength`.

    Parameters
    ----------
    strengths : (m,) circulations
    radii : (m,) core radii, all > 0
    centers : (m, 2) vortex centers as (x, y)
    """
    strengths = np.asarray(strengths, dtype=np.float64)
    radii = np.asarray(radii, dtype=np.float64)
    centers = np.asarray(centers, dtype=np.float64)
    m = strengths.size
    if radii.shape != (m,) or centers.shape != (m, 2):
        raise ValueError("strengths, radii, centers must agree on vortex count")
    if m == 0:
        raise ValueError("need at least one vortex")
    if not (radii > 0).all():
        raise ValueError("core radii must be positive")
    x, y = grid.positions()
    omega = np.zeros(grid.n, dtype=np.float64)
    for gamma, r, (cx, cy) in zip(strengths, radii, centers):
        r2 = r * r
        d2 = (x - cx) ** 2 + (y - cy) ** 2
        omega += gamma / (math.pi * r2) * np.exp(-d2 / r2)
    return VorticityField(grid, omega)


def synth_vortex_field(
    grid: GridSpec,
    m: int,
    seed: int,
    strength_range: tuple[float, float] = (-1.0, 1.0),
    core_range: tuple[float, float] | None = None,
) -> VorticityField:
    """Random turbulence-like field: m Gaussian vortices with strengths
    uniform in strength_range, core radii uniform in core_range, and
    centers uniform over the grid extent. Pure function of its arguments.

    core_range defaults to (0.02, 0.06) times the smaller domain extent.
    """
    if m < 1:
        raise ValueError(f"need m >= 1 vortices, got {m}")
    lo, hi = strength_range
    if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
        raise ValueError(f"invalid strength range {strength_range!r}")
    lx, ly = grid.extent
    if core_range is None:
        span = min(lx, ly)
        core_range = (0.02 * span, 0.06 * span)
    rlo, rhi = core_range
    if not (0 < rlo <= rhi) or not math.isfinite(rhi):
        raise ValueError(f"invalid core range {core_range!r}")
    rng = np.random.default_rng(seed)
    strengths = rng.uniform(lo, hi, size=m)
    radii = rng.uniform(rlo, rhi, size=m)
    centers = np.column_stack(
        [rng.uniform(0.0, lx, size=m), rng.uniform(0.0, ly, size=m)]
    )
    return gaussian_vortex_field(grid, strengths, radii, centers)


def synth_wake_field(
    grid: GridSpec,
    pairs: int = 3,
    strength: float = 1.0,
    core_frac: float = 0.07,
    recent: int = 3,
) -> VorticityField:
    """Deterministic wake-like field: two staggered rows of alternately
    signed Gaussian vortices marching downstream.

    Vortex j in shedding order (newest first) has magnitude
    strength * 0.9^j while j < `recent`, dropping to
    strength * 0.25 * 0.8^(j - recent) beyond: the newest sheddings stay
    strong while older vortices have largely decayed. Cores grow by up
    to 40% downstream, mimicking diffusion. `core_frac` sizes the newest
    core radius relative to the smaller domain extent.
    """
    if pairs < 1:
        raise ValueError(f"need pairs >= 1, got {pairs}")
    if not (strength > 0 and core_frac > 0 and recent >= 1):
        raise ValueError("strength, core_frac, recent must be positive")
    lx, ly = grid.extent
    core = core_frac * min(lx, ly)
    x0, x1 = 0.08 * lx, 0.95 * lx
    pitch = (x1 - x0) / pairs
    y_mid = 0.5 * ly
    offset = 0.20 * ly
    xs_low = x0 + pitch * np.arange(pairs)
    xs_up = xs_low + 0.5 * pitch
    centers = np.concatenate(
        [
            np.column_stack([xs_low, np.full(pairs, y_mid - offset)]),
            np.column_stack([xs_up, np.full(pairs, y_mid + offset)]),
        ]
    )
    shed = np.concatenate([2 * np.arange(pairs), 2 * np.arange(pairs) + 1])
    mags = np.where(
        shed < recent,
        strength * 0.9 ** shed,
        strength * 0.25 * 0.8 ** np.maximum(shed - recent, 0),
    )
    signs = np.concatenate([np.ones(pairs), -np.ones(pairs)])
    strengths = signs * mags
    # Cores spread downstream, as shed vortices diffuse.
    radii = core * (1.0 + 0.4 * (centers[:, 0] - x0) / max(x1 - x0, 1e-300))
    return gaussian_vortex_field(grid, strengths, radii, centers)

"""Byte-exact grayscale rendering of node arrays to binary PGM (P5).

Images are nx wide and ny tall; image row r is grid row r. Two
normalizations:

* "minmax": linear map of [min, max] onto [0, 255]; a constant array
  renders as all zeros.
* "symmetric": zero maps to gray 128 and +-max|value| to 255/1, so sign
  structure is visible; an all-zero array renders uniformly gray.
"""

from __future__ import annotations

import numpy as np

from .field import GridSpec


def to_gray(values, normalization: str = "symmetric") -> np.ndarray:
    values = np.asarray(values, dtype=np.float64).ravel()
    if normalization == "minmax":
        lo, hi = values.min(), values.max()
        if hi == lo:
            scaled = np.zeros(values.shape)
        else:
            scaled = (values - lo) / (hi - lo) * 255.0
    elif normalization == "symmetric":
        top = np.max(np.abs(values))
        if top == 0.0:
            scaled = np.full(values.shape, 128.0)
        else:
            scaled = 128.0 + 127.0 * (values / top)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    return np.clip(np.rint(scaled), 0, 255).astype(np.uint8)


def labels_to_gray(labels) -> np.ndarray:
    """Spread cluster ids over the gray ramp; one cluster renders mid-gray."""
    labels = np.asarray(labels, dtype=np.int64).ravel()
    c = int(labels.max()) + 1
    if c == 1:
        return np.full(labels.shape, 128, dtype=np.uint8)
    return np.rint(labels * (255.0 / (c - 1))).astype(np.uint8)


def write_pgm(gray: np.ndarray, grid: GridSpec, path) -> None:
    gray = np.asarray(gray, dtype=np.uint8).ravel()
    if gray.size != grid.n:
        raise ValueError(f"expected {grid.n} pixels, got {gray.size}")
    header = f"P5\n{grid.nx} {grid.ny}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(gray.reshape(grid.ny, grid.nx).tobytes())


def render_values(values, grid: GridSpec, path, normalization: str = "symmetric") -> None:
    write_pgm(to_gray(values, normalization), grid, path)


def render_labels(labels, grid: GridSpec, path) -> None:
    write_pgm(labels_to_gray(labels), grid, path)

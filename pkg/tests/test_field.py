"""Field container, file formats, and synthetic generators."""

import math

import numpy as np
import pytest

from vortexnet import (
    DimensionMismatchError,
    FieldFormatError,
    GridSpec,
    NonFiniteValueError,
    VorticityField,
    gaussian_vortex_field,
    load_field,
    save_field,
    synth_vortex_field,
    synth_wake_field,
)


def random_field(nx, ny, seed, dx=1.0, dy=1.0):
    rng = np.random.default_rng(seed)
    grid = GridSpec(nx, ny, dx, dy)
    return VorticityField(grid, rng.standard_normal(grid.n))


# ---------------------------------------------------------------------------
# GridSpec
# ---------------------------------------------------------------------------

def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(1, 4)
    with pytest.raises(ValueError):
        GridSpec(4, 1)
    with pytest.raises(ValueError):
        GridSpec(4, 4, dx=0.0)
    with pytest.raises(ValueError):
        GridSpec(4, 4, dy=-1.0)
    with pytest.raises(ValueError):
        GridSpec(4, 4, dx=math.inf)


def test_row_major_index_bijection():
    grid = GridSpec(7, 5, 0.3, 0.9)
    for i in range(grid.n):
        row, col = grid.node_coords(i)
        assert grid.node_index(row, col) == i
    x, y = grid.positions()
    assert x[grid.node_index(2, 3)] == 3 * 0.3
    assert y[grid.node_index(2, 3)] == 2 * 0.9


def test_field_invariants():
    grid = GridSpec(3, 3)
    with pytest.raises(DimensionMismatchError):
        VorticityField(grid, np.zeros(8))
    with pytest.raises(NonFiniteValueError):
        VorticityField(grid, np.array([0.0] * 8 + [np.nan]))
    field = VorticityField(grid, np.arange(9, dtype=float))
    with pytest.raises(ValueError):
        field.omega[0] = 1.0  # read-only view


# ---------------------------------------------------------------------------
# Formats
# ---------------------------------------------------------------------------

def test_text_zero_field(tmp_path):
    path = tmp_path / "zero.txt"
    path.write_text("2 2 1.0 1.0\n0 0 0 0\n")
    field = load_field(path, format="text")
    assert field.n == 4
    assert np.array_equal(field.omega, np.zeros(4))
    assert field.grid.dx == 1.0 and field.grid.dy == 1.0


def test_text_comments_ignored(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("# banner\n2 2 0.5 0.25\n# more\n1 2\n3 4\n")
    field = load_field(path, format="text")
    assert np.array_equal(field.omega, [1.0, 2.0, 3.0, 4.0])


def test_binary_dimension_mismatch(tmp_path):
    field = random_field(4, 3, seed=0)
    path = tmp_path / "short.vort"
    save_field(field, path, format="binary")
    payload = path.read_bytes()
    path.write_bytes(payload[:-8])  # drop one value: header says 12, carries 11
    with pytest.raises(DimensionMismatchError):
        load_field(path, format="binary")


def test_text_dimension_mismatch(tmp_path):
    path = tmp_path / "short.txt"
    path.write_text("3 4 1.0 1.0\n" + " ".join("1" * 11) + "\n")
    with pytest.raises(DimensionMismatchError):
        load_field(path, format="text")


@pytest.mark.parametrize("content", [
    "", "3 4 1.0\n0 0 0\n", "a b 1.0 1.0\n", "3 4 -1.0 1.0\n",
])
def test_text_malformed_header(tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    with pytest.raises(FieldFormatError):
        load_field(path, format="text")


def test_binary_bad_magic(tmp_path):
    path = tmp_path / "bad.vort"
    path.write_bytes(b"NOPE!\n" + b"\x00" * 64)
    with pytest.raises(FieldFormatError):
        load_field(path, format="binary")


def test_text_nonfinite_rejected(tmp_path):
    path = tmp_path / "inf.txt"
    path.write_text("2 2 1.0 1.0\n1 2 inf 4\n")
    with pytest.raises(NonFiniteValueError):
        load_field(path, format="text")


def test_binary_round_trip_exact(tmp_path):
    # Round-trip oracle over randomly generated fields.
    for seed in range(5):
        field = random_field(9, 6, seed=seed, dx=0.13, dy=2.7)
        path = tmp_path / f"f{seed}.vort"
        save_field(field, path, format="binary")
        back = load_field(path, format="binary")
        assert np.array_equal(back.omega, field.omega)
        assert back.grid == field.grid


def test_binary_round_trip_64x64(tmp_path):
    field = random_field(64, 64, seed=7)
    path = tmp_path / "f.vort"
    save_field(field, path, format="binary")
    assert np.array_equal(load_field(path).omega, field.omega)


def test_text_round_trip_within_ulp(tmp_path):
    field = random_field(8, 8, seed=3, dx=1 / 3, dy=math.pi / 10)
    path = tmp_path / "f.txt"
    save_field(field, path, format="text")
    back = load_field(path, format="text")
    assert np.all(np.abs(back.omega - field.omega) <= np.abs(np.spacing(field.omega)))
    assert abs(back.grid.dx - field.grid.dx) <= np.spacing(field.grid.dx)


def test_save_to_unwritable_location(tmp_path):
    field = random_field(4, 4, seed=0)
    with pytest.raises(OSError):
        save_field(field, tmp_path / "missing_dir" / "f.vort", format="binary")


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def test_gaussian_vortex_unit_peak():
    # Gamma = pi, r = 1, centered exactly on a grid node: peak value
    # Gamma / (pi r^2) * exp(0) = 1.
    grid = GridSpec(5, 5, 1.0, 1.0)
    field = gaussian_vortex_field(grid, [math.pi], [1.0], [(2.0, 2.0)])
    assert field.omega[grid.node_index(2, 2)] == 1.0


def test_synth_deterministic():
    grid = GridSpec(16, 16, 1 / 16, 1 / 16)
    a = synth_vortex_field(grid, 12, seed=99)
    b = synth_vortex_field(grid, 12, seed=99)
    assert np.array_equal(a.omega, b.omega)
    c = synth_vortex_field(grid, 12, seed=100)
    assert not np.array_equal(a.omega, c.omega)


def test_synth_total_circulation_matches_drawn_strengths():
    # The discrete sum of |omega| dx dy should recover the drawn |Gamma|
    # totals up to truncation at the domain border and vortex overlap.
    grid = GridSpec(256, 256, 1.0, 1.0)
    m, seed = 100, 5
    srange, crange = (0.5, 2.0), (2.0, 4.0)
    field = synth_vortex_field(grid, m, seed, strength_range=srange, core_range=crange)
    rng = np.random.default_rng(seed)  # replay the generator's draws
    strengths = rng.uniform(*srange, size=m)
    total = np.sum(np.abs(field.omega)) * grid.cell_area
    expected = np.sum(np.abs(strengths))
    assert abs(total - expected) / expected < 0.05


def test_synth_invalid_ranges():
    grid = GridSpec(8, 8)
    with pytest.raises(ValueError):
        synth_vortex_field(grid, 0, seed=0)
    with pytest.raises(ValueError):
        synth_vortex_field(grid, 3, seed=0, strength_range=(2.0, 1.0))
    with pytest.raises(ValueError):
        synth_vortex_field(grid, 3, seed=0, core_range=(0.0, 1.0))
    with pytest.raises(ValueError):
        synth_vortex_field(grid, 3, seed=0, core_range=(2.0, 1.0))


def test_wake_deterministic_and_signed():
    grid = GridSpec(64, 64, 1 / 64, 1 / 64)
    a = synth_wake_field(grid)
    b = synth_wake_field(grid)
    assert np.array_equal(a.omega, b.omega)
    assert a.omega.max() > 0 and a.omega.min() < 0

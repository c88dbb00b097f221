import numpy as np
import pytest

from dgzk import Grid


def test_wavenumber_layout_follows_fft_order():
    g = Grid(8, 8)
    assert list(g.kx) == [0, 1, 2, 3, 4, -3, -2, -1]
    assert list(g.ky) == [0, 1, 2, 3, 4, -3, -2, -1]


def test_wavenumber_band_is_symmetric_with_positive_nyquist():
    g = Grid(16, 12)
    assert g.kx.min() == -7 and g.kx.max() == 8
    assert g.ky.min() == -5 and g.ky.max() == 6


def test_index_of_round_trips_every_wavenumber():
    g = Grid(16, 10)
    for axis in ("x", "y"):
        for idx in range(g.size_along(axis)):
            m = g.wavenumber_of(idx, axis)
            assert g.index_of(m, axis) == idx


def test_index_of_rejects_out_of_band():
    g = Grid(16, 16)
    with pytest.raises(ValueError):
        g.index_of(9, "x")
    with pytest.raises(ValueError):
        g.index_of(-8, "x")  # band is {-7, ..., 8}
    assert g.index_of(8, "x") == 8


def test_grid_validation():
    for bad in (7, 6, 15, 0, -8):
        with pytest.raises(ValueError):
            Grid(bad, 16)
    with pytest.raises(ValueError):
        Grid(16, 16.0)


def test_sample_points_and_cell_area():
    g = Grid(16, 8)
    assert g.x[0] == 0.0
    assert np.allclose(np.diff(g.x), 2 * np.pi / 16)
    assert np.allclose(np.diff(g.y), 2 * np.pi / 8)
    assert np.isclose(g.cell_area * 16 * 8, (2 * np.pi) ** 2)
    assert g.shape == (16, 8)


def test_axis_name_validation():
    g = Grid(8, 8)
    with pytest.raises(ValueError):
        g.size_along("z")
    with pytest.raises(ValueError):
        g.wavenumbers_along("t")

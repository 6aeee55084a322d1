"""
Unit tests for grids, sampled fields, interpolation and the FFT transforms.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from src.core.errors import DomainError, InvalidArgumentError
from src.core.grids import (
    GridField,
    GridInterpolator,
    beurling_transform,
    cauchy_transform,
    covering_grid,
    make_grid,
    periodic_beurling_transform,
    taper,
)


# ---------------------------------------------------------------------------
# ComplexGrid
# ---------------------------------------------------------------------------

class TestComplexGrid:
    """Tests for the square node lattice."""

    def test_first_node_sits_at_lower_left_corner(self):
        grid = make_grid(4.0, 64)
        assert grid.nodes[0, 0] == -4.0 - 4.0j
        assert grid.spacing == pytest.approx(0.125)

    def test_rows_are_the_imaginary_direction(self):
        grid = make_grid(2.0, 16)
        assert grid.nodes[1, 0].imag > grid.nodes[0, 0].imag
        assert grid.nodes[0, 1].real > grid.nodes[0, 0].real

    @pytest.mark.parametrize("n", [0, 6, 100])
    def test_rejects_non_power_of_two(self, n):
        with pytest.raises(InvalidArgumentError, match="power of two"):
            make_grid(1.0, n)

    def test_rejects_non_positive_half_width(self):
        with pytest.raises(InvalidArgumentError, match="positive"):
            make_grid(0.0, 16)

    def test_padded_keeps_spacing(self):
        grid = make_grid(3.0, 32)
        assert grid.padded().spacing == pytest.approx(grid.spacing)
        assert grid.padded().half_width == 6.0

    def test_index_of_nearest_node(self):
        grid = make_grid(4.0, 64)
        k, j = grid.index_of(0.01 + 0.5j)
        assert grid.nodes[k, j] == pytest.approx(0.5j)

    def test_index_of_outside_raises(self):
        with pytest.raises(InvalidArgumentError, match="outside"):
            make_grid(1.0, 8).index_of(5 + 0j)

    def test_contains_excludes_non_finite(self):
        grid = make_grid(1.0, 8)
        assert list(grid.contains(np.array([0j, complex(np.inf, 0)]))) == [True, False]


class TestCoveringGrid:
    """covering_grid picks the smallest power-of-two grid at a spacing."""

    def test_reach_fits_inside(self):
        grid = covering_grid(5.0, 0.1)
        assert grid.spacing == pytest.approx(0.1)
        assert grid.half_width >= 5.0

    def test_fraction_enlarges_the_grid(self):
        assert covering_grid(5.0, 0.1, 0.5).resolution > covering_grid(5.0, 0.1).resolution


class TestTaper:
    def test_window_values(self):
        grid = make_grid(4.0, 64)
        w = taper(grid)
        assert np.all(w[grid.radii <= 2.0] == 1.0)
        assert np.all(w[grid.radii >= 3.0] == 0.0)
        assert np.all((w >= 0) & (w <= 1))


# ---------------------------------------------------------------------------
# GridField
# ---------------------------------------------------------------------------

class TestGridField:
    """Tests for sampled fields."""

    def test_rejects_wrong_shape(self):
        with pytest.raises(InvalidArgumentError, match="samples"):
            GridField(make_grid(1.0, 8), np.zeros((4, 4)))

    def test_rejects_non_finite(self):
        values = np.zeros((8, 8), dtype=complex)
        values[2, 2] = np.nan
        with pytest.raises(InvalidArgumentError, match="finite"):
            GridField(make_grid(1.0, 8), values)

    def test_samples_are_read_only(self):
        f = GridField.zeros(make_grid(1.0, 8))
        with pytest.raises(ValueError):
            f.values[0, 0] = 1.0

    def test_support_radius_and_sup_norm(self):
        grid = make_grid(2.0, 32)
        f = GridField.from_function(grid, lambda z: np.where(np.abs(z) <= 1.0, 0.5j, 0.0))
        assert f.sup_norm == pytest.approx(0.5)
        assert 0.9 < f.support_radius <= 1.0
        assert GridField.zeros(grid).support_radius == 0.0


# ---------------------------------------------------------------------------
# Interpolation
# ---------------------------------------------------------------------------

class TestGridInterpolator:
    """Bicubic splines of complex samples."""

    def test_reproduces_node_values(self):
        grid = make_grid(2.0, 32)
        values = np.exp(-np.abs(grid.nodes) ** 2) * (1 + 2j)
        interp = GridInterpolator(grid, values)
        assert_allclose(interp(grid.nodes[5:9, 5:9]), values[5:9, 5:9], atol=1e-12)

    def test_exact_for_cubic_polynomials(self):
        grid = make_grid(2.0, 32)
        interp = GridInterpolator(grid, grid.nodes ** 2)
        z = np.array([0.123 + 0.456j, -1.01 + 0.3j, 0.7 - 1.2j])
        assert_allclose(interp(z), z ** 2, atol=1e-10)

    def test_wirtinger_derivatives_of_z_squared(self):
        grid = make_grid(2.0, 32)
        interp = GridInterpolator(grid, grid.nodes ** 2)
        z = np.array([0.3 + 0.2j])
        fz, fzbar = interp.wirtinger(z)
        assert_allclose(fz, 2 * z, atol=1e-9)
        assert_allclose(fzbar, 0, atol=1e-9)

    def test_fill_outside_the_box(self):
        grid = make_grid(1.0, 8)
        interp = GridInterpolator(grid, np.ones(grid.shape, dtype=complex), fill=7.0)
        assert interp(5 + 5j) == 7.0


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------

class TestTransforms:
    """Cauchy and Beurling transforms against a Gaussian with known derivatives."""

    @pytest.fixture
    def grid(self):
        return make_grid(4.0, 128)

    @pytest.fixture
    def gaussian(self, grid):
        phi = np.exp(-np.abs(grid.nodes) ** 2)
        dbar = -grid.nodes * phi
        d = -np.conj(grid.nodes) * phi
        return phi, GridField(grid, dbar), d

    def test_cauchy_inverts_dbar(self, grid, gaussian):
        phi, dbar, _ = gaussian
        inner = grid.radii <= 2.0
        result = cauchy_transform(dbar).values
        assert_allclose(result[inner], phi[inner], atol=1e-5)

    def test_beurling_maps_dbar_to_d(self, grid, gaussian):
        _, dbar, d = gaussian
        inner = grid.radii <= 2.0
        result = beurling_transform(dbar).values
        assert_allclose(result[inner], d[inner], atol=1e-5)

    def test_rejects_field_touching_the_frame(self, grid):
        f = GridField(grid, np.ones(grid.shape, dtype=complex))
        with pytest.raises(DomainError, match="compactly supported"):
            cauchy_transform(f)

    @given(
        st.complex_numbers(min_magnitude=0.1, max_magnitude=2.0),
        st.complex_numbers(max_magnitude=1.0),
    )
    @settings(deadline=None, max_examples=20)
    def test_periodic_beurling_is_an_isometry_off_the_mean(self, amplitude, center):
        grid = make_grid(4.0, 64)
        f = GridField(grid, amplitude * np.exp(-2 * np.abs(grid.nodes - center) ** 2))
        g = periodic_beurling_transform(f)
        mean_energy = abs(f.values.sum()) ** 2 / f.values.size
        assert np.sum(np.abs(g.values) ** 2) == pytest.approx(
            np.sum(np.abs(f.values) ** 2) - mean_energy, rel=1e-10
        )

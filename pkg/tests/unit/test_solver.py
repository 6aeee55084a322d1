"""
Unit tests for the Beltrami solver, sampled maps and the dependence probes.

Grids are kept coarse here; the default-resolution oracles live in the
verify suites.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core.beltrami import BeltramiField
from src.core.errors import DomainError, InvalidArgumentError, InverseFailureError, SolverFailureError
from src.core.grids import make_grid
from src.core.moebius import INF, is_infinite
from src.core.solver import (
    QuasiconformalMap,
    SolverOptions,
    beltrami_of,
    cauchy_riemann_probe,
    continuity_probe,
    holomorphy_probe,
    solve_normalized,
)


def oracle(z):
    return z + 0.1 * np.exp(-np.abs(z) ** 2)


def oracle_mu(grid):
    def fn(z):
        g = np.exp(-np.abs(z) ** 2)
        return (-0.1 * z * g) / (1.0 - 0.1 * np.conj(z) * g)
    return BeltramiField.from_function(grid, fn, 0.75 * grid.half_width)


def bump_mu(grid, k=0.3):
    return BeltramiField.from_function(
        grid, lambda z: k * np.exp(-3 * np.abs(z - 0.2) ** 2) * (1 - np.abs(z) ** 2) ** 4, 1.0
    )


def radial_mu(grid, dilatation=2.0):
    c = (dilatation - 1.0) / (dilatation + 1.0)
    z = np.where(grid.radii > 0, grid.nodes, 1.0)
    values = np.where((grid.radii > 0) & (grid.radii < 1.0), c * z / np.conj(z), 0.0)
    return BeltramiField.from_values(grid, values, 1.0)


@pytest.fixture
def grid():
    return make_grid(4.0, 128)


class TestSolverOptions:
    @pytest.mark.parametrize("kwargs", [{"k_max": 1.0}, {"tol": 0.0}, {"max_iter": 0}, {"relaxation": 0.0}])
    def test_rejects_bad_options(self, kwargs):
        with pytest.raises(InvalidArgumentError):
            SolverOptions(**kwargs)


class TestSolveNormalized:
    """The normalized solution w^mu."""

    def test_zero_coefficient_gives_identity(self, grid):
        w = solve_normalized(BeltramiField.zeros(grid))
        assert np.max(np.abs(w.samples - grid.nodes)) < 1e-12
        assert w.report.iterations == 0

    def test_normalization_is_exact(self, grid):
        w = solve_normalized(bump_mu(grid))
        assert w.evaluate(0j) == 0
        assert abs(w.evaluate(1 + 0j) - 1) < 1e-15
        assert is_infinite(w.evaluate(INF))

    def test_smooth_oracle(self, grid):
        w = solve_normalized(oracle_mu(grid))
        z = grid.nodes[grid.radii <= 2.0]
        f0, f1 = oracle(np.array([0j]))[0], oracle(np.array([1 + 0j]))[0]
        expected = (oracle(z) - f0) / (f1 - f0)
        assert np.max(np.abs(w.evaluate_array(z) - expected)) < 1e-3

    def test_radial_stretch_closed_form(self, grid):
        # K = 2 on the unit disk: w = z |z| inside, w = z outside
        w = solve_normalized(radial_mu(grid))
        z = grid.nodes[grid.radii <= 2.0]
        expected = np.where(np.abs(z) <= 1.0, z * np.abs(z), z)
        assert np.max(np.abs(w.evaluate_array(z) - expected)) < 0.1

    def test_far_field_is_continuous_across_the_box(self, grid):
        w = solve_normalized(bump_mu(grid))
        edge = grid.half_width - grid.spacing
        inside = w.evaluate(edge - 1e-9 + 0j)
        outside = w.evaluate(edge + 1e-9 + 0j)
        assert abs(inside - outside) < 1e-6

    def test_rejects_norm_above_limit(self, grid):
        with pytest.raises(InvalidArgumentError, match="k_max"):
            solve_normalized(bump_mu(grid, 0.5), SolverOptions(k_max=0.4))

    def test_rejects_support_beyond_three_quarters(self, grid):
        mu = BeltramiField.from_function(grid, lambda z: 0.1 + 0 * z, 3.5)
        with pytest.raises(DomainError, match="support radius"):
            solve_normalized(mu)

    def test_reports_non_convergence(self, grid):
        with pytest.raises(SolverFailureError, match="stalled") as info:
            solve_normalized(bump_mu(grid), SolverOptions(max_iter=1))
        assert info.value.report["iterations"] == 1

    def test_relaxed_schedule_agrees(self, grid):
        mu = bump_mu(grid)
        plain = solve_normalized(mu)
        relaxed = solve_normalized(mu, SolverOptions().relaxed())
        assert np.max(np.abs(plain.samples - relaxed.samples)) < 1e-9


class TestQuasiconformalMap:
    """Evaluation, inversion and diagnostics of sampled maps."""

    def test_recovered_coefficient(self, grid):
        mu = bump_mu(grid)
        w = solve_normalized(mu)
        recovered = beltrami_of(w)
        inner = grid.radii < 1.5
        assert np.max(np.abs(recovered.values[inner] - mu.values[inner])) < 2e-2

    def test_orientation(self, grid):
        assert solve_normalized(bump_mu(grid)).orientation_ok()

    def test_inverse_round_trip(self, grid):
        w = solve_normalized(bump_mu(grid))
        z = np.array([0.3 + 0.2j, -0.5j, 1.7 + 0.4j])
        assert_allclose(w.inverse_evaluate_array(w.evaluate_array(z)), z, atol=1e-8)

    def test_scalar_inverse_keeps_the_normalization(self, grid):
        w = solve_normalized(bump_mu(grid))
        assert is_infinite(w.inverse_evaluate(INF))
        assert w.inverse_evaluate(0j) == pytest.approx(0, abs=1e-8)
        assert w.inverse_evaluate(1 + 0j) == pytest.approx(1, abs=1e-8)
        assert w.inverse_evaluate(w.evaluate(0.4 - 0.3j)) == pytest.approx(0.4 - 0.3j, abs=1e-8)

    def test_constant_samples_rejected(self, grid):
        with pytest.raises(InverseFailureError, match="same value"):
            QuasiconformalMap.from_samples(grid, np.zeros(grid.shape))

    def test_correction_is_post_composed(self, grid):
        w = QuasiconformalMap.identity(grid).with_correction(lambda v: v + 0.5 * v * (v - 1))
        assert w.evaluate(2 + 0j) == pytest.approx(3.0)
        assert w.evaluate(1 + 0j) == pytest.approx(1.0)


class TestProbes:
    """Holomorphic and continuous dependence on mu."""

    def test_cauchy_riemann_probe_on_polynomial(self):
        report = cauchy_riemann_probe(lambda lam: lam ** 3, 0.3 + 0.1j)
        assert report.passed

    def test_cauchy_riemann_probe_flags_conjugation(self):
        report = cauchy_riemann_probe(lambda lam: complex(lam).conjugate(), 0.3 + 0.1j)
        assert not report.passed

    def test_linear_family_is_holomorphic(self):
        grid = make_grid(4.0, 64)
        mu0 = bump_mu(grid)
        report = holomorphy_probe(mu0.scaled, 0.4 + 0.2j, 0.5)
        assert report.passed

    def test_anti_holomorphic_family_fails(self):
        grid = make_grid(4.0, 64)
        mu0 = bump_mu(grid)
        report = holomorphy_probe(lambda lam: mu0.scaled(complex(lam).conjugate()), 0.4 + 0.2j, 0.5)
        assert not report.passed
        assert min(report.residuals) > 1e-4

    def test_continuity_along_a_sequence(self):
        grid = make_grid(4.0, 64)
        mu = bump_mu(grid)
        sequence = [mu.scaled(1 - 2.0 ** -n) for n in range(1, 5)]
        report = continuity_probe(mu, sequence)
        assert report.passed
        assert report.distances[-1] < report.distances[0]

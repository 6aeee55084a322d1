"""
Unit tests for circle maps, the barycentric extension, disk traces and sigma.
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core.beltrami import BeltramiField
from src.core.douady_earle import (
    CircleHomeo,
    TraceInterpolation,
    barycentric_extend,
    barycentric_extend_array,
    circle_map_from_mu,
    disk_sample,
    empirical_c,
    extension_injectivity_check,
    naturality_residual,
    sigma_at,
    sigma_of_trace,
    sigma_sup_norm,
    smoothness_probe,
    solve_disk,
)
from src.core.errors import DomainError, InvalidArgumentError
from src.core.grids import make_grid
from src.core.moebius import MoebiusTransform, disk_automorphism


def wobble(n=1024):
    """psi(theta) = theta + 0.1 cos(theta): smooth, not Moebius."""
    theta = 2 * np.pi * np.arange(n) / n
    return CircleHomeo.from_boundary_values(np.exp(1j * (theta + 0.1 * np.cos(theta))), TraceInterpolation.FOURIER)


def disk_mu(grid, k=0.3):
    return BeltramiField.from_function(
        grid, lambda z: k * np.exp(-4 * np.abs(z - 0.2j) ** 2) * (1 - np.abs(z) ** 2) ** 3, 1.0
    )


@pytest.fixture
def disk_grid():
    return make_grid(2.0, 64)


# ---------------------------------------------------------------------------
# CircleHomeo
# ---------------------------------------------------------------------------

class TestCircleHomeo:
    """Lifted samples of degree-one circle maps."""

    def test_rejects_too_few_samples(self):
        with pytest.raises(InvalidArgumentError, match="at least 8"):
            CircleHomeo(np.arange(4.0))

    def test_rejects_count_not_divisible_by_four(self):
        with pytest.raises(InvalidArgumentError, match="divisible by 4"):
            CircleHomeo(2 * np.pi * np.arange(10) / 10)

    def test_rejects_non_monotone_lift(self):
        psi = 2 * np.pi * np.arange(8) / 8
        psi[3] = psi[1]
        with pytest.raises(InvalidArgumentError, match="increase"):
            CircleHomeo(psi)

    @pytest.mark.parametrize("interpolation", list(TraceInterpolation))
    def test_lift_is_periodic(self, interpolation):
        phi = wobble(256).with_interpolation(interpolation)
        t = np.array([0.3, 2.0, 5.5])
        assert_allclose(phi.evaluate(t + 2 * np.pi), phi.evaluate(t) + 2 * np.pi, atol=1e-12)

    def test_moebius_trace_matches_the_map(self):
        m = disk_automorphism(0.5 - 0.2j, 0.4)
        phi = CircleHomeo.from_moebius(m, 256)
        zeta = np.exp(1j * np.array([0.1, 1.7, 4.2]))
        assert_allclose(phi.map_points(zeta), m.apply_array(zeta), atol=1e-10)

    def test_normalized_fixes_three_points(self):
        phi = CircleHomeo.from_moebius(disk_automorphism(0.3j, 1.0), 256).normalized()
        values = phi.boundary_values
        assert_allclose(values[[0, 64, 128]], [1, 1j, -1], atol=1e-12)

    def test_angular_distance_to_itself(self):
        phi = wobble(256)
        assert phi.angular_distance(phi) < 1e-12
        assert CircleHomeo.identity(256).angular_distance(phi) == pytest.approx(0.1, abs=1e-3)


# ---------------------------------------------------------------------------
# Barycentric extension
# ---------------------------------------------------------------------------

class TestBarycentricExtension:
    """Conformal naturality of ex(phi)."""

    def test_identity_extends_to_identity(self):
        z = disk_sample(100, 0.8, seed=1)
        out = barycentric_extend_array(CircleHomeo.identity(), z)
        assert np.max(np.abs(out - z)) < 1e-12

    def test_moebius_trace_extends_to_the_moebius_map(self):
        m = disk_automorphism(0.3 + 0.2j, 0.7)
        z = disk_sample(100, 0.8, seed=2)
        out = barycentric_extend_array(CircleHomeo.from_moebius(m, 1024), z)
        assert np.max(np.abs(out - m.apply_array(z))) < 1e-8

    def test_rejects_points_off_the_open_disk(self):
        with pytest.raises(DomainError, match="open unit disk"):
            barycentric_extend(CircleHomeo.identity(64), 1.0 + 0j)

    def test_naturality(self):
        g = disk_automorphism(0.2 - 0.1j, 0.3)
        h = disk_automorphism(-0.25j, -1.2)
        report = naturality_residual(wobble(), g, h, disk_sample(60, 0.8, seed=3))
        assert report.residual < 1e-6
        assert report.points == 60

    def test_naturality_needs_disk_automorphisms(self):
        with pytest.raises(InvalidArgumentError, match="automorphisms"):
            naturality_residual(wobble(), MoebiusTransform.affine(2), MoebiusTransform.identity())

    def test_extension_is_injective(self):
        report = extension_injectivity_check(wobble(), radial=20, angular=20)
        assert report.passed
        assert report.colliding_pairs == 0


# ---------------------------------------------------------------------------
# Disk traces and sigma
# ---------------------------------------------------------------------------

class TestDiskSolve:
    """Boundary traces of f^mu."""

    def test_zero_coefficient_has_identity_trace(self, disk_grid):
        result = solve_disk(BeltramiField.zeros(disk_grid), n_boundary=64)
        assert result.outer is None
        assert result.circle_residual == 0.0
        assert_allclose(result.trace.psi, 2 * np.pi * np.arange(64) / 64)

    def test_trace_is_normalized(self, disk_grid):
        phi = circle_map_from_mu(disk_mu(disk_grid), n_boundary=256)
        assert_allclose(phi.boundary_values[[0, 64, 128]], [1, 1j, -1], atol=1e-9)
        assert phi.angular_distance(CircleHomeo.identity(256)) > 1e-4

    def test_circle_is_preserved(self, disk_grid):
        result = solve_disk(disk_mu(disk_grid), n_boundary=256)
        assert result.circle_residual < 1e-3
        zeta = np.exp(2j * np.pi * np.arange(16) / 16)
        assert_allclose(np.abs(result.evaluate(zeta)), 1.0, atol=1e-3)

    def test_rejects_support_outside_the_disk(self):
        grid = make_grid(4.0, 64)
        mu = BeltramiField.from_function(grid, lambda z: 0.1 + 0 * z, 1.5)
        with pytest.raises(DomainError, match="closed unit disk"):
            solve_disk(mu)


class TestSigma:
    """The section sigma and its norm."""

    def test_sigma_vanishes_for_moebius_traces(self):
        phi = CircleHomeo.from_moebius(disk_automorphism(0.4, 0.0), 1024)
        points = disk_sample(30, 0.9, seed=4)
        assert np.max(np.abs(sigma_at(phi, points))) < 1e-8

    def test_sigma_of_trace_is_a_beltrami_field(self, disk_grid):
        s = sigma_of_trace(wobble(), disk_grid)
        assert 0 < s.sup_norm < 1
        assert np.all(s.values[disk_grid.radii > 0.98] == 0)

    def test_sup_norm_below_one(self, disk_grid):
        phi = circle_map_from_mu(disk_mu(disk_grid), n_boundary=256)
        assert 0 < sigma_sup_norm(phi) < 1

    def test_empirical_constant(self, disk_grid):
        bound = empirical_c([disk_mu(disk_grid, 0.2)], n_boundary=256)
        assert bound.k == pytest.approx(disk_mu(disk_grid, 0.2).sup_norm)
        assert 0 < bound.c_emp < 1
        assert bound.samples == 1

    def test_constant_path_is_flat(self, disk_grid):
        mu = disk_mu(disk_grid, 0.2)
        report = smoothness_probe(lambda t: mu, 0.0, 0.1, halvings=1)
        assert report.constant
        assert report.second_converged

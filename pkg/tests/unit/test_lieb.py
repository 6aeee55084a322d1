"""
Unit tests for Lieb coordinates on disk-complement sets and the Moebius action.

The projections here use a zero coefficient so that every component solve
is trivial; the commutation checks at full resolution run in the lieb suite.
"""

import numpy as np
import pytest

from src.core.beltrami import BeltramiField, Disk, SetModel
from src.core.douady_earle import CircleHomeo
from src.core.errors import InvalidArgumentError
from src.core.grids import make_grid
from src.core.lieb import (
    TeichPoint,
    chart_transports,
    de_section,
    g_invariance_check,
    image_set,
    lieb_equal,
    lieb_residuals,
    project_tilde,
    section_norm_report,
    theorem_a_residual,
)
from src.core.moebius import INF, MoebiusTransform, is_disk_automorphism


@pytest.fixture
def grid():
    return make_grid(4.0, 64)


@pytest.fixture
def two_disks():
    return SetModel.disk_complement([Disk(2 + 0j, 0.5), Disk(-2 + 0j, 0.5)])


def identity_point(grid, E, n=64):
    return TeichPoint(E, (CircleHomeo.identity(n),) * E.component_count, BeltramiField.zeros(grid))


def taper(z, support=2.9):
    return np.clip(1 - np.abs(z) ** 2 / support ** 2, 0, None) ** 3


def even_mu(grid, k=0.02):
    def fn(z):
        return k * (np.exp(-4 * np.abs(z - 2) ** 2) + np.exp(-4 * np.abs(z + 2) ** 2)) * taper(z)
    return BeltramiField.from_function(grid, fn, 2.9)


def perturbed_mu(grid, k=0.02, eps=1e-2):
    base = even_mu(grid, k)
    bump = BeltramiField.from_function(grid, lambda z: eps * np.exp(-4 * np.abs(z - 0.5) ** 2) * taper(z), 2.9)
    return BeltramiField.from_values(grid, base.values + bump.values, 2.9)


class TestTeichPoint:
    """Validation of points of T(E)."""

    def test_needs_disk_complement(self, grid):
        with pytest.raises(InvalidArgumentError, match="disk-complement"):
            TeichPoint(SetModel.finite_points([0, 1, INF]), (), BeltramiField.zeros(grid))

    def test_component_count(self, grid, two_disks):
        with pytest.raises(InvalidArgumentError, match="expected 2"):
            TeichPoint(two_disks, (CircleHomeo.identity(64),), BeltramiField.zeros(grid))

    def test_field_must_vanish_on_disks(self, grid, two_disks):
        mu = BeltramiField.from_function(grid, lambda z: 0.1 + 0 * z, 3.0)
        with pytest.raises(InvalidArgumentError, match="vanish"):
            TeichPoint(two_disks, (CircleHomeo.identity(64),) * 2, mu)

    def test_distance_bound_needs_representative(self, grid, two_disks):
        with pytest.raises(InvalidArgumentError, match="representative"):
            identity_point(grid, two_disks).distance_bound()


class TestCoordinates:
    """P~_E, equality at tolerance and the section."""

    def test_zero_coefficient_projects_to_identity(self, grid, two_disks):
        t = project_tilde(BeltramiField.zeros(grid), two_disks, make_grid(2.0, 64), n_boundary=64)
        assert len(t.components) == 2
        for phi in t.components:
            assert phi.angular_distance(CircleHomeo.identity(64)) < 1e-12
        assert t.mu_on_e.sup_norm == 0.0
        assert t.distance_bound() == 0.0

    def test_point_equals_itself(self, grid, two_disks):
        t = identity_point(grid, two_disks)
        assert lieb_residuals(t, t).worst == 0.0
        assert lieb_equal(t, t)

    def test_points_on_different_sets_are_not_compared(self, grid, two_disks):
        other = SetModel.disk_complement([Disk(2j, 0.5)])
        with pytest.raises(InvalidArgumentError, match="different sets"):
            lieb_residuals(identity_point(grid, two_disks), identity_point(grid, other))

    def test_section_of_the_basepoint_vanishes(self, grid, two_disks):
        section = de_section(identity_point(grid, two_disks, 256), two_disks)
        assert section.sup_norm < 1e-8

    def test_section_rejects_foreign_set(self, grid, two_disks):
        other = SetModel.disk_complement([Disk(2j, 0.5)])
        with pytest.raises(InvalidArgumentError, match="does not belong"):
            de_section(identity_point(grid, two_disks), other)

    def test_section_norm_needs_representative(self, grid, two_disks):
        with pytest.raises(InvalidArgumentError, match="representative"):
            section_norm_report(identity_point(grid, two_disks))


class TestMoebiusAction:
    """g(E), the component permutation and the chart transports."""

    def test_identity_preserves_ordering(self, two_disks):
        image = image_set(two_disks, MoebiusTransform.identity())
        assert image.preserved
        assert image.alpha == (0, 1)

    def test_negation_swaps_the_disks(self, two_disks):
        g = MoebiusTransform.affine(-1)
        image = image_set(two_disks, g)
        assert image.preserved
        assert image.alpha == (1, 0)
        for m in chart_transports(two_disks, g, image):
            assert is_disk_automorphism(m)

    def test_marked_points_must_stay_in_the_image(self, two_disks):
        with pytest.raises(InvalidArgumentError, match="does not lie in g"):
            image_set(two_disks, MoebiusTransform.affine(1, 2))

    def test_invariance_needs_a_group(self, grid, two_disks):
        mu = BeltramiField.zeros(grid)
        with pytest.raises(InvalidArgumentError, match="empty"):
            g_invariance_check(mu, [], two_disks)
        with pytest.raises(InvalidArgumentError, match="closed under composition"):
            g_invariance_check(mu, [MoebiusTransform.affine(-1)], two_disks)


class TestCommutation:
    """F_g against the Lieb coordinates for a small symmetric coefficient."""

    @pytest.fixture
    def chart_grid(self):
        return make_grid(2.0, 64)

    def test_negation_commutes_with_the_projection(self, grid, two_disks, chart_grid):
        report = theorem_a_residual(
            even_mu(grid), MoebiusTransform.affine(-1), two_disks, chart_grid=chart_grid, n_boundary=256
        )
        assert report.alpha == [1, 0]
        assert report.nodes_compared > 0
        assert report.passed

    def test_section_round_trip(self, grid, two_disks, chart_grid):
        t = project_tilde(even_mu(grid), two_disks, chart_grid, n_boundary=256)
        back = project_tilde(de_section(t, two_disks), two_disks, chart_grid, n_boundary=256)
        assert lieb_equal(back, t)
        assert lieb_residuals(back, t).field == 0.0

    def test_symmetric_coefficient_is_invariant(self, grid, two_disks, chart_grid):
        G = [MoebiusTransform.identity(), MoebiusTransform.affine(-1)]
        report = g_invariance_check(even_mu(grid), G, two_disks, chart_grid=chart_grid, n_boundary=256)
        assert report.group_size == 2
        assert report.invariant

    def test_small_asymmetric_perturbation_breaks_invariance(self, grid, two_disks, chart_grid):
        G = [MoebiusTransform.identity(), MoebiusTransform.affine(-1)]
        report = g_invariance_check(perturbed_mu(grid), G, two_disks, chart_grid=chart_grid, n_boundary=256)
        assert not report.mu_invariant
        assert report.mu_residual > report.tol
        assert not report.invariant

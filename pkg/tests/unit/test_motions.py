"""
Unit tests for holomorphic motions and their evaluation.
"""

import math

import numpy as np
import pytest

from src.core.beltrami import BeltramiField, SetModel
from src.core.errors import DomainError, InvalidArgumentError
from src.core.grids import GridField, make_grid
from src.core.moebius import INF, is_infinite, moebius_from_triple, same_point
from src.core.motions import (
    DEFAULT_MARKED,
    Motion,
    ParameterDomain,
    forget_points,
    holomorphy_probe_motion,
    linear_motion,
    maximal_example_certificate,
    maximal_example_motion,
    motion_continuity_probe,
    motion_injectivity_check,
    normalize_motion,
    seeded_linear_motion,
    trace_map,
    universal_motion_eval,
    wtmu_motion,
)


@pytest.fixture
def marked():
    return SetModel.finite_points(DEFAULT_MARKED)


def velocities_for(E, moving):
    return [moving.get(p, 0j) for p in E.points]


class TestMotion:
    """Parameter domains and the basepoint."""

    def test_basepoint_must_lie_in_the_domain(self):
        with pytest.raises(DomainError, match="basepoint"):
            Motion(ParameterDomain.DISK, 1.5 + 0j, np.array([0j]), lambda x, z: z)

    def test_basepoint_is_exact(self, marked):
        phi = linear_motion(marked, velocities_for(marked, {-1 + 0j: 0.3}))
        assert np.array_equal(phi(0j), phi.points)

    def test_parameter_outside_the_disk(self, marked):
        phi = linear_motion(marked, [0j] * len(marked.points))
        with pytest.raises(DomainError, match="outside"):
            phi(1.0 + 0j)


class TestLinearMotion:
    def test_one_velocity_per_point(self, marked):
        with pytest.raises(InvalidArgumentError, match="one velocity"):
            linear_motion(marked, [0j])

    def test_marked_points_stay_fixed(self, marked):
        with pytest.raises(InvalidArgumentError, match="must not move"):
            linear_motion(marked, velocities_for(marked, {1 + 0j: 0.1}))

    def test_points_move_linearly(self, marked):
        phi = linear_motion(marked, velocities_for(marked, {0.5j: 0.2 + 0j}))
        assert phi.at(0.5j, 0.5j) == pytest.approx(0.5j + 0.1j)
        assert phi.at(0.5j, -1 + 0j) == -1

    def test_seeded_motion_is_reproducible_and_injective(self, marked):
        a = seeded_linear_motion(marked, seed=7)
        b = seeded_linear_motion(marked, seed=7)
        assert trace_map(a, 0.3 + 0.2j) == trace_map(b, 0.3 + 0.2j)
        assert motion_injectivity_check(a, 0.95 + 0j)

    def test_continuity_along_a_ray(self, marked):
        phi = seeded_linear_motion(marked, seed=3)
        report = motion_continuity_probe(phi)
        assert report.passed

    def test_holomorphic_in_the_parameter(self, marked):
        phi = seeded_linear_motion(marked, seed=11)
        assert holomorphy_probe_motion(phi, 0.5j, x0=0.2 + 0.1j).passed


class TestTraceAndForget:
    def test_trace_follows_the_point_order(self, marked):
        phi = linear_motion(marked, velocities_for(marked, {-1 + 0j: 0.2j}))
        config = trace_map(phi, 0.5 + 0j)
        assert len(config) == len(marked.points)
        assert config[marked.index_of(-1)] == pytest.approx(-1 + 0.1j)
        assert is_infinite(config[marked.index_of(INF)])

    def test_forget_points_drops_coordinates(self, marked):
        E1 = SetModel.finite_points([0, 1, INF, -1])
        phi = seeded_linear_motion(marked, seed=5)
        config = trace_map(phi, 0.4j)
        reduced = forget_points(config, marked, E1)
        assert reduced == tuple(config[marked.index_of(p)] for p in E1.points)

    def test_forget_points_validation(self, marked):
        E1 = SetModel.finite_points([0, 1, INF, 3j])
        with pytest.raises(InvalidArgumentError, match="does not match"):
            forget_points((0j,), marked, E1)
        with pytest.raises(InvalidArgumentError, match="not a subset"):
            forget_points(tuple(marked.points), marked, E1)

    def test_trace_needs_a_finite_set(self):
        with pytest.raises(InvalidArgumentError, match="finite sets"):
            trace_map(maximal_example_motion(), (1j, 0j))


class TestNormalizeMotion:
    def test_normalizing_by_the_marked_points_changes_nothing(self, marked):
        phi = seeded_linear_motion(marked, seed=2)
        hat = normalize_motion(phi, 0j, 1 + 0j, INF)
        x = 0.3 - 0.4j
        for a, b in zip(hat(x), phi(x), strict=True):
            assert same_point(a, b) or abs(a - b) < 1e-12

    def test_normalizing_points_must_move(self, marked):
        phi = seeded_linear_motion(marked, seed=2)
        with pytest.raises(InvalidArgumentError, match="not a point"):
            normalize_motion(phi, 0j, 1 + 0j, 7j)

    def test_non_identity_triple_is_exact_at_the_normalized_points(self):
        E = SetModel.finite_points([0, 1, INF, 2, 3j])
        phi = linear_motion(E, [0j, 0j, 0j, 0.3 + 0j, 0.2 + 0.1j])
        hat = normalize_motion(phi, 2 + 0j, 3j, INF)
        x = 0.4 + 0.2j
        out = hat(x, np.array([0j, 1 + 0j, INF]))
        assert out[0] == 0
        assert out[1] == 1
        assert is_infinite(out[2])

    def test_non_identity_triple_matches_the_direct_formula(self):
        E = SetModel.finite_points([0, 1, INF, 2, 3j])
        phi = linear_motion(E, [0j, 0j, 0j, 0.3 + 0j, 0.2 + 0.1j])
        hat = normalize_motion(phi, 2 + 0j, 3j, INF)
        x = 0.4 + 0.2j
        m0 = moebius_from_triple(2 + 0j, 3j, INF)
        m_x = moebius_from_triple(phi.at(x, 2 + 0j), phi.at(x, 3j), INF)
        for z in (0j, 1 + 0j):
            assert hat.at(x, m0(z)) == pytest.approx(m_x(phi.at(x, z)), abs=1e-12)


class TestMaximalExample:
    """The explicit motion over B = {|e^{i alpha}| + |beta| < 1}."""

    def test_basepoint_is_identity(self):
        phi = maximal_example_motion()
        assert np.array_equal(phi((1j, 0j)), phi.points)

    def test_certificate_inside_the_domain(self):
        phi = maximal_example_motion()
        cert = maximal_example_certificate(phi, (1 + 0.5j, 0.2 + 0j))
        assert cert.passed
        assert cert.bound == pytest.approx(math.exp(-0.5) + 0.2)
        assert cert.inner_max_modulus < 1

    def test_evaluates_every_sample_point(self):
        phi = maximal_example_motion()
        x = (1 + 0.5j, 0.2 + 0j)
        out = phi(x)
        points = phi.points
        outer = np.array([is_infinite(p) or abs(p) > 0.5 for p in points])
        for p, w in zip(points[outer], out[outer], strict=True):
            assert same_point(p, w)
        assert np.all(np.abs(out[~outer]) < 1)

    def test_rounded_unit_circle_points_stay_fixed(self):
        phi = maximal_example_motion()
        z = np.array([(1 - 1e-16) * np.exp(0.3j), np.exp(2.1j)])
        assert np.array_equal(phi((1 + 0.5j, 0.2 + 0j), z), z)

    def test_parameters_outside_the_domain(self):
        with pytest.raises(DomainError, match="outside"):
            maximal_example_motion()((0j, 0.5 + 0j))

    @pytest.mark.parametrize("coordinate", [0, 1])
    def test_holomorphic_in_each_coordinate(self, coordinate):
        phi = maximal_example_motion()
        report = holomorphy_probe_motion(phi, 0.2 + 0j, x0=(0.5 + 0.3j, 0.1 + 0j), coordinate=coordinate)
        assert report.passed

    def test_rejects_unknown_coordinate(self):
        with pytest.raises(InvalidArgumentError, match="coordinate"):
            holomorphy_probe_motion(maximal_example_motion(), 0.2 + 0j, x0=(0.5 + 0.3j, 0.1 + 0j), coordinate=2)

    def test_certificate_is_for_the_maximal_example(self, marked):
        with pytest.raises(InvalidArgumentError, match="maximal example"):
            maximal_example_certificate(seeded_linear_motion(marked, seed=1), (1j, 0j))


class TestSolverBackedMotions:
    def test_universal_motion_of_zero_is_the_identity(self, marked):
        mu = BeltramiField.zeros(make_grid(4.0, 64))
        assert universal_motion_eval(mu, -1 + 0j, marked) == pytest.approx(-1, abs=1e-10)
        assert is_infinite(universal_motion_eval(mu, INF, marked))
        with pytest.raises(InvalidArgumentError, match="not a point"):
            universal_motion_eval(mu, 2j, marked)

    def test_direction_needs_unit_norm(self, marked):
        grid = make_grid(4.0, 64)
        direction = GridField.from_function(grid, lambda z: 0.5 * np.exp(-np.abs(z) ** 2) * (np.abs(z) < 1))
        with pytest.raises(InvalidArgumentError, match="sup-norm 1"):
            wtmu_motion(direction, marked)

"""
Unit tests for polyline Jordan curves, finite-motion extension and curve families.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.beltrami import BumpFlow, BumpTranslation, Disk, SetModel
from src.core.errors import InvalidArgumentError
from src.core.grids import make_grid
from src.core.jordan import (
    MARKED_TOL,
    JordanCurve,
    extend_finite_motion,
    jordan_check,
    kobayashi_bound,
    poincare_distance,
    recovered_norm,
    theorem_c_report,
    trace_curve,
)
from src.core.moebius import INF
from src.core.motions import DEFAULT_MARKED, Motion, ParameterDomain, linear_motion
from src.core.solver import QuasiconformalMap


@pytest.fixture
def grid():
    return make_grid(4.0, 128)


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------

class TestJordanCurve:
    """Construction rules for closed polylines."""

    def test_needs_three_vertices(self):
        with pytest.raises(InvalidArgumentError, match="at least 3"):
            JordanCurve(np.array([0j, 1 + 0j]))

    def test_infinity_at_most_once(self):
        with pytest.raises(InvalidArgumentError, match="at most once"):
            JordanCurve(np.array([1 + 0j, INF, 2j, INF]))

    def test_consecutive_vertices_differ(self):
        with pytest.raises(InvalidArgumentError, match="coincide"):
            JordanCurve(np.array([0j, 1 + 0j, 1 + 0j, 1j]))

    def test_zero_cannot_neighbour_infinity(self):
        with pytest.raises(InvalidArgumentError, match="cannot be 0"):
            JordanCurve(np.array([0j, INF, 1j]))

    def test_marked_indices(self):
        gamma = JordanCurve(np.array([1, 1j, -1, -1j]))
        assert gamma.marked_indices(np.array([1 + 0j, -1 + 0j])) == [0, 2]
        with pytest.raises(InvalidArgumentError, match="not a vertex"):
            gamma.marked_indices(np.array([2 + 0j]))


class TestJordanCheck:
    """Simplicity of closed polylines on the sphere."""

    @pytest.mark.parametrize("n", [3, 4, 64])
    def test_regular_polygons_are_simple(self, n):
        assert jordan_check(JordanCurve.regular_polygon(n))

    def test_bowtie_is_not_simple(self):
        assert not jordan_check(JordanCurve(np.array([-1 - 1j, 1 + 1j, 1 - 1j, -1 + 1j])))

    def test_touching_vertex_is_not_simple(self):
        # The fourth vertex lies on the first edge.
        assert not jordan_check(JordanCurve(np.array([0j, 2 + 0j, 1 + 1j, 1 + 0j, 1 - 1j])))

    def test_fold_back_is_not_simple(self):
        assert not jordan_check(JordanCurve(np.array([0j, 2 + 0j, 1 + 0j, 1 + 1j])))

    def test_extended_real_line_is_simple(self):
        assert jordan_check(JordanCurve.real_line())

    def test_rays_through_infinity_may_cross(self):
        # The ray from 1 through infinity crosses the edge from 2 + i to 2 - i.
        gamma = JordanCurve(np.array([1 + 0j, INF, -1 + 0j, 2 + 1j, 2 - 1j]))
        assert not jordan_check(gamma)

    @given(st.lists(st.floats(-0.2, 0.2), min_size=32, max_size=32))
    def test_star_shaped_polygons_are_simple(self, wobble):
        t = 2 * np.pi * np.arange(32) / 32
        r = 1.0 + np.array(wobble)
        assert jordan_check(JordanCurve(r * np.exp(1j * t)))

    def test_identity_trace(self, grid):
        gamma = JordanCurve.regular_polygon(8)
        traced = trace_curve(QuasiconformalMap.identity(grid), gamma)
        assert np.max(np.abs(traced.vertices - gamma.vertices)) < 1e-12


# ---------------------------------------------------------------------------
# Extension of finite motions
# ---------------------------------------------------------------------------

class TestExtendFiniteMotion:
    """Bump-flow extensions of finite motions."""

    @pytest.fixture
    def E(self):
        return SetModel.finite_points([0, 1, INF, -1, 0.5j])

    def test_no_motion_gives_identity(self, E, grid):
        w = extend_finite_motion(E, list(E.points), grid)
        assert w.mu is None or w.mu.sup_norm == 0.0
        assert w.evaluate(0.5j) == pytest.approx(0.5j)

    def test_moves_points_onto_targets(self, E, grid):
        targets = [0, 1, INF, -1 + 0.1j, 0.55j + 0.05]
        w = extend_finite_motion(E, targets, grid)
        assert abs(w.evaluate(-1 + 0j) - (-1 + 0.1j)) <= MARKED_TOL
        assert abs(w.evaluate(0.5j) - (0.05 + 0.55j)) <= MARKED_TOL
        assert w.evaluate(0j) == 0

    def test_marked_points_must_stay(self, E, grid):
        with pytest.raises(InvalidArgumentError, match="must stay fixed"):
            extend_finite_motion(E, [0, 1.1, INF, -1, 0.5j], grid)

    def test_targets_must_be_injective(self, E, grid):
        with pytest.raises(InvalidArgumentError, match="injective"):
            extend_finite_motion(E, [0, 1, INF, 0.5j, 0.5j], grid)

    def test_one_target_per_point(self, E, grid):
        with pytest.raises(InvalidArgumentError, match="targets given"):
            extend_finite_motion(E, [0, 1, INF], grid)

    def test_finite_sets_only(self, grid):
        E = SetModel.disk_complement([Disk(2 + 0j, 0.5)])
        with pytest.raises(InvalidArgumentError, match="finite sets only"):
            extend_finite_motion(E, [], grid)


# ---------------------------------------------------------------------------
# Curve families
# ---------------------------------------------------------------------------

class TestKobayashi:
    @given(st.complex_numbers(max_magnitude=0.99, allow_nan=False, allow_infinity=False))
    def test_bound_equals_modulus(self, x):
        assert kobayashi_bound(x) == pytest.approx(abs(x), abs=1e-12)

    def test_distance(self):
        assert poincare_distance(0.5) == pytest.approx(0.5 * math.log(3))

    def test_outside_the_disk(self):
        with pytest.raises(InvalidArgumentError, match="outside the unit disk"):
            poincare_distance(1.0)


class TestCurveFamily:
    def test_bump_family_member(self, grid):
        E = SetModel.finite_points(DEFAULT_MARKED)
        moving = {-1 + 0j: 0.2j, 0.5j: 0.1 + 0j}
        phi = linear_motion(E, [moving.get(p, 0j) for p in E.points])
        gamma0 = JordanCurve(np.array([-1, 0, 0.5j, 0.5 + 0.5j, 1, INF], dtype=complex))
        report = theorem_c_report(phi, gamma0, 0.5 + 0j, grid)
        assert report.marked_residual <= MARKED_TOL
        assert report.jordan
        assert not report.norm_asserted
        assert report.passed

    def test_norm_is_read_from_the_corrected_map(self, grid):
        E = SetModel.finite_points(DEFAULT_MARKED)
        bump = BumpTranslation(1.5 + 1.5j, 0.5, 0.1)
        phi = Motion(
            domain=ParameterDomain.DISK,
            basepoint=0j,
            points=np.array(E.points, dtype=complex),
            evaluator=lambda x, z: z,
            set_model=E,
            extension=lambda x: QuasiconformalMap.identity(grid).with_correction(bump.evaluate),
        )
        gamma0 = JordanCurve(np.array([-1, 0, 0.5j, 0.5 + 0.5j, 1, INF], dtype=complex))
        report = theorem_c_report(phi, gamma0, 0.5 + 0j, grid)
        assert report.norm_asserted
        assert report.input_norm == 0
        assert report.norm > 0.01
        assert report.marked_residual <= MARKED_TOL


class TestRecoveredNorm:
    """sup |mu| of a sampled map, post-corrections included."""

    def test_identity_has_zero_norm(self, grid):
        assert recovered_norm(QuasiconformalMap.identity(grid)) == 0

    def test_correction_shows_up(self, grid):
        bump = BumpTranslation(1.5 + 1.5j, 0.5, 0.1)
        w = QuasiconformalMap.identity(grid).with_correction(bump.evaluate)
        expected = BumpFlow.single([bump]).beltrami(grid).sup_norm
        assert recovered_norm(w) == pytest.approx(expected, rel=0.3)

"""
Unit tests for sphere points and Moebius transformations.
"""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from src.core.errors import DomainError, InvalidArgumentError
from src.core.moebius import (
    INF,
    MoebiusTransform,
    chordal_distance,
    circumcircle,
    disk_automorphism,
    image_circle,
    is_disk_automorphism,
    is_infinite,
    moebius_from_triple,
    reciprocal,
    same_point,
    sphere_array,
    to_sphere,
    triple_to_triple,
)

finite_points = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)
disk_points = st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False)


# ---------------------------------------------------------------------------
# Sphere points
# ---------------------------------------------------------------------------

class TestSpherePoints:
    """Infinity handling and the chordal metric."""

    def test_all_infinities_coincide(self):
        assert same_point(complex(math.inf, 5.0), INF)
        assert same_point(complex(0.0, -math.inf), INF)
        assert not same_point(INF, 1e300)

    def test_sphere_array_canonicalizes_infinity(self):
        arr = sphere_array([1, complex(0, math.inf)])
        assert arr[1] == INF

    def test_chordal_distance_to_infinity(self):
        assert float(chordal_distance(0j, INF)) == pytest.approx(2.0)
        assert float(chordal_distance(INF, INF)) == 0.0

    @given(finite_points, finite_points)
    def test_lift_distance_is_chordal(self, z, w):
        lifted = to_sphere(np.array([z, w]))
        assert np.linalg.norm(lifted[0] - lifted[1]) == pytest.approx(
            float(chordal_distance(z, w)), abs=1e-12
        )

    def test_reciprocal_swaps_zero_and_infinity(self):
        out = reciprocal(np.array([0j, INF, 2j]))
        assert is_infinite(out[0])
        assert out[1] == 0
        assert out[2] == pytest.approx(-0.5j)


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------

class TestMoebiusTransform:
    """Matrix algebra and evaluation."""

    def test_singular_matrix_rejected(self):
        with pytest.raises(InvalidArgumentError, match="singular"):
            MoebiusTransform(1, 2, 2, 4)

    def test_infinity_and_pole(self):
        m = MoebiusTransform(0, 1, 1, 0)
        assert is_infinite(m.apply(0))
        assert m.apply(INF) == 0
        assert m.pole == 0

    def test_affine_fixes_infinity(self):
        m = MoebiusTransform.affine(2, 1)
        assert m.fixes_infinity
        assert m(3) == pytest.approx(7)
        assert is_infinite(m(INF))

    @given(disk_points, disk_points, st.floats(0, 2 * math.pi))
    @settings(max_examples=50)
    def test_inverse_undoes_the_map(self, z, a, theta):
        m = disk_automorphism(a, theta)
        assert abs(m.inverse()(m(z)) - z) < 1e-9 * (1 + abs(z))

    def test_composition_order(self):
        f = MoebiusTransform.affine(2)
        g = MoebiusTransform.affine(1, 3)
        assert (f @ g)(1) == pytest.approx(8)
        assert (g @ f)(1) == pytest.approx(5)

    def test_apply_array_matches_apply(self):
        m = MoebiusTransform(1, 1j, 2, 3)
        z = np.array([0.5, -1.5, INF, 1j])
        expected = [m.apply(complex(p)) for p in z]
        assert all(same_point(a, b) or abs(a - b) < 1e-14 for a, b in zip(m.apply_array(z), expected, strict=True))

    def test_derivative_raises_at_the_pole(self):
        with pytest.raises(DomainError, match="pole"):
            MoebiusTransform(0, 1, 1, 0).derivative(0)

    def test_exact_pole_after_rescaling(self):
        m = MoebiusTransform(1, 1j, 2, 3)
        assert is_infinite(m.apply(-1.5 + 0j))
        assert is_infinite(m.apply_array(np.array([-1.5 + 0j]))[0])
        with pytest.raises(DomainError, match="pole"):
            m.derivative(-1.5 + 0j)


class TestTriples:
    """Cross-ratio normalization."""

    def test_swap_zero_and_one(self):
        m = moebius_from_triple(1, 0, INF)
        assert m(0.25) == pytest.approx(0.75)

    def test_two_goes_to_infinity(self):
        m = moebius_from_triple(0, 1, 2)
        assert abs(m(0)) < 1e-15
        assert m(1) == pytest.approx(1)
        assert float(chordal_distance(m(2), INF)) < 1e-12
        assert m(0.5) == pytest.approx(0.5 / 1.5)

    @pytest.mark.parametrize(
        "triple",
        [(INF, 2, 3j), (1j, INF, 2), (5, -1, INF), (0.3, 2j, -4)],
    )
    def test_triple_images_are_exact(self, triple):
        m = moebius_from_triple(*triple)
        assert abs(m(triple[0])) < 1e-14
        assert float(chordal_distance(m(triple[2]), INF)) < 1e-12
        assert abs(m(triple[1]) - 1) < 1e-14

    def test_repeated_points_rejected(self):
        with pytest.raises(InvalidArgumentError, match="distinct"):
            moebius_from_triple(1, 1, 2)

    def test_triple_to_triple(self):
        source, target = (0j, 1 + 0j, 2j), (3 + 0j, -1j, 4 + 1j)
        m = triple_to_triple(source, target)
        for s, t in zip(source, target, strict=True):
            assert abs(m(s) - t) < 1e-12

    @given(finite_points, finite_points, finite_points)
    @settings(max_examples=100)
    def test_finite_triples_map_exactly(self, a, b, c):
        assume(min(abs(a - b), abs(b - c), abs(a - c)) > 1e-3)
        m = moebius_from_triple(a, b, c)
        assert m(a) == 0
        assert m(b) == 1
        assert is_infinite(m(c))
        inverse = m.inverse()
        assert inverse(0j) == a
        assert inverse(1 + 0j) == b
        assert inverse(INF) == c
        assert m.pole == c

    def test_imaginary_first_point(self):
        m = moebius_from_triple(3j, 0, INF)
        assert m(3j) == 0
        assert m(0j) == 1

    def test_triple_to_triple_is_exact(self):
        source, target = (2 + 0j, 3j, INF), (0.1 + 0.7j, -2 + 0j, 5j)
        m = triple_to_triple(source, target)
        for s, t in zip(source, target, strict=True):
            assert m(s) == t


class TestDiskAutomorphisms:
    """Disk automorphisms and circle images."""

    def test_automorphism_preserves_the_circle(self):
        m = disk_automorphism(0.4 - 0.3j, 1.1)
        assert is_disk_automorphism(m)
        assert abs(m(0.4 - 0.3j)) < 1e-15

    def test_rejects_center_outside_the_disk(self):
        with pytest.raises(InvalidArgumentError, match=r"\|a\| < 1"):
            disk_automorphism(1.0)

    def test_circumcircle(self):
        center, radius = circumcircle(1 + 0j, 1j, -1 + 0j)
        assert abs(center) < 1e-14
        assert radius == pytest.approx(1.0)

    def test_collinear_points_raise(self):
        with pytest.raises(DomainError, match="collinear"):
            circumcircle(0j, 1 + 0j, 2 + 0j)

    def test_image_circle_under_negation(self):
        center, radius, interior = image_circle(MoebiusTransform.affine(-1), 4 + 0j, 1.0)
        assert center == pytest.approx(-4)
        assert radius == pytest.approx(1.0)
        assert interior

    def test_image_circle_flags_pole_inside(self):
        _, _, interior = image_circle(MoebiusTransform(0, 1, 1, 0), 0.5 + 0j, 1.0)
        assert not interior

    def test_pole_on_circle_raises(self):
        with pytest.raises(DomainError, match="line"):
            image_circle(MoebiusTransform(0, 1, 1, 0), 1 + 0j, 1.0)

    def test_lifted_points_sit_on_the_unit_sphere(self):
        pts = to_sphere(np.array([0j, 3 - 2j, INF]))
        assert_allclose(np.linalg.norm(pts, axis=1), 1.0)

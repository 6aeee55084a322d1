"""
Closed polylines on the sphere and their simplicity test.

An edge between finite vertices is a straight segment. An edge to the
vertex at infinity is straight in the chart u = 1/z, i.e. the radial ray
{t v : t >= 1} from its finite endpoint v.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import InvalidArgumentError
from ..moebius import is_infinite, same_point, sphere_array
from ..solver import QuasiconformalMap

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class JordanCurve:
    """Closed polyline through ``vertices`` (infinity allowed, at most once)."""

    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = sphere_array(self.vertices)
        n = v.size
        if n < 3:
            raise InvalidArgumentError("a closed curve needs at least 3 vertices")
        inf = np.asarray(is_infinite(v))
        if inf.sum() > 1:
            raise InvalidArgumentError("infinity may appear at most once")
        for k in range(n):
            if same_point(complex(v[k]), complex(v[(k + 1) % n])):
                raise InvalidArgumentError(f"consecutive vertices {k} and {(k + 1) % n} coincide")
        for k in np.flatnonzero(inf):
            for j in ((k - 1) % n, (k + 1) % n):
                if v[j] == 0:
                    raise InvalidArgumentError("a vertex next to infinity cannot be 0")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def regular_polygon(cls, n: int, radius: float = 1.0, center: complex = 0j) -> "JordanCurve":
        return cls(center + radius * np.exp(2j * np.pi * np.arange(n) / n))

    @classmethod
    def real_line(cls, half_length: float = 3.0, count: int = 13) -> "JordanCurve":
        """The extended real axis: vertices on [-a, a] closed through infinity."""
        return cls(np.concatenate([np.linspace(-half_length, half_length, count), [np.inf]]))

    @property
    def size(self) -> int:
        return int(self.vertices.size)

    def marked_indices(self, points: np.ndarray) -> list[int]:
        """Vertex index of each point; raises if some point is not a vertex."""
        indices = []
        for p in sphere_array(points):
            hits = [k for k, v in enumerate(self.vertices) if same_point(complex(v), complex(p))]
            if not hits:
                raise InvalidArgumentError(f"{p} is not a vertex of the curve")
            indices.append(hits[0])
        return indices


# ---------------------------------------------------------------------------
# Simplicity
# ---------------------------------------------------------------------------

def _segments(gamma: JordanCurve) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Endpoints of every edge in the finite chart (rays cut beyond all vertices)."""
    v = gamma.vertices
    n = v.size
    inf = np.asarray(is_infinite(v))
    finite = v[~inf]
    far = 4.0 * (float(np.max(np.abs(finite))) + 1.0)

    start = np.empty(n, dtype=complex)
    end = np.empty(n, dtype=complex)
    through_inf = np.zeros(n, dtype=bool)
    for k in range(n):
        a, b = v[k], v[(k + 1) % n]
        if is_infinite(a):
            a = far * b / abs(b)
            through_inf[k] = True
        if is_infinite(b):
            b = far * a / abs(a)
            through_inf[k] = True
        start[k], end[k] = a, b
    return start, end, through_inf


def _orient(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orientation determinant of (a, b, c) and a bound on its rounding error."""
    abx, aby = b.real - a.real, b.imag - a.imag
    acx, acy = c.real - a.real, c.imag - a.imag
    det = abx * acy - aby * acx
    err = 1e-14 * (np.abs(abx * acy) + np.abs(aby * acx))
    return det, err


def _exact_orient(a: complex, b: complex, c: complex) -> int:
    ax, ay = Fraction(a.real), Fraction(a.imag)
    bx, by = Fraction(b.real) - ax, Fraction(b.imag) - ay
    cx, cy = Fraction(c.real) - ax, Fraction(c.imag) - ay
    det = bx * cy - by * cx
    return (det > 0) - (det < 0)


def _on_segment(a: complex, b: complex, c: complex) -> bool:
    """c collinear with a, b lies on the closed segment [a, b]."""
    return (
        min(a.real, b.real) <= c.real <= max(a.real, b.real)
        and min(a.imag, b.imag) <= c.imag <= max(a.imag, b.imag)
    )


def _exact_intersect(p1: complex, p2: complex, q1: complex, q2: complex) -> bool:
    o1 = _exact_orient(p1, p2, q1)
    o2 = _exact_orient(p1, p2, q2)
    o3 = _exact_orient(q1, q2, p1)
    o4 = _exact_orient(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _on_segment(p1, p2, q1))
        or (o2 == 0 and _on_segment(p1, p2, q2))
        or (o3 == 0 and _on_segment(q1, q2, p1))
        or (o4 == 0 and _on_segment(q1, q2, p2))
    )


def _folds_back(a: complex, b: complex, c: complex) -> bool:
    """Consecutive edges a-b and b-c overlap beyond their shared vertex."""
    if _exact_orient(a, b, c) != 0:
        return False
    return (a - b).real * (c - b).real + (a - b).imag * (c - b).imag > 0


def jordan_check(gamma: JordanCurve) -> bool:
    """True iff the closed polyline is simple."""
    start, end, through_inf = _segments(gamma)
    n = start.size

    i, j = np.triu_indices(n, k=1)
    adjacent = (j == i + 1) | ((i == 0) & (j == n - 1))
    # Edges that meet only at infinity are tested as ordinary pairs.
    shares_finite = adjacent & ~(through_inf[i] & through_inf[j])
    pairs = ~shares_finite
    i, j = i[pairs], j[pairs]

    p1, p2, q1, q2 = start[i], end[i], start[j], end[j]
    o1, e1 = _orient(p1, p2, q1)
    o2, e2 = _orient(p1, p2, q2)
    o3, e3 = _orient(q1, q2, p1)
    o4, e4 = _orient(q1, q2, p2)
    sure = (np.abs(o1) > e1) & (np.abs(o2) > e2) & (np.abs(o3) > e3) & (np.abs(o4) > e4)
    crossing = sure & (o1 * o2 < 0) & (o3 * o4 < 0)
    if np.any(crossing):
        logger.debug("Curve self-intersects", extra={"pairs": int(crossing.sum())})
        return False

    for k in np.flatnonzero(~sure):
        if _exact_intersect(complex(p1[k]), complex(p2[k]), complex(q1[k]), complex(q2[k])):
            return False

    v = gamma.vertices
    for k in range(n):
        if is_infinite(v[k]):
            continue
        if _folds_back(complex(start[k - 1]), complex(v[k]), complex(end[k])):
            return False
    return True


def trace_curve(w: QuasiconformalMap, gamma0: JordanCurve) -> JordanCurve:
    """Vertexwise image w(gamma0)."""
    return JordanCurve(w.evaluate_array(gamma0.vertices))

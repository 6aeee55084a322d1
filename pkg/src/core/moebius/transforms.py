"""
Moebius transformations as unit-determinant 2x2 complex matrices.

Composition is the matrix product; triples are normalized by the
cross-ratio construction so that M(a) = 0, M(b) = 1, M(c) = infinity exactly.
Evaluation uses the entries as given (before determinant scaling), and
anchored points map to their recorded images bit for bit.
"""

import cmath
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, InvalidArgumentError
from .sphere import INF, is_infinite, same_point

Anchor = tuple[complex, complex]


@dataclass(frozen=True)
class MoebiusTransform:
    """z -> (a z + b) / (c z + d), stored with ad - bc = 1."""

    a: complex
    b: complex
    c: complex
    d: complex
    anchors: tuple[Anchor, ...] = field(default=(), repr=False, compare=False)
    _raw: tuple[complex, complex, complex, complex] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        if not all(np.isfinite(v) for v in (a, b, c, d)):
            raise InvalidArgumentError("matrix entries must be finite")
        det = a * d - b * c
        if det == 0:
            raise InvalidArgumentError("singular matrix: ad - bc = 0")
        object.__setattr__(self, "_raw", (a, b, c, d))
        s = cmath.sqrt(det)
        object.__setattr__(self, "a", a / s)
        object.__setattr__(self, "b", b / s)
        object.__setattr__(self, "c", c / s)
        object.__setattr__(self, "d", d / s)
        anchors = tuple(
            (INF if is_infinite(p) else complex(p), INF if is_infinite(q) else complex(q))
            for p, q in self.anchors
        )
        object.__setattr__(self, "anchors", anchors)

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls) -> "MoebiusTransform":
        return cls(1, 0, 0, 1)

    @classmethod
    def affine(cls, scale: complex, shift: complex = 0) -> "MoebiusTransform":
        """z -> scale * z + shift."""
        return cls(scale, shift, 0, 1)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "MoebiusTransform":
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    # -- algebra ------------------------------------------------------------

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def compose(self, other: "MoebiusTransform") -> "MoebiusTransform":
        """self after other; anchors of other are carried through self."""
        anchors = tuple((p, self.apply(q)) for p, q in other.anchors)
        return MoebiusTransform(*(self.matrix @ other.matrix).ravel(), anchors=anchors)

    def __matmul__(self, other: "MoebiusTransform") -> "MoebiusTransform":
        return self.compose(other)

    def inverse(self) -> "MoebiusTransform":
        a, b, c, d = self._raw
        return MoebiusTransform(d, -b, -c, a, anchors=tuple((q, p) for p, q in self.anchors))

    @property
    def pole(self) -> complex:
        """Preimage of infinity."""
        for p, q in self.anchors:
            if is_infinite(q):
                return p
        _, _, c, d = self._raw
        return INF if c == 0 else -d / c

    @property
    def fixes_infinity(self) -> bool:
        return self.c == 0

    def _at_infinity(self) -> complex:
        a, _, c, _ = self._raw
        return INF if c == 0 else a / c

    # -- evaluation ---------------------------------------------------------

    def apply(self, z: complex) -> complex:
        """Image of a sphere point; infinity maps to a/c, the pole to infinity."""
        for p, q in self.anchors:
            if same_point(z, p):
                return q
        if is_infinite(z):
            return self._at_infinity()
        z = complex(z)
        a, b, c, d = self._raw
        den = c * z + d
        if den == 0 or (c != 0 and z == -d / c):
            return INF
        return (a * z + b) / den

    def __call__(self, z: complex) -> complex:
        return self.apply(z)

    def apply_array(self, z: np.ndarray) -> np.ndarray:
        """Vectorized apply with the same infinity and anchor conventions."""
        z = np.asarray(z, dtype=complex)
        inf = np.asarray(is_infinite(z))
        zf = np.where(inf, 0.0, z)
        a, b, c, d = self._raw
        den = c * zf + d
        pole = (den == 0) & ~inf
        if c != 0:
            pole |= (zf == -d / c) & ~inf
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (a * zf + b) / np.where(pole, 1.0, den)
        out = np.where(pole, INF, out)
        out = np.where(inf, self._at_infinity(), out)
        for p, q in self.anchors:
            hit = inf if is_infinite(p) else (zf == p) & ~inf
            out = np.where(hit, q, out)
        return out

    def derivative(self, z: complex | np.ndarray) -> complex | np.ndarray:
        """g'(z) = (ad - bc)/(cz + d)^2; raises at the pole."""
        if np.any(np.asarray(is_infinite(z))):
            raise DomainError("derivative requested at the pole or at infinity")
        zz = np.asarray(z, dtype=complex)
        a, b, c, d = self._raw
        den = c * zz + d
        at_pole = den == 0
        if c != 0:
            at_pole = at_pole | (zz == -d / c)
        pole = self.pole
        if not is_infinite(pole):
            at_pole = at_pole | (zz == pole)
        if np.any(at_pole):
            raise DomainError("derivative requested at the pole or at infinity")
        out = (a * d - b * c) / den ** 2
        return complex(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# Triples
# ---------------------------------------------------------------------------

def _distinct(*points: complex) -> None:
    for i, p in enumerate(points):
        for q in points[i + 1 :]:
            if same_point(p, q):
                raise InvalidArgumentError(f"points must be pairwise distinct, got {points}")


def moebius_from_triple(a: complex, b: complex, c: complex) -> MoebiusTransform:
    """The unique M with M(a) = 0, M(b) = 1, M(c) = infinity."""
    _distinct(a, b, c)
    anchors = ((a, 0j), (b, 1 + 0j), (c, INF))
    if is_infinite(a):
        return MoebiusTransform(0, b - c, 1, -c, anchors=anchors)
    if is_infinite(b):
        return MoebiusTransform(1, -a, 1, -c, anchors=anchors)
    if is_infinite(c):
        return MoebiusTransform(1, -a, 0, b - a, anchors=anchors)
    return MoebiusTransform(b - c, -a * (b - c), b - a, -c * (b - a), anchors=anchors)


def normalizer_fixing_triple(w0: complex, w1: complex, winf: complex) -> MoebiusTransform:
    """Post-composition normalizer sending the images of 0, 1, infinity back to 0, 1, infinity."""
    return moebius_from_triple(w0, w1, winf)


def triple_to_triple(
    source: tuple[complex, complex, complex],
    target: tuple[complex, complex, complex],
) -> MoebiusTransform:
    """The unique M with M(source[i]) = target[i]."""
    return moebius_from_triple(*target).inverse() @ moebius_from_triple(*source)


# ---------------------------------------------------------------------------
# Disk automorphisms and circles
# ---------------------------------------------------------------------------

def disk_automorphism(a: complex, theta: float = 0.0) -> MoebiusTransform:
    """z -> e^{i theta} (z - a) / (1 - conj(a) z), |a| < 1."""
    if abs(a) >= 1:
        raise InvalidArgumentError("disk automorphism needs |a| < 1")
    rot = cmath.exp(1j * theta)
    return MoebiusTransform(rot, -rot * a, -complex(a).conjugate(), 1)


def is_disk_automorphism(m: MoebiusTransform, tol: float = 1e-10) -> bool:
    zeta = np.exp(2j * np.pi * np.arange(8) / 8)
    on_circle = np.all(np.abs(np.abs(m.apply_array(zeta)) - 1.0) < tol)
    inside = abs(m.apply(0)) < 1 if not is_infinite(m.apply(0)) else False
    return bool(on_circle and inside)


def circumcircle(z1: complex, z2: complex, z3: complex) -> tuple[complex, float]:
    """Center and radius of the circle through three finite points."""
    w = (z3 - z1) / (z2 - z1)
    if abs(w.imag) < 1e-14 * max(1.0, abs(w)):
        raise DomainError("points are collinear; the image is a line")
    center = (z2 - z1) * (w - abs(w) ** 2) / (2j * w.imag) + z1
    return center, abs(z1 - center)


def image_circle(
    m: MoebiusTransform, center: complex, radius: float
) -> tuple[complex, float, bool]:
    """
    Image of the circle |z - center| = radius under m.

    Returns (center', radius', interior_to_interior); the last flag is False
    when the pole lies inside the disk, so the open disk maps to the exterior.
    """
    pole = m.pole
    if not is_infinite(pole) and abs(abs(pole - center) - radius) < 1e-12 * max(radius, 1.0):
        raise DomainError("the pole lies on the circle; the image is a line")
    pts = center + radius * np.exp(2j * np.pi * np.array([0.0, 1.0, 2.0]) / 3.0)
    images = m.apply_array(pts)
    c2, r2 = circumcircle(*(complex(w) for w in images))
    interior = is_infinite(pole) or abs(pole - center) > radius
    return c2, r2, bool(interior)

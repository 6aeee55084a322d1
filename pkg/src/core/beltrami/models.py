"""
Beltrami coefficients and set models.

These are value objects: immutable, validated on construction.
"""

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import InvalidArgumentError
from ..grids import ComplexGrid, GridField
from ..moebius import INF, chordal_distance, is_infinite, same_point

# Nodes this close to the declared support circle count as inside it.
_SUPPORT_SLACK = 1e-12


# ---------------------------------------------------------------------------
# Beltrami coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BeltramiField:
    """
    A sampled Beltrami coefficient with sup-norm < 1.

    Samples vanish outside the declared support radius.
    """

    samples: GridField
    support_radius: float

    def __post_init__(self) -> None:
        if self.support_radius < 0:
            raise InvalidArgumentError("support radius cannot be negative")
        if self.samples.sup_norm >= 1.0:
            raise InvalidArgumentError(
                f"Beltrami coefficient must have sup-norm < 1, got {self.samples.sup_norm:.6f}"
            )
        outside = self.samples.grid.radii > self.support_radius + _SUPPORT_SLACK
        if np.any(self.samples.values[outside] != 0):
            raise InvalidArgumentError("samples must vanish outside the declared support radius")

    @classmethod
    def zeros(cls, grid: ComplexGrid) -> "BeltramiField":
        return cls(GridField.zeros(grid), 0.0)

    @classmethod
    def from_values(
        cls, grid: ComplexGrid, values: np.ndarray, support_radius: float | None = None
    ) -> "BeltramiField":
        """Wrap node samples; the support radius is read off the data when omitted."""
        samples = GridField(grid, values)
        if support_radius is None:
            support_radius = samples.support_radius
        return cls(samples, support_radius)

    @classmethod
    def from_function(
        cls,
        grid: ComplexGrid,
        fn: Callable[[np.ndarray], np.ndarray],
        support_radius: float,
    ) -> "BeltramiField":
        """Sample fn on nodes with |z| <= support_radius, zero elsewhere."""
        z = grid.nodes
        inside = grid.radii <= support_radius + _SUPPORT_SLACK
        values = np.zeros(grid.shape, dtype=np.complex128)
        values[inside] = np.broadcast_to(fn(z), grid.shape)[inside]
        return cls(GridField(grid, values), support_radius)

    @property
    def grid(self) -> ComplexGrid:
        return self.samples.grid

    @property
    def values(self) -> np.ndarray:
        return self.samples.values

    @property
    def sup_norm(self) -> float:
        return self.samples.sup_norm

    def scaled(self, t: complex) -> "BeltramiField":
        """t * mu (the caller keeps |t| * ||mu|| < 1)."""
        return BeltramiField(self.samples.scale(t), self.support_radius)


# ---------------------------------------------------------------------------
# Set models
# ---------------------------------------------------------------------------

class SetKind(str, Enum):
    """How a closed set E of the sphere is described."""
    FINITE_POINTS = "finite-points"
    DISK_COMPLEMENT = "disk-complement"


@dataclass(frozen=True)
class Disk:
    """Open round disk D(center, radius)."""

    center: complex
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise InvalidArgumentError("disk radius must be positive")

    def contains(self, z: np.ndarray | complex) -> np.ndarray:
        """Strict open-disk test; infinity is never inside."""
        z = np.asarray(z, dtype=complex)
        with np.errstate(invalid="ignore"):
            inside = np.abs(z - self.center) < self.radius
        return inside & ~np.asarray(is_infinite(z))

    def to_chart(self, z: np.ndarray | complex) -> np.ndarray:
        """Affine chart (z - c)/r onto the unit disk."""
        return (np.asarray(z, dtype=complex) - self.center) / self.radius

    def from_chart(self, zeta: np.ndarray | complex) -> np.ndarray:
        return self.center + self.radius * np.asarray(zeta, dtype=complex)

    def isclose(self, other: "Disk", tol: float = 1e-9) -> bool:
        return abs(self.center - other.center) < tol and abs(self.radius - other.radius) < tol


_MARKED = (0j, 1 + 0j, INF)


@dataclass(frozen=True)
class SetModel:
    """A closed set E containing 0, 1 and infinity."""

    kind: SetKind
    points: tuple[complex, ...] = ()
    disks: tuple[Disk, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is SetKind.FINITE_POINTS:
            self._validate_points()
        else:
            self._validate_disks()

    def _validate_points(self) -> None:
        pts = self.points
        for marked in _MARKED:
            if not any(same_point(p, marked) for p in pts):
                raise InvalidArgumentError("finite set must contain 0, 1 and infinity")
        for i, p in enumerate(pts):
            for q in pts[i + 1 :]:
                if same_point(p, q):
                    raise InvalidArgumentError(f"duplicate point {p} in finite set")

    def _validate_disks(self) -> None:
        if not self.disks:
            raise InvalidArgumentError("disk-complement set needs at least one disk")
        for d in self.disks:
            if d.contains(0j) or d.contains(1 + 0j):
                raise InvalidArgumentError("0 and 1 must lie in E, outside every disk")
        for i, d1 in enumerate(self.disks):
            for d2 in self.disks[i + 1 :]:
                if abs(d1.center - d2.center) <= d1.radius + d2.radius:
                    raise InvalidArgumentError("disks must be pairwise disjoint with positive separation")

    # -- constructors -------------------------------------------------------

    @classmethod
    def finite_points(cls, points: Iterable[complex]) -> "SetModel":
        return cls(SetKind.FINITE_POINTS, points=tuple(complex(p) for p in points))

    @classmethod
    def disk_complement(cls, disks: Iterable[Disk]) -> "SetModel":
        return cls(SetKind.DISK_COMPLEMENT, disks=tuple(disks))

    # -- queries ------------------------------------------------------------

    @property
    def component_count(self) -> int:
        return len(self.disks)

    def contains(self, z: np.ndarray | complex) -> np.ndarray:
        """Membership in E (boundary circles belong to E)."""
        z = np.asarray(z, dtype=complex)
        if self.kind is SetKind.DISK_COMPLEMENT:
            outside = np.ones(z.shape, dtype=bool)
            for d in self.disks:
                outside &= ~d.contains(z)
            return outside
        hits = np.zeros(z.shape, dtype=bool)
        for p in self.points:
            hits |= chordal_distance(z, p) < 1e-12
        return hits

    def disk_labels(self, grid: ComplexGrid) -> np.ndarray:
        """Index of the disk containing each node, -1 for nodes of E."""
        labels = np.full(grid.shape, -1, dtype=int)
        for i, d in enumerate(self.disks):
            labels[d.contains(grid.nodes)] = i
        return labels

    def index_of(self, point: complex) -> int:
        for i, p in enumerate(self.points):
            if same_point(p, point):
                return i
        raise InvalidArgumentError(f"{point} is not a point of E")

    def includes(self, other: "SetModel") -> bool:
        """other is a subset of self (finite sets only)."""
        return all(any(same_point(q, p) for p in self.points) for q in other.points)

    def matches(self, other: "SetModel", tol: float = 1e-9) -> bool:
        if self.kind is not other.kind:
            return False
        if self.kind is SetKind.FINITE_POINTS:
            return len(self.points) == len(other.points) and self.includes(other)
        return len(self.disks) == len(other.disks) and all(
            d1.isclose(d2, tol) for d1, d2 in zip(self.disks, other.disks, strict=True)
        )

"""
Uniform complex grids and sampled fields.

Nodes are stored row-major: values[k, j] lives at (-L + j*h) + i(-L + k*h),
so axis 0 is the imaginary direction and axis 1 the real direction.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import InvalidArgumentError


@dataclass(frozen=True)
class ComplexGrid:
    """Square grid [-L, L)^2 with N nodes per side."""

    half_width: float
    resolution: int

    def __post_init__(self) -> None:
        if not self.half_width > 0:
            raise InvalidArgumentError("half_width must be positive")
        n = self.resolution
        if n < 8 or n & (n - 1):
            raise InvalidArgumentError("resolution must be a power of two >= 8")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.resolution

    @property
    def shape(self) -> tuple[int, int]:
        return (self.resolution, self.resolution)

    @cached_property
    def axis(self) -> np.ndarray:
        """Real coordinates of the node columns (also the imaginary coordinates of the rows)."""
        return -self.half_width + self.spacing * np.arange(self.resolution)

    @cached_property
    def nodes(self) -> np.ndarray:
        x = self.axis
        return x[np.newaxis, :] + 1j * x[:, np.newaxis]

    @cached_property
    def radii(self) -> np.ndarray:
        return np.abs(self.nodes)

    def padded(self) -> "ComplexGrid":
        """Grid of twice the half-width at the same spacing."""
        return ComplexGrid(2.0 * self.half_width, 2 * self.resolution)

    def contains(self, z: np.ndarray | complex, margin: float = 0.0) -> np.ndarray:
        """Whether points lie inside the interpolation box [-L, L - h] shrunk by margin."""
        z = np.asarray(z, dtype=complex)
        lo = -self.half_width + margin
        hi = self.half_width - self.spacing - margin
        finite = np.isfinite(z)
        return (
            finite
            & (z.real >= lo) & (z.real <= hi)
            & (z.imag >= lo) & (z.imag <= hi)
        )

    def index_of(self, z: complex) -> tuple[int, int]:
        """(row, column) of the node nearest to z."""
        j = int(round((z.real + self.half_width) / self.spacing))
        k = int(round((z.imag + self.half_width) / self.spacing))
        if not (0 <= j < self.resolution and 0 <= k < self.resolution):
            raise InvalidArgumentError(f"{z} lies outside the grid")
        return (k, j)

    def same_as(self, other: "ComplexGrid") -> bool:
        return (
            self.resolution == other.resolution
            and abs(self.half_width - other.half_width) < 1e-12 * self.half_width
        )


def make_grid(half_width: float, resolution: int) -> ComplexGrid:
    """Build a grid with spacing 2L/N; node (0, 0) sits at -L - iL."""
    return ComplexGrid(float(half_width), int(resolution))


def covering_grid(reach: float, spacing: float, fraction: float = 1.0) -> ComplexGrid:
    """Smallest power-of-two grid at this spacing with reach <= fraction * L."""
    needed = 2.0 * reach / (fraction * spacing)
    n = max(8, 1 << math.ceil(math.log2(max(needed, 1.0))))
    return make_grid(0.5 * n * spacing, n)


@dataclass(frozen=True, eq=False)
class GridField:
    """One complex sample per grid node. The sample array is read-only."""

    grid: ComplexGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.complex128)
        if values.shape != self.grid.shape:
            raise InvalidArgumentError(
                f"expected {self.grid.shape} samples, got {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("field samples must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: ComplexGrid) -> "GridField":
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))

    @classmethod
    def from_function(
        cls, grid: ComplexGrid, fn: Callable[[np.ndarray], np.ndarray]
    ) -> "GridField":
        """Sample a vectorized function of z on the nodes."""
        return cls(grid, np.broadcast_to(fn(grid.nodes), grid.shape))

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    @property
    def support_radius(self) -> float:
        """Largest node radius carrying a nonzero sample (0 for the zero field)."""
        nonzero = self.values != 0
        if not np.any(nonzero):
            return 0.0
        return float(np.max(self.grid.radii[nonzero]))

    def with_values(self, values: np.ndarray) -> "GridField":
        return GridField(self.grid, values)

    def scale(self, factor: complex) -> "GridField":
        return GridField(self.grid, self.values * factor)


def taper(grid: ComplexGrid) -> np.ndarray:
    """Cosine rolloff window: 1 on |z| <= L/2, 0 on |z| >= 3L/4."""
    r = grid.radii
    inner = 0.5 * grid.half_width
    width = 0.25 * grid.half_width
    s = np.clip((r - inner) / width, 0.0, 1.0)
    return 0.5 * (1.0 + np.cos(np.pi * s))

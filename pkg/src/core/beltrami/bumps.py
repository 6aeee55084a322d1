"""
Smooth bump translations and their compositions.

A bump translation moves its center by ``shift`` and is the identity
outside D(center, radius). Its Wirtinger derivatives are analytic, so
compositions carry exact Beltrami coefficients through the chain rule.
"""

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError
from ..grids import ComplexGrid
from ..moebius import is_infinite
from .models import BeltramiField, Disk

# |shift| / radius bound; the profile's steepest slope keeps |mu| < 1/2 below it.
MAX_SHIFT_RATIO = 0.3


def _profile(q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """beta(q) = exp(1 - 1/(1 - q)) on q < 1 (zero beyond) and d beta / dq."""
    beta = np.zeros(q.shape)
    slope = np.zeros(q.shape)
    inside = q < 1.0
    t = 1.0 - q[inside]
    beta[inside] = np.exp(1.0 - 1.0 / t)
    slope[inside] = -beta[inside] / t ** 2
    return beta, slope


@dataclass(frozen=True)
class BumpTranslation:
    """h(z) = z + shift * beta(|z - center|^2 / radius^2)."""

    center: complex
    radius: float
    shift: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "shift", complex(self.shift))
        if not self.radius > 0:
            raise InvalidArgumentError("bump radius must be positive")
        if abs(self.shift) > MAX_SHIFT_RATIO * self.radius * (1 + 1e-12):
            raise InvalidArgumentError(
                f"shift {abs(self.shift):.3g} exceeds {MAX_SHIFT_RATIO} x radius {self.radius:.3g}"
            )

    @property
    def disk(self) -> Disk:
        return Disk(self.center, self.radius)

    def _offsets(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        d = np.where(np.asarray(is_infinite(z)), self.center + 2 * self.radius, z) - self.center
        beta, slope = _profile(np.abs(d) ** 2 / self.radius ** 2)
        return d, beta, slope

    def displacement(self, z: np.ndarray) -> np.ndarray:
        _, beta, _ = self._offsets(z)
        return self.shift * beta

    def derivative_terms(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(h_z - 1, h_zbar)."""
        d, _, slope = self._offsets(z)
        scale = self.shift * slope / self.radius ** 2
        return scale * np.conj(d), scale * d

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return z + self.displacement(z)


@dataclass(frozen=True)
class BumpStep:
    """Bump translations with pairwise disjoint closed disks, applied simultaneously."""

    bumps: tuple[BumpTranslation, ...]

    def __post_init__(self) -> None:
        for i, a in enumerate(self.bumps):
            for b in self.bumps[i + 1 :]:
                if abs(a.center - b.center) <= a.radius + b.radius:
                    raise InvalidArgumentError("bump disks within a step must be disjoint")

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = z.copy()
        for bump in self.bumps:
            out = out + bump.displacement(z)
        return out

    def wirtinger(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        z = np.asarray(z, dtype=complex)
        h_z = np.ones(z.shape, dtype=complex)
        h_zbar = np.zeros(z.shape, dtype=complex)
        for bump in self.bumps:
            dz, dzbar = bump.derivative_terms(z)
            h_z += dz
            h_zbar += dzbar
        return h_z, h_zbar


@dataclass(frozen=True)
class BumpFlow:
    """h_n o ... o h_1 for bump steps h_k."""

    steps: tuple[BumpStep, ...]

    @classmethod
    def single(cls, bumps: Iterable[BumpTranslation]) -> "BumpFlow":
        return cls((BumpStep(tuple(bumps)),))

    @property
    def disks(self) -> list[Disk]:
        return [bump.disk for step in self.steps for bump in step.bumps]

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        w = np.asarray(z, dtype=complex)
        for step in self.steps:
            w = step.evaluate(w)
        return w

    def wirtinger(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(F_z, F_zbar) of the composite by the chain rule."""
        w = np.asarray(z, dtype=complex)
        f_z = np.ones(w.shape, dtype=complex)
        f_zbar = np.zeros(w.shape, dtype=complex)
        for step in self.steps:
            h_z, h_zbar = step.wirtinger(w)
            f_z, f_zbar = (
                h_z * f_z + h_zbar * np.conj(f_zbar),
                h_z * f_zbar + h_zbar * np.conj(f_z),
            )
            w = step.evaluate(w)
        return f_z, f_zbar

    def beltrami(self, grid: ComplexGrid) -> BeltramiField:
        """Exact coefficient F_zbar / F_z on the grid nodes."""
        f_z, f_zbar = self.wirtinger(grid.nodes)
        values = f_zbar / f_z
        values[np.abs(values) < 1e-15] = 0.0
        return BeltramiField.from_values(grid, values)

    def avoids(self, points: Iterable[complex]) -> bool:
        """No bump disk touches the given points, so the flow fixes them."""
        pts = [complex(p) for p in points if not is_infinite(p)]
        return all(abs(p - d.center) >= d.radius for d in self.disks for p in pts)

"""
Orientation-preserving homeomorphisms of the unit circle.

A CircleHomeo stores lifted image angles psi_k of the uniform angles
theta_k = 2 pi k / n. Lifts are strictly increasing with total increase
exactly 2 pi, so psi(theta + 2 pi) = psi(theta) + 2 pi.
"""

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.interpolate import PchipInterpolator

from ..errors import InvalidArgumentError
from ..moebius import MoebiusTransform, triple_to_triple

TWO_PI = 2.0 * np.pi


class TraceInterpolation(str, Enum):
    """How a trace is evaluated between samples."""
    PCHIP = "pchip"
    FOURIER = "fourier"


@dataclass(frozen=True, eq=False)
class CircleHomeo:
    """Degree-one circle map sampled at n uniform angles."""

    psi: np.ndarray
    interpolation: TraceInterpolation = TraceInterpolation.PCHIP
    _pchip: PchipInterpolator = field(init=False, repr=False)
    _modes: tuple[np.ndarray, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        psi = np.array(self.psi, dtype=float)
        if psi.ndim != 1 or psi.size < 8:
            raise InvalidArgumentError("a circle map needs at least 8 samples")
        if psi.size % 4:
            raise InvalidArgumentError("sample count must be divisible by 4")
        if not np.all(np.isfinite(psi)):
            raise InvalidArgumentError("trace samples must be finite")
        if np.any(np.diff(psi) <= 0) or psi[-1] >= psi[0] + TWO_PI:
            raise InvalidArgumentError("lifted angles must increase strictly with total increase 2 pi")
        psi.setflags(write=False)
        object.__setattr__(self, "psi", psi)

        n = psi.size
        theta = TWO_PI * np.arange(n) / n
        xs = np.concatenate([theta[-3:] - TWO_PI, theta, theta[:3] + TWO_PI])
        ys = np.concatenate([psi[-3:] - TWO_PI, psi, psi[:3] + TWO_PI])
        object.__setattr__(self, "_pchip", PchipInterpolator(xs, ys))

        coefficients = np.fft.fft(psi - theta) / n
        wavenumbers = np.fft.fftfreq(n, d=1.0 / n)
        object.__setattr__(self, "_modes", (coefficients, wavenumbers))

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int = 1024) -> "CircleHomeo":
        return cls(TWO_PI * np.arange(n) / n)

    @classmethod
    def from_boundary_values(
        cls,
        values: np.ndarray,
        interpolation: TraceInterpolation = TraceInterpolation.PCHIP,
    ) -> "CircleHomeo":
        """Lift images of the uniform angles (points on the unit circle) to angles."""
        psi = np.unwrap(np.angle(np.asarray(values, dtype=complex)))
        return cls(psi, interpolation)

    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        n: int = 1024,
        interpolation: TraceInterpolation = TraceInterpolation.PCHIP,
    ) -> "CircleHomeo":
        """Sample a vectorized circle map zeta -> fn(zeta)."""
        zeta = np.exp(1j * TWO_PI * np.arange(n) / n)
        return cls.from_boundary_values(fn(zeta), interpolation)

    @classmethod
    def from_moebius(cls, m: MoebiusTransform, n: int = 1024) -> "CircleHomeo":
        """Boundary trace of a disk automorphism."""
        return cls.from_function(m.apply_array, n, TraceInterpolation.FOURIER)

    def with_interpolation(self, interpolation: TraceInterpolation) -> "CircleHomeo":
        return CircleHomeo(self.psi, interpolation)

    # -- sampling -----------------------------------------------------------

    @property
    def size(self) -> int:
        return int(self.psi.size)

    @property
    def theta(self) -> np.ndarray:
        return TWO_PI * np.arange(self.size) / self.size

    @property
    def boundary_values(self) -> np.ndarray:
        return np.exp(1j * self.psi)

    def evaluate(self, angles: np.ndarray | float) -> np.ndarray:
        """Lifted image angle psi(theta) at arbitrary angles."""
        t = np.asarray(angles, dtype=float)
        turns = np.floor(t / TWO_PI)
        reduced = t - TWO_PI * turns
        if self.interpolation is TraceInterpolation.FOURIER:
            coefficients, wavenumbers = self._modes
            phases = np.exp(1j * np.multiply.outer(reduced, wavenumbers))
            values = reduced + (phases @ coefficients).real
        else:
            values = self._pchip(reduced)
        return values + TWO_PI * turns

    def map_points(self, zeta: np.ndarray) -> np.ndarray:
        """Images of points of the unit circle."""
        return np.exp(1j * self.evaluate(np.angle(np.asarray(zeta, dtype=complex))))

    # -- operations ---------------------------------------------------------

    def compose_with_moebius(
        self, g: MoebiusTransform, h: MoebiusTransform
    ) -> "CircleHomeo":
        """h o phi o g, resampled at the uniform angles."""
        zeta = np.exp(1j * self.theta)
        values = h.apply_array(self.map_points(g.apply_array(zeta)))
        return CircleHomeo.from_boundary_values(values, self.interpolation)

    def angular_distance(self, other: "CircleHomeo") -> float:
        """Sup over this map's sample angles of the wrapped angle difference."""
        diff = self.psi - other.evaluate(self.theta)
        wrapped = np.angle(np.exp(1j * diff))
        return float(np.max(np.abs(wrapped)))

    def normalized(self) -> "CircleHomeo":
        """Post-compose with the disk automorphism sending the images of 1, i, -1 back to 1, i, -1."""
        values = self.boundary_values
        n = self.size
        images = (complex(values[0]), complex(values[n // 4]), complex(values[n // 2]))
        m = triple_to_triple(images, (1 + 0j, 1j, -1 + 0j))
        fixed = m.apply_array(values)
        return CircleHomeo.from_boundary_values(fixed / np.abs(fixed), self.interpolation)

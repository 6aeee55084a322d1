"""
Bicubic interpolation of complex grid samples.

Real and imaginary parts get separate interpolating splines (s = 0), so the
interpolant reproduces node values and is complex-linear in the samples.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RectBivariateSpline

from .models import ComplexGrid


@dataclass(frozen=True, eq=False)
class GridInterpolator:
    """Evaluate samples and their x/y derivatives at arbitrary points of the grid box."""

    grid: ComplexGrid
    values: np.ndarray
    fill: complex = 0.0
    _re: RectBivariateSpline = field(init=False, repr=False)
    _im: RectBivariateSpline = field(init=False, repr=False)

    def __post_init__(self) -> None:
        axis = self.grid.axis
        # First spline coordinate is the row (imaginary) axis.
        object.__setattr__(self, "_re", RectBivariateSpline(axis, axis, self.values.real, kx=3, ky=3))
        object.__setattr__(self, "_im", RectBivariateSpline(axis, axis, self.values.imag, kx=3, ky=3))

    def _eval(self, z: np.ndarray, d_row: int, d_col: int) -> np.ndarray:
        inside = self.grid.contains(z)
        out = np.full(z.shape, self.fill if d_row == d_col == 0 else 0.0, dtype=np.complex128)
        if np.any(inside):
            zi = z[inside]
            re = self._re.ev(zi.imag, zi.real, dx=d_row, dy=d_col)
            im = self._im.ev(zi.imag, zi.real, dx=d_row, dy=d_col)
            out[inside] = re + 1j * im
        return out

    def __call__(self, z: np.ndarray | complex) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        return self._eval(np.atleast_1d(z), 0, 0).reshape(z.shape)

    def gradient(self, z: np.ndarray | complex) -> tuple[np.ndarray, np.ndarray]:
        """(f_x, f_y) at the points; zero outside the box."""
        z = np.asarray(z, dtype=np.complex128)
        flat = np.atleast_1d(z)
        fx = self._eval(flat, 0, 1).reshape(z.shape)
        fy = self._eval(flat, 1, 0).reshape(z.shape)
        return fx, fy

    def wirtinger(self, z: np.ndarray | complex) -> tuple[np.ndarray, np.ndarray]:
        """(f_z, f_zbar) = ((f_x - i f_y)/2, (f_x + i f_y)/2)."""
        fx, fy = self.gradient(z)
        return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)

"""
Uniform complex grids and FFT singular integral transforms.
"""

from .interpolation import GridInterpolator
from .models import ComplexGrid, GridField, covering_grid, make_grid, taper
from .transforms import (
    Multipole,
    beurling_transform,
    cauchy_transform,
    check_support,
    multipole_moments,
    periodic_beurling_transform,
)

__all__ = [
    "GridInterpolator",
    "ComplexGrid",
    "GridField",
    "covering_grid",
    "make_grid",
    "taper",
    "beurling_transform",
    "cauchy_transform",
    "check_support",
    "Multipole",
    "multipole_moments",
    "periodic_beurling_transform",
]

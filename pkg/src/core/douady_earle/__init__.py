"""
Douady-Earle barycentric extension, disk traces of f^mu and the section sigma.
"""

from .barycenter import (
    InjectivityReport,
    NaturalityReport,
    barycentric_extend,
    barycentric_extend_array,
    disk_sample,
    extension_injectivity_check,
    naturality_residual,
)
from .circle import CircleHomeo, TraceInterpolation
from .disk_solver import DiskSolve, circle_map_from_mu, solve_disk
from .section import (
    SigmaBound,
    SmoothnessReport,
    empirical_c,
    sigma,
    sigma_at,
    sigma_of_trace,
    sigma_sup_norm,
    smoothness_probe,
)

__all__ = [
    "InjectivityReport",
    "NaturalityReport",
    "barycentric_extend",
    "barycentric_extend_array",
    "disk_sample",
    "extension_injectivity_check",
    "naturality_residual",
    "CircleHomeo",
    "TraceInterpolation",
    "DiskSolve",
    "circle_map_from_mu",
    "solve_disk",
    "SigmaBound",
    "SmoothnessReport",
    "empirical_c",
    "sigma",
    "sigma_at",
    "sigma_of_trace",
    "sigma_sup_norm",
    "smoothness_probe",
]

"""
Beltrami equation solver, sampled quasiconformal maps and holomorphy probes.
"""

from .beltrami_solver import (
    DEFAULT_OPTIONS,
    IterationSchedule,
    SolverOptions,
    beltrami_of,
    solve_normalized,
)
from .models import QuasiconformalMap, SolverReport
from .probes import (
    ContinuityReport,
    HolomorphyReport,
    cauchy_riemann_probe,
    continuity_probe,
    holomorphy_probe,
)

__all__ = [
    "DEFAULT_OPTIONS",
    "IterationSchedule",
    "SolverOptions",
    "beltrami_of",
    "solve_normalized",
    "QuasiconformalMap",
    "SolverReport",
    "ContinuityReport",
    "HolomorphyReport",
    "cauchy_riemann_probe",
    "continuity_probe",
    "holomorphy_probe",
]

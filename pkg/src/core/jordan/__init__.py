"""
Jordan curves carried by holomorphic motions of their marked points.
"""

from .curves import JordanCurve, jordan_check, trace_curve
from .extension import MARKED_TOL, extend_finite_motion
from .reports import (
    CurveFamilyMember,
    TheoremCReport,
    kobayashi_bound,
    poincare_distance,
    radial_continuity_probe,
    recovered_norm,
    theorem_c_member,
    theorem_c_report,
)

__all__ = [
    "JordanCurve",
    "jordan_check",
    "trace_curve",
    "MARKED_TOL",
    "extend_finite_motion",
    "CurveFamilyMember",
    "TheoremCReport",
    "kobayashi_bound",
    "poincare_distance",
    "radial_continuity_probe",
    "recovered_norm",
    "theorem_c_member",
    "theorem_c_report",
]

"""
Holomorphic motions: constructions, the universal motion and their probes.
"""

from .checks import (
    forget_points,
    holomorphy_probe_motion,
    maximal_example_certificate,
    motion_continuity_probe,
    motion_injectivity_check,
    representative_agreement,
    theorem_b_report,
    trace_map,
    universal_motion_eval,
)
from .constructions import (
    DEFAULT_MARKED,
    linear_motion,
    maximal_example_motion,
    normalize_motion,
    seeded_linear_motion,
    wtmu_motion,
)
from .models import (
    AgreementReport,
    MaximalCertificate,
    Motion,
    Parameter,
    ParameterDomain,
    TheoremBReport,
)

__all__ = [
    "forget_points",
    "holomorphy_probe_motion",
    "maximal_example_certificate",
    "motion_continuity_probe",
    "motion_injectivity_check",
    "representative_agreement",
    "theorem_b_report",
    "trace_map",
    "universal_motion_eval",
    "DEFAULT_MARKED",
    "linear_motion",
    "maximal_example_motion",
    "normalize_motion",
    "seeded_linear_motion",
    "wtmu_motion",
    "AgreementReport",
    "MaximalCertificate",
    "Motion",
    "Parameter",
    "ParameterDomain",
    "TheoremBReport",
]

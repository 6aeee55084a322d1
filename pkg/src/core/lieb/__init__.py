"""
Lieb coordinates on T(E) for sets whose complement is a finite union of round disks.
"""

from .action import (
    GroupAction,
    SetImage,
    chart_transports,
    f_g_action,
    g_invariance_check,
    image_set,
    theorem_a_residual,
)
from .coordinates import (
    chart_coefficient,
    de_section,
    lieb_equal,
    lieb_residuals,
    project_tilde,
    section_norm_report,
)
from .models import (
    LIEB_TOL,
    InvarianceReport,
    LiebResidual,
    SectionNormReport,
    TeichPoint,
    TheoremAReport,
    default_chart_grid,
)

__all__ = [
    "GroupAction",
    "SetImage",
    "chart_transports",
    "f_g_action",
    "g_invariance_check",
    "image_set",
    "theorem_a_residual",
    "chart_coefficient",
    "de_section",
    "lieb_equal",
    "lieb_residuals",
    "project_tilde",
    "section_norm_report",
    "LIEB_TOL",
    "InvarianceReport",
    "LiebResidual",
    "SectionNormReport",
    "TeichPoint",
    "TheoremAReport",
    "default_chart_grid",
]

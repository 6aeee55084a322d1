"""
Beltrami coefficients, closed-set models and their operations.
"""

from .bumps import MAX_SHIFT_RATIO, BumpFlow, BumpStep, BumpTranslation
from .models import BeltramiField, Disk, SetKind, SetModel
from .operations import (
    cap_modulus,
    clamp_to_ball,
    compose_coefficients,
    defining_relation_residual,
    dilatation,
    pullback,
    pushforward,
    restrict_glue,
    restrict_to_set,
    sup_norm,
    teichmuller_distance_bound,
)

__all__ = [
    "MAX_SHIFT_RATIO",
    "BumpFlow",
    "BumpStep",
    "BumpTranslation",
    "BeltramiField",
    "Disk",
    "SetKind",
    "SetModel",
    "cap_modulus",
    "clamp_to_ball",
    "compose_coefficients",
    "defining_relation_residual",
    "dilatation",
    "pullback",
    "pushforward",
    "restrict_glue",
    "restrict_to_set",
    "sup_norm",
    "teichmuller_distance_bound",
]

"""
Moebius transformations and sphere points.
"""

from .sphere import (
    INF,
    chordal_distance,
    is_infinite,
    reciprocal,
    same_point,
    sphere_array,
    to_sphere,
)
from .transforms import (
    MoebiusTransform,
    circumcircle,
    disk_automorphism,
    image_circle,
    is_disk_automorphism,
    moebius_from_triple,
    normalizer_fixing_triple,
    triple_to_triple,
)

__all__ = [
    "INF",
    "chordal_distance",
    "is_infinite",
    "reciprocal",
    "same_point",
    "sphere_array",
    "to_sphere",
    "MoebiusTransform",
    "circumcircle",
    "disk_automorphism",
    "image_circle",
    "is_disk_automorphism",
    "moebius_from_triple",
    "normalizer_fixing_triple",
    "triple_to_triple",
]

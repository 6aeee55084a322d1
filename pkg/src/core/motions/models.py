"""
Holomorphic motions phi: V x E -> sphere over sampled parameter domains.
"""

import cmath
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import TypeAlias

import numpy as np
from pydantic import BaseModel

from ..beltrami import SetModel
from ..errors import DomainError
from ..moebius import sphere_array
from ..solver import ContinuityReport, QuasiconformalMap

Parameter: TypeAlias = complex | tuple[complex, complex]
Evaluator: TypeAlias = Callable[[Parameter, np.ndarray], np.ndarray]


class ParameterDomain(str, Enum):
    """Parameter spaces a motion can live over."""
    DISK = "disk"
    MAXIMAL = "maximal"
    SAMPLED = "sampled"


@dataclass(frozen=True, eq=False)
class Motion:
    """
    A motion of ``points`` over a parameter domain.

    The basepoint acts as the identity by construction. ``extension`` maps
    a parameter to a quasiconformal map of the sphere extending phi_x, when
    the motion comes with one (solver-backed motions).
    """

    domain: ParameterDomain
    basepoint: Parameter
    points: np.ndarray
    evaluator: Evaluator
    set_model: SetModel | None = None
    parameters: tuple[Parameter, ...] = ()
    extension: Callable[[Parameter], QuasiconformalMap] | None = None

    def __post_init__(self) -> None:
        points = sphere_array(self.points)
        points.setflags(write=False)
        object.__setattr__(self, "points", points)
        if not self.contains(self.basepoint):
            raise DomainError("basepoint lies outside the parameter domain")

    def contains(self, x: Parameter) -> bool:
        if self.domain is ParameterDomain.DISK:
            return abs(complex(x)) < 1.0  # type: ignore[arg-type]
        if self.domain is ParameterDomain.MAXIMAL:
            alpha, beta = x  # type: ignore[misc]
            return abs(cmath.exp(1j * complex(alpha))) + abs(complex(beta)) < 1.0
        return any(_same_parameter(x, p) for p in self.parameters)

    def is_basepoint(self, x: Parameter) -> bool:
        return _same_parameter(x, self.basepoint)

    def __call__(self, x: Parameter, z: np.ndarray | None = None) -> np.ndarray:
        """phi(x, z) for z in the moving set (all points by default)."""
        if not self.contains(x):
            raise DomainError(f"parameter {x} lies outside the {self.domain.value} domain")
        zs = self.points if z is None else sphere_array(z)
        if self.is_basepoint(x):
            return zs.copy()
        return sphere_array(self.evaluator(x, zs))

    def at(self, x: Parameter, z: complex) -> complex:
        return complex(self(x, np.array([z]))[0])


def _same_parameter(x: Parameter, y: Parameter) -> bool:
    if isinstance(x, tuple) or isinstance(y, tuple):
        if not (isinstance(x, tuple) and isinstance(y, tuple)):
            return False
        return all(complex(a) == complex(b) for a, b in zip(x, y, strict=True))
    return complex(x) == complex(y)


class AgreementReport(BaseModel):
    """Universal-motion values of two representatives related by a map fixing E."""

    residual: float
    points: int
    off_set_gap: float
    tol: float
    passed: bool


class MaximalCertificate(BaseModel):
    """Motion axioms of the explicit maximal example at one parameter."""

    bound: float
    inner_max_modulus: float
    injective: bool
    passed: bool


class TheoremBReport(BaseModel):
    """Checkable parts of the extension theorem, at representative level."""

    continuity: ContinuityReport
    orientation_ok: bool
    injective_on_e: bool
    fixes_marked_points: bool
    norm: float
    distance_bound: float
    norm_identity_residual: float
    canonical_section_tested: bool = False
    passed: bool

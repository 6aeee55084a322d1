"""
Certification of a curve family gamma_x = w_x(gamma_0) over the unit disk.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel

from ..errors import InvalidArgumentError
from ..grids import ComplexGrid
from ..moebius import is_infinite
from ..motions import Motion, ParameterDomain, trace_map
from ..solver import (
    DEFAULT_OPTIONS,
    ContinuityReport,
    QuasiconformalMap,
    SolverOptions,
    beltrami_of,
)
from .curves import JordanCurve, jordan_check, trace_curve
from .extension import MARKED_TOL, extend_finite_motion

logger = logging.getLogger(__name__)

# Slack on ||mu_x|| <= bound for solver-backed motions.
NORM_SLACK = 2e-3
RADIAL_STEPS = 64


def poincare_distance(x: complex) -> float:
    """Kobayashi distance from 0 to x in the unit disk."""
    r = abs(complex(x))
    if r >= 1.0:
        raise InvalidArgumentError(f"parameter {x} lies outside the unit disk")
    return 0.5 * math.log((1 + r) / (1 - r))


def kobayashi_bound(x: complex) -> float:
    """(e^{2 rho} - 1) / (e^{2 rho} + 1) with rho the distance from 0 to x; equals |x|."""
    e = math.exp(2 * poincare_distance(x))
    return (e - 1) / (e + 1)


class TheoremCReport(BaseModel):
    """Clauses of the curve-family theorem at one parameter."""

    x: tuple[float, float]
    vertices: int
    marked_points: int
    marked_residual: float
    curve_residual: float
    jordan: bool
    norm: float
    input_norm: float
    K: float
    bound: float
    norm_asserted: bool
    norm_within_bound: bool
    passed: bool


@dataclass(frozen=True, eq=False)
class CurveFamilyMember:
    """gamma_x with the map that carries gamma_0 onto it."""

    x: complex
    map: QuasiconformalMap
    curve: JordanCurve
    report: TheoremCReport


def _coefficient(w: QuasiconformalMap) -> np.ndarray:
    """Coefficient the map was solved from (corrections not included)."""
    return np.zeros(w.grid.shape, dtype=complex) if w.mu is None else w.mu.values


def recovered_norm(w: QuasiconformalMap) -> float:
    """
    sup |mu| of the constructed map, corrections included, read off its node
    samples on |z| <= 3L/4.
    """
    mu = beltrami_of(w)
    inside = w.grid.radii <= 0.75 * w.grid.half_width
    return float(np.max(np.abs(mu.values[inside]), initial=0.0))


def _extension_at(
    phi: Motion,
    x: complex,
    grid: ComplexGrid,
    options: SolverOptions,
    steps: int | None,
) -> QuasiconformalMap:
    if phi.extension is not None:
        return phi.extension(x)
    if phi.set_model is None:
        raise InvalidArgumentError("bump extensions need a motion of a finite set")
    return extend_finite_motion(phi.set_model, trace_map(phi, x), grid, options, steps)


def theorem_c_member(
    phi: Motion,
    gamma0: JordanCurve,
    x: complex,
    grid: ComplexGrid,
    options: SolverOptions = DEFAULT_OPTIONS,
    steps: int | None = None,
) -> CurveFamilyMember:
    """Extend phi_x, carry gamma_0 along and certify the result."""
    if phi.domain is not ParameterDomain.DISK:
        raise InvalidArgumentError("curve families are built over the unit disk")
    if phi.set_model is None:
        raise InvalidArgumentError("the motion must move a finite set of marked points")
    x = complex(x)
    marked = phi.set_model.points
    indices = gamma0.marked_indices(np.array(marked))

    w = _extension_at(phi, x, grid, options, steps)
    expected = phi(x, np.array(marked))
    finite = ~np.asarray(is_infinite(expected))
    images = w.evaluate_array(np.array(marked))
    marked_residual = float(np.max(np.abs(images[finite] - expected[finite]), initial=0.0))

    curve = trace_curve(w, gamma0)
    on_curve = curve.vertices[indices]
    curve_residual = float(np.max(np.abs(on_curve[finite] - expected[finite]), initial=0.0))
    simple = jordan_check(curve)

    norm = recovered_norm(w)
    input_norm = float(np.max(np.abs(_coefficient(w))))
    bound = kobayashi_bound(x)
    asserted = phi.extension is not None
    within = norm <= bound + NORM_SLACK
    passed = (
        marked_residual <= MARKED_TOL
        and curve_residual <= MARKED_TOL
        and simple
        and (within or not asserted)
    )
    report = TheoremCReport(
        x=(x.real, x.imag),
        vertices=gamma0.size,
        marked_points=len(marked),
        marked_residual=marked_residual,
        curve_residual=curve_residual,
        jordan=simple,
        norm=norm,
        input_norm=input_norm,
        K=(1 + norm) / (1 - norm),
        bound=bound,
        norm_asserted=asserted,
        norm_within_bound=within,
        passed=passed,
    )
    if not passed:
        logger.warning("Curve family clause failed", extra=report.model_dump())
    return CurveFamilyMember(x=x, map=w, curve=curve, report=report)


def theorem_c_report(
    phi: Motion,
    gamma0: JordanCurve,
    x: complex,
    grid: ComplexGrid,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> TheoremCReport:
    """
    Marked points carried exactly, gamma_x simple and, for solver-backed
    motions, ||mu_x|| within the Kobayashi bound |x| (informational for
    bump-built extensions, which are not extremal).
    """
    return theorem_c_member(phi, gamma0, x, grid, options).report


def radial_continuity_probe(
    phi: Motion,
    grid: ComplexGrid,
    x0: complex = 0.3 + 0j,
    offsets: Sequence[float] = (0.08, 0.04, 0.02, 0.01),
    steps: int = RADIAL_STEPS,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> ContinuityReport:
    """
    sup |mu_{x0 + d u} - mu_{x0}| along the radius through x0 as d shrinks,
    with the continuation step count held fixed.
    """
    u = x0 / abs(x0) if x0 != 0 else 1 + 0j
    reference = _coefficient(_extension_at(phi, x0, grid, options, steps))
    distances = []
    for d in offsets:
        w = _extension_at(phi, x0 + d * u, grid, options, steps)
        distances.append(float(np.max(np.abs(_coefficient(w) - reference))))

    monotone = all(b <= a + 1e-12 for a, b in zip(distances, distances[1:], strict=False))
    shrinking = len(distances) < 2 or distances[-1] < distances[0] or max(distances) == 0.0
    return ContinuityReport(
        coefficient_gaps=list(offsets),
        distances=distances,
        monotone=monotone,
        passed=monotone and shrinking,
    )

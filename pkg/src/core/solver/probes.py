"""
Numerical probes of how w^mu depends on mu.

Holomorphy is checked with a four-point Cauchy-Riemann stencil whose
residual must decay at second order; continuity with sup chordal distances
along a sequence mu_n -> mu.
"""

import logging
import math
from collections.abc import Callable, Sequence

import numpy as np
from pydantic import BaseModel

from ..beltrami import BeltramiField
from ..grids import ComplexGrid
from ..moebius import chordal_distance
from .beltrami_solver import DEFAULT_OPTIONS, SolverOptions, solve_normalized

logger = logging.getLogger(__name__)

DEFAULT_STEPS = (1e-2, 5e-3, 2.5e-3)

# Residuals below this count as exactly holomorphic (e.g. affine dependence).
HOLOMORPHY_FLOOR = 1e-10
MIN_ORDER = 1.8


class HolomorphyReport(BaseModel):
    """Cauchy-Riemann residuals per step and the observed decay orders."""

    lam0: tuple[float, float]
    steps: list[float]
    residuals: list[float]
    orders: list[float | None]
    passed: bool


class ContinuityReport(BaseModel):
    """Sup chordal distance of each w^{mu_n} to w^mu."""

    coefficient_gaps: list[float]
    distances: list[float]
    monotone: bool
    passed: bool


def cauchy_riemann_residual(fn: Callable[[complex], complex], lam: complex, h: float) -> float:
    """|[f(l+h) - f(l-h) + i(f(l+ih) - f(l-ih))] / 4h|, an estimate of |df/d(conj l)|."""
    value = (fn(lam + h) - fn(lam - h) + 1j * (fn(lam + 1j * h) - fn(lam - 1j * h))) / (4 * h)
    return abs(value)


def cauchy_riemann_probe(
    fn: Callable[[complex], complex],
    lam0: complex,
    steps: Sequence[float] = DEFAULT_STEPS,
    floor: float = HOLOMORPHY_FLOOR,
    min_order: float = MIN_ORDER,
) -> HolomorphyReport:
    """Residual at each step and log2 of successive ratios; PASS below the floor or at order >= min_order."""
    residuals = [cauchy_riemann_residual(fn, lam0, h) for h in steps]
    orders: list[float | None] = []
    passed = True
    for i in range(len(steps) - 1):
        r1, r2 = residuals[i], residuals[i + 1]
        if r1 <= floor or r2 <= floor:
            orders.append(None)
            passed = passed and r2 <= floor
            continue
        order = math.log(r1 / r2) / math.log(steps[i] / steps[i + 1])
        orders.append(order)
        passed = passed and order >= min_order
    lam0 = complex(lam0)
    return HolomorphyReport(
        lam0=(lam0.real, lam0.imag),
        steps=list(steps),
        residuals=residuals,
        orders=orders,
        passed=passed,
    )


def holomorphy_probe(
    family: Callable[[complex], BeltramiField],
    z: complex,
    lam0: complex,
    steps: Sequence[float] = DEFAULT_STEPS,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> HolomorphyReport:
    """CR probe of lam -> w^{family(lam)}(z)."""

    def value(lam: complex) -> complex:
        return solve_normalized(family(lam), options).evaluate(z)

    report = cauchy_riemann_probe(value, lam0, steps)
    logger.info(
        "Holomorphy probe",
        extra={"z": str(z), "residuals": report.residuals, "passed": report.passed},
    )
    return report


def default_probe_points(grid: ComplexGrid, count: int = 12) -> np.ndarray:
    """A count x count lattice over [-L/2, L/2]^2."""
    axis = np.linspace(-0.5 * grid.half_width, 0.5 * grid.half_width, count)
    return (axis[np.newaxis, :] + 1j * axis[:, np.newaxis]).ravel()


def continuity_probe(
    mu: BeltramiField,
    sequence: Sequence[BeltramiField],
    points: np.ndarray | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> ContinuityReport:
    """
    For mu_n -> mu, the sup chordal distance between w^{mu_n} and w^mu over
    the sample points. PASS when the distances are non-increasing and shrink.
    """
    pts = default_probe_points(mu.grid) if points is None else np.asarray(points, dtype=complex)
    reference = solve_normalized(mu, options).evaluate_array(pts)

    gaps, distances = [], []
    for mu_n in sequence:
        gaps.append(float(np.max(np.abs(mu_n.values - mu.values))))
        images = solve_normalized(mu_n, options).evaluate_array(pts)
        distances.append(float(np.max(chordal_distance(images, reference))))

    monotone = all(b <= a + 1e-12 for a, b in zip(distances, distances[1:], strict=False))
    shrinking = len(distances) < 2 or distances[-1] < distances[0]
    return ContinuityReport(
        coefficient_gaps=gaps,
        distances=distances,
        monotone=monotone,
        passed=monotone and shrinking,
    )

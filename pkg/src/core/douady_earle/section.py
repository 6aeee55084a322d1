"""
The section sigma(mu): Beltrami coefficient of the barycentric extension of
the boundary trace of f^mu, plus its norm and smoothness probes.

Derivatives of ex(phi) are central differences with step 1e-4 (1 - |z|).
Nodes with |z| > 0.98 are set to zero; sup-norm reports exclude |z| > 0.95.
"""

import logging
from collections.abc import Callable, Sequence

import numpy as np
from pydantic import BaseModel

from ..beltrami import BeltramiField, clamp_to_ball
from ..grids import ComplexGrid
from ..solver import DEFAULT_OPTIONS, SolverOptions
from .barycenter import barycentric_extend_array
from .circle import CircleHomeo
from .disk_solver import DEFAULT_BOUNDARY_SAMPLES, circle_map_from_mu

logger = logging.getLogger(__name__)

SIGMA_CUTOFF = 0.98
REPORT_RADIUS = 0.95
STEP_FACTOR = 1e-4


class SigmaBound(BaseModel):
    """Observed bound ||sigma(mu)|| <= c_emp(k) for coefficients of norm <= k."""

    k: float
    c_emp: float
    samples: int
    excluded_ring: float = REPORT_RADIUS


class SmoothnessReport(BaseModel):
    """Finite-difference evidence for the regularity of t -> sigma(path(t))."""

    t0: float
    steps: list[float]
    first_differences: list[float]
    first_orders: list[float | None]
    second_differences: list[float]
    second_converged: bool
    constant: bool


def sigma_at(phi: CircleHomeo, points: np.ndarray) -> np.ndarray:
    """ex(phi)_zbar / ex(phi)_z at points of the open disk."""
    z = np.asarray(points, dtype=complex).ravel()
    step = STEP_FACTOR * (1.0 - np.abs(z))
    stencil = np.concatenate([z + step, z - step, z + 1j * step, z - 1j * step])
    values = barycentric_extend_array(phi, stencil, polish=1)
    xp, xm, yp, ym = np.split(values, 4)
    fx = (xp - xm) / (2 * step)
    fy = (yp - ym) / (2 * step)
    sigma = (fx + 1j * fy) / (fx - 1j * fy)
    sigma[np.abs(sigma) < 1e-12] = 0.0
    return sigma.reshape(np.shape(points))


def sigma_of_trace(phi: CircleHomeo, grid: ComplexGrid) -> BeltramiField:
    """sigma on the grid nodes of the disk; zero on |z| > 0.98."""
    values = np.zeros(grid.shape, dtype=complex)
    inside = grid.radii <= SIGMA_CUTOFF
    values[inside] = sigma_at(phi, grid.nodes[inside])
    return clamp_to_ball(grid, values, 1.0)


def sigma(
    mu: BeltramiField,
    options: SolverOptions = DEFAULT_OPTIONS,
    n_boundary: int = DEFAULT_BOUNDARY_SAMPLES,
) -> BeltramiField:
    """Beltrami coefficient of ex(phi^mu) on mu's grid."""
    phi = circle_map_from_mu(mu, options, n_boundary)
    return sigma_of_trace(phi, mu.grid)


def report_sample(radial: int = 64, angular: int = 256) -> np.ndarray:
    """Polar nodes with radii in [0, 0.95]."""
    r = np.linspace(0.0, REPORT_RADIUS, radial)
    t = 2 * np.pi * np.arange(angular) / angular
    return np.multiply.outer(r, np.exp(1j * t)).ravel()


def sigma_sup_norm(phi: CircleHomeo) -> float:
    """sup |sigma| over the 64 x 256 polar sample (|z| > 0.95 excluded)."""
    return float(np.max(np.abs(sigma_at(phi, report_sample()))))


def empirical_c(
    mus: Sequence[BeltramiField],
    options: SolverOptions = DEFAULT_OPTIONS,
    n_boundary: int = DEFAULT_BOUNDARY_SAMPLES,
) -> SigmaBound:
    """Largest observed ||sigma(mu)|| over the sample, paired with k = max ||mu||."""
    norms = [
        sigma_sup_norm(circle_map_from_mu(mu, options, n_boundary)) for mu in mus
    ]
    k = max((mu.sup_norm for mu in mus), default=0.0)
    bound = SigmaBound(k=k, c_emp=max(norms, default=0.0), samples=len(norms))
    logger.info("Empirical sigma bound", extra={"k": bound.k, "c_emp": bound.c_emp})
    return bound


def smoothness_probe(
    path: Callable[[float], BeltramiField],
    t0: float,
    h: float,
    halvings: int = 2,
    points: np.ndarray | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> SmoothnessReport:
    """
    First differences sigma(t0 + h) - sigma(t0) with their decay orders, and
    second differences (sigma(t0+h) - 2 sigma(t0) + sigma(t0-h)) / h^2 with a
    20% ratio test as h halves. Evidence only; nothing is asserted.
    """
    if points is None:
        radii = np.array([0.2, 0.5, 0.8])
        points = np.multiply.outer(radii, np.exp(1j * np.pi * np.arange(6) / 3)).ravel()
    cache: dict[float, np.ndarray] = {}

    def value(t: float) -> np.ndarray:
        if t not in cache:
            cache[t] = sigma_at(circle_map_from_mu(path(t), options), points)
        return cache[t]

    steps = [h / 2 ** j for j in range(halvings + 1)]
    base = value(t0)
    first = [float(np.max(np.abs(value(t0 + s) - base))) for s in steps]
    second_vectors = [(value(t0 + s) - 2 * base + value(t0 - s)) / s ** 2 for s in steps]
    second = [float(np.max(np.abs(v))) for v in second_vectors]

    orders: list[float | None] = []
    for a, b in zip(first, first[1:], strict=False):
        orders.append(float(np.log2(a / b)) if a > 0 and b > 0 else None)

    constant = all(d == 0.0 for d in first)
    converged = constant or all(
        float(np.max(np.abs(v1 - v2))) <= 0.2 * max(float(np.max(np.abs(v2))), 1e-300)
        for v1, v2 in zip(second_vectors, second_vectors[1:], strict=False)
    )
    return SmoothnessReport(
        t0=t0,
        steps=steps,
        first_differences=first,
        first_orders=orders,
        second_differences=second,
        second_converged=converged,
        constant=constant,
    )

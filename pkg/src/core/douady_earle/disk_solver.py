"""
Boundary traces of the quasiconformal self-maps f^mu of the disk.

mu on the disk is extended across the unit circle by the inversion-symmetric
rule mu(z) = conj(mu(1/conj z)) * z^2 / conj(z)^2, so that the normalized
solution commutes with z -> 1/conj(z) and preserves the circle. The plane
solve is split in two charts:

  1. w1 = w^mu with mu supported on the disk (z chart);
  2. in the chart u = 1/z the reflected coefficient is conj(mu(conj u)) on
     the disk. Pushed forward by U1 = 1/w1(1/u), it is solved as U2.

The composite w2 o w1 with w2 = 1/U2(1/w) has the symmetric coefficient.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from ..beltrami import BeltramiField, cap_modulus
from ..errors import DomainError, ExtensionRuleError
from ..grids import ComplexGrid, GridInterpolator, covering_grid
from ..moebius import MoebiusTransform, reciprocal, triple_to_triple
from ..solver import DEFAULT_OPTIONS, QuasiconformalMap, SolverOptions, solve_normalized
from ..solver.beltrami_solver import SUPPORT_FRACTION
from ..solver.models import newton_inverse, wirtinger_fd
from .circle import CircleHomeo, TraceInterpolation

logger = logging.getLogger(__name__)

CIRCLE_RESIDUAL_TOL = 1e-3
DEFAULT_BOUNDARY_SAMPLES = 1024


@dataclass(frozen=True, eq=False)
class DiskSolve:
    """f^mu assembled from the two chart solves, with its normalized boundary trace."""

    inner: QuasiconformalMap
    outer: QuasiconformalMap | None
    normalizer: MoebiusTransform
    trace: CircleHomeo
    circle_residual: float

    def plane_values(self, z: np.ndarray) -> np.ndarray:
        """w2(w1(z)): the normalized plane solution for the symmetric coefficient."""
        w = self.inner.evaluate_array(np.asarray(z, dtype=complex))
        if self.outer is None:
            return w
        return reciprocal(self.outer.evaluate_array(reciprocal(w)))

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """f^mu on the closed disk (fixes 1, i and -1)."""
        return self.normalizer.apply_array(self.plane_values(z))


class _ChartMap:
    """U1(u) = 1/w1(1/u), conformal on the unit disk of the u chart."""

    def __init__(self, w1: QuasiconformalMap) -> None:
        self.w1 = w1

    def __call__(self, u: np.ndarray) -> np.ndarray:
        return reciprocal(self.w1.evaluate_array(reciprocal(u)))


def _reflected_pushforward(
    mu: BeltramiField, u1: _ChartMap, grid: ComplexGrid, radius: float
) -> BeltramiField:
    """nu2(s) = mu_u(U1^-1 s) * U1'/conj(U1') with mu_u(u) = conj(mu(conj u)) on the disk."""
    s = grid.nodes
    near = np.abs(s) <= radius
    targets = s[near]

    # Seeds: images of the grid nodes inside the closed unit disk.
    disk_nodes = grid.nodes[grid.radii <= 1.0]
    disk_images = u1(disk_nodes)
    tree = cKDTree(np.column_stack([disk_images.real, disk_images.imag]))
    _, idx = tree.query(np.column_stack([targets.real, targets.imag]))
    u = newton_inverse(u1, targets, disk_nodes[idx])

    inside = np.abs(u) < 1.0
    mu_u = np.zeros(u.shape, dtype=complex)
    mu_u[inside] = np.conj(GridInterpolator(mu.grid, mu.values)(np.conj(u[inside])))
    derivative, _ = wirtinger_fd(u1, u[inside])
    mu_u[inside] *= derivative / np.conj(derivative)

    mu_u = cap_modulus(mu_u, mu.sup_norm)

    values = np.zeros(grid.shape, dtype=complex)
    values[near] = mu_u
    return BeltramiField.from_values(grid, values, radius)


def solve_disk(
    mu: BeltramiField,
    options: SolverOptions = DEFAULT_OPTIONS,
    n_boundary: int = DEFAULT_BOUNDARY_SAMPLES,
) -> DiskSolve:
    """Two-chart solve of f^mu; raises ExtensionRuleError if the circle is not preserved."""
    if mu.support_radius > 1.0 + 1e-12:
        raise DomainError("mu must be supported in the closed unit disk")

    theta = 2 * np.pi * np.arange(n_boundary) / n_boundary
    zeta = np.exp(1j * theta)

    w1 = solve_normalized(mu, options)
    if not np.any(mu.values):
        identity = CircleHomeo(theta, TraceInterpolation.FOURIER)
        return DiskSolve(w1, None, MoebiusTransform.identity(), identity, 0.0)

    u1 = _ChartMap(w1)
    radius = 1.02 * float(np.max(np.abs(u1(zeta))))
    grid2 = covering_grid(radius, mu.grid.spacing, SUPPORT_FRACTION)
    nu2 = _reflected_pushforward(mu, u1, grid2, radius)
    u2 = solve_normalized(nu2, options)

    # f(zeta) = 1/U2(1/w1(zeta)) and 1/w1(zeta) = U1(conj zeta) on the circle.
    boundary = reciprocal(u2.evaluate_array(u1(np.conj(zeta))))
    residual = float(np.max(np.abs(np.abs(boundary) - 1.0)))
    if residual > CIRCLE_RESIDUAL_TOL:
        logger.error(
            "Reflected solve does not preserve the unit circle",
            extra={"residual": residual, "stage_two_n": grid2.resolution},
        )
        raise ExtensionRuleError(
            f"unit circle residual {residual:.2e} exceeds {CIRCLE_RESIDUAL_TOL:.0e}"
        )

    n = n_boundary
    normalizer = triple_to_triple(
        (complex(boundary[0]), complex(boundary[n // 4]), complex(boundary[n // 2])),
        (1 + 0j, 1j, -1 + 0j),
    )
    values = normalizer.apply_array(boundary)
    trace = CircleHomeo.from_boundary_values(values / np.abs(values), TraceInterpolation.FOURIER)

    logger.info(
        "Solved disk map",
        extra={"circle_residual": residual, "stage_two_n": grid2.resolution, "norm": mu.sup_norm},
    )
    return DiskSolve(w1, u2, normalizer, trace, residual)


def circle_map_from_mu(
    mu: BeltramiField,
    options: SolverOptions = DEFAULT_OPTIONS,
    n_boundary: int = DEFAULT_BOUNDARY_SAMPLES,
) -> CircleHomeo:
    """Boundary trace of f^mu normalized to fix 1, i and -1."""
    return solve_disk(mu, options, n_boundary).trace

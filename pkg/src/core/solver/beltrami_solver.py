"""
Normalized solutions of the Beltrami equation w_zbar = mu * w_z.

The principal solution is w = z + C(phi), where phi solves the fixed-point
problem phi = mu * (1 + S(phi)) with S the Beurling transform. The
map is then normalized affinely so that 0 and 1 are fixed; infinity is
fixed by the principal solution already.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..beltrami import BeltramiField
from ..errors import DomainError, InvalidArgumentError, SingularNodeError, SolverFailureError
from ..grids import GridField, Multipole
from ..grids.transforms import beurling_on_grid, cauchy_on_grid
from .models import QuasiconformalMap, SolverReport

logger = logging.getLogger(__name__)

# Largest support radius as a fraction of the grid half-width.
SUPPORT_FRACTION = 0.75

# |mu| below this is reported as exactly zero.
MU_ZERO_FLOOR = 1e-12


class IterationSchedule(str, Enum):
    """How successive Neumann iterates are combined."""
    NEUMANN = "neumann"
    RELAXED = "relaxed"


@dataclass(frozen=True)
class SolverOptions:
    """Iteration controls for solve_normalized."""

    k_max: float = 0.9
    tol: float = 1e-12
    max_iter: int = 500
    schedule: IterationSchedule = IterationSchedule.NEUMANN
    relaxation: float = 0.8

    def __post_init__(self) -> None:
        if not 0.0 < self.k_max < 1.0:
            raise InvalidArgumentError("k_max must lie in (0, 1)")
        if self.tol <= 0 or self.max_iter < 1:
            raise InvalidArgumentError("tolerance and iteration cap must be positive")
        if not 0.0 < self.relaxation <= 1.0:
            raise InvalidArgumentError("relaxation must lie in (0, 1]")

    def relaxed(self) -> "SolverOptions":
        return SolverOptions(
            self.k_max, self.tol, self.max_iter, IterationSchedule.RELAXED, self.relaxation
        )


DEFAULT_OPTIONS = SolverOptions()


def _check_preconditions(mu: BeltramiField, options: SolverOptions) -> None:
    k = mu.sup_norm
    if k > options.k_max:
        raise InvalidArgumentError(
            f"sup-norm {k:.4f} exceeds the solver limit k_max = {options.k_max}"
        )
    limit = SUPPORT_FRACTION * mu.grid.half_width
    if mu.support_radius > limit + 1e-12:
        raise DomainError(
            f"support radius {mu.support_radius:.3f} exceeds {limit:.3f} "
            f"on a grid of half-width {mu.grid.half_width}"
        )


def _neumann(mu: BeltramiField, options: SolverOptions) -> tuple[np.ndarray, SolverReport]:
    grid = mu.grid
    m = np.asarray(mu.values)
    phi = np.zeros(grid.shape, dtype=np.complex128)
    omega = options.relaxation if options.schedule is IterationSchedule.RELAXED else 1.0
    delta = np.inf

    for iteration in range(1, options.max_iter + 1):
        s_phi = beurling_on_grid(GridField(grid, phi))
        update = m * (1.0 + s_phi)
        if omega != 1.0:
            update = (1.0 - omega) * phi + omega * update
        delta = float(np.max(np.abs(update - phi)))
        phi = update
        if iteration % 50 == 0:
            logger.debug("Neumann iteration", extra={"iteration": iteration, "delta": delta})
        if delta < options.tol:
            k = mu.sup_norm
            return phi, SolverReport(
                iterations=iteration,
                residual=delta,
                norm=k,
                K=(1.0 + k) / (1.0 - k),
                schedule=options.schedule.value,
                grid_l=grid.half_width,
                grid_n=grid.resolution,
            )

    k = mu.sup_norm
    report = {
        "iterations": options.max_iter,
        "residual": delta,
        "norm": k,
        "schedule": options.schedule.value,
    }
    logger.error("Beltrami solve did not converge", extra=report)
    raise SolverFailureError(
        f"Neumann iteration stalled at residual {delta:.3e} after {options.max_iter} steps",
        report=report,
    )


def solve_normalized(
    mu: BeltramiField, options: SolverOptions = DEFAULT_OPTIONS
) -> QuasiconformalMap:
    """
    The normalized quasiconformal homeomorphism w^mu fixing 0, 1 and infinity.

    Raises InvalidArgumentError above k_max, DomainError for coefficients
    supported beyond 3L/4, SolverFailureError on non-convergence.
    """
    _check_preconditions(mu, options)
    grid = mu.grid

    if not np.any(mu.values):
        report = SolverReport(
            iterations=0, residual=0.0, norm=0.0, K=1.0,
            schedule=options.schedule.value,
            grid_l=grid.half_width, grid_n=grid.resolution,
        )
        return QuasiconformalMap(GridField(grid, grid.nodes), mu=mu.samples, report=report)

    phi, report = _neumann(mu, options)
    density = GridField(grid, phi)
    raw = grid.nodes + cauchy_on_grid(density)
    multipole = Multipole.of(density)

    def far_field(z: np.ndarray) -> np.ndarray:
        return z + multipole.cauchy(z)

    logger.info(
        "Solved Beltrami equation",
        extra={
            "iterations": report.iterations,
            "residual": report.residual,
            "norm": report.norm,
            "grid_n": grid.resolution,
        },
    )
    return QuasiconformalMap(GridField(grid, raw), far_field=far_field, mu=mu.samples, report=report)


def beltrami_of(w: QuasiconformalMap) -> BeltramiField:
    """
    w_zbar / w_z by centered differences of the normalized node samples.

    Moduli below 1e-12 are zeroed; moduli at or above 1 are clamped back
    inside the unit ball with a warning.
    """
    grid = w.grid
    wy, wx = np.gradient(w.samples, grid.spacing, edge_order=2)
    wz = 0.5 * (wx - 1j * wy)
    wzb = 0.5 * (wx + 1j * wy)

    scale = float(np.max(np.abs(wz)))
    singular = np.abs(wz) <= 1e-12 * max(scale, 1.0)
    if np.any(singular):
        nodes = [(int(k), int(j)) for k, j in np.argwhere(singular)[:20]]
        raise SingularNodeError(f"w_z vanishes at {int(singular.sum())} nodes", nodes)

    mu = wzb / wz
    modulus = np.abs(mu)
    mu[modulus < MU_ZERO_FLOOR] = 0.0
    over = modulus >= 1.0
    if np.any(over):
        logger.warning(
            "Clamped Beltrami coefficient of a sampled map",
            extra={"count": int(over.sum()), "max_modulus": float(modulus.max())},
        )
        mu[over] = mu[over] / modulus[over] * (1.0 - 1e-9)
    return BeltramiField.from_values(grid, mu)

"""
Quasiconformal extension of a finite motion by composed bump translations.

Each moving point travels along the straight segment to its target in n
equal steps. Step k translates every moving point with its own bump whose
disk stays clear of all other current points, so the bump disks within a
step are disjoint. The composite flow is smooth, its Beltrami coefficient
is exact, and re-solving that coefficient gives a normalized map whose
small residuals on the marked points are removed by a final bump correction.
"""

import logging
from collections.abc import Sequence

import numpy as np

from ..beltrami import (
    MAX_SHIFT_RATIO,
    BumpFlow,
    BumpStep,
    BumpTranslation,
    SetKind,
    SetModel,
)
from ..errors import ConstructionFailureError, DomainError, InvalidArgumentError
from ..grids import ComplexGrid
from ..moebius import is_infinite, same_point, sphere_array, to_sphere
from ..solver import DEFAULT_OPTIONS, QuasiconformalMap, SolverOptions, solve_normalized
from ..solver.beltrami_solver import SUPPORT_FRACTION

logger = logging.getLogger(__name__)

MAX_BUMP_RADIUS = 0.4
# Bump radius as a fraction of the distance to the nearest other point.
RADIUS_FRACTION = 0.45
MAX_STEPS = 4096
MARKED_TOL = 1e-6
# Bumps narrower than this many grid cells are not resolved by the solver.
MIN_RADIUS_CELLS = 2.0


def _validate(E: SetModel, targets: Sequence[complex]) -> tuple[np.ndarray, np.ndarray]:
    """Finite sources and their targets, after the precondition checks."""
    if E.kind is not SetKind.FINITE_POINTS:
        raise InvalidArgumentError("finite motions are extended for finite sets only")
    points = sphere_array(E.points)
    images = sphere_array(list(targets))
    if images.size != points.size:
        raise InvalidArgumentError(
            f"{images.size} targets given for {points.size} points of E"
        )
    for p, t in zip(points, images, strict=True):
        fixed = same_point(p, 0j) or same_point(p, 1 + 0j) or is_infinite(p)
        if fixed and not same_point(p, t):
            raise InvalidArgumentError(f"{p} must stay fixed, got target {t}")
        if is_infinite(t) and not is_infinite(p):
            raise InvalidArgumentError("only infinity may be sent to infinity")
    lifted = to_sphere(images)
    gaps = np.linalg.norm(lifted[:, np.newaxis, :] - lifted[np.newaxis, :, :], axis=-1)
    np.fill_diagonal(gaps, np.inf)
    if np.min(gaps) <= 0.0:
        raise InvalidArgumentError("targets are not injective")

    finite = ~np.asarray(is_infinite(points))
    return points[finite], images[finite]


def _bump_radii(positions: np.ndarray, moving: np.ndarray) -> np.ndarray:
    """Radius for each moving point: clear of every other current point."""
    gaps = np.abs(positions[moving][:, np.newaxis] - positions[np.newaxis, :])
    gaps[np.arange(moving.size), moving] = np.inf
    return np.minimum(MAX_BUMP_RADIUS, RADIUS_FRACTION * gaps.min(axis=1))


def _continuation(
    sources: np.ndarray,
    targets: np.ndarray,
    moving: np.ndarray,
    steps: int,
    grid: ComplexGrid,
) -> BumpFlow | None:
    """The n-step flow, or None when some shift is too large for its bump."""
    shift = (targets - sources)[moving] / steps
    min_radius = MIN_RADIUS_CELLS * grid.spacing
    reach = SUPPORT_FRACTION * grid.half_width

    positions = sources.copy()
    flow = []
    for k in range(steps):
        radii = _bump_radii(positions, moving)
        if np.any(radii < min_radius):
            j = int(moving[np.argmin(radii)])
            raise ConstructionFailureError(
                "points too crowded along the continuation path for resolvable bumps",
                diagnostics={
                    "step": k,
                    "steps": steps,
                    "point": str(sources[j]),
                    "radius": float(radii.min()),
                    "min_radius": min_radius,
                },
            )
        if np.any(np.abs(shift) > MAX_SHIFT_RATIO * radii):
            return None
        centers = positions[moving]
        if np.any(np.abs(centers) + radii > reach):
            raise DomainError(
                f"bump disks leave the solver support region |z| <= {reach:.3g}; use a larger grid"
            )
        flow.append(
            BumpStep(
                tuple(
                    BumpTranslation(complex(c), float(r), complex(s))
                    for c, r, s in zip(centers, radii, shift, strict=True)
                )
            )
        )
        positions[moving] = centers + shift
    return BumpFlow(tuple(flow))


def _correction(current: np.ndarray, targets: np.ndarray) -> BumpFlow:
    """One bump step sending current[j] to targets[j] for the points that are off."""
    off = np.flatnonzero(np.abs(current - targets) > 1e-15 * np.maximum(1.0, np.abs(targets)))
    if off.size == 0:
        return BumpFlow(())
    radii = _bump_radii(current, off)
    delta = (targets - current)[off]
    too_far = np.abs(delta) > MAX_SHIFT_RATIO * radii
    if np.any(too_far):
        raise ConstructionFailureError(
            "solved map misses the targets by more than a correcting bump can move",
            diagnostics={
                "max_error": float(np.max(np.abs(delta))),
                "radius": float(np.min(radii[too_far])),
            },
        )
    return BumpFlow.single(
        BumpTranslation(complex(c), float(r), complex(d))
        for c, r, d in zip(current[off], radii, delta, strict=True)
    )


def extend_finite_motion(
    E: SetModel,
    targets: Sequence[complex],
    grid: ComplexGrid,
    options: SolverOptions = DEFAULT_OPTIONS,
    steps: int | None = None,
) -> QuasiconformalMap:
    """
    A normalized quasiconformal map w with w(E) = targets within 1e-6.

    ``targets`` is aligned with ``E.points``; 0, 1 and infinity must stay
    fixed. The step count is the smallest power of two that keeps every
    shift within its bump, unless ``steps`` fixes it.
    """
    sources, images = _validate(E, targets)
    moving = np.flatnonzero(sources != images)
    if moving.size == 0:
        return QuasiconformalMap.identity(grid)

    counts = [steps] if steps is not None else [2 ** k for k in range(13)]
    flow = None
    for n in counts:
        if n < 1 or n > MAX_STEPS:
            raise InvalidArgumentError(f"step count must lie in [1, {MAX_STEPS}]")
        flow = _continuation(sources, images, moving, n, grid)
        if flow is not None:
            break
    if flow is None:
        raise ConstructionFailureError(
            "no step count keeps the bump shifts within bounds",
            diagnostics={"steps_tried": counts[-1], "moving": int(moving.size)},
        )

    try:
        mu = flow.beltrami(grid)
    except InvalidArgumentError as exc:
        raise ConstructionFailureError(
            "composed bump flow is not quasiconformal on the grid",
            diagnostics={"steps": len(flow.steps)},
        ) from exc
    if mu.sup_norm > options.k_max:
        raise ConstructionFailureError(
            "composed bump flow is too distorting for the solver",
            diagnostics={"norm": mu.sup_norm, "k_max": options.k_max, "steps": len(flow.steps)},
        )
    w = solve_normalized(mu, options)

    fix = _correction(w.evaluate_array(sources), images)
    if fix.steps:
        w = w.with_correction(fix.evaluate)
    residual = float(np.max(np.abs(w.evaluate_array(sources) - images)))
    if residual > MARKED_TOL:
        raise ConstructionFailureError(
            "extension misses the marked targets",
            diagnostics={"residual": residual, "tol": MARKED_TOL},
        )

    logger.info(
        "Extended finite motion",
        extra={
            "moving": int(moving.size),
            "steps": len(flow.steps),
            "norm": mu.sup_norm,
            "marked_residual": residual,
        },
    )
    return w

"""
Evaluation and certification of motions: the universal motion, trace and
forgetful maps, injectivity, holomorphy and continuity probes.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy.spatial import cKDTree

from ..beltrami import (
    BeltramiField,
    BumpFlow,
    SetModel,
    clamp_to_ball,
    compose_coefficients,
    teichmuller_distance_bound,
)
from ..errors import InvalidArgumentError
from ..grids import GridInterpolator
from ..moebius import INF, chordal_distance, is_infinite, sphere_array, to_sphere
from ..solver import (
    DEFAULT_OPTIONS,
    ContinuityReport,
    HolomorphyReport,
    SolverOptions,
    cauchy_riemann_probe,
    continuity_probe,
    solve_normalized,
)
from ..solver.probes import DEFAULT_STEPS, default_probe_points
from .constructions import INNER_RADIUS
from .models import (
    AgreementReport,
    MaximalCertificate,
    Motion,
    Parameter,
    ParameterDomain,
    TheoremBReport,
)

logger = logging.getLogger(__name__)

SEPARATION_FLOOR = 1e-9
AGREEMENT_TOL = 5e-3

Configuration = tuple[complex, ...]


def _finite_points(E: SetModel) -> np.ndarray:
    return np.array([p for p in E.points if not is_infinite(p)], dtype=complex)


def universal_motion_eval(
    mu: BeltramiField,
    z: complex,
    E: SetModel,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> complex:
    """Psi_E(P_E(mu), z) = w^mu(z) for z in a finite set E."""
    if not E.contains(z):
        raise InvalidArgumentError(f"{z} is not a point of E")
    if is_infinite(z):
        return INF
    return solve_normalized(mu, options).evaluate(z)


def motion_injectivity_check(
    phi: Motion, x: Parameter, floor: float = SEPARATION_FLOOR
) -> bool:
    """No two images of the moving set within ``floor`` in the chordal metric."""
    lifted = to_sphere(phi(x))
    return not cKDTree(lifted).query_pairs(floor)


def trace_map(phi: Motion, x: Parameter) -> Configuration:
    """(phi_x(z_1), ..., phi_x(z_n)) in the order of the motion's finite set."""
    if phi.set_model is None:
        raise InvalidArgumentError("trace maps are defined for motions of finite sets")
    return tuple(complex(w) for w in phi(x, sphere_array(phi.set_model.points)))


def forget_points(config: Sequence[complex], E2: SetModel, E1: SetModel) -> Configuration:
    """Drop the coordinates of points of E2 that are not in E1."""
    if len(config) != len(E2.points):
        raise InvalidArgumentError("configuration does not match E2")
    if not E2.includes(E1):
        raise InvalidArgumentError("E1 is not a subset of E2")
    return tuple(complex(config[E2.index_of(p)]) for p in E1.points)


def holomorphy_probe_motion(
    phi: Motion,
    z: complex,
    x0: Parameter | None = None,
    coordinate: int = 0,
    steps: Sequence[float] = DEFAULT_STEPS,
) -> HolomorphyReport:
    """CR probe of x -> phi(x, z); over B, ``coordinate`` picks alpha (0) or beta (1)."""
    x0 = phi.basepoint if x0 is None else x0
    if phi.domain is ParameterDomain.SAMPLED:
        raise InvalidArgumentError("sampled parameter domains have no complex structure to probe")

    if phi.domain is ParameterDomain.DISK:
        lam0 = complex(x0)  # type: ignore[arg-type]

        def value(lam: complex) -> complex:
            return phi.at(lam, z)
    else:
        if coordinate not in (0, 1):
            raise InvalidArgumentError("coordinate must be 0 (alpha) or 1 (beta)")
        fixed = tuple(complex(c) for c in x0)  # type: ignore[union-attr]
        lam0 = fixed[coordinate]

        def value(lam: complex) -> complex:
            x = (lam, fixed[1]) if coordinate == 0 else (fixed[0], lam)
            return phi.at(x, z)

    return cauchy_riemann_probe(value, lam0, steps)


def motion_continuity_probe(
    phi: Motion,
    x0: complex = 0j,
    offsets: Sequence[float] = (0.1, 0.05, 0.025, 0.0125),
    direction: complex = 1 + 0j,
) -> ContinuityReport:
    """Sup chordal distance between phi_{x0 + d u} and phi_{x0} as d shrinks."""
    if phi.domain is not ParameterDomain.DISK:
        raise InvalidArgumentError("continuity along rays is probed over the unit disk")
    u = direction / abs(direction)
    reference = phi(x0)
    distances = [float(np.max(chordal_distance(phi(x0 + d * u), reference))) for d in offsets]
    monotone = all(b <= a + 1e-12 for a, b in zip(distances, distances[1:], strict=False))
    return ContinuityReport(
        coefficient_gaps=list(offsets),
        distances=distances,
        monotone=monotone,
        passed=(monotone and distances[-1] < distances[0]) or max(distances) == 0.0,
    )


def maximal_example_certificate(phi: Motion, x: tuple[complex, complex]) -> MaximalCertificate:
    """|e^{i alpha}| + |beta| < 1 and the inner images stay inside the unit disk."""
    if phi.domain is not ParameterDomain.MAXIMAL:
        raise InvalidArgumentError("certificate applies to the maximal example motion")
    alpha, beta = x
    bound = abs(np.exp(1j * complex(alpha))) * math.e * INNER_RADIUS + abs(complex(beta))
    pts = phi.points
    finite = ~np.asarray(is_infinite(pts))
    inner = finite & (np.abs(np.where(finite, pts, 0j)) <= INNER_RADIUS * (1 + 1e-12))
    images = phi(x, pts[inner])
    inner_max = float(np.max(np.abs(images)))
    injective = motion_injectivity_check(phi, x)
    return MaximalCertificate(
        bound=float(bound),
        inner_max_modulus=inner_max,
        injective=injective,
        passed=bound < 1.0 and inner_max < 1.0 and injective,
    )


def representative_agreement(
    mu: BeltramiField,
    E: SetModel,
    bump: BumpFlow,
    tol: float = AGREEMENT_TOL,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> AgreementReport:
    """
    mu and the coefficient of w^mu o h, h a bump flow fixing E pointwise,
    give the same universal-motion values on E.
    """
    finite = _finite_points(E)
    if not bump.avoids(finite):
        raise InvalidArgumentError("the bump flow must fix every point of E")
    grid = mu.grid
    nodes = grid.nodes
    h = bump.evaluate(nodes)
    h_z, h_zbar = bump.wirtinger(nodes)
    outer = GridInterpolator(grid, mu.values)(h)
    other = clamp_to_ball(grid, compose_coefficients(outer, h_z, h_zbar))

    w1 = solve_normalized(mu, options)
    w2 = solve_normalized(other, options)
    residual = float(np.max(np.abs(w1.evaluate_array(finite) - w2.evaluate_array(finite))))
    centers = np.array([d.center for d in bump.disks])
    off_set_gap = float(np.max(np.abs(w1.evaluate_array(centers) - w2.evaluate_array(centers))))
    report = AgreementReport(
        residual=residual,
        points=int(finite.size),
        off_set_gap=off_set_gap,
        tol=tol,
        passed=residual < tol,
    )
    logger.info("Representative agreement", extra=report.model_dump())
    return report


def theorem_b_report(
    mu: BeltramiField,
    E: SetModel,
    levels: Sequence[float] = (0.5, 0.75, 0.875, 0.9375),
    options: SolverOptions = DEFAULT_OPTIONS,
) -> TheoremBReport:
    """
    Continuity along t mu, extension of the motion on E by the
    representative map w^mu, and norm control ||mu|| = tanh((1/2) log K).
    Canonicity of the extension is not tested.
    """
    finite = _finite_points(E)
    probes = np.concatenate([finite, default_probe_points(mu.grid)])
    continuity = continuity_probe(mu, [mu.scaled(t) for t in levels], probes, options)

    w = solve_normalized(mu, options)
    images = w.evaluate_array(finite)
    fixes = bool(
        abs(w.evaluate(0j)) < 1e-12 and abs(w.evaluate(1 + 0j) - 1) < 1e-12
        and is_infinite(w.evaluate(INF))
    )
    injective = not cKDTree(to_sphere(images)).query_pairs(SEPARATION_FLOOR)

    norm = mu.sup_norm
    distance = teichmuller_distance_bound(mu)
    identity_residual = abs(math.tanh(distance) - norm)
    passed = (
        continuity.passed and w.orientation_ok() and injective and fixes
        and identity_residual < 1e-12
    )
    return TheoremBReport(
        continuity=continuity,
        orientation_ok=w.orientation_ok(),
        injective_on_e=injective,
        fixes_marked_points=fixes,
        norm=norm,
        distance_bound=distance,
        norm_identity_residual=identity_residual,
        passed=passed,
    )

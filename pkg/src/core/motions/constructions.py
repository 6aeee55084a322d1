"""
Constructions of holomorphic motions.
"""

import logging
import math
from collections.abc import Sequence
from functools import lru_cache

import numpy as np

from ..beltrami import BeltramiField, SetModel
from ..errors import DegenerateTripleError, DomainError, InvalidArgumentError
from ..grids import GridField
from ..moebius import (
    INF,
    is_infinite,
    moebius_from_triple,
    same_point,
    sphere_array,
)
from ..solver import DEFAULT_OPTIONS, QuasiconformalMap, SolverOptions, solve_normalized
from .models import Motion, Parameter, ParameterDomain

logger = logging.getLogger(__name__)

DEFAULT_MARKED = (0j, 1 + 0j, INF, -1 + 0j, 0.5j, 0.5 + 0.5j)
INNER_RADIUS = math.exp(-1.0)
# Relative slack for "is this a point of the moving set" tests.
POINT_TOL = 1e-12


def _match_points(z: np.ndarray, points: np.ndarray, tol: float = POINT_TOL) -> np.ndarray:
    """Index of the point each z coincides with (relative tol), or -1."""
    z = np.asarray(z, dtype=complex)
    idx = np.full(z.shape, -1, dtype=int)
    z_inf = np.asarray(is_infinite(z))
    zf = np.where(z_inf, 0j, z)
    for j, p in enumerate(points):
        if is_infinite(p):
            hit = z_inf
        else:
            hit = ~z_inf & (np.abs(zf - p) <= tol * max(1.0, abs(p)))
        idx = np.where(hit & (idx < 0), j, idx)
    return idx


def normalize_motion(phi: Motion, a: complex, b: complex, c: complex) -> Motion:
    """
    phi_hat(x, M_x0(z)) = M_x(phi(x, z)) where M_x sends phi_x(a), phi_x(b),
    phi_x(c) to 0, 1, infinity.
    """
    for p in (a, b, c):
        if not any(same_point(p, q) for q in phi.points):
            raise InvalidArgumentError(f"{p} is not a point of the moving set")
    m0 = moebius_from_triple(a, b, c)
    m0_inv = m0.inverse()
    triple = sphere_array([a, b, c])

    points = m0.apply_array(phi.points)

    def evaluator(x: Parameter, z: np.ndarray) -> np.ndarray:
        # points of the set are pulled back by index so phi sees them unchanged
        source = m0_inv.apply_array(z)
        idx = _match_points(z, points)
        source = np.where(idx >= 0, phi.points[np.maximum(idx, 0)], source)
        images = phi(x, source)
        pa, pb, pc = (complex(w) for w in phi(x, triple))
        try:
            m_x = moebius_from_triple(pa, pb, pc)
        except InvalidArgumentError as exc:
            raise DegenerateTripleError(
                f"normalizing points coincide at parameter {x}: {pa}, {pb}, {pc}"
            ) from exc
        return m_x.apply_array(images)

    set_model = SetModel.finite_points(points) if phi.set_model is not None else None
    return Motion(
        domain=phi.domain,
        basepoint=phi.basepoint,
        points=points,
        evaluator=evaluator,
        set_model=set_model,
        parameters=phi.parameters,
    )


def wtmu_motion(
    direction: GridField,
    E: SetModel | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
    cache_size: int = 64,
) -> Motion:
    """phi(t, z) = w^{t mu0}(z) over the unit disk, for a direction field with sup-norm 1."""
    if abs(direction.sup_norm - 1.0) > 1e-9:
        raise InvalidArgumentError(
            f"direction field must have sup-norm 1, got {direction.sup_norm:.6f}"
        )
    radius = direction.support_radius
    E = E or SetModel.finite_points(DEFAULT_MARKED)

    @lru_cache(maxsize=cache_size)
    def solve_at(t: complex) -> QuasiconformalMap:
        mu = BeltramiField(direction.scale(t), radius)
        return solve_normalized(mu, options)

    def extension(x: Parameter) -> QuasiconformalMap:
        return solve_at(complex(x))  # type: ignore[arg-type]

    def evaluator(x: Parameter, z: np.ndarray) -> np.ndarray:
        return extension(x).evaluate_array(z)

    return Motion(
        domain=ParameterDomain.DISK,
        basepoint=0j,
        points=sphere_array(E.points),
        evaluator=evaluator,
        set_model=E,
        extension=extension,
    )


def maximal_sample(radial: int = 6, angular: int = 16) -> np.ndarray:
    """Points of {|z| >= 1} and {|z| <= e^-1}, infinity included."""
    t = 2 * np.pi * np.arange(angular) / angular
    ring = np.exp(1j * t)
    outer = np.concatenate([ring, 1.5 * ring, 3.0 * ring, [INF]])
    radii = INNER_RADIUS * np.arange(1, radial + 1) / radial
    inner = np.concatenate([[0j], np.multiply.outer(radii, ring).ravel()])
    return sphere_array(np.concatenate([inner, outer]))


def maximal_example_motion(radial: int = 6, angular: int = 16) -> Motion:
    """
    phi((alpha, beta), z) = z on |z| >= 1 and e^{i alpha} e z + beta on
    |z| <= e^-1, over B = {|e^{i alpha}| + |beta| < 1} with basepoint (i, 0).
    """

    def evaluator(x: Parameter, z: np.ndarray) -> np.ndarray:
        alpha, beta = x  # type: ignore[misc]
        inf = np.asarray(is_infinite(z))
        modulus = np.where(inf, np.inf, np.abs(np.where(inf, 0j, z)))
        outer = modulus >= 1.0 - POINT_TOL
        inner = modulus <= INNER_RADIUS * (1 + 1e-12)
        if not np.all(outer | inner):
            raise DomainError("points between e^-1 and 1 are not in the moving set")
        scale = np.exp(1j * complex(alpha)) * math.e
        return np.where(inner, scale * np.where(inner, z, 0j) + complex(beta), z)

    return Motion(
        domain=ParameterDomain.MAXIMAL,
        basepoint=(1j, 0j),
        points=maximal_sample(radial, angular),
        evaluator=evaluator,
    )


def linear_motion(E: SetModel, velocities: Sequence[complex]) -> Motion:
    """phi(x, z_j) = z_j + x v_j over the unit disk; 0, 1 and infinity stay fixed."""
    if len(velocities) != len(E.points):
        raise InvalidArgumentError("one velocity per point of E is required")
    v = np.array(velocities, dtype=complex)
    for p, vj in zip(E.points, v, strict=True):
        if (same_point(p, 0j) or same_point(p, 1 + 0j) or is_infinite(p)) and vj != 0:
            raise InvalidArgumentError("0, 1 and infinity must not move")
    points = sphere_array(E.points)

    def evaluator(x: Parameter, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        idx = _match_points(z, points)
        moved = points[np.maximum(idx, 0)] + complex(x) * v[np.maximum(idx, 0)]  # type: ignore[arg-type]
        return np.where((idx >= 0) & (v[np.maximum(idx, 0)] != 0), moved, z)

    return Motion(
        domain=ParameterDomain.DISK,
        basepoint=0j,
        points=points,
        evaluator=evaluator,
        set_model=E,
    )


def seeded_linear_motion(E: SetModel, seed: int, scale: float = 0.4) -> Motion:
    """Random velocities small enough that the motion stays injective on |x| < 1."""
    rng = np.random.default_rng(seed)
    finite = np.array([p for p in E.points if not is_infinite(p)])
    gaps = np.abs(finite[:, np.newaxis] - finite[np.newaxis, :])
    separation = float(np.min(gaps[gaps > 0]))
    velocities = []
    for p in E.points:
        if is_infinite(p) or same_point(p, 0j) or same_point(p, 1 + 0j):
            velocities.append(0j)
            continue
        angle = rng.uniform(0, 2 * np.pi)
        velocities.append(scale * 0.5 * separation * rng.uniform(0.2, 1.0) * np.exp(1j * angle))
    return linear_motion(E, velocities)

"""
Barycentric extension of circle homeomorphisms to the disk.

ex(phi)(z) is the unique w in the disk with

    integral over S^1 of (phi(zeta) - w) / (1 - conj(w) phi(zeta)) * P(z, zeta) |dzeta| / 2 pi = 0,

P the Poisson kernel. The integral is the trapezoid rule on the trace
samples; w is found by a two-real-dimensional Newton iteration seeded at
the Poisson average of phi.
"""

import logging

import numpy as np
from pydantic import BaseModel
from scipy.spatial import cKDTree

from ..errors import BarycenterFailureError, DomainError, InvalidArgumentError
from ..moebius import MoebiusTransform, is_disk_automorphism
from .circle import CircleHomeo, TraceInterpolation

logger = logging.getLogger(__name__)

BARYCENTER_TOL = 1e-10
MAX_STEPS = 50
MAX_RETRIES = 10
CHUNK = 256


class InjectivityReport(BaseModel):
    """Homeomorphism proxy for ex(phi) on a polar sample."""

    samples: int
    min_image_separation: float
    colliding_pairs: int
    passed: bool


class NaturalityReport(BaseModel):
    residual: float
    points: int


def poisson_kernel(z: np.ndarray, zeta: np.ndarray) -> np.ndarray:
    """P(z, zeta) = (1 - |z|^2) / |zeta - z|^2 for every pair (rows: z)."""
    z = np.asarray(z, dtype=complex)[:, np.newaxis]
    return (1.0 - np.abs(z) ** 2) / np.abs(zeta[np.newaxis, :] - z) ** 2


def _field(w: np.ndarray, phi: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    wc = np.conj(w)[:, np.newaxis]
    return np.mean(kernel * (phi - w[:, np.newaxis]) / (1.0 - wc * phi), axis=1)


def _newton_step(w: np.ndarray, phi: np.ndarray, kernel: np.ndarray, value: np.ndarray) -> np.ndarray:
    wc = np.conj(w)[:, np.newaxis]
    denom = 1.0 - wc * phi
    a = np.mean(-kernel / denom, axis=1)
    b = np.mean(kernel * (phi - w[:, np.newaxis]) * phi / denom ** 2, axis=1)
    det = np.abs(a) ** 2 - np.abs(b) ** 2
    return (b * np.conj(value) - np.conj(a) * value) / det


def _solve_chunk(
    z: np.ndarray, phi: np.ndarray, zeta: np.ndarray, tol: float, polish: int
) -> np.ndarray:
    kernel = poisson_kernel(z, zeta)
    w = np.mean(kernel * phi, axis=1)
    value = _field(w, phi, kernel)
    active = np.abs(value) >= tol

    for _ in range(MAX_STEPS):
        if not np.any(active):
            break
        idx = np.flatnonzero(active)
        k_a, w_a, v_a = kernel[idx], w[idx], value[idx]
        delta = _newton_step(w_a, phi, k_a, v_a)

        pending = np.ones(idx.size, dtype=bool)
        scale = 1.0
        for _ in range(MAX_RETRIES):
            sel = np.flatnonzero(pending)
            trial = w_a[sel] + scale * delta[sel]
            inside = np.abs(trial) < 1.0
            trial_value = np.full(sel.size, np.inf, dtype=complex)
            if np.any(inside):
                trial_value[inside] = _field(trial[inside], phi, k_a[sel[inside]])
            better = np.abs(trial_value) < np.abs(v_a[sel])
            w[idx[sel[better]]] = trial[better]
            value[idx[sel[better]]] = trial_value[better]
            pending[sel[better]] = False
            if not np.any(pending):
                break
            scale *= 0.5
        if np.any(pending):
            raise BarycenterFailureError(
                f"barycenter Newton step could not reduce the residual at {int(pending.sum())} points"
            )
        active = np.abs(value) >= tol

    if np.any(active):
        worst = float(np.max(np.abs(value[active])))
        raise BarycenterFailureError(
            f"barycenter did not converge after {MAX_STEPS} steps (residual {worst:.3e})"
        )

    for _ in range(polish):
        step = _newton_step(w, phi, kernel, value)
        trial = w + step
        keep = np.abs(trial) < 1.0
        w = np.where(keep, trial, w)
        value = _field(w, phi, kernel)
    return w


def barycentric_extend_array(
    phi: CircleHomeo,
    z: np.ndarray,
    tol: float = BARYCENTER_TOL,
    polish: int = 0,
) -> np.ndarray:
    """
    ex(phi) at each point of the open disk.

    ``polish`` extra undamped Newton steps after convergence push the
    residual down to rounding level (used by finite differences).
    """
    z = np.asarray(z, dtype=complex)
    flat = np.atleast_1d(z).ravel()
    if np.any(np.abs(flat) >= 1.0):
        raise DomainError("barycentric extension is evaluated in the open unit disk only")

    zeta = np.exp(1j * phi.theta)
    values = phi.boundary_values
    out = np.empty(flat.shape, dtype=complex)
    for start in range(0, flat.size, CHUNK):
        stop = start + CHUNK
        out[start:stop] = _solve_chunk(flat[start:stop], values, zeta, tol, polish)
    return out.reshape(z.shape)


def barycentric_extend(phi: CircleHomeo, z: complex, tol: float = BARYCENTER_TOL) -> complex:
    """ex(phi)(z) for a single point of the disk."""
    return complex(barycentric_extend_array(phi, np.array([z]), tol)[0])


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def disk_sample(count: int = 200, radius: float = 0.9, seed: int = 0) -> np.ndarray:
    """Uniformly distributed points of the disk |z| <= radius."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random(count))
    return r * np.exp(1j * 2 * np.pi * rng.random(count))


def naturality_residual(
    phi: CircleHomeo,
    g: MoebiusTransform,
    h: MoebiusTransform,
    points: np.ndarray | None = None,
    interpolation: TraceInterpolation = TraceInterpolation.FOURIER,
) -> NaturalityReport:
    """sup |ex(h o phi o g)(z) - h(ex(phi)(g(z)))| over the sample points."""
    for m in (g, h):
        if not is_disk_automorphism(m):
            raise InvalidArgumentError("naturality is checked for automorphisms of the disk")
    z = disk_sample() if points is None else np.asarray(points, dtype=complex)
    trace = phi.with_interpolation(interpolation)
    conjugated = trace.compose_with_moebius(g, h)

    lhs = barycentric_extend_array(conjugated, z)
    rhs = h.apply_array(barycentric_extend_array(trace, g.apply_array(z)))
    residual = float(np.max(np.abs(lhs - rhs)))
    logger.debug("Naturality residual", extra={"residual": residual, "points": int(z.size)})
    return NaturalityReport(residual=residual, points=int(z.size))


def polar_sample(radial: int = 50, angular: int = 50, outer: float = 0.98) -> np.ndarray:
    """radial x angular polar nodes with radii in (0, outer]."""
    r = outer * np.arange(1, radial + 1) / radial
    t = 2 * np.pi * np.arange(angular) / angular
    return np.multiply.outer(r, np.exp(1j * t)).ravel()


def extension_injectivity_check(
    phi: CircleHomeo,
    radial: int = 50,
    angular: int = 50,
    image_floor: float = 1e-9,
    input_separation: float = 1e-3,
) -> InjectivityReport:
    """No two sample images closer than image_floor when their inputs are at least input_separation apart."""
    z = polar_sample(radial, angular)
    w = barycentric_extend_array(phi, z)
    tree = cKDTree(np.column_stack([w.real, w.imag]))
    distances, _ = tree.query(np.column_stack([w.real, w.imag]), k=2)
    collisions = [
        (i, j) for i, j in tree.query_pairs(image_floor)
        if abs(z[i] - z[j]) >= input_separation
    ]
    return InjectivityReport(
        samples=int(z.size),
        min_image_separation=float(np.min(distances[:, 1])),
        colliding_pairs=len(collisions),
        passed=not collisions,
    )

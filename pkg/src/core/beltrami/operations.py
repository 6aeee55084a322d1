"""
Operations on Beltrami coefficients: norms, dilatation, Moebius
pushforward/pullback, restriction and gluing over E / E^c.
"""

import logging
import math

import numpy as np

from ..errors import DomainError, InvalidArgumentError
from ..grids import ComplexGrid, GridInterpolator
from ..moebius import MoebiusTransform, image_circle, is_infinite
from .models import BeltramiField, SetModel

logger = logging.getLogger(__name__)


def sup_norm(mu: BeltramiField) -> float:
    return mu.sup_norm


def dilatation(mu: BeltramiField) -> float:
    """K = (1 + ||mu||) / (1 - ||mu||)."""
    k = mu.sup_norm
    return (1.0 + k) / (1.0 - k)


def teichmuller_distance_bound(mu: BeltramiField) -> float:
    """Upper bound (1/2) log K for the distance from the basepoint."""
    return 0.5 * math.log(dilatation(mu))


def _check_image_fits(mu: BeltramiField, g: MoebiusTransform, target: ComplexGrid) -> None:
    if mu.support_radius == 0 or not np.any(mu.values):
        return
    center, radius, interior = image_circle(g, 0j, mu.support_radius)
    if not interior:
        raise DomainError("the Moebius map sends the support of mu through infinity")
    reach = max(abs(center.real), abs(center.imag)) + radius
    if reach > target.half_width - target.spacing:
        raise DomainError(
            f"image of the support (reach {reach:.3f}) escapes the target grid "
            f"(half-width {target.half_width})"
        )


def pushforward(
    mu: BeltramiField,
    g: MoebiusTransform,
    target_grid: ComplexGrid | None = None,
) -> BeltramiField:
    """
    g_*(mu) = nu with nu(w) = mu(g^-1(w)) * (g'/conj(g'))(g^-1(w)).

    Equivalently mu = (nu o g) * conj(g')/g'. Samples are resampled by bicubic
    interpolation onto the target grid (mu's grid by default).
    """
    target = target_grid or mu.grid
    _check_image_fits(mu, g, target)
    if not np.any(mu.values):
        return BeltramiField.zeros(target)

    w = target.nodes
    z = g.inverse().apply_array(w)
    valid = ~np.asarray(is_infinite(z)) & mu.grid.contains(z)

    values = np.zeros(target.shape, dtype=np.complex128)
    zv = z[valid]
    gp = np.asarray(g.derivative(zv))
    values[valid] = GridInterpolator(mu.grid, mu.values)(zv) * gp / np.conj(gp)

    center_image, radius_image, _ = image_circle(g, 0j, mu.support_radius)
    radius = abs(center_image) + radius_image
    values[target.radii > radius] = 0.0
    return clamp_to_ball(target, values, radius)


def pullback(mu: BeltramiField, g: MoebiusTransform) -> BeltramiField:
    """(mu o g) * conj(g')/g' on mu's grid; mu is G-invariant iff pullback(mu, g) = mu."""
    grid = mu.grid
    z = grid.nodes
    gz = g.apply_array(z)
    valid = ~np.asarray(is_infinite(gz)) & grid.contains(gz)
    values = np.zeros(grid.shape, dtype=np.complex128)
    gp = np.asarray(g.derivative(z[valid]))
    values[valid] = GridInterpolator(grid, mu.values)(gz[valid]) * np.conj(gp) / gp
    return clamp_to_ball(grid, values, None)


def defining_relation_residual(
    mu: BeltramiField, nu: BeltramiField, g: MoebiusTransform, margin_cells: int = 2
) -> float:
    """sup over mu's nodes of |mu - (nu o g) conj(g')/g'|, skipping boundary cells of nu's grid."""
    z = mu.grid.nodes
    gz = g.apply_array(z)
    margin = margin_cells * nu.grid.spacing
    valid = ~np.asarray(is_infinite(gz)) & nu.grid.contains(gz, margin=margin)
    if not np.any(valid):
        return 0.0
    gp = np.asarray(g.derivative(z[valid]))
    pulled = GridInterpolator(nu.grid, nu.values)(gz[valid]) * np.conj(gp) / gp
    return float(np.max(np.abs(mu.values[valid] - pulled)))


def restrict_glue(mu: BeltramiField, E: SetModel, nu: BeltramiField) -> BeltramiField:
    """Field equal to nu on E^c and mu on E (node membership by the open-disk test)."""
    if not mu.grid.same_as(nu.grid):
        raise InvalidArgumentError("restrict_glue needs fields on the same grid")
    in_e = E.contains(mu.grid.nodes)
    values = np.where(in_e, mu.values, nu.values)
    return BeltramiField.from_values(
        mu.grid, values, max(mu.support_radius, nu.support_radius)
    )


def restrict_to_set(mu: BeltramiField, E: SetModel) -> BeltramiField:
    """mu on E, zero on every complementary disk."""
    return restrict_glue(mu, E, BeltramiField.zeros(mu.grid))


def clamp_to_ball(
    grid: ComplexGrid, values: np.ndarray, radius: float | None = None
) -> BeltramiField:
    """Wrap samples as a BeltramiField, pulling any with |mu| >= 1 back inside the unit ball."""
    modulus = np.abs(values)
    over = modulus >= 1.0
    if np.any(over):
        logger.warning(
            "Clamped interpolated Beltrami samples",
            extra={"count": int(np.count_nonzero(over)), "max_modulus": float(modulus.max())},
        )
        values = np.where(over, values / np.maximum(modulus, 1.0) * (1.0 - 1e-9), values)
    if radius is None:
        return BeltramiField.from_values(grid, values)
    return BeltramiField.from_values(grid, values, radius)


def cap_modulus(values: np.ndarray, cap: float) -> np.ndarray:
    """Scale samples with |mu| > cap back onto the circle of radius cap, with a warning."""
    values = np.asarray(values, dtype=complex)
    modulus = np.abs(values)
    over = modulus > cap
    if not np.any(over):
        return values
    logger.warning(
        "Capped Beltrami samples at the source norm",
        extra={
            "count": int(np.count_nonzero(over)),
            "cap": float(cap),
            "max_modulus": float(modulus.max()),
        },
    )
    return np.where(over, values / np.where(over, modulus, 1.0) * cap, values)


def compose_coefficients(
    outer: np.ndarray, inner_dz: np.ndarray, inner_dzbar: np.ndarray
) -> np.ndarray:
    """
    Beltrami coefficient of w o h from mu_w sampled at h(z) and the Wirtinger derivatives of h.

        mu_{w o h} = (mu_h + (mu_w o h) * theta) / (1 + conj(mu_h) * (mu_w o h) * theta),
        theta = conj(h_z) / h_z
    """
    inner_dz = np.asarray(inner_dz, dtype=complex)
    mu_h = np.asarray(inner_dzbar, dtype=complex) / inner_dz
    rotated = np.asarray(outer, dtype=complex) * np.conj(inner_dz) / inner_dz
    return (mu_h + rotated) / (1.0 + np.conj(mu_h) * rotated)

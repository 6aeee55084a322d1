"""
Lieb coordinates on T(E): the projection P~_E, equality at tolerance and
the Douady-Earle section s.
"""

import logging

import numpy as np

from ..beltrami import BeltramiField, Disk, SetModel, clamp_to_ball, restrict_to_set
from ..douady_earle import circle_map_from_mu, sigma_at
from ..douady_earle.disk_solver import DEFAULT_BOUNDARY_SAMPLES
from ..douady_earle.section import SIGMA_CUTOFF
from ..errors import DomainError, InvalidArgumentError, QCLabError
from ..grids import ComplexGrid, GridInterpolator
from ..solver import DEFAULT_OPTIONS, SolverOptions
from .models import (
    LIEB_TOL,
    LiebResidual,
    SectionNormReport,
    TeichPoint,
    default_chart_grid,
)

logger = logging.getLogger(__name__)


def chart_coefficient(mu: BeltramiField, disk: Disk, chart_grid: ComplexGrid) -> BeltramiField:
    """mu on the disk carried to the unit disk by the affine chart (z - c)/r."""
    reach = max(abs(disk.center.real), abs(disk.center.imag)) + disk.radius
    if reach > mu.grid.half_width - mu.grid.spacing:
        raise DomainError(f"disk {disk} is not resolved by the grid of mu")
    values = np.zeros(chart_grid.shape, dtype=complex)
    inside = chart_grid.radii < 1.0
    values[inside] = GridInterpolator(mu.grid, mu.values)(disk.from_chart(chart_grid.nodes[inside]))
    return clamp_to_ball(chart_grid, values, 1.0)


def project_tilde(
    mu: BeltramiField,
    E: SetModel,
    chart_grid: ComplexGrid | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
    n_boundary: int = DEFAULT_BOUNDARY_SAMPLES,
) -> TeichPoint:
    """P~_E(mu) = (normalized disk traces, mu|E)."""
    chart_grid = chart_grid or default_chart_grid()
    components = []
    for i, disk in enumerate(E.disks):
        try:
            nu = chart_coefficient(mu, disk, chart_grid)
            components.append(circle_map_from_mu(nu, options, n_boundary))
        except QCLabError as exc:
            logger.error("Component solve failed", extra={"component": i, "error": str(exc)})
            exc.add_note(f"while projecting component {i} (disk {disk})")
            raise
    point = TeichPoint(E, tuple(components), restrict_to_set(mu, E), representative=mu)
    logger.debug("Projected to Lieb coordinates", extra={"components": len(components)})
    return point


def _margin_mask(E: SetModel, grid: ComplexGrid, margin: float) -> np.ndarray:
    """Nodes of E at least ``margin`` away from every disk."""
    keep = np.asarray(E.contains(grid.nodes))
    if margin > 0:
        for d in E.disks:
            keep &= np.abs(grid.nodes - d.center) >= d.radius + margin
    return keep


def lieb_residuals(t1: TeichPoint, t2: TeichPoint, margin: float = 0.0) -> LiebResidual:
    """Sup angular distance between component traces and sup nodewise gap of mu|E."""
    if not t1.set_model.matches(t2.set_model):
        raise InvalidArgumentError("points belong to different sets E")
    if not t1.grid.same_as(t2.grid):
        raise InvalidArgumentError("points carry mu|E on different grids")
    trace = max(
        (a.angular_distance(b) for a, b in zip(t1.components, t2.components, strict=True)),
        default=0.0,
    )
    keep = _margin_mask(t1.set_model, t1.grid, margin)
    gap = np.abs(t1.mu_on_e.values - t2.mu_on_e.values)[keep]
    return LiebResidual(trace=trace, field=float(gap.max()) if gap.size else 0.0)


def lieb_equal(t1: TeichPoint, t2: TeichPoint, tol: float = LIEB_TOL) -> bool:
    """Equality in T(E) at tolerance: traces and mu|E agree within tol."""
    return lieb_residuals(t1, t2).worst <= tol


def de_section(t: TeichPoint, E: SetModel | None = None) -> BeltramiField:
    """s(t): sigma of each component trace on its disk, mu|E on E."""
    if E is not None and not E.matches(t.set_model):
        raise InvalidArgumentError("the point does not belong to T(E) for this E")
    grid = t.grid
    values = np.array(t.mu_on_e.values)
    labels = t.set_model.disk_labels(grid)
    for i, (disk, phi) in enumerate(zip(t.set_model.disks, t.components, strict=True)):
        zeta = disk.to_chart(grid.nodes[labels == i])
        near = np.abs(zeta) <= SIGMA_CUTOFF
        block = np.zeros(zeta.shape, dtype=complex)
        block[near] = sigma_at(phi, zeta[near])
        values[labels == i] = block
    return clamp_to_ball(grid, values)


def section_norm_report(t: TeichPoint, c_emp: float | None = None) -> SectionNormReport:
    """
    ||s(t)|| against max(k, c_emp) with k = ||representative||. Without an
    externally collected c_emp the observed norm on the disks is recorded.
    """
    if t.representative is None:
        raise InvalidArgumentError("the section norm bound needs the retained representative")
    section = de_section(t)
    labels = t.set_model.disk_labels(t.grid)
    on_disks = np.abs(section.values[labels >= 0])
    norm_on_disks = float(on_disks.max()) if on_disks.size else 0.0
    k = t.representative.sup_norm
    c = norm_on_disks if c_emp is None else c_emp
    bound = max(k, c)
    report = SectionNormReport(
        k=k,
        c_emp=c,
        norm_on_e=t.mu_on_e.sup_norm,
        norm_on_disks=norm_on_disks,
        section_norm=section.sup_norm,
        bound=bound,
        distance_bound=t.distance_bound(),
        passed=section.sup_norm <= bound + 1e-12 and bound < 1.0,
    )
    logger.info("Section norm", extra=report.model_dump())
    return report

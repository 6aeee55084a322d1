"""
The Moebius action F_g on T(E) and its certification.

F_g sends [w^mu]_E to [g_hat o w^mu o g^-1]_{g(E)}, with g_hat the
normalizer restoring 0, 1 and infinity. Component i of E lands on
component alpha(i) of g(E); the chart transport m_i between the two unit
disks realizes (rho_g)_i on boundary traces.
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..beltrami import (
    BeltramiField,
    Disk,
    SetModel,
    defining_relation_residual,
    pushforward,
    restrict_to_set,
)
from ..douady_earle.disk_solver import DEFAULT_BOUNDARY_SAMPLES
from ..errors import InvalidArgumentError
from ..grids import ComplexGrid, covering_grid
from ..moebius import (
    INF,
    MoebiusTransform,
    chordal_distance,
    image_circle,
    is_infinite,
    normalizer_fixing_triple,
    sphere_array,
)
from ..solver import (
    DEFAULT_OPTIONS,
    QuasiconformalMap,
    SolverOptions,
    beltrami_of,
    solve_normalized,
)
from .coordinates import de_section, lieb_residuals, project_tilde
from .models import LIEB_TOL, InvarianceReport, TheoremAReport

logger = logging.getLogger(__name__)

# Target grid half-width relative to the farthest image disk or support circle.
TARGET_HEADROOM = 1.1


class SetImage(NamedTuple):
    set_model: SetModel
    alpha: tuple[int, ...]
    preserved: bool


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Result of F_g: the new coefficient, g(E), the permutation and chart transports."""

    nu: BeltramiField
    set_model: SetModel
    alpha: tuple[int, ...]
    g: MoebiusTransform
    g_hat: MoebiusTransform
    charts: tuple[MoebiusTransform, ...]


def image_set(E: SetModel, g: MoebiusTransform) -> SetImage:
    """g(E) for a disk-complement E; reuses E's ordering when g(E) = E."""
    g_inv = g.inverse()
    for marked in (0j, 1 + 0j):
        if not E.contains(g_inv.apply(marked)):
            raise InvalidArgumentError(f"{marked} does not lie in g(E)")
    if not is_infinite(g.pole) and not E.contains(g.pole):
        raise InvalidArgumentError("infinity does not lie in g(E)")

    images = []
    for d in E.disks:
        center, radius, interior = image_circle(g, d.center, d.radius)
        if not interior:
            raise InvalidArgumentError(f"g sends disk {d} to the exterior of a circle")
        images.append(Disk(center, radius))

    alpha = []
    for image in images:
        match = [j for j, d in enumerate(E.disks) if image.isclose(d)]
        if len(match) != 1:
            break
        alpha.append(match[0])
    if len(alpha) == len(images) and len(set(alpha)) == len(alpha):
        return SetImage(E, tuple(alpha), True)
    return SetImage(SetModel.disk_complement(images), tuple(range(len(images))), False)


def chart_transports(
    E: SetModel, g: MoebiusTransform, image: SetImage
) -> tuple[MoebiusTransform, ...]:
    """m_i = chart(g(S_i)) o g o chart(S_i)^-1, an automorphism of the unit disk."""
    charts = []
    for i, d in enumerate(E.disks):
        target = image.set_model.disks[image.alpha[i]]
        from_chart = MoebiusTransform.affine(d.radius, d.center)
        to_chart = MoebiusTransform.affine(1.0 / target.radius, -target.center / target.radius)
        charts.append(to_chart @ g @ from_chart)
    return tuple(charts)


def _target_grid(mu: BeltramiField, g: MoebiusTransform, image: SetImage) -> ComplexGrid:
    reach = max(
        max(abs(d.center.real), abs(d.center.imag)) + d.radius for d in image.set_model.disks
    )
    if mu.support_radius > 0:
        center, radius, _ = image_circle(g, 0j, mu.support_radius)
        reach = max(reach, max(abs(center.real), abs(center.imag)) + radius)
    return covering_grid(TARGET_HEADROOM * reach, mu.grid.spacing)


def f_g_action(
    mu: BeltramiField,
    g: MoebiusTransform,
    E: SetModel,
    target_grid: ComplexGrid | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> GroupAction:
    """nu = beltrami_of(g_hat o w^mu o g^-1) on a grid covering g(E)'s disks."""
    image = image_set(E, g)
    target = target_grid or _target_grid(mu, g, image)
    w = solve_normalized(mu, options)
    g_inv = g.inverse()

    def composite(s: np.ndarray) -> np.ndarray:
        return g.apply_array(w.evaluate_array(g_inv.apply_array(s)))

    marks = composite(sphere_array([0, 1, INF]))
    g_hat = normalizer_fixing_triple(complex(marks[0]), complex(marks[1]), complex(marks[2]))
    samples = g_hat.apply_array(composite(target.nodes))
    nu = beltrami_of(QuasiconformalMap.from_samples(target, samples))

    logger.info(
        "Applied Moebius action",
        extra={
            "alpha": list(image.alpha),
            "target_l": target.half_width,
            "target_n": target.resolution,
        },
    )
    return GroupAction(
        nu=nu,
        set_model=image.set_model,
        alpha=image.alpha,
        g=g,
        g_hat=g_hat,
        charts=chart_transports(E, g, image),
    )


def _comparison_margin(
    E: SetModel, g: MoebiusTransform, source: ComplexGrid, target: ComplexGrid, cells: int
) -> float:
    stretch = max(abs(complex(g.derivative(d.center))) for d in E.disks)
    return cells * max(target.spacing, stretch * source.spacing)


def theorem_a_residual(
    mu: BeltramiField,
    g: MoebiusTransform,
    E: SetModel,
    tol: float = LIEB_TOL,
    chart_grid: ComplexGrid | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
    n_boundary: int = DEFAULT_BOUNDARY_SAMPLES,
    margin_cells: int = 3,
) -> TheoremAReport:
    """
    (a) sup over nodes of g(E) of |g_*(mu|E) - nu|, away from the disk
    circles by ``margin_cells`` cells; (b) for every component, the angular
    distance between trace alpha(i) of P~(nu) and trace i of P~(mu)
    transported by m_i.
    """
    action = f_g_action(mu, g, E, options=options)
    target = action.nu.grid
    pushed = pushforward(restrict_to_set(mu, E), g, target)

    margin = _comparison_margin(E, g, mu.grid, target, margin_cells)
    keep = np.asarray(action.set_model.contains(target.nodes))
    for d in action.set_model.disks:
        keep &= np.abs(target.nodes - d.center) >= d.radius + margin
    keep &= target.contains(target.nodes, margin=margin_cells * target.spacing)
    gaps = np.abs(pushed.values - action.nu.values)[keep]
    beltrami_residual = float(gaps.max()) if gaps.size else 0.0

    t_mu = project_tilde(mu, E, chart_grid, options, n_boundary)
    t_nu = project_tilde(action.nu, action.set_model, chart_grid, options, n_boundary)
    residuals = []
    for i, m in enumerate(action.charts):
        expected = t_mu.components[i].compose_with_moebius(m.inverse(), m).normalized()
        residuals.append(expected.angular_distance(t_nu.components[action.alpha[i]]))

    passed = beltrami_residual < tol and all(r < tol for r in residuals)
    report = TheoremAReport(
        beltrami_residual=beltrami_residual,
        component_residuals=residuals,
        alpha=list(action.alpha),
        nodes_compared=int(keep.sum()),
        tol=tol,
        passed=passed,
    )
    if not passed:
        logger.warning("Action does not commute with Lieb coordinates", extra=report.model_dump())
    return report


def _same_transform(a: MoebiusTransform, b: MoebiusTransform) -> bool:
    probes = np.array([0.3 + 0.1j, -0.7j, 2.0 + 0j])
    return bool(np.all(chordal_distance(a.apply_array(probes), b.apply_array(probes)) < 1e-9))


def g_invariance_check(
    mu: BeltramiField,
    G: list[MoebiusTransform],
    E: SetModel,
    tol: float = LIEB_TOL,
    chart_grid: ComplexGrid | None = None,
    options: SolverOptions = DEFAULT_OPTIONS,
    n_boundary: int = DEFAULT_BOUNDARY_SAMPLES,
    margin_cells: int = 3,
) -> InvarianceReport:
    """Is mu in M(C)^G, is P~(mu) fixed by every F_g, and is s(t) in M(C)^G?"""
    if not G:
        raise InvalidArgumentError("the group list is empty")
    for g in G:
        if not image_set(E, g).preserved:
            raise InvalidArgumentError("every element of G must map E onto itself")
    for a in G:
        for b in G:
            if not any(_same_transform(a @ b, c) for c in G):
                raise InvalidArgumentError("G is not closed under composition")

    mu_residual = max(defining_relation_residual(mu, mu, g) for g in G)

    t = project_tilde(mu, E, chart_grid, options, n_boundary)
    teich_residual = 0.0
    for g in G:
        action = f_g_action(mu, g, E, target_grid=mu.grid, options=options)
        moved = project_tilde(action.nu, E, chart_grid, options, n_boundary)
        margin = _comparison_margin(E, g, mu.grid, mu.grid, margin_cells)
        teich_residual = max(teich_residual, lieb_residuals(moved, t, margin).worst)

    section = de_section(t, E)
    section_residual = max(defining_relation_residual(section, section, g) for g in G)

    report = InvarianceReport(
        group_size=len(G),
        mu_residual=mu_residual,
        mu_invariant=mu_residual < tol,
        teich_residual=teich_residual,
        teich_fixed=teich_residual < tol,
        section_residual=section_residual,
        section_invariant=section_residual < tol,
        tol=tol,
    )
    logger.info("Invariance check", extra=report.model_dump())
    return report

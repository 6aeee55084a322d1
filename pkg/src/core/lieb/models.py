"""
Points of T(E) in Lieb coordinates and the reports built on them.
"""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel

from ..beltrami import BeltramiField, SetKind, SetModel, teichmuller_distance_bound
from ..douady_earle import CircleHomeo
from ..errors import InvalidArgumentError
from ..grids import ComplexGrid, make_grid

CHART_HALF_WIDTH = 2.0
CHART_RESOLUTION = 256
LIEB_TOL = 5e-3


def default_chart_grid() -> ComplexGrid:
    """Grid on which coefficients transported to the unit disk are solved."""
    return make_grid(CHART_HALF_WIDTH, CHART_RESOLUTION)


@dataclass(frozen=True, eq=False)
class TeichPoint:
    """
    (Phi(mu|E^c), mu|E) for a disk-complement set E.

    ``components[i]`` is the normalized boundary trace of the solution for mu
    on disk i, transported to the unit disk. ``representative`` is the
    coefficient the point was projected from, when known.
    """

    set_model: SetModel
    components: tuple[CircleHomeo, ...]
    mu_on_e: BeltramiField
    representative: BeltramiField | None = None

    def __post_init__(self) -> None:
        if self.set_model.kind is not SetKind.DISK_COMPLEMENT:
            raise InvalidArgumentError("Lieb coordinates need a disk-complement set")
        if len(self.components) != self.set_model.component_count:
            raise InvalidArgumentError(
                f"expected {self.set_model.component_count} component traces, "
                f"got {len(self.components)}"
            )
        labels = self.set_model.disk_labels(self.mu_on_e.grid)
        if np.any(self.mu_on_e.values[labels >= 0] != 0):
            raise InvalidArgumentError("mu_on_e must vanish on every complementary disk")

    @property
    def grid(self) -> ComplexGrid:
        return self.mu_on_e.grid

    def distance_bound(self) -> float:
        """Upper bound (1/2) log K of d(0, t) from the retained representative."""
        if self.representative is None:
            raise InvalidArgumentError("no representative retained for this point")
        return teichmuller_distance_bound(self.representative)


class LiebResidual(BaseModel):
    """Largest trace and field discrepancies between two points of T(E)."""

    trace: float
    field: float

    @property
    def worst(self) -> float:
        return max(self.trace, self.field)


class SectionNormReport(BaseModel):
    """||s(t)|| against max(k, c_emp(k))."""

    k: float
    c_emp: float
    norm_on_e: float
    norm_on_disks: float
    section_norm: float
    bound: float
    distance_bound: float
    passed: bool


class TheoremAReport(BaseModel):
    """Commutation residuals of the Moebius action with Lieb coordinates."""

    beltrami_residual: float
    component_residuals: list[float]
    alpha: list[int]
    nodes_compared: int
    tol: float
    passed: bool


class InvarianceReport(BaseModel):
    """G-invariance of mu, of its point of T(E) and of the section s(t)."""

    group_size: int
    mu_residual: float
    mu_invariant: bool
    teich_residual: float
    teich_fixed: bool
    section_residual: float
    section_invariant: bool
    tol: float

    @property
    def invariant(self) -> bool:
        return self.mu_invariant and self.teich_fixed and self.section_invariant

"""
Named inputs for experiments and suites: seeded smooth coefficients, the
radial stretch, the two-disk set, group elements and the marked curve.
"""

from collections.abc import Callable, Sequence

import numpy as np

from ..core.beltrami import BeltramiField, Disk, SetModel
from ..core.grids import ComplexGrid, GridField, taper
from ..core.jordan import JordanCurve
from ..core.moebius import INF, MoebiusTransform
from ..core.motions import DEFAULT_MARKED

ComplexFn = Callable[[np.ndarray], np.ndarray]

GAUSSIANS = 3


def _window(z: np.ndarray, center: complex, radius: float) -> np.ndarray:
    """exp(1 - 1/(1 - s^2)) for s = |z - center| / radius < 1, zero beyond."""
    s2 = np.abs(z - center) ** 2 / radius ** 2
    out = np.zeros(np.shape(z))
    inside = s2 < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - s2[inside]))
    return out


def _gaussians(seed: int, center: complex, spread: float, anchors: Sequence[complex]) -> ComplexFn:
    rng = np.random.default_rng(seed)
    r = spread * np.sqrt(rng.random(GAUSSIANS))
    centers = list(center + r * np.exp(2j * np.pi * rng.random(GAUSSIANS))) + list(anchors)
    amplitudes = np.exp(2j * np.pi * rng.random(len(centers))) * rng.uniform(0.5, 1.0, len(centers))
    width = max(0.5 * spread, 0.3)

    def fn(z: np.ndarray) -> np.ndarray:
        out = np.zeros(np.shape(z), dtype=complex)
        for c, a in zip(centers, amplitudes, strict=True):
            out += a * np.exp(-np.abs(z - c) ** 2 / width ** 2)
        return out

    return fn


def smooth_direction(
    grid: ComplexGrid,
    seed: int,
    support: float | None = 1.0,
    center: complex = 0j,
    anchors: Sequence[complex] = (),
    even: bool = False,
) -> GridField:
    """
    Seeded smooth field with sup-norm exactly 1.

    With ``support`` the field vanishes off D(center, support); without it
    the grid taper cuts it off at 3L/4. ``even`` symmetrizes f(z) + f(-z).
    """
    spread = 0.4 * (support if support is not None else 0.5 * grid.half_width)
    base = _gaussians(seed, center, spread, anchors)
    z = grid.nodes
    values = base(z) + base(-z) if even else base(z)
    if support is not None:
        window = _window(z, center, support)
        if even:
            window = np.maximum(window, _window(z, -center, support))
        values = values * window
    else:
        values = values * taper(grid)
    values[np.abs(values) < 1e-14 * np.max(np.abs(values))] = 0.0
    return GridField(grid, values / np.max(np.abs(values)))


def smooth_field(
    grid: ComplexGrid,
    k: float,
    seed: int,
    support: float | None = 1.0,
    center: complex = 0j,
    anchors: Sequence[complex] = (),
    even: bool = False,
) -> BeltramiField:
    """smooth_direction scaled to sup-norm k."""
    direction = smooth_direction(grid, seed, support, center, anchors, even)
    return BeltramiField.from_values(grid, direction.values * k)


def radial_stretch(grid: ComplexGrid, dilatation: float = 2.0) -> BeltramiField:
    """((K - 1)/(K + 1)) z / conj(z) on |z| < 1; its solution is z |z|^(K-1) inside."""
    c = (dilatation - 1.0) / (dilatation + 1.0)

    def fn(z: np.ndarray) -> np.ndarray:
        safe = np.where(z == 0, 1.0, z)
        return np.where(z == 0, 0.0, c * safe / np.conj(safe))

    values = np.where(grid.radii < 1.0, fn(grid.nodes), 0.0)
    return BeltramiField.from_values(grid, values, 1.0)


def two_disk_set(separation: float = 4.0, radius: float = 1.0) -> SetModel:
    """The complement of D(s, r) and D(-s, r)."""
    return SetModel.disk_complement([Disk(separation, radius), Disk(-separation, radius)])


GROUP_ELEMENTS: dict[str, MoebiusTransform] = {
    "identity": MoebiusTransform.identity(),
    "negate": MoebiusTransform.affine(-1),
    "double": MoebiusTransform.affine(2),
}


def marked_set() -> SetModel:
    return SetModel.finite_points(DEFAULT_MARKED)


def marked_curve() -> JordanCurve:
    """A polygon through every default marked point, closed through infinity."""
    return JordanCurve(np.array([-1, 0, 0.5j, 0.5 + 0.5j, 1, INF], dtype=complex))

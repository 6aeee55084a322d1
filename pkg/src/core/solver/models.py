"""
Sampled quasiconformal maps of the sphere.

A map keeps its raw grid samples and a far-field model; evaluation applies
the affine normalization (w - w(0)) / (w(1) - w(0)) on the fly, so 0, 1
and infinity are fixed exactly.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from pydantic import BaseModel
from scipy.spatial import cKDTree

from ..errors import InverseFailureError
from ..grids import ComplexGrid, GridField, GridInterpolator
from ..moebius import INF, is_infinite

logger = logging.getLogger(__name__)

ArrayMap = Callable[[np.ndarray], np.ndarray]

INVERSE_TOL = 1e-10
INVERSE_MAX_STEPS = 60
INVERSE_MAX_HALVINGS = 10


class SolverReport(BaseModel):
    """Convergence record of a Beltrami solve."""

    iterations: int
    residual: float
    norm: float
    K: float
    schedule: str = "neumann"
    converged: bool = True
    grid_l: float
    grid_n: int


def _identity(z: np.ndarray) -> np.ndarray:
    return z


@dataclass(frozen=True, eq=False)
class QuasiconformalMap:
    """
    Normalized homeomorphism of the sphere fixing 0, 1 and infinity.

    ``raw`` holds unnormalized node samples. Points outside the grid box go
    through ``far_field`` (a raw-valued callable). An optional
    ``correction`` is post-composed after normalization.
    """

    raw: GridField
    far_field: ArrayMap = _identity
    mu: GridField | None = None
    report: SolverReport | None = None
    correction: ArrayMap | None = None
    _normalizer: tuple[complex, complex] = field(init=False, repr=False)
    _spline: GridInterpolator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        spline = GridInterpolator(self.raw.grid, self.raw.values)
        w0 = complex(spline(0j))
        w1 = complex(spline(1 + 0j))
        if w0 == w1:
            raise InverseFailureError("raw samples take the same value at 0 and 1")
        object.__setattr__(self, "_normalizer", (w0, w1))
        object.__setattr__(self, "_spline", spline)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_samples(
        cls,
        grid: ComplexGrid,
        values: np.ndarray,
        far_field: ArrayMap = _identity,
        correction: ArrayMap | None = None,
    ) -> "QuasiconformalMap":
        """Wrap node samples of a map (affine oracles, bump diffeomorphisms)."""
        return cls(GridField(grid, values), far_field=far_field, correction=correction)

    @classmethod
    def identity(cls, grid: ComplexGrid) -> "QuasiconformalMap":
        return cls.from_samples(grid, grid.nodes)

    def with_correction(self, correction: ArrayMap) -> "QuasiconformalMap":
        """Same map post-composed with ``correction`` (which must fix 0 and 1)."""
        previous = self.correction
        if previous is None:
            combined = correction
        else:
            def combined(w: np.ndarray) -> np.ndarray:
                return correction(previous(w))
        return QuasiconformalMap(
            self.raw, far_field=self.far_field, mu=self.mu,
            report=self.report, correction=combined,
        )

    # -- properties ---------------------------------------------------------

    @property
    def grid(self) -> ComplexGrid:
        return self.raw.grid

    @property
    def normalization(self) -> tuple[complex, complex]:
        """Raw images of 0 and 1 before the affine correction."""
        return self._normalizer

    @cached_property
    def samples(self) -> np.ndarray:
        """Normalized images of the grid nodes."""
        w0, w1 = self._normalizer
        out = (self.raw.values - w0) / (w1 - w0)
        if self.correction is not None:
            out = self.correction(out)
        return out

    @cached_property
    def _tree(self) -> cKDTree:
        w = self.samples.ravel()
        return cKDTree(np.column_stack([w.real, w.imag]))

    # -- evaluation ---------------------------------------------------------

    def _raw_at(self, z: np.ndarray) -> np.ndarray:
        spline = self._spline
        inside = self.grid.contains(z)
        out = np.empty(z.shape, dtype=np.complex128)
        if np.any(inside):
            out[inside] = spline(z[inside])
        if np.any(~inside):
            out[~inside] = self.far_field(z[~inside])
        return out

    def evaluate_array(self, z: np.ndarray) -> np.ndarray:
        """Vectorized evaluation; infinity maps to infinity."""
        z = np.asarray(z, dtype=np.complex128)
        flat = np.atleast_1d(z).ravel()
        at_inf = np.asarray(is_infinite(flat))
        out = np.full(flat.shape, INF, dtype=np.complex128)
        finite = flat[~at_inf]
        if finite.size:
            w0, w1 = self._normalizer
            w = (self._raw_at(finite) - w0) / (w1 - w0)
            if self.correction is not None:
                w = self.correction(w)
            out[~at_inf] = w
        return out.reshape(z.shape)

    def evaluate(self, z: complex) -> complex:
        if is_infinite(z):
            return INF
        return complex(self.evaluate_array(np.array([z]))[0])

    def __call__(self, z: complex) -> complex:
        return self.evaluate(z)

    def inverse_evaluate_array(self, targets: np.ndarray, tol: float = INVERSE_TOL) -> np.ndarray:
        """
        Preimages by damped Newton iteration, seeded at the node whose image is
        nearest to each target (or the affinely unnormalized target far out).
        """
        targets = np.asarray(targets, dtype=np.complex128)
        flat = np.atleast_1d(targets).ravel()
        at_inf = np.asarray(is_infinite(flat))
        out = np.full(flat.shape, INF, dtype=np.complex128)
        finite = flat[~at_inf]
        if finite.size:
            distance, idx = self._tree.query(np.column_stack([finite.real, finite.imag]))
            w0, w1 = self._normalizer
            seeds = np.where(
                distance < 0.5 * self.grid.half_width,
                self.grid.nodes.ravel()[idx],
                w0 + finite * (w1 - w0),
            )
            out[~at_inf] = newton_inverse(self.evaluate_array, finite, seeds, tol)
        return out.reshape(targets.shape)

    def inverse_evaluate(self, target: complex, tol: float = INVERSE_TOL) -> complex:
        if is_infinite(target):
            return INF
        return complex(self.inverse_evaluate_array(np.array([target]), tol)[0])

    # -- diagnostics --------------------------------------------------------

    def jacobian(self) -> np.ndarray:
        """Discrete Jacobian |w_z|^2 - |w_zbar|^2 at the nodes (centered differences)."""
        h = self.grid.spacing
        wy, wx = np.gradient(self.samples, h, edge_order=2)
        wz = 0.5 * (wx - 1j * wy)
        wzb = 0.5 * (wx + 1j * wy)
        return np.abs(wz) ** 2 - np.abs(wzb) ** 2

    def orientation_ok(self) -> bool:
        """Jacobian positive at every interior node."""
        return bool(np.all(self.jacobian()[1:-1, 1:-1] > 0))


# ---------------------------------------------------------------------------
# Newton inversion
# ---------------------------------------------------------------------------

def wirtinger_fd(fn: ArrayMap, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(f_z, f_zbar) by central differences with a step relative to |z|."""
    step = 1e-6 * np.maximum(1.0, np.abs(z))
    fx = (fn(z + step) - fn(z - step)) / (2 * step)
    fy = (fn(z + 1j * step) - fn(z - 1j * step)) / (2 * step)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


def newton_inverse(
    fn: ArrayMap,
    targets: np.ndarray,
    seeds: np.ndarray,
    tol: float = INVERSE_TOL,
) -> np.ndarray:
    """
    Solve fn(z) = target pointwise. Each step solves a dz + b conj(dz) = r
    with (a, b) the Wirtinger derivatives, halving the step until the
    residual drops.
    """
    targets = np.asarray(targets, dtype=np.complex128)
    z = np.array(seeds, dtype=np.complex128)
    r = targets - fn(z)
    active = np.abs(r) >= tol

    for step in range(INVERSE_MAX_STEPS):
        if not np.any(active):
            return z
        za, ra, ta = z[active], r[active], targets[active]
        a, b = wirtinger_fd(fn, za)
        det = np.abs(a) ** 2 - np.abs(b) ** 2
        if np.any(det <= 0):
            raise InverseFailureError(f"orientation lost at {int(np.sum(det <= 0))} points")
        dz = (np.conj(a) * ra - b * np.conj(ra)) / det

        new_z, new_r = za.copy(), ra.copy()
        pending = np.ones(za.shape, dtype=bool)
        scale = 1.0
        for _ in range(INVERSE_MAX_HALVINGS):
            idx = np.flatnonzero(pending)
            trial = za[idx] + scale * dz[idx]
            trial_r = ta[idx] - fn(trial)
            better = np.abs(trial_r) < np.abs(ra[idx])
            new_z[idx[better]] = trial[better]
            new_r[idx[better]] = trial_r[better]
            pending[idx[better]] = False
            if not np.any(pending):
                break
            scale *= 0.5
        if np.any(pending):
            worst = float(np.max(np.abs(ra[pending])))
            raise InverseFailureError(
                f"Newton inversion stalled at {int(pending.sum())} points (residual {worst:.3e})"
            )
        z[active], r[active] = new_z, new_r
        active = np.abs(r) >= tol
        logger.debug("Inverse step", extra={"step": step, "active": int(active.sum())})

    if np.any(active):
        raise InverseFailureError(
            f"Newton inversion did not reach {tol:.0e} at {int(active.sum())} points"
        )
    return z

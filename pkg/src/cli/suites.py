"""
Acceptance batteries behind ``qclab verify``.

A suite is a list of named cases. Cases run on a thread pool with
order-preserving map; the results are assembled on the calling thread.
A case that raises a laboratory error is recorded as a failure with the
error text, never skipped.
"""

import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np
from pydantic import BaseModel

from ..config.settings import Settings
from ..core.beltrami import BeltramiField, BumpFlow, BumpTranslation, SetModel
from ..core.douady_earle import (
    CircleHomeo,
    barycentric_extend_array,
    circle_map_from_mu,
    disk_sample,
    empirical_c,
    naturality_residual,
    sigma_of_trace,
)
from ..core.errors import QCLabError
from ..core.grids import ComplexGrid, make_grid
from ..core.jordan import (
    JordanCurve,
    jordan_check,
    kobayashi_bound,
    radial_continuity_probe,
    recovered_norm,
    theorem_c_report,
)
from ..core.lieb import (
    de_section,
    g_invariance_check,
    lieb_residuals,
    project_tilde,
    theorem_a_residual,
)
from ..core.moebius import MoebiusTransform, disk_automorphism, is_infinite, same_point
from ..core.motions import (
    DEFAULT_MARKED,
    forget_points,
    holomorphy_probe_motion,
    linear_motion,
    maximal_example_certificate,
    maximal_example_motion,
    representative_agreement,
    seeded_linear_motion,
    theorem_b_report,
    trace_map,
    wtmu_motion,
)
from ..core.solver import SolverOptions, holomorphy_probe, solve_normalized
from . import presets

logger = logging.getLogger(__name__)

SUITES = ("solver", "douady-earle", "lieb", "motions", "jordan")

# Half-width of the plane grid for the two-disk set D(+-4, 1).
LIEB_GRID_L = 12.0


class CaseResult(BaseModel):
    """Outcome of one acceptance case."""

    suite: str
    name: str
    passed: bool
    details: dict[str, Any]
    error: str | None = None


class SuiteResult(BaseModel):
    """All case outcomes of a verification run."""

    name: str
    passed: bool
    seed: int
    cases: list[CaseResult]


Case = tuple[str, str, Callable[[], tuple[bool, dict[str, Any]]]]


class SuiteContext:
    """Grids, options and tolerances derived from the settings."""

    def __init__(self, settings: Settings) -> None:
        self.settings = settings
        self.grid = make_grid(settings.grid_l, settings.grid_n)
        self.coarse = make_grid(settings.grid_l, settings.grid_n // 2)
        self.chart_grid = make_grid(settings.chart_grid_l, settings.chart_grid_n)
        self.lieb_grid = make_grid(LIEB_GRID_L, settings.grid_n)
        self.options = SolverOptions(
            k_max=settings.k_max, tol=settings.solver_tol, max_iter=settings.solver_max_iter
        )
        self.seed = settings.seed
        self.n_boundary = settings.boundary_samples

    def tol(self, base: float) -> float:
        return self.settings.tolerance(base)

    def rng(self, offset: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.seed + offset)


def _order(coarse: float, fine: float) -> float:
    return math.log2(coarse / fine) if fine > 0 and coarse > 0 else math.inf


# ---------------------------------------------------------------------------
# solver
# ---------------------------------------------------------------------------

def _smooth_oracle(z: np.ndarray) -> np.ndarray:
    return z + 0.1 * np.exp(-np.abs(z) ** 2)


def _smooth_oracle_mu(grid: ComplexGrid) -> BeltramiField:
    def fn(z: np.ndarray) -> np.ndarray:
        g = np.exp(-np.abs(z) ** 2)
        return (-0.1 * z * g) / (1.0 - 0.1 * np.conj(z) * g)

    return BeltramiField.from_function(grid, fn, 0.75 * grid.half_width)


def _oracle_error(
    ctx: SuiteContext, grid: ComplexGrid, mu: BeltramiField, exact: Callable[[np.ndarray], np.ndarray]
) -> float:
    z = grid.nodes[grid.radii <= 2.0]
    w = solve_normalized(mu, ctx.options)
    f0, f1 = exact(np.array([0j]))[0], exact(np.array([1 + 0j]))[0]
    expected = (exact(z) - f0) / (f1 - f0)
    return float(np.max(np.abs(w.evaluate_array(z) - expected)))


def solver_cases(ctx: SuiteContext) -> list[Case]:
    def identity() -> tuple[bool, dict[str, Any]]:
        w = solve_normalized(BeltramiField.zeros(ctx.grid), ctx.options)
        error = float(np.max(np.abs(w.samples - ctx.grid.nodes)))
        return error < 1e-12, {"sup_error": error}

    def smooth_oracle() -> tuple[bool, dict[str, Any]]:
        fine = _oracle_error(ctx, ctx.grid, _smooth_oracle_mu(ctx.grid), _smooth_oracle)
        coarse = _oracle_error(ctx, ctx.coarse, _smooth_oracle_mu(ctx.coarse), _smooth_oracle)
        order = _order(coarse, fine)
        return fine < ctx.tol(1e-3), {"error": fine, "coarse_error": coarse, "order": order}

    def radial_stretch() -> tuple[bool, dict[str, Any]]:
        def exact(z: np.ndarray) -> np.ndarray:
            return np.where(np.abs(z) <= 1.0, z * np.abs(z), z)

        fine = _oracle_error(ctx, ctx.grid, presets.radial_stretch(ctx.grid), exact)
        coarse = _oracle_error(ctx, ctx.coarse, presets.radial_stretch(ctx.coarse), exact)
        return fine < ctx.tol(2e-2), {"error": fine, "coarse_error": coarse, "order": _order(coarse, fine)}

    def holomorphy() -> tuple[bool, dict[str, Any]]:
        mu0 = presets.smooth_field(ctx.grid, 0.3, ctx.seed)
        points = disk_sample(10, 1.5, ctx.seed)
        reports = [holomorphy_probe(mu0.scaled, complex(z), 0.5, options=ctx.options) for z in points]
        control = holomorphy_probe(
            lambda lam: mu0.scaled(complex(lam).conjugate()), complex(points[0]), 0.5,
            options=ctx.options,
        )
        persists = min(control.residuals) >= 1e-3
        passed = all(r.passed for r in reports) and persists
        return passed, {
            "orders": [r.orders for r in reports],
            "control_residuals": control.residuals,
        }

    return [
        ("solver", "identity", identity),
        ("solver", "smooth-oracle", smooth_oracle),
        ("solver", "radial-stretch", radial_stretch),
        ("solver", "holomorphy", holomorphy),
    ]


# ---------------------------------------------------------------------------
# douady-earle
# ---------------------------------------------------------------------------

def _random_automorphism(rng: np.random.Generator, radius: float = 0.7) -> MoebiusTransform:
    a = radius * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
    return disk_automorphism(complex(a), float(2 * np.pi * rng.random()))


def douady_earle_cases(ctx: SuiteContext) -> list[Case]:
    disk_grid = make_grid(2.0, ctx.settings.grid_n // 2)

    def moebius_reproduction() -> tuple[bool, dict[str, Any]]:
        rng = ctx.rng(1)
        z = disk_sample(200, 0.9, ctx.seed)
        errors = []
        for _ in range(20):
            m = _random_automorphism(rng)
            phi = CircleHomeo.from_moebius(m, ctx.n_boundary)
            errors.append(float(np.max(np.abs(barycentric_extend_array(phi, z) - m.apply_array(z)))))
        identity = CircleHomeo.identity(ctx.n_boundary)
        id_error = float(np.max(np.abs(barycentric_extend_array(identity, z) - z)))
        return max(errors) < 1e-8 and id_error < 1e-12, {"max_error": max(errors), "identity_error": id_error}

    def naturality() -> tuple[bool, dict[str, Any]]:
        rng = ctx.rng(2)
        residuals = []
        for j in range(5):
            mu = presets.smooth_field(disk_grid, 0.5, ctx.seed + j)
            phi = circle_map_from_mu(mu, ctx.options, ctx.n_boundary)
            for _ in range(10):
                g, h = _random_automorphism(rng, 0.5), _random_automorphism(rng, 0.5)
                residuals.append(naturality_residual(phi, g, h).residual)
        return max(residuals) < 1e-6, {"trials": len(residuals), "max_residual": max(residuals)}

    def section_identities() -> tuple[bool, dict[str, Any]]:
        mu = presets.smooth_field(disk_grid, 0.4, ctx.seed)
        phi = circle_map_from_mu(mu, ctx.options, ctx.n_boundary)
        s = sigma_of_trace(phi, disk_grid)
        again = circle_map_from_mu(s, ctx.options, ctx.n_boundary)
        residual = again.angular_distance(phi)
        return residual < ctx.tol(5e-3), {"trace_residual": residual}

    def sigma_bound() -> tuple[bool, dict[str, Any]]:
        bounds = [
            empirical_c([presets.smooth_field(disk_grid, k, ctx.seed)], ctx.options, ctx.n_boundary)
            for k in (0.1, 0.3, 0.5, 0.7)
        ]
        return all(b.c_emp < 1.0 for b in bounds), {"bounds": [b.model_dump() for b in bounds]}

    return [
        ("douady-earle", "moebius-reproduction", moebius_reproduction),
        ("douady-earle", "naturality", naturality),
        ("douady-earle", "section-identities", section_identities),
        ("douady-earle", "sigma-bound", sigma_bound),
    ]


# ---------------------------------------------------------------------------
# lieb
# ---------------------------------------------------------------------------

def lieb_cases(ctx: SuiteContext, count: int = 10) -> list[Case]:
    E = presets.two_disk_set()
    anchors = [d.center for d in E.disks]

    def field(seed: int, even: bool = False) -> BeltramiField:
        return presets.smooth_field(ctx.lieb_grid, 0.3, seed, support=None, anchors=anchors, even=even)

    def theorem_a(name: str) -> Callable[[], tuple[bool, dict[str, Any]]]:
        def run() -> tuple[bool, dict[str, Any]]:
            g = presets.GROUP_ELEMENTS[name]
            reports = [
                theorem_a_residual(
                    field(ctx.seed + j), g, E, ctx.tol(5e-3), ctx.chart_grid,
                    ctx.options, ctx.n_boundary,
                )
                for j in range(count)
            ]
            return all(r.passed for r in reports), {
                "beltrami_residual": max(r.beltrami_residual for r in reports),
                "component_residual": max(max(r.component_residuals) for r in reports),
            }
        return run

    def section_round_trip() -> tuple[bool, dict[str, Any]]:
        worst = []
        for j in range(count):
            t = project_tilde(field(ctx.seed + j), E, ctx.chart_grid, ctx.options, ctx.n_boundary)
            back = project_tilde(de_section(t, E), E, ctx.chart_grid, ctx.options, ctx.n_boundary)
            worst.append(lieb_residuals(back, t).worst)
        return max(worst) < ctx.tol(5e-3), {"max_residual": max(worst)}

    def invariance() -> tuple[bool, dict[str, Any]]:
        G = [presets.GROUP_ELEMENTS["identity"], presets.GROUP_ELEMENTS["negate"]]
        symmetric = g_invariance_check(
            field(ctx.seed, even=True), G, E, ctx.tol(5e-3), ctx.chart_grid, ctx.options, ctx.n_boundary
        )
        control = g_invariance_check(
            field(ctx.seed), G, E, ctx.tol(5e-3), ctx.chart_grid, ctx.options, ctx.n_boundary
        )
        return symmetric.invariant and not control.invariant, {
            "symmetric": symmetric.model_dump(),
            "asymmetric_control": control.model_dump(),
        }

    return [
        ("lieb", "theorem-a-negate", theorem_a("negate")),
        ("lieb", "theorem-a-double", theorem_a("double")),
        ("lieb", "section-round-trip", section_round_trip),
        ("lieb", "invariance", invariance),
    ]


# ---------------------------------------------------------------------------
# motions
# ---------------------------------------------------------------------------

def _maximal_parameters(rng: np.random.Generator, count: int) -> list[tuple[complex, complex]]:
    out = []
    for _ in range(count):
        m = rng.uniform(0.05, 0.9)
        b = rng.uniform(0.0, 0.9 * (1.0 - m)) * np.exp(2j * np.pi * rng.random())
        alpha = complex(2 * np.pi * rng.random(), -math.log(m))
        out.append((alpha, complex(b)))
    return out


def motions_cases(ctx: SuiteContext) -> list[Case]:
    E = presets.marked_set()

    def maximal_example() -> tuple[bool, dict[str, Any]]:
        phi = maximal_example_motion()
        exact = bool(np.array_equal(phi(phi.basepoint), phi.points))
        certificates = [maximal_example_certificate(phi, x) for x in _maximal_parameters(ctx.rng(3), 100)]
        probes = [
            holomorphy_probe_motion(phi, z, (0.5 + 0.3j, 0.1 + 0j), coordinate)
            for z in (0.1 + 0.05j, -0.2j, 0.3 + 0j)
            for coordinate in (0, 1)
        ]
        passed = exact and all(c.passed for c in certificates) and all(p.passed for p in probes)
        return passed, {
            "basepoint_exact": exact,
            "certified": sum(c.passed for c in certificates),
            "probes_passed": sum(p.passed for p in probes),
        }

    def norm_bound() -> tuple[bool, dict[str, Any]]:
        direction = presets.smooth_direction(ctx.grid, ctx.seed)
        phi = wtmu_motion(direction, E, ctx.options)
        assert phi.extension is not None
        norms = {}
        for x in (0.1, 0.3, 0.5, 0.7):
            norms[str(x)] = recovered_norm(phi.extension(complex(x)))
        within = all(norms[str(x)] <= x + ctx.tol(2e-3) for x in (0.1, 0.3, 0.5, 0.7))
        samples = disk_sample(100, 0.99, ctx.seed)
        identity = max(abs(kobayashi_bound(complex(x)) - abs(x)) for x in samples)
        return within and identity < 1e-12, {"norms": norms, "kobayashi_identity": identity}

    def forgetful() -> tuple[bool, dict[str, Any]]:
        rng = ctx.rng(4)
        E1 = SetModel.finite_points([p for p in DEFAULT_MARKED if p != 0.5 + 0.5j])
        mismatches = 0
        for _ in range(20):
            velocities = [
                0j if same_point(p, 0j) or same_point(p, 1 + 0j) or is_infinite(p)
                else 0.1 * rng.uniform(0.2, 1.0) * np.exp(2j * np.pi * rng.random())
                for p in E.points
            ]
            phi2 = linear_motion(E, velocities)
            phi1 = linear_motion(E1, [v for p, v in zip(E.points, velocities, strict=True) if E1.contains(p)])
            x = complex(0.9 * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random()))
            if forget_points(trace_map(phi2, x), E, E1) != trace_map(phi1, x):
                mismatches += 1
        return mismatches == 0, {"trials": 20, "mismatches": mismatches}

    def extension_theorem() -> tuple[bool, dict[str, Any]]:
        mu = presets.smooth_field(ctx.grid, 0.3, ctx.seed)
        report = theorem_b_report(mu, E, options=ctx.options)
        bump = BumpFlow.single([BumpTranslation(1.5 + 1.5j, 0.5, 0.1)])
        agreement = representative_agreement(mu, E, bump, options=ctx.options)
        return report.passed and agreement.passed, {
            "theorem_b": report.model_dump(),
            "agreement": agreement.model_dump(),
        }

    return [
        ("motions", "maximal-example", maximal_example),
        ("motions", "norm-bound", norm_bound),
        ("motions", "forgetful", forgetful),
        ("motions", "extension-theorem", extension_theorem),
    ]


# ---------------------------------------------------------------------------
# jordan
# ---------------------------------------------------------------------------

def _bowtie() -> JordanCurve:
    return JordanCurve(np.array([-1 - 1j, 1 + 1j, 1 - 1j, -1 + 1j]))


def jordan_cases(ctx: SuiteContext) -> list[Case]:
    E = presets.marked_set()
    gamma0 = presets.marked_curve()
    params = (0.1 + 0j, 0.3 + 0j, 0.5 + 0j)

    def simplicity() -> tuple[bool, dict[str, Any]]:
        polygon = jordan_check(JordanCurve.regular_polygon(64))
        bowtie = jordan_check(_bowtie())
        rng = ctx.rng(5)
        jitter = 1e-3 * np.exp(2j * np.pi * rng.random(256))
        perturbed = jordan_check(JordanCurve(JordanCurve.regular_polygon(256).vertices + jitter))
        return polygon and not bowtie and perturbed, {
            "polygon": polygon, "bowtie": bowtie, "perturbed": perturbed,
        }

    def solver_family() -> tuple[bool, dict[str, Any]]:
        phi = wtmu_motion(presets.smooth_direction(ctx.grid, ctx.seed), E, ctx.options)
        reports = [theorem_c_report(phi, gamma0, x, ctx.grid, ctx.options) for x in params]
        return all(r.passed for r in reports), {"reports": [r.model_dump() for r in reports]}

    def bump_family() -> tuple[bool, dict[str, Any]]:
        phi = seeded_linear_motion(E, ctx.seed)
        reports = [theorem_c_report(phi, gamma0, x, ctx.grid, ctx.options) for x in params]
        continuity = radial_continuity_probe(phi, ctx.grid, 0.3 + 0j, options=ctx.options)
        passed = all(r.passed for r in reports) and continuity.passed
        return passed, {
            "reports": [r.model_dump() for r in reports],
            "continuity": continuity.model_dump(),
        }

    return [
        ("jordan", "simplicity", simplicity),
        ("jordan", "solver-family", solver_family),
        ("jordan", "bump-family", bump_family),
    ]


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

BUILDERS: dict[str, Callable[[SuiteContext], list[Case]]] = {
    "solver": solver_cases,
    "douady-earle": douady_earle_cases,
    "lieb": lieb_cases,
    "motions": motions_cases,
    "jordan": jordan_cases,
}


def _run_case(case: Case) -> CaseResult:
    suite, name, fn = case
    try:
        passed, details = fn()
    except QCLabError as exc:
        logger.error("Case raised", extra={"suite": suite, "case": name, "error": str(exc)})
        return CaseResult(suite=suite, name=name, passed=False, details={}, error=f"{type(exc).__name__}: {exc}")
    log = logger.info if passed else logger.warning
    log("Case finished", extra={"suite": suite, "case": name, "passed": passed})
    return CaseResult(suite=suite, name=name, passed=bool(passed), details=details)


def collect_cases(name: str, ctx: SuiteContext) -> list[Case]:
    """Cases of one suite, or of every suite for ``all``."""
    if name == "all":
        return [case for suite in SUITES for case in BUILDERS[suite](ctx)]
    if name not in BUILDERS:
        raise KeyError(name)
    return BUILDERS[name](ctx)


def verify_suite(name: str, settings: Settings) -> SuiteResult:
    """Run an acceptance battery; raises KeyError for an unknown suite."""
    ctx = SuiteContext(settings)
    cases = collect_cases(name, ctx)
    with ThreadPoolExecutor(max_workers=settings.worker_count) as pool:
        results = list(pool.map(_run_case, cases))
    result = SuiteResult(name=name, passed=all(r.passed for r in results), seed=ctx.seed, cases=results)
    logger.info(
        "Suite finished",
        extra={"suite": name, "passed": result.passed, "cases": len(results)},
    )
    return result

"""
Experiment commands.

Each command reads a validated ExperimentConfig, runs one pipeline of the
numerical core and writes its artifacts through an ArtifactStore. The
summary is deterministic for a fixed config and seed; wall-clock metadata
goes to a separate metadata.json.
"""

import json
import logging
import platform
from collections.abc import Callable
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

import numpy as np
import scipy
from pydantic import BaseModel

from .. import __version__
from ..config.settings import Settings
from ..core.beltrami import BeltramiField, SetModel
from ..core.douady_earle import (
    CircleHomeo,
    barycentric_extend_array,
    circle_map_from_mu,
    extension_injectivity_check,
    sigma_of_trace,
    sigma_sup_norm,
)
from ..core.douady_earle.section import SIGMA_CUTOFF
from ..core.errors import InvalidArgumentError
from ..core.grids import ComplexGrid, GridField, make_grid
from ..core.jordan import JordanCurve, radial_continuity_probe, theorem_c_member
from ..core.lieb import (
    de_section,
    g_invariance_check,
    lieb_residuals,
    project_tilde,
    section_norm_report,
    theorem_a_residual,
)
from ..core.moebius import disk_automorphism, is_infinite
from ..core.motions import (
    Motion,
    Parameter,
    ParameterDomain,
    holomorphy_probe_motion,
    maximal_example_certificate,
    maximal_example_motion,
    motion_continuity_probe,
    motion_injectivity_check,
    seeded_linear_motion,
    wtmu_motion,
)
from ..core.solver import SolverOptions, solve_normalized
from ..infrastructure.codecs import (
    decode_circle,
    decode_curve,
    decode_field,
    dump_json,
    dump_report,
    encode_circle,
    encode_curve,
    encode_field,
    encode_map,
    encode_trace,
    set_model_from_dict,
    write_teich_point,
)
from ..infrastructure.rendering import render_family, render_field
from ..infrastructure.storage import ArtifactStore
from . import presets
from .schemas import ExperimentConfig

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Run context
# ---------------------------------------------------------------------------

@dataclass
class RunContext:
    """Resolved inputs shared by every command."""

    config: ExperimentConfig
    settings: Settings
    store: ArtifactStore
    grid: ComplexGrid
    chart_grid: ComplexGrid
    options: SolverOptions
    seed: int

    def tolerance(self, base: float) -> float:
        return self.settings.tolerance(base)

    def read_input(self, path: str) -> str:
        """Input files are read from disk, not from the output store."""
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as e:
            raise InvalidArgumentError(f"cannot read input {path}: {e}") from e


@dataclass
class CommandResult:
    passed: bool
    results: dict[str, Any] = field(default_factory=dict)
    artifacts: list[str] = field(default_factory=list)


class RunSummary(BaseModel):
    """Deterministic record of one experiment run."""

    command: str
    passed: bool
    seed: int
    grid_l: float
    grid_n: int
    versions: dict[str, str]
    artifacts: list[str]
    results: dict[str, Any]


def versions() -> dict[str, str]:
    return {"qclab": __version__, "numpy": np.__version__, "scipy": scipy.__version__}


def build_context(config: ExperimentConfig, settings: Settings, store: ArtifactStore) -> RunContext:
    grid = (
        make_grid(config.grid.l, config.grid.n)
        if config.grid is not None
        else make_grid(settings.grid_l, settings.grid_n)
    )
    options = SolverOptions(
        k_max=settings.k_max, tol=settings.solver_tol, max_iter=settings.solver_max_iter
    )
    return RunContext(
        config=config,
        settings=settings,
        store=store,
        grid=grid,
        chart_grid=make_grid(settings.chart_grid_l, settings.chart_grid_n),
        options=options,
        seed=config.seed if config.seed is not None else settings.seed,
    )


# ---------------------------------------------------------------------------
# Input resolution
# ---------------------------------------------------------------------------

def resolve_mu(ctx: RunContext, grid: ComplexGrid | None = None) -> BeltramiField:
    spec = ctx.config.mu
    grid = grid or ctx.grid
    if spec.path is not None:
        samples = decode_field(ctx.read_input(spec.path))
        return BeltramiField(samples, samples.support_radius)
    if spec.preset == "zero":
        return BeltramiField.zeros(grid)
    if spec.preset == "radial-stretch":
        return presets.radial_stretch(grid, spec.dilatation)
    return presets.smooth_field(
        grid,
        spec.k,
        ctx.seed,
        support=spec.support,
        center=complex(*spec.center),
        even=spec.preset == "even-smooth",
    )


def resolve_set(ctx: RunContext) -> SetModel:
    if ctx.config.set_model is None:
        return presets.two_disk_set()
    return set_model_from_dict(ctx.config.set_model)


def resolve_lieb_mu(ctx: RunContext, E: SetModel) -> BeltramiField:
    """Coefficients for T(E) experiments reach into every disk of E."""
    spec = ctx.config.mu
    if spec.path is not None or spec.preset in ("zero", "radial-stretch"):
        return resolve_mu(ctx)
    return presets.smooth_field(
        ctx.grid,
        spec.k,
        ctx.seed,
        support=None,
        anchors=[d.center for d in E.disks],
        even=spec.preset == "even-smooth",
    )


def resolve_circle(ctx: RunContext) -> CircleHomeo:
    spec = ctx.config.circle
    n = ctx.config.n_boundary
    if spec.path is not None:
        return decode_circle(ctx.read_input(spec.path))
    if spec.preset == "identity":
        return CircleHomeo.identity(n)
    if spec.preset == "automorphism":
        return CircleHomeo.from_moebius(disk_automorphism(complex(*spec.a), spec.theta), n)
    mu = resolve_mu(ctx)
    if mu.support_radius > 1.0:
        raise InvalidArgumentError("trace circle maps need mu supported in the unit disk")
    return circle_map_from_mu(mu, ctx.options, n)


def resolve_motion(ctx: RunContext) -> Motion:
    spec = ctx.config.motion
    if spec.preset == "maximal":
        return maximal_example_motion()
    if spec.preset == "linear":
        return seeded_linear_motion(presets.marked_set(), ctx.seed, spec.scale)
    direction = presets.smooth_direction(ctx.grid, ctx.seed, support=ctx.config.mu.support)
    return wtmu_motion(direction, presets.marked_set(), ctx.options)


def resolve_parameters(ctx: RunContext) -> list[Parameter]:
    if ctx.config.motion.preset == "maximal":
        return [(1j * a, complex(b)) for a, b in ctx.config.parameters]
    return [complex(a, b) for a, b in ctx.config.parameters]


def resolve_curve(ctx: RunContext) -> JordanCurve:
    if ctx.config.curve is not None:
        return decode_curve(ctx.read_input(ctx.config.curve))
    return presets.marked_curve()


def _write(ctx: RunContext, result: CommandResult, key: str, content: str) -> None:
    ctx.store.write_text(key, content)
    result.artifacts.append(key)


def _label(x: Parameter) -> list[float]:
    if isinstance(x, tuple):
        return [x[0].imag, x[1].real]
    return [x.real, x.imag]


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def run_solve(ctx: RunContext) -> CommandResult:
    mu = resolve_mu(ctx)
    w = solve_normalized(mu, ctx.options)
    result = CommandResult(passed=w.report is not None and w.report.converged)
    _write(ctx, result, "mu.csv", encode_field(mu.samples))
    _write(ctx, result, "map.csv", encode_map(w))
    if w.report is not None:
        _write(ctx, result, "solver_report.json", dump_report(w.report))
        result.results["solver"] = w.report.model_dump(mode="json")
    result.results["orientation_ok"] = w.orientation_ok()
    result.passed = result.passed and w.orientation_ok()
    return result


def run_de_extend(ctx: RunContext) -> CommandResult:
    phi = resolve_circle(ctx)
    grid = ctx.chart_grid
    inside = grid.radii <= SIGMA_CUTOFF
    values = np.zeros(grid.shape, dtype=complex)
    values[inside] = barycentric_extend_array(phi, grid.nodes[inside])
    sigma_field = sigma_of_trace(phi, grid)
    injectivity = extension_injectivity_check(phi)
    norm = sigma_sup_norm(phi)

    result = CommandResult(passed=injectivity.passed and norm < 1.0)
    _write(ctx, result, "circle.csv", encode_circle(phi))
    _write(ctx, result, "extension.csv", encode_field(GridField(grid, values)))
    _write(ctx, result, "sigma.csv", encode_field(sigma_field.samples))
    result.results = {
        "injectivity": injectivity.model_dump(mode="json"),
        "sigma_sup_norm": norm,
    }
    return result


def run_lieb_project(ctx: RunContext) -> CommandResult:
    E = resolve_set(ctx)
    mu = resolve_lieb_mu(ctx, E)
    t = project_tilde(mu, E, ctx.chart_grid, ctx.options, ctx.config.n_boundary)
    result = CommandResult(passed=True)
    result.artifacts.extend(write_teich_point(ctx.store, "teich_point", t))
    result.results = {"components": len(t.components), "distance_bound": t.distance_bound()}
    return result


def run_lieb_section(ctx: RunContext) -> CommandResult:
    E = resolve_set(ctx)
    mu = resolve_lieb_mu(ctx, E)
    t = project_tilde(mu, E, ctx.chart_grid, ctx.options, ctx.config.n_boundary)
    s = de_section(t, E)
    back = project_tilde(s, E, ctx.chart_grid, ctx.options, ctx.config.n_boundary)
    round_trip = lieb_residuals(back, t)
    norms = section_norm_report(t)
    tol = ctx.tolerance(ctx.config.tol)

    result = CommandResult(passed=round_trip.worst < tol and norms.passed)
    _write(ctx, result, "section.csv", encode_field(s.samples))
    _write(ctx, result, "section_report.json", dump_report(norms))
    result.results = {
        "round_trip": round_trip.model_dump(mode="json"),
        "round_trip_worst": round_trip.worst,
        "norms": norms.model_dump(mode="json"),
        "tol": tol,
    }
    return result


def run_lieb_theorem_a(ctx: RunContext) -> CommandResult:
    E = resolve_set(ctx)
    mu = resolve_lieb_mu(ctx, E)
    tol = ctx.tolerance(ctx.config.tol)
    result = CommandResult(passed=True)
    for name in ctx.config.group:
        report = theorem_a_residual(
            mu, presets.GROUP_ELEMENTS[name], E, tol, ctx.chart_grid,
            ctx.options, ctx.config.n_boundary,
        )
        _write(ctx, result, f"theorem_a_{name}.json", dump_report(report))
        result.results[name] = report.model_dump(mode="json")
        result.passed = result.passed and report.passed
    return result


def run_lieb_invariance(ctx: RunContext) -> CommandResult:
    E = resolve_set(ctx)
    mu = resolve_lieb_mu(ctx, E)
    names = list(dict.fromkeys(["identity", *ctx.config.group]))
    G = [presets.GROUP_ELEMENTS[name] for name in names]
    report = g_invariance_check(
        mu, G, E, ctx.tolerance(ctx.config.tol), ctx.chart_grid, ctx.options, ctx.config.n_boundary
    )
    result = CommandResult(passed=report.invariant)
    _write(ctx, result, "invariance.json", dump_report(report))
    result.results = {"group": names, "invariance": report.model_dump(mode="json")}
    return result


def run_motion_trace(ctx: RunContext) -> CommandResult:
    phi = resolve_motion(ctx)
    rows = []
    injective = []
    for x in resolve_parameters(ctx):
        label = complex(*_label(x))
        rows.extend((label, z, w) for z, w in zip(phi.points, phi(x), strict=True))
        injective.append(motion_injectivity_check(phi, x))
    result = CommandResult(passed=all(injective))
    _write(ctx, result, "trace.csv", encode_trace(rows))
    result.results = {"points": int(phi.points.size), "injective": injective}
    return result


def run_motion_probe(ctx: RunContext) -> CommandResult:
    phi = resolve_motion(ctx)
    params = resolve_parameters(ctx)
    x0 = params[0]
    finite = [complex(z) for z in phi.points if not is_infinite(z)]
    probes = [z for z in finite if z not in (0j, 1 + 0j)][:4]

    result = CommandResult(passed=True)
    holomorphy = []
    for z in probes:
        for coordinate in ((0, 1) if phi.domain is ParameterDomain.MAXIMAL else (0,)):
            report = holomorphy_probe_motion(phi, z, x0, coordinate)
            holomorphy.append({"z": [z.real, z.imag], "coordinate": coordinate, **report.model_dump(mode="json")})
            result.passed = result.passed and report.passed
    result.results["holomorphy"] = holomorphy

    if phi.domain is ParameterDomain.MAXIMAL:
        certificates = [maximal_example_certificate(phi, x) for x in params]  # type: ignore[arg-type]
        result.results["certificates"] = [c.model_dump(mode="json") for c in certificates]
        result.passed = result.passed and all(c.passed for c in certificates)
    else:
        continuity = motion_continuity_probe(phi, complex(x0))  # type: ignore[arg-type]
        result.results["continuity"] = continuity.model_dump(mode="json")
        result.passed = result.passed and continuity.passed
    _write(ctx, result, "probe.json", dump_json(result.results))
    return result


def _family(ctx: RunContext) -> tuple[list[Any], Motion, JordanCurve]:
    if ctx.config.motion.preset == "maximal":
        raise InvalidArgumentError("curve families are built from motions over the unit disk")
    phi = resolve_motion(ctx)
    gamma0 = resolve_curve(ctx)
    members = [
        theorem_c_member(phi, gamma0, x, ctx.grid, ctx.options)  # type: ignore[arg-type]
        for x in resolve_parameters(ctx)
    ]
    return members, phi, gamma0


def run_jordan_report(ctx: RunContext) -> CommandResult:
    members, phi, gamma0 = _family(ctx)
    result = CommandResult(passed=True)
    _write(ctx, result, "curves/gamma_0.csv", encode_curve(gamma0))
    reports = []
    for i, member in enumerate(members, start=1):
        _write(ctx, result, f"curves/gamma_{i}.csv", encode_curve(member.curve))
        reports.append(member.report.model_dump(mode="json"))
        result.passed = result.passed and member.report.passed

    x0 = complex(resolve_parameters(ctx)[0])  # type: ignore[arg-type]
    continuity = radial_continuity_probe(phi, ctx.grid, x0 if x0 != 0 else 0.3 + 0j, options=ctx.options)
    result.passed = result.passed and continuity.passed
    result.results = {"reports": reports, "continuity": continuity.model_dump(mode="json")}
    _write(ctx, result, "jordan_report.json", dump_json(result.results))
    return result


def run_render(ctx: RunContext) -> CommandResult:
    members, _, gamma0 = _family(ctx)
    family = [(0j, gamma0)] + [(m.x, m.curve) for m in members]
    result = CommandResult(passed=True)
    _write(ctx, result, "family.svg", render_family(family))
    if ctx.config.mu.preset != "zero" or ctx.config.mu.path is not None:
        _write(ctx, result, "mu.svg", render_field(resolve_mu(ctx).samples, "|mu|"))
    result.results = {"curves": len(family)}
    return result


COMMANDS: dict[str, Callable[[RunContext], CommandResult]] = {
    "solve": run_solve,
    "de-extend": run_de_extend,
    "lieb-project": run_lieb_project,
    "lieb-section": run_lieb_section,
    "lieb-theorem-a": run_lieb_theorem_a,
    "lieb-invariance": run_lieb_invariance,
    "motion-trace": run_motion_trace,
    "motion-probe": run_motion_probe,
    "jordan-report": run_jordan_report,
    "render": run_render,
}


def run_experiment(
    config: ExperimentConfig, settings: Settings, store: ArtifactStore
) -> RunSummary:
    """Run one command, then write summary.json and metadata.json."""
    ctx = build_context(config, settings, store)
    started = datetime.now(timezone.utc)
    logger.info(
        "Running experiment",
        extra={"command": config.command, "seed": ctx.seed, "grid_n": ctx.grid.resolution},
    )
    before = set(store.keys())
    try:
        outcome = COMMANDS[config.command](ctx)
    except InvalidArgumentError as exc:
        written = sorted(set(store.keys()) - before)
        if not written:
            raise
        # partial outputs exist; close the run as a failure instead of a usage error
        logger.error(
            "Experiment rejected its input after writing artifacts",
            extra={"command": config.command, "error": str(exc), "artifacts": written},
        )
        outcome = CommandResult(
            passed=False,
            artifacts=written,
            results={"error": type(exc).__name__, "message": str(exc)},
        )

    summary = RunSummary(
        command=config.command,
        passed=outcome.passed,
        seed=ctx.seed,
        grid_l=ctx.grid.half_width,
        grid_n=ctx.grid.resolution,
        versions=versions(),
        artifacts=sorted(outcome.artifacts),
        results=outcome.results,
    )
    store.write_text("summary.json", dump_report(summary))
    metadata = {
        "started": started.isoformat(),
        "finished": datetime.now(timezone.utc).isoformat(),
        "python": platform.python_version(),
        "config": json.loads(config.model_dump_json()),
    }
    store.write_text("metadata.json", dump_json(metadata))
    log = logger.info if summary.passed else logger.warning
    log("Experiment finished", extra={"command": config.command, "passed": summary.passed})
    return summary

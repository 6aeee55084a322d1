"""
Experiment configuration schema.

A config is a JSON document validated by pydantic; the command comes from
the command line and CLI flags override the grid, seed and tolerance scale.
"""

import math
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Command = Literal[
    "solve",
    "de-extend",
    "lieb-project",
    "lieb-section",
    "lieb-theorem-a",
    "lieb-invariance",
    "motion-trace",
    "motion-probe",
    "jordan-report",
    "render",
]


class GridSpec(BaseModel):
    """Plane grid [-L, L)^2 with N nodes per side."""
    model_config = ConfigDict(extra="forbid")

    l: float = Field(gt=0, description="Half-width L")
    n: int = Field(ge=8, description="Nodes per side, a power of two")

    @field_validator("n")
    @classmethod
    def _power_of_two(cls, n: int) -> int:
        if n & (n - 1):
            raise ValueError("n must be a power of two")
        return n


class FieldSpec(BaseModel):
    """A Beltrami coefficient: a named preset or a GridField CSV."""
    model_config = ConfigDict(extra="forbid")

    preset: Literal["zero", "radial-stretch", "smooth", "even-smooth"] | None = "smooth"
    path: str | None = Field(default=None, description="GridField CSV (overrides preset)")
    k: float = Field(default=0.3, gt=0, lt=1, description="Target sup-norm")
    support: float = Field(default=1.0, gt=0, description="Support radius")
    center: tuple[float, float] = (0.0, 0.0)
    dilatation: float = Field(default=2.0, gt=1, description="K for the radial stretch")


class CircleSpec(BaseModel):
    """A circle homeomorphism: Moebius automorphism, trace of a field, or CSV."""
    model_config = ConfigDict(extra="forbid")

    preset: Literal["identity", "automorphism", "trace"] = "trace"
    path: str | None = None
    a: tuple[float, float] = (0.3, 0.1)
    theta: float = 0.0


class MotionSpec(BaseModel):
    """Holomorphic motion over the disk (or the maximal example's domain)."""
    model_config = ConfigDict(extra="forbid")

    preset: Literal["wtmu", "linear", "maximal"] = "wtmu"
    scale: float = Field(default=0.4, gt=0, lt=1, description="Velocity scale for linear motions")


class ExperimentConfig(BaseModel):
    """Everything a run needs besides the settings defaults."""
    model_config = ConfigDict(extra="forbid")

    command: Command
    grid: GridSpec | None = None
    mu: FieldSpec = Field(default_factory=FieldSpec)
    set_model: dict[str, Any] | None = Field(default=None, description="SetModel JSON (default: two disks)")
    group: list[Literal["negate", "double", "identity"]] = Field(default_factory=lambda: ["negate"])
    circle: CircleSpec = Field(default_factory=CircleSpec)
    motion: MotionSpec = Field(default_factory=MotionSpec)
    curve: str | None = Field(default=None, description="Curve CSV (default: marked polygon)")
    parameters: list[tuple[float, float]] = Field(
        default_factory=lambda: [(0.1, 0.0), (0.3, 0.0), (0.5, 0.0)],
        description="Disk parameters (re, im); for the maximal example (Im alpha, beta)",
    )
    n_boundary: int = Field(default=1024, ge=8)
    tol: float = Field(default=5e-3, gt=0)
    seed: int | None = Field(default=None, ge=0)

    @field_validator("n_boundary")
    @classmethod
    def _divisible_by_four(cls, n: int) -> int:
        if n % 4:
            raise ValueError("n_boundary must be divisible by 4")
        return n

    @model_validator(mode="after")
    def _parameters_in_domain(self) -> "ExperimentConfig":
        for a, b in self.parameters:
            if self.motion.preset == "maximal":
                inside = math.exp(-a) + abs(b) < 1.0
            else:
                inside = abs(complex(a, b)) < 1.0
            if not inside:
                raise ValueError(f"parameter ({a}, {b}) lies outside the parameter domain")
        return self

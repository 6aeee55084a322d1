"""
Laboratory configuration via Pydantic settings.

Every value can be overridden with a QCLAB_-prefixed environment variable
or a .env file; CLI flags override per run.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Numerical defaults and run options. Tolerances are quoted at the default grid."""

    # Plane grid
    grid_l: float = Field(default=4.0)
    grid_n: int = Field(default=512)

    # Chart grid for disk components (unit disk at the same spacing as the plane grid)
    chart_grid_l: float = Field(default=2.0)
    chart_grid_n: int = Field(default=256)

    # Douady-Earle
    boundary_samples: int = Field(default=1024)
    barycenter_tol: float = Field(default=1e-10)

    # Beltrami solver
    k_max: float = Field(default=0.9)
    solver_tol: float = Field(default=1e-12)
    solver_max_iter: int = Field(default=500)

    # Runs
    tol_scale: float = Field(default=1.0)
    seed: int = Field(default=20240601)
    threads: int = Field(default=1)
    log_level: str = Field(default="INFO")
    output_dir: str = Field(default="out")

    model_config = SettingsConfigDict(
        env_prefix="QCLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    @property
    def worker_count(self) -> int:
        """Parallelism cap for FFTs and suite runners."""
        return max(1, self.threads)

    def tolerance(self, base: float) -> float:
        """Scale an acceptance tolerance by the configured tol_scale."""
        return base * self.tol_scale

    def validate_required_fields(self) -> list[str]:
        """Returns a list of configuration problems (empty when valid)."""
        problems = []

        for name in ("grid_n", "chart_grid_n"):
            n = getattr(self, name)
            if n < 8 or n & (n - 1):
                problems.append(f"{name.upper()} must be a power of two >= 8")

        for name in ("grid_l", "chart_grid_l"):
            if getattr(self, name) <= 0:
                problems.append(f"{name.upper()} must be positive")

        if not 0.0 < self.k_max < 1.0:
            problems.append("K_MAX must lie in (0, 1)")

        if self.threads < 1:
            problems.append("THREADS must be at least 1")

        if self.tol_scale <= 0:
            problems.append("TOL_SCALE must be positive")

        return problems


@lru_cache()
def get_settings() -> Settings:
    """Cached settings singleton. Call get_settings.cache_clear() in tests."""
    return Settings()

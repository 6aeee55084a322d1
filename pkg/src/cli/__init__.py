"""
Command-line surface: config schema, experiment commands and acceptance suites.
"""

from .commands import COMMANDS, CommandResult, RunContext, RunSummary, run_experiment
from .schemas import ExperimentConfig
from .suites import SUITES, CaseResult, SuiteResult, verify_suite

__all__ = [
    "COMMANDS",
    "CommandResult",
    "RunContext",
    "RunSummary",
    "run_experiment",
    "ExperimentConfig",
    "SUITES",
    "CaseResult",
    "SuiteResult",
    "verify_suite",
]

"""Property suites over generated terms."""

from gradia.harness.graph import create_suite_graph, run_suite, write_report
from gradia.harness.schemas import GenConfig, SuiteReport, TrialResult
from gradia.harness.suites import SUITES, Suite, get_suite, run_trial, suite_config

__all__ = [
    "GenConfig",
    "SUITES",
    "Suite",
    "SuiteReport",
    "TrialResult",
    "create_suite_graph",
    "get_suite",
    "run_suite",
    "run_trial",
    "suite_config",
    "write_report",
]

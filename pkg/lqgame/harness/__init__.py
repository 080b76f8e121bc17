"""Experiment harness: file formats, run configuration, benchmarks, reports and the CLI

Main exports:
    - load_instance / save_instance: CSV, LQG1 binary and hard-stanza instances
    - RunConfig: validated parameters of one invocation
    - run_benchmark: scaling sweeps with fitted log-log slopes
    - build_report / emit_report: JSON reports with sidecar vectors

The CLI lives in :mod:`lqgame.harness.cli` and is not imported here.
"""

from lqgame.harness.bench import BenchRecord, BenchResult, run_benchmark
from lqgame.harness.config import RunConfig
from lqgame.harness.formats import load_instance, save_instance
from lqgame.harness.report import build_report, emit_report

__all__ = [
    "BenchRecord",
    "BenchResult",
    "run_benchmark",
    "RunConfig",
    "load_instance",
    "save_instance",
    "build_report",
    "emit_report",
]

"""Bound reports, verification suites and experiments."""

from .report import (
    ANCHORS, MEASURES, Annotation, BoundReport, Entry, assemble_report, compute_quantities,
    recognize,
)
from .suites import EXPERIMENTS, SUITES, SuiteReport, run_experiment, verify_suite

__all__ = [
    "ANCHORS", "MEASURES", "Annotation", "BoundReport", "Entry", "assemble_report",
    "compute_quantities", "recognize", "EXPERIMENTS", "SUITES", "SuiteReport",
    "run_experiment", "verify_suite",
]

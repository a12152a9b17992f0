"""CLI front end: analyze, sweep, simulate, optimize, reproduce."""

from .sweeps import CSV_HEADER, OPT_CSV_HEADER, RunRecord, SweepSpec

__all__ = ["CSV_HEADER", "OPT_CSV_HEADER", "RunRecord", "SweepSpec"]

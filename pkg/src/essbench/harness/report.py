"""Ensemble summaries from a stored rows table."""

from __future__ import annotations

import os

from .output import SUMMARY_FIELDS, ensemble_summary, read_rows, write_table

__all__ = ["report"]


def report(rows_path, out_dir, fmt: str = "csv") -> dict:
    """Summarise ``rows_path`` (CSV or JSON rows) into ``summary`` per
    (method, checkpoint)."""
    rows = read_rows(rows_path)
    summary = ensemble_summary(rows)
    os.makedirs(out_dir, exist_ok=True)
    path = write_table(os.path.join(out_dir, "summary.csv"), SUMMARY_FIELDS, summary, fmt)
    return {"summary": summary, "paths": {"summary": path}}

"""CSV/JSON writers with reproducible float formatting."""

from __future__ import annotations

import csv
import io
import json
import math
import os

import numpy as np

__all__ = ["fmt_float", "write_table", "read_rows", "write_json", "ensemble_summary",
           "SUMMARY_FIELDS"]


def fmt_float(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return str(v)


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else fmt_float(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def write_table(path, header, rows, fmt="csv") -> str:
    """Write ``rows`` (sequences aligned with ``header``); returns the path."""
    path = os.fspath(path)
    if fmt == "json":
        path = os.path.splitext(path)[0] + ".json"
        payload = [{h: _json_value(v) for h, v in zip(header, r)} for r in rows]
        text = json.dumps(payload, indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(v) for v in r])
        text = buf.getvalue()
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path


def write_json(path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True, default=_json_value)
        fh.write("\n")


def read_rows(path) -> list[dict]:
    """Rows of a table written by :func:`write_table` (csv or json)."""
    path = os.fspath(path)
    if path.endswith(".json"):
        with open(path) as fh:
            return json.load(fh)
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


SUMMARY_FIELDS = ("method", "checkpoint_n", "n", "iact_mean", "iact_sd", "iact_p05",
                  "iact_p95", "iact_min", "iact_max", "ess_mean", "ess_sd", "ess_p05",
                  "ess_p95", "ess_min", "ess_max")


def _stats(v):
    v = np.asarray(v, dtype=float)
    v = v[np.isfinite(v)]
    if v.size == 0:
        return [math.nan] * 6
    sd = float(np.std(v, ddof=1)) if v.size > 1 else math.nan
    p05, p95 = np.percentile(v, [5.0, 95.0])
    return [float(np.mean(v)), sd, float(p05), float(p95), float(v.min()), float(v.max())]


def ensemble_summary(rows) -> list[list]:
    """Per (method, checkpoint) ensemble statistics of IACT and ESS.

    ``rows`` are EstimatorRow objects or dicts read back from disk. Methods
    keep first-appearance order; checkpoints are ascending.
    """
    groups: dict = {}
    for r in rows:
        get = r.get if isinstance(r, dict) else (lambda k, _r=r: getattr(_r, k))
        key = (get("method"), int(get("checkpoint_n")))
        groups.setdefault(key, ([], []))
        groups[key][0].append(float(get("iact")))
        groups[key][1].append(float(get("ess")))
    order = {}
    for method, _ in groups:
        order.setdefault(method, len(order))
    out = []
    for (method, cp) in sorted(groups, key=lambda k: (order[k[0]], k[1])):
        iacts, esss = groups[(method, cp)]
        out.append([method, cp, len(iacts)] + _stats(iacts) + _stats(esss))
    return out

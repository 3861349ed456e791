"""CSV and plot-data serialisation of experiment reports.

CSV: ``,`` separated, ``.`` decimals, UTF-8, LF line endings, floats with 12
significant digits. Per-trial rows come first; the aggregate block follows as
``#aggregate,<key>,<value>`` lines and is omitted when there are no rows.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Any, Literal, Optional

import numpy as np

from .experiments import ExperimentReport


def format_value(x: Any) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".12g")
    return str(x)


def report_to_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([format_value(v) for v in row])
    if report.rows:
        for key, value in report.aggregates.items():
            writer.writerow(["#aggregate", key, format_value(value)])
    return buf.getvalue()


def parse_aggregates(text: str) -> dict[str, str]:
    """Read back the aggregate block of a CSV produced by ``report_to_csv``."""
    out = {}
    for row in csv.reader(io.StringIO(text)):
        if row and row[0] == "#aggregate":
            out[row[1]] = row[2]
    return out


def report_to_plot_data(report: ExperimentReport, bins: int = 30) -> str:
    """Long-format ``series,x,y`` rows: a gap histogram plus bound overlays."""
    name = "gap" if "gap" in report.columns else None
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["series", "x", "y"])
    if name and report.rows:
        values = report.column(name).astype(float)
        lo, hi = float(values.min()), float(values.max())
        if lo == hi:
            hi = lo + 1
        counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
        for c, left, right in zip(counts, edges[:-1], edges[1:]):
            writer.writerow(["gap_histogram", format_value((left + right) / 2),
                             format_value(int(c))])
    for key in ("theorem1_bound", "corollary1_bound", "linear_gap_target"):
        if key in report.aggregates:
            writer.writerow([key, format_value(report.aggregates[key]), "0"])
            writer.writerow([key, format_value(report.aggregates[key]),
                             format_value(len(report.rows))])
    return buf.getvalue()


def emit_report(report: ExperimentReport, path: Optional[str | Path] = None,
                fmt: Literal["csv", "plot"] = "csv") -> str:
    """Serialise ``report``; also write it to ``path`` when given."""
    if fmt == "csv":
        text = report_to_csv(report)
    elif fmt == "plot":
        text = report_to_plot_data(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text

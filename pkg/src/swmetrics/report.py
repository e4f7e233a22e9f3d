"""Text, CSV and JSON rendering of metric rows, dataset summaries and correlations."""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from swmetrics.dataset import CorrelationReport, DatasetSummary, ModuleRecord, resolve_field
from swmetrics.errors import MetricsError
from swmetrics.stats import RegressionLine, StatsError, regress

FORMATS = ("text", "csv", "json")


class UnknownFormat(MetricsError, ValueError):
    pass


class ReportWriteError(MetricsError, OSError):
    pass


def _check_format(fmt: str) -> None:
    if fmt not in FORMATS:
        raise UnknownFormat(f"unknown output format '{fmt}' (expected one of {', '.join(FORMATS)})")


def strength_label(r: float) -> str:
    a = abs(r)
    if a >= 0.8:
        return "very strong"
    if a >= 0.6:
        return "strong"
    if a >= 0.4:
        return "moderate"
    if a >= 0.2:
        return "weak"
    return "very weak"


def equation(slope: float, intercept: float) -> str:
    """Trendline equation with the intercept sign folded in, e.g. ``y = 4.322x - 2.802``."""
    sign = "-" if intercept < 0 else "+"
    return f"y = {slope:.4g}x {sign} {abs(intercept):.4g}"


def format_table(header: Sequence[str], rows: Sequence[Sequence[str]], left: int = 1) -> str:
    """Align columns; the first ``left`` columns are left-justified, the rest right-justified."""
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]

    def fmt(cells: Sequence[str]) -> str:
        parts = [c.ljust(w) if i < left else c.rjust(w) for i, (c, w) in enumerate(zip(cells, widths))]
        return "  ".join(parts).rstrip()

    lines = [fmt(header), "  ".join("-" * w for w in widths)]
    lines += [fmt(row) for row in rows]
    return "\n".join(lines) + "\n"


# -- dataset summaries -------------------------------------------------------

SUMMARY_ROWS = (
    ("# of Modules", lambda s: str(s.module_count)),
    ("LOC", lambda s: str(s.total_loc)),
    ("Sum of Errors", lambda s: str(s.total_errors)),
    ("Avg of Errors", lambda s: f"{s.avg_errors:.3f}"),
    ("Avg of HV", lambda s: f"{s.avg_halstead_volume:.2f}"),
    ("Avg of CC", lambda s: f"{s.avg_cyclomatic:.2f}"),
)


def _unique_names(names: Sequence[str]) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for name in names:
        seen[name] = seen.get(name, 0) + 1
        if seen[name] > 1:
            warnings.warn(f"duplicate dataset name '{name}'; rendering as '{name} ({seen[name]})'")
            out.append(f"{name} ({seen[name]})")
        else:
            out.append(name)
    return out


def render_summary(summaries: Sequence[DatasetSummary]) -> str:
    """One column per dataset, rows in the order of the classic MDP summary table."""
    names = _unique_names([s.name for s in summaries])
    rows = [[label, *(cell(s) for s in summaries)] for label, cell in SUMMARY_ROWS]
    table = format_table(["", *names], rows)
    notes = [f"note ({name}): {note}" for name, s in zip(names, summaries) for note in s.notes]
    return table + "".join(n + "\n" for n in notes)


# -- correlations ------------------------------------------------------------

def correlation_rows(report: CorrelationReport) -> list[dict[str, Any]]:
    rows = []
    for (x, y), entry in report.entries.items():
        row: dict[str, Any] = {"dataset": report.dataset, "x": x, "y": y}
        if isinstance(entry, RegressionLine):
            row.update(
                n=entry.n,
                r=entry.r,
                r_squared=entry.r_squared,
                slope=entry.slope,
                intercept=entry.intercept,
                equation=equation(entry.slope, entry.intercept),
                strength=strength_label(entry.r),
                error=None,
            )
        else:
            row.update(
                n=len(report.module_ids), r=None, r_squared=None, slope=None, intercept=None,
                equation=None, strength=None, error=f"{type(entry).__name__}: {entry}",
            )
        rows.append(row)
    return rows


def render_correlations(report: CorrelationReport, fmt: str = "text") -> str:
    _check_format(fmt)
    rows = correlation_rows(report)
    if fmt == "json":
        return json.dumps({"dataset": report.dataset, "pairs": rows}, indent=2) + "\n"
    if fmt == "csv":
        return rows_to_csv(rows)
    header = ["x", "y", "n", "r", "R^2", "slope", "intercept", "equation", "strength"]
    table = []
    for row in rows:
        if row["error"]:
            table.append([row["x"], row["y"], str(row["n"]), "-", "-", "-", "-", row["error"], "-"])
            continue
        table.append([
            row["x"], row["y"], str(row["n"]),
            f"{row['r']:.3f}", f"{row['r_squared']:.3f}",
            f"{row['slope']:.4g}", f"{row['intercept']:.4g}",
            row["equation"], row["strength"],
        ])
    title = f"Correlations: {report.dataset}\n" if report.dataset else ""
    return title + format_table(header, table, left=2)


def rows_to_csv(rows: Sequence[dict[str, Any]]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
    return buf.getvalue()


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


# -- scatter export ----------------------------------------------------------

def emit_scatter(records: Sequence[ModuleRecord], x: str, y: str, destination: str | Path) -> int:
    """Write ``x,y,module_id`` rows for plotting; returns the number of data rows.

    Only loaded (non-quarantined) records are written. A sidecar file
    ``<destination>.fit`` holds one line with the least-squares trendline.
    """
    x, y = resolve_field(x), resolve_field(y)
    path = Path(destination)
    xs = [getattr(r, x) for r in records]
    ys = [getattr(r, y) for r in records]
    try:
        fit = regress(xs, ys)
        sidecar = (
            f"slope={fit.slope!r} intercept={fit.intercept!r} r={fit.r!r} "
            f"r_squared={fit.r_squared!r} n={fit.n} equation={equation(fit.slope, fit.intercept)}\n"
        )
    except StatsError as exc:
        sidecar = f"fit=unavailable reason={type(exc).__name__} n={len(records)}\n"
    try:
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow([x, y, "module_id"])
            for rec, xv, yv in zip(records, xs, ys):
                writer.writerow([_cell(xv), _cell(yv), rec.module_id])
        path.with_name(path.name + ".fit").write_text(sidecar, encoding="utf-8")
    except OSError as exc:
        raise ReportWriteError(f"cannot write scatter data to {path}: {exc.strerror or exc}") from exc
    return len(records)


# -- per-unit metric rows ----------------------------------------------------

@dataclass
class MetricRow:
    unit: str
    metrics: dict[str, Any] = field(default_factory=dict)


def _text_value(name: str, value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4f}" if name == "L" else f"{value:.2f}"
    return str(value)


def render_metrics(rows: Sequence[MetricRow], fmt: str = "text") -> str:
    """All rows must share one metric column set (taken from the first row)."""
    _check_format(fmt)
    columns = list(rows[0].metrics) if rows else []
    for row in rows:
        if list(row.metrics) != columns:
            raise ValueError(f"row '{row.unit}' has a different metric column set")
    if fmt == "json":
        payload = [{"unit": r.unit, **r.metrics} for r in rows]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        return rows_to_csv([{"unit": r.unit, **r.metrics} for r in rows])
    table = [[r.unit, *(_text_value(c, r.metrics[c]) for c in columns)] for r in rows]
    return format_table(["unit", *columns], table)

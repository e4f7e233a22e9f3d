"""Loading per-module defect datasets (NASA MDP / PROMISE style CSV)."""

from __future__ import annotations

import configparser
import csv
import io
import math
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from swmetrics.errors import MetricsError
from swmetrics.stats import RegressionLine, StatsError, regress

ROW_NUMBER = "@row"
METRIC_FIELDS = ("loc", "cyclomatic", "halstead_volume", "error_count")
FIELD_ALIASES = {
    "loc": "loc",
    "cc": "cyclomatic",
    "cyclomatic": "cyclomatic",
    "hv": "halstead_volume",
    "halstead_volume": "halstead_volume",
    "volume": "halstead_volume",
    "errors": "error_count",
    "error_count": "error_count",
}
DEFAULT_PAIRS = (
    ("cyclomatic", "loc"),
    ("halstead_volume", "loc"),
    ("cyclomatic", "error_count"),
    ("halstead_volume", "error_count"),
    ("cyclomatic", "halstead_volume"),
)
_TRUE = {"true", "yes", "y", "t"}
_FALSE = {"false", "no", "n", "f"}


class DatasetError(MetricsError):
    pass


class DatasetFileNotFound(DatasetError, FileNotFoundError):
    pass


class MissingColumn(DatasetError):
    def __init__(self, column: str, target: str):
        super().__init__(f"column '{column}' (mapped to {target}) not found in CSV header")
        self.column = column
        self.target = target


class EmptyDataset(DatasetError):
    pass


class UnknownField(DatasetError, ValueError):
    pass


@dataclass(frozen=True)
class ColumnMapping:
    module_id: str
    loc: str
    cyclomatic: str
    halstead_volume: str
    error_count: str

    @classmethod
    def from_dict(cls, values: dict[str, str]) -> ColumnMapping:
        names = [f.name for f in fields(cls)]
        missing = [n for n in names if not values.get(n, "").strip()]
        if missing:
            raise DatasetError(f"column mapping lacks: {', '.join(missing)}")
        return cls(**{n: values[n].strip() for n in names})


def preset_names() -> list[str]:
    return _read_presets().sections()


def _read_presets() -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None)
    parser.read_string(resources.files("swmetrics").joinpath("presets.ini").read_text("utf-8"))
    return parser


def load_mapping(spec: str) -> ColumnMapping:
    """Resolve ``spec`` as a shipped preset name or a ``key = value`` file."""
    presets = _read_presets()
    if presets.has_section(spec):
        return ColumnMapping.from_dict(dict(presets[spec]))
    path = Path(spec)
    if not path.is_file():
        raise DatasetError(
            f"unknown mapping '{spec}': not a preset ({', '.join(presets.sections())}) or a file"
        )
    text = path.read_text(encoding="utf-8")
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.MissingSectionHeaderError:
        parser.read_string("[mapping]\n" + text)
    sections = parser.sections()
    if len(sections) != 1:
        raise DatasetError(f"{path}: expected one mapping section, found {len(sections)}")
    return ColumnMapping.from_dict(dict(parser[sections[0]]))


@dataclass(frozen=True)
class ModuleRecord:
    module_id: str
    loc: int
    cyclomatic: float
    halstead_volume: float
    error_count: int
    extras: dict[str, str] = field(default_factory=dict, compare=False)

    def value(self, name: str) -> float:
        return getattr(self, resolve_field(name))


@dataclass(frozen=True)
class QuarantinedRow:
    row: int
    reason: str


@dataclass
class LoadedDataset:
    path: Path
    records: list[ModuleRecord]
    quarantine: list[QuarantinedRow]
    binary_errors: bool = False

    @property
    def data_rows(self) -> int:
        return len(self.records) + len(self.quarantine)

    def quarantine_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["row", "reason"])
        writer.writerows((q.row, q.reason) for q in self.quarantine)
        return buf.getvalue()


def resolve_field(name: str) -> str:
    try:
        return FIELD_ALIASES[name.strip().lower()]
    except KeyError:
        raise UnknownField(
            f"unknown metric field '{name}'; choose from {', '.join(sorted(FIELD_ALIASES))}"
        ) from None


def _number(text: str, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"{column}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"{column}: non-finite value {text!r}")
    if value < 0:
        raise ValueError(f"{column}: negative value {text!r}")
    return value


def _count(text: str, column: str) -> int:
    value = _number(text, column)
    if not value.is_integer():
        raise ValueError(f"{column}: expected a whole number, got {text!r}")
    return int(value)


def read_header(path: str | Path) -> list[str]:
    """Header names of a CSV file, whitespace-trimmed."""
    try:
        with Path(path).open(newline="", encoding="utf-8-sig") as handle:
            return [h.strip() for h in next(csv.reader(handle), [])]
    except FileNotFoundError:
        raise DatasetFileNotFound(f"dataset not found: {path}") from None


def load_csv(path: str | Path, mapping: ColumnMapping) -> LoadedDataset:
    """Read a per-module CSV; rows that do not parse are quarantined, not dropped.

    Row numbers in the quarantine count the header as row 1.
    """
    path = Path(path)
    try:
        handle = path.open(newline="", encoding="utf-8-sig")
    except FileNotFoundError:
        raise DatasetFileNotFound(f"dataset not found: {path}") from None
    with handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise EmptyDataset(f"{path}: file is empty")
        index = {h.strip().lower(): i for i, h in enumerate(header)}

        columns: dict[str, int | None] = {}
        for target in ("module_id", *METRIC_FIELDS):
            name = getattr(mapping, target)
            if target == "module_id" and name == ROW_NUMBER:
                columns[target] = None
                continue
            if name.strip().lower() not in index:
                raise MissingColumn(name, target)
            columns[target] = index[name.strip().lower()]
        mapped = {i for i in columns.values() if i is not None}

        records: list[ModuleRecord] = []
        quarantine: list[QuarantinedRow] = []
        binary = False
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < len(header):
                quarantine.append(QuarantinedRow(row_no, f"expected {len(header)} fields, got {len(row)}"))
                continue
            cell = {t: row[i].strip() for t, i in columns.items() if i is not None}
            try:
                errors_text = cell["error_count"].lower()
                if errors_text in _TRUE or errors_text in _FALSE:
                    error_count = 1 if errors_text in _TRUE else 0
                    binary = True
                else:
                    error_count = _count(cell["error_count"], mapping.error_count)
                record = ModuleRecord(
                    module_id=cell.get("module_id", str(row_no - 1)),
                    loc=_count(cell["loc"], mapping.loc),
                    cyclomatic=_number(cell["cyclomatic"], mapping.cyclomatic),
                    halstead_volume=_number(cell["halstead_volume"], mapping.halstead_volume),
                    error_count=error_count,
                    extras={h: row[i] for i, h in enumerate(header) if i not in mapped},
                )
            except ValueError as exc:
                quarantine.append(QuarantinedRow(row_no, str(exc)))
                continue
            records.append(record)

    if not records:
        raise EmptyDataset(f"{path}: no parseable rows ({len(quarantine)} quarantined)")
    return LoadedDataset(path, records, quarantine, binary)


@dataclass(frozen=True)
class DatasetSummary:
    name: str
    module_count: int
    total_loc: int
    total_errors: int
    avg_errors: float
    avg_halstead_volume: float
    avg_cyclomatic: float
    notes: tuple[str, ...] = ()


def summarize(name: str, records: Sequence[ModuleRecord], notes: Iterable[str] = ()) -> DatasetSummary:
    if not records:
        raise EmptyDataset(f"{name}: cannot summarize an empty dataset")
    count = len(records)
    total_errors = sum(r.error_count for r in records)
    return DatasetSummary(
        name=name,
        module_count=count,
        total_loc=sum(r.loc for r in records),
        total_errors=total_errors,
        avg_errors=total_errors / count,
        avg_halstead_volume=math.fsum(r.halstead_volume for r in records) / count,
        avg_cyclomatic=math.fsum(r.cyclomatic for r in records) / count,
        notes=tuple(notes),
    )


@dataclass
class CorrelationReport:
    dataset: str
    entries: dict[tuple[str, str], RegressionLine | StatsError]
    module_ids: list[str] = field(default_factory=list)
    columns: dict[str, list[float]] = field(default_factory=dict)

    def scatter(self, x: str, y: str) -> list[tuple[float, float]]:
        return list(zip(self.columns[resolve_field(x)], self.columns[resolve_field(y)]))


def correlate(
    records: Sequence[ModuleRecord],
    pairs: Iterable[tuple[str, str]] = DEFAULT_PAIRS,
    name: str = "",
) -> CorrelationReport:
    """Fit one regression line per (x, y) field pair.

    A pair whose statistics fail (for example a constant column) is reported
    with its error; the remaining pairs are unaffected.
    """
    resolved = [(resolve_field(x), resolve_field(y)) for x, y in pairs]
    used = sorted({f for pair in resolved for f in pair}, key=METRIC_FIELDS.index)
    columns = {f: [float(getattr(r, f)) for r in records] for f in used}
    entries: dict[tuple[str, str], RegressionLine | StatsError] = {}
    for x, y in resolved:
        try:
            entries[(x, y)] = regress(columns[x], columns[y])
        except StatsError as exc:
            entries[(x, y)] = exc
    return CorrelationReport(name, entries, [r.module_id for r in records], columns)

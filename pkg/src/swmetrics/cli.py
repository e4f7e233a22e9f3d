"""Command-line entry point: ``swmetrics measure|analyze|summarize``.

Exit status is 0 on success, 1 when any input failed to process, and 2 on
usage errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from swmetrics import report
from swmetrics.cfg import build_cfg, complexity_band, cyclomatic_decisions, cyclomatic_edges_nodes, dump_cfg
from swmetrics.dataset import (
    DEFAULT_PAIRS,
    DatasetError,
    LoadedDataset,
    ROW_NUMBER,
    UnknownField,
    correlate,
    load_csv,
    load_mapping,
    preset_names,
    read_header,
    resolve_field,
    summarize,
)
from swmetrics.errors import Diagnostic
from swmetrics.halstead import EmptyProgram, HalsteadCounts, classify, measures
from swmetrics.lexer import tokenize
from swmetrics.loc import JonesMode, LineTable, LocReport
from swmetrics.parser import FunctionUnit, parse_functions

log = logging.getLogger("swmetrics")

SOURCE_SUFFIXES = (".c", ".h")
JONES_COLUMNS = {
    JonesMode.EXECUTABLE_ONLY: "jones_exec",
    JonesMode.EXECUTABLE_AND_DATA: "jones_exec_data",
    JonesMode.EXECUTABLE_COMMENTS_DATA: "jones_exec_cmt_data",
    JonesMode.EXECUTABLE_COMMENTS_DATA_JCL: "jones_exec_cmt_data_jcl",
}


class CliError(Exception):
    pass


# -- measure -----------------------------------------------------------------

def collect_sources(paths: Sequence[str]) -> list[str]:
    """Expand directories to their *.c / *.h files; order is lexicographic per argument."""
    out: list[str] = []
    for p in paths:
        path = Path(p)
        if p != "-" and path.is_dir():
            found = (f for f in path.rglob("*") if f.suffix in SOURCE_SUFFIXES and f.is_file())
            out.extend(sorted(str(f) for f in found))
        else:
            out.append(p)
    return out


def _read_source(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    return Path(name).read_bytes().decode("utf-8")


def _loc_metrics(rep: LocReport) -> dict[str, Any]:
    row: dict[str, Any] = {
        "ploc": rep.ploc, "sloc": rep.sloc, "cloc": rep.cloc,
        "scloc": rep.scloc, "bloc": rep.bloc, "lloc": rep.lloc,
    }
    for mode, column in JONES_COLUMNS.items():
        row[column] = rep.jones_mode_counts[mode]
    return row


def _halstead_metrics(counts: HalsteadCounts) -> dict[str, Any]:
    row: dict[str, Any] = {"n1": counts.n1, "n2": counts.n2, "N1": counts.N1, "N2": counts.N2}
    try:
        m = measures(counts)
    except EmptyProgram:
        row.update(dict.fromkeys(("n", "N", "V", "D", "L", "I", "E", "T")))
        row["halstead_note"] = "EmptyProgram"
        return row
    row.update(
        n=m.vocabulary, N=m.length, V=m.volume, D=m.difficulty, L=m.level,
        I=m.intelligence, E=m.effort, T=m.time, halstead_note="",
    )
    return row


def _cc_metrics(graph_cc: int | None, decision_cc: int | None) -> dict[str, Any]:
    return {
        "cc_graph": graph_cc,
        "cc_decisions": decision_cc,
        "band": complexity_band(decision_cc) if decision_cc else None,
    }


def measure_source(
    name: str,
    source: str,
    granularity: str = "function",
    diagnostics: list[Diagnostic] | None = None,
    cfg_dir: Path | None = None,
) -> list[report.MetricRow]:
    """Compute every metric for one source text; one row per function or one per file."""
    if diagnostics is None:
        diagnostics = []
    tokens = tokenize(source, diagnostics)
    table = LineTable(source, tokens)
    units = parse_functions(tokens, diagnostics)

    unit_cc: list[tuple[FunctionUnit, int, int]] = []
    for unit in units:
        cfg = build_cfg(unit)
        diagnostics.extend(cfg.diagnostics)
        graph_cc, decision_cc = cyclomatic_edges_nodes(cfg), cyclomatic_decisions(unit)
        if graph_cc != decision_cc:
            log.warning("%s:%s: CC methods disagree (%d vs %d)", name, unit.name, graph_cc, decision_cc)
        unit_cc.append((unit, graph_cc, decision_cc))
        if cfg_dir is not None:
            cfg_dir.mkdir(parents=True, exist_ok=True)
            stem = Path(name).name if name != "-" else "stdin"
            (cfg_dir / f"{stem}.{unit.name.strip('<>')}.cfg.txt").write_text(dump_cfg(cfg), encoding="utf-8")

    if granularity == "file":
        metrics = _loc_metrics(table.report())
        metrics.update(_halstead_metrics(classify(tokens)))
        if unit_cc:
            metrics.update(_cc_metrics(sum(g for _, g, _ in unit_cc), sum(d for _, _, d in unit_cc)))
        else:
            metrics.update(_cc_metrics(None, None))
        return [report.MetricRow(name, metrics)]

    rows = []
    for unit, graph_cc, decision_cc in unit_cc:
        loc = table.report() if unit.anonymous else table.report(*unit.source_span)
        metrics = _loc_metrics(loc)
        metrics.update(_halstead_metrics(classify(unit.body_tokens)))
        metrics.update(_cc_metrics(graph_cc, decision_cc))
        label = name if unit.anonymous else f"{name}:{unit.name}"
        rows.append(report.MetricRow(label, metrics))
    return rows


def cmd_measure(args: argparse.Namespace) -> int:
    failed = False
    rows: list[report.MetricRow] = []
    for name in collect_sources(args.paths):
        try:
            source = _read_source(name)
        except (OSError, UnicodeDecodeError) as exc:
            print(f"{name}: error: {exc}", file=sys.stderr)
            failed = True
            continue
        diagnostics: list[Diagnostic] = []
        rows.extend(measure_source(name, source, args.granularity, diagnostics, args.dump_cfg))
        for d in diagnostics:
            print(f"{name}:{d}", file=sys.stderr)
    _emit(report.render_metrics(rows, args.format), args.out)
    return 1 if failed else 0


# -- datasets ----------------------------------------------------------------

def _parse_pairs(text: str | None) -> list[tuple[str, str]]:
    if not text:
        return list(DEFAULT_PAIRS)
    pairs = []
    for item in text.split(","):
        x, sep, y = item.partition(":")
        if not sep:
            raise CliError(f"bad pair '{item}': expected x:y")
        try:
            pairs.append((resolve_field(x), resolve_field(y)))
        except UnknownField as exc:
            raise CliError(str(exc)) from None
    return pairs


def _load(path: str, mapping_spec: str) -> LoadedDataset:
    """Load with a named mapping, or with ``auto`` pick the preset matching most header columns."""
    if mapping_spec != "auto":
        return load_csv(path, load_mapping(mapping_spec))
    header = {h.lower() for h in read_header(path)}
    best = max(
        preset_names(),
        key=lambda p: sum(
            v.lower() in header or v == ROW_NUMBER for v in dataclasses.astuple(load_mapping(p))
        ),
    )
    log.info("%s: using mapping preset '%s'", path, best)
    return load_csv(path, load_mapping(best))


def _report_quarantine(loaded: LoadedDataset) -> None:
    if loaded.quarantine:
        print(f"{loaded.path}: {len(loaded.quarantine)} row(s) quarantined", file=sys.stderr)
        for q in loaded.quarantine:
            print(f"{loaded.path}: row {q.row}: {q.reason}", file=sys.stderr)


def _notes(loaded: LoadedDataset) -> list[str]:
    if loaded.binary_errors:
        return ["error counts come from a 0/1 defect flag, not an error count"]
    return []


def cmd_analyze(args: argparse.Namespace) -> int:
    pairs = _parse_pairs(args.pairs)
    loaded = _load(args.dataset, args.mapping)
    _report_quarantine(loaded)
    if args.quarantine_out:
        Path(args.quarantine_out).write_text(loaded.quarantine_csv(), encoding="utf-8")
    name = Path(args.dataset).stem
    summary = summarize(name, loaded.records, _notes(loaded))
    result = correlate(loaded.records, pairs, name=name)

    if args.format == "json":
        payload = json.loads(report.render_correlations(result, "json"))
        payload["summary"] = dataclasses.asdict(summary)
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = report.render_correlations(result, "csv")
    else:
        text = report.render_summary([summary]) + "\n" + report.render_correlations(result, "text")
    _emit(text, args.out)

    if args.scatter_dir:
        out_dir = Path(args.scatter_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for x, y in pairs:
            report.emit_scatter(loaded.records, x, y, out_dir / f"{name}_{x}_vs_{y}.csv")
    return 0


def cmd_summarize(args: argparse.Namespace) -> int:
    mappings = args.mapping or ["auto"]
    if len(mappings) not in (1, len(args.datasets)):
        raise CliError("give one --mapping for all datasets or one per dataset")
    if len(mappings) == 1:
        mappings = mappings * len(args.datasets)
    summaries = []
    failed = False
    for path, mapping in zip(args.datasets, mappings):
        try:
            loaded = _load(path, mapping)
        except (DatasetError, OSError) as exc:
            print(f"{path}: error: {exc}", file=sys.stderr)
            failed = True
            continue
        _report_quarantine(loaded)
        summaries.append(summarize(Path(path).stem, loaded.records, _notes(loaded)))
    if not summaries:
        print("error: no dataset could be summarized", file=sys.stderr)
        return 1
    if args.format == "json":
        text = json.dumps([dataclasses.asdict(s) for s in summaries], indent=2) + "\n"
    elif args.format == "csv":
        text = report.rows_to_csv([dataclasses.asdict(s) | {"notes": "; ".join(s.notes)} for s in summaries])
    else:
        text = report.render_summary(summaries)
    _emit(text, args.out)
    return 1 if failed else 0


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swmetrics",
        description="LOC, Halstead and cyclomatic complexity for C sources; correlation analysis for defect datasets.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=report.FORMATS, default="text")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    m = sub.add_parser("measure", parents=[common], help="measure C source files")
    m.add_argument("paths", nargs="+", help="files or directories ('-' reads stdin)")
    m.add_argument("--granularity", choices=("file", "function"), default="function")
    m.add_argument("--dump-cfg", type=Path, metavar="DIR", help="write one CFG edge list per function")
    m.set_defaults(func=cmd_measure)

    a = sub.add_parser("analyze", parents=[common], help="correlate metrics in a defect dataset")
    a.add_argument("dataset")
    a.add_argument("--mapping", default="auto", help="preset name, mapping file, or 'auto'")
    a.add_argument("--pairs", metavar="X:Y,...", help="metric pairs (default: the five cc/hv/loc/errors pairs)")
    a.add_argument("--scatter-dir", metavar="DIR", help="write x,y scatter CSVs here")
    a.add_argument("--quarantine-out", metavar="PATH", help="write quarantined rows as CSV")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("summarize", parents=[common], help="summary table over one or more datasets")
    s.add_argument("datasets", nargs="+")
    s.add_argument("--mapping", action="append", help="preset or file; repeat to give one per dataset")
    s.set_defaults(func=cmd_summarize)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        parser.error(str(exc))
    except (DatasetError, report.ReportWriteError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

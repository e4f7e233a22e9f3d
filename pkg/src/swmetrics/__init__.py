"""Static complexity metrics for C-like source and defect-dataset correlation analysis."""

from swmetrics.cfg import (
    ControlFlowGraph,
    build_cfg,
    complexity_band,
    cyclomatic_decisions,
    cyclomatic_edges_nodes,
)
from swmetrics.halstead import (
    EmptyProgram,
    HalsteadCounts,
    HalsteadMeasures,
    classify,
    measure_source,
    measures,
)
from swmetrics.lexer import Token, TokenKind, tokenize
from swmetrics.loc import JonesMode, LocReport, count_jones, count_loc
from swmetrics.parser import FunctionUnit, Statement, StatementKind, parse_functions
from swmetrics.stats import RegressionLine, pearson, regress

__all__ = [
    "ControlFlowGraph",
    "EmptyProgram",
    "FunctionUnit",
    "HalsteadCounts",
    "HalsteadMeasures",
    "JonesMode",
    "LocReport",
    "RegressionLine",
    "Statement",
    "StatementKind",
    "Token",
    "TokenKind",
    "build_cfg",
    "classify",
    "complexity_band",
    "count_jones",
    "count_loc",
    "cyclomatic_decisions",
    "cyclomatic_edges_nodes",
    "measure_source",
    "measures",
    "parse_functions",
    "pearson",
    "regress",
    "tokenize",
]

__version__ = "0.1.0"

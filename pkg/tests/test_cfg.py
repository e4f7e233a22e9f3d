import re
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from samples import INSERTION_SORT, NESTED_IF
from swmetrics.cfg import (
    build_cfg,
    complexity_band,
    cyclomatic_decisions,
    cyclomatic_edges_nodes,
    dump_cfg,
)
from swmetrics.lexer import tokenize
from swmetrics.parser import parse_functions

CORPUS = sorted(Path(__file__).parent.joinpath("corpus").glob("*.c"))


def graphs(source, diags=None):
    return [(u, build_cfg(u)) for u in parse_functions(tokenize(source), diags)]


def single(source):
    ((unit, cfg),) = graphs(source)
    return unit, cfg


def shape(source):
    _, cfg = single(source)
    return len(cfg.nodes), len(cfg.edges), cyclomatic_edges_nodes(cfg)


def test_insertion_sort_graph():
    unit, cfg = single(INSERTION_SORT)
    assert (len(cfg.nodes), len(cfg.edges)) == (10, 11)
    assert cyclomatic_edges_nodes(cfg) == cyclomatic_decisions(unit) == 3
    assert [n.kind for n in cfg.nodes] == [
        "Entry", "For", "Simple", "Simple", "While", "Simple", "Simple", "Simple", "ForStep", "Exit",
    ]


@pytest.mark.parametrize(
    "source, expected",
    [
        ("a; b; c;", (3, 2, 1)),
        ("if (k) x;", (3, 3, 2)),
        ("{ }", (1, 0, 1)),
        ("", (1, 0, 1)),
        ("int f(){return 0;}", (2, 1, 1)),
    ],
)
def test_small_shapes(source, expected):
    assert shape(source) == expected


def test_nested_if_complexity():
    unit, cfg = single(NESTED_IF)
    assert cyclomatic_edges_nodes(cfg) == cyclomatic_decisions(unit) == 3


def test_boolean_operators_do_not_add_decisions():
    unit, cfg = single("if (a && b || c) x;")
    assert cyclomatic_decisions(unit) == cyclomatic_edges_nodes(cfg) == 2


def test_switch_counts_cases_not_default():
    unit, cfg = single("switch (c) { case 1: a; break; case 2: b; break; default: d; }")
    assert cyclomatic_decisions(unit) == cyclomatic_edges_nodes(cfg) == 3


def test_infinite_for_is_a_decision():
    unit, cfg = single("for (;;) { if (x) break; }")
    assert cyclomatic_decisions(unit) == cyclomatic_edges_nodes(cfg) == 3


def test_unreachable_code_is_diagnosed():
    _, cfg = single("int f(void) { return 1; x = 2; }")
    assert "UnreachableCode" in {d.code for d in cfg.diagnostics}


def test_stray_break_and_unknown_label():
    _, cfg = single("void f(void) { break; goto nowhere; }")
    codes = {d.code for d in cfg.diagnostics}
    assert {"StrayBreak", "UnknownLabel"} <= codes


@pytest.mark.parametrize(
    "cc, band",
    [(1, "simple"), (3, "simple"), (9, "simple"), (10, "moderate"), (20, "moderate"),
     (21, "complex"), (99, "complex"), (100, "out-of-control"), (250, "out-of-control")],
)
def test_bands(cc, band):
    assert complexity_band(cc) == band


def test_dump_format():
    _, cfg = single("if (k) x;")
    text = dump_cfg(cfg)
    assert "0 1 If" in text and "0 -> 1" in text and text.endswith("\n")


def _expected(path):
    header = path.read_text().splitlines()[0]
    return {k: int(v) for k, v in re.findall(r"(\w+)=(\d+)", header)}


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 30


@pytest.mark.parametrize("path", CORPUS, ids=[p.stem for p in CORPUS])
def test_corpus_expected_values(path):
    diags = []
    pairs = graphs(path.read_text(), diags)
    got = {}
    for unit, cfg in pairs:
        assert len(set(cfg.edges)) == len(cfg.edges)
        got[unit.name] = cyclomatic_edges_nodes(cfg)
        assert got[unit.name] == cyclomatic_decisions(unit)
    assert got == _expected(path)


# random structured programs: the two cyclomatic measures always agree

def _stmt(depth):
    simple = st.sampled_from(["x = 1;", "f(y);", ";", "break;", "continue;", "return z;", "goto L;", "L: y++;"])
    if depth == 0:
        return simple
    sub = _stmt(depth - 1)
    block = st.lists(sub, max_size=3).map(lambda ss: "{ " + " ".join(ss) + " }")
    return st.one_of(
        simple,
        block,
        sub.map(lambda s: f"if (a && b) {s}"),
        st.tuples(sub, sub).map(lambda p: f"if (c) {p[0]} else {p[1]}"),
        sub.map(lambda s: f"while (n--) {s}"),
        sub.map(lambda s: f"do {s} while (m);"),
        sub.map(lambda s: f"for (i = 0; i < n; i++) {s}"),
        sub.map(lambda s: f"for (;;) {s}"),
        st.lists(sub, max_size=3).map(
            lambda ss: "switch (k) { case 1: " + " ".join(ss) + " case 2: break; default: ; }"
        ),
    )


@given(st.lists(_stmt(3), max_size=5).map(" ".join), st.booleans())
def test_measures_agree_on_random_programs(body, named):
    source = f"void g(void) {{ {body} }}" if named else body
    for unit, cfg in graphs(source):
        assert len(set(cfg.edges)) == len(cfg.edges)
        assert cyclomatic_edges_nodes(cfg) == cyclomatic_decisions(unit)


@given(st.lists(_stmt(2), min_size=1, max_size=4).map(" ".join))
def test_wrapping_in_if_adds_one(body):
    ((u1, _),) = graphs(f"void g(void) {{ {body} }}")
    ((u2, _),) = graphs(f"void g(void) {{ if (q) {{ {body} }} }}")
    assert cyclomatic_decisions(u2) == cyclomatic_decisions(u1) + 1


@given(st.lists(_stmt(2), min_size=1, max_size=4).map(" ".join))
def test_inserting_simple_statement_is_neutral(body):
    ((_, c1),) = graphs(f"void g(void) {{ {body} }}")
    ((_, c2),) = graphs(f"void g(void) {{ w = 0; {body} }}")
    assert cyclomatic_edges_nodes(c2) == cyclomatic_edges_nodes(c1)

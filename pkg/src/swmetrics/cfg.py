"""Statement-level control-flow graphs and cyclomatic complexity.

One node per statement. Named functions get an entry node standing for the
function header; a ``for`` loop with an increment expression gets a second
node for the increment, which is where ``continue`` and the end of the body
lead. A synthetic exit node is appended unless the graph already ends in a
single terminal statement, which then serves as the exit. Compound boolean
conditions stay a single node.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from swmetrics.errors import Diagnostic
from swmetrics.parser import FunctionUnit, Statement, StatementKind

K = StatementKind

DECISION_KINDS = frozenset({K.IF, K.WHILE, K.DO_WHILE, K.FOR})


@dataclass(frozen=True)
class Node:
    id: int
    line: int
    kind: str
    text: str = ""


@dataclass
class ControlFlowGraph:
    name: str
    nodes: list[Node]
    edges: list[tuple[int, int]]
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def entry(self) -> int:
        return self.nodes[0].id

    @property
    def exit(self) -> int:
        return self.nodes[-1].id

    def successors(self, node_id: int) -> list[int]:
        return [b for a, b in self.edges if a == node_id]

    def reachable_from(self, start: int, reverse: bool = False) -> set[int]:
        adjacency: dict[int, list[int]] = {n.id: [] for n in self.nodes}
        for a, b in self.edges:
            if reverse:
                adjacency[b].append(a)
            else:
                adjacency[a].append(b)
        seen = {start}
        stack = [start]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen


@dataclass
class _Context:
    break_to: int | None = None
    continue_to: int | None = None
    cases: list[int] | None = None  # case/default nodes of the innermost switch


class _Builder:
    def __init__(self, unit: FunctionUnit):
        self.unit = unit
        self.specs: list[tuple[int, str, str]] = []
        self.node_of: dict[int, int] = {}
        self.step_of: dict[int, int] = {}
        self.labels: dict[str, int] = {}
        self.edges: list[tuple[int, int]] = []
        self.default_nodes: set[int] = set()
        self.diagnostics: list[Diagnostic] = []

    def new_node(self, line: int, kind: str, text: str = "") -> int:
        self.specs.append((line, kind, text))
        return len(self.specs) - 1

    def allocate(self, stmts: list[Statement]) -> None:
        for s in stmts:
            if s.kind is K.BLOCK and s.children:
                self.allocate(s.children)
                continue
            if s.kind is K.DO_WHILE:
                self.allocate(s.children)
                self.node_of[id(s)] = self.new_node(s.line, s.kind.value, s.text)
                continue
            self.node_of[id(s)] = self.new_node(s.line, s.kind.value, s.text)
            if s.kind is K.LABEL:
                if s.label in self.labels:
                    self.warn("DuplicateLabel", f"label '{s.label}' defined twice", s)
                self.labels.setdefault(s.label, self.node_of[id(s)])
            self.allocate(s.children)
            if s.orelse is not None:
                self.allocate([s.orelse])
            if s.kind is K.FOR and s.step_text:
                last_line = max((c.line for c in s.walk()), default=s.line)
                self.step_of[id(s)] = self.new_node(last_line, "ForStep", s.step_text)

    def warn(self, code: str, message: str, s: Statement) -> None:
        self.diagnostics.append(Diagnostic(code, message, s.line))

    def edge(self, a: int, b: int) -> None:
        if (a, b) not in self.edges:
            self.edges.append((a, b))

    def sequence(self, stmts: list[Statement], succ: int, ctx: _Context) -> int:
        for s in reversed(stmts):
            succ = self.wire(s, succ, ctx)
        return succ

    def wire(self, s: Statement, succ: int, ctx: _Context) -> int:
        """Add the edges of ``s`` given its successor; return the node control enters at."""
        if s.kind is K.BLOCK and s.children:
            return self.sequence(s.children, succ, ctx)
        if s.kind is K.DO_WHILE:
            cond = self.node_of[id(s)]
            inner = _Context(succ, cond, ctx.cases)
            body = self.sequence(s.children, cond, inner)
            self.edge(cond, body)
            self.edge(cond, succ)
            return body

        node = self.node_of[id(s)]
        kind = s.kind
        if kind is K.IF:
            then = self.sequence(s.children, succ, ctx)
            other = self.wire(s.orelse, succ, ctx) if s.orelse is not None else succ
            self.edge(node, then)
            self.edge(node, other)
        elif kind is K.WHILE:
            body = self.sequence(s.children, node, _Context(succ, node, ctx.cases))
            self.edge(node, body)
            self.edge(node, succ)
        elif kind is K.FOR:
            step = self.step_of.get(id(s))
            again = node if step is None else step
            if step is not None:
                self.edge(step, node)
            body = self.sequence(s.children, again, _Context(succ, again, ctx.cases))
            self.edge(node, body)
            self.edge(node, succ)
        elif kind is K.SWITCH:
            cases: list[int] = []
            self.sequence(s.children, succ, _Context(succ, ctx.continue_to, cases))
            default = next((c for c in cases if c in self.default_nodes), None)
            for c in cases:
                if c != default:
                    self.edge(node, c)
            self.edge(node, default if default is not None else succ)
        elif kind in (K.CASE, K.DEFAULT):
            if ctx.cases is None:
                self.warn("CaseOutsideSwitch", f"'{s.text}' outside a switch", s)
            else:
                ctx.cases.append(node)
                if kind is K.DEFAULT:
                    self.default_nodes.add(node)
            self.edge(node, succ)
        elif kind is K.BREAK:
            if ctx.break_to is None:
                self.warn("StrayBreak", "'break' outside a loop or switch", s)
            self.edge(node, self.exit if ctx.break_to is None else ctx.break_to)
        elif kind is K.CONTINUE:
            if ctx.continue_to is None:
                self.warn("StrayContinue", "'continue' outside a loop", s)
            self.edge(node, self.exit if ctx.continue_to is None else ctx.continue_to)
        elif kind is K.RETURN:
            self.edge(node, self.exit)
        elif kind is K.GOTO:
            target = self.labels.get(s.label)
            if target is None:
                self.warn("UnknownLabel", f"goto to undefined label '{s.label}'", s)
                target = self.exit
            self.edge(node, target)
        else:  # SIMPLE, LABEL, empty BLOCK
            self.edge(node, succ)
        return node

    def build(self) -> ControlFlowGraph:
        unit = self.unit
        entry = None
        if not unit.anonymous:
            entry = self.new_node(unit.source_span[0], "Entry", unit.name)
        self.allocate(unit.body)
        self.exit = self.new_node(unit.source_span[1], "Exit")
        first = self.sequence(unit.body, self.exit, _Context())
        if entry is not None:
            self.edge(entry, first)

        exit_id = self.exit
        into_exit = [a for a, b in self.edges if b == exit_id]
        if len(into_exit) == 1 and into_exit[0] != entry:
            last = into_exit[0]
            if sum(1 for a, _ in self.edges if a == last) == 1:
                # the lone predecessor is itself a terminal statement: let it be the exit
                self.edges.remove((last, exit_id))
                exit_id = last

        order = [i for i in range(len(self.specs)) if i not in (self.exit, exit_id)]
        order.append(exit_id)
        renumber = {old: new for new, old in enumerate(order)}
        nodes = [Node(renumber[i], *self.specs[i]) for i in order]
        edges = sorted((renumber[a], renumber[b]) for a, b in self.edges)
        cfg = ControlFlowGraph(unit.name, nodes, edges, self.diagnostics)
        self._check_reachability(cfg)
        return cfg

    def _check_reachability(self, cfg: ControlFlowGraph) -> None:
        from_entry = cfg.reachable_from(cfg.entry)
        to_exit = cfg.reachable_from(cfg.exit, reverse=True)
        for n in cfg.nodes:
            if n.id not in from_entry:
                cfg.diagnostics.append(
                    Diagnostic("UnreachableCode", f"node {n.id} ({n.kind}) is unreachable", n.line)
                )
            elif n.id not in to_exit:
                cfg.diagnostics.append(
                    Diagnostic("NoPathToExit", f"node {n.id} ({n.kind}) never reaches the exit", n.line)
                )


def build_cfg(unit: FunctionUnit) -> ControlFlowGraph:
    return _Builder(unit).build()


def cyclomatic_edges_nodes(cfg: ControlFlowGraph) -> int:
    """McCabe's V(G) = E - N + 2 for a single connected component."""
    return len(cfg.edges) - len(cfg.nodes) + 2


def _count_decisions(stmts: list[Statement], in_switch: bool) -> int:
    total = 0
    for s in stmts:
        if s.kind in DECISION_KINDS or (s.kind is K.CASE and in_switch):
            total += 1
        inner = in_switch or s.kind is K.SWITCH
        total += _count_decisions(s.children, inner)
        if s.orelse is not None:
            total += _count_decisions([s.orelse], inner)
    return total


def cyclomatic_decisions(unit: FunctionUnit) -> int:
    """1 + number of if/while/do/for statements and case labels.

    ``&&``/``||`` inside a condition do not add decisions; ``default`` and
    ``else`` are not decisions.
    """
    return 1 + _count_decisions(unit.body, in_switch=False)


def complexity_band(cc: int) -> str:
    if cc < 10:
        return "simple"
    if cc <= 20:
        return "moderate"
    if cc < 100:
        return "complex"
    return "out-of-control"


def dump_cfg(cfg: ControlFlowGraph) -> str:
    """Plain-text node table and edge list, one record per line."""
    lines = [f"# cfg {cfg.name}", "# nodes: id line kind"]
    lines += [f"{n.id} {n.line} {n.kind}" for n in cfg.nodes]
    lines.append("# edges")
    lines += [f"{a} -> {b}" for a, b in cfg.edges]
    return "\n".join(lines) + "\n"

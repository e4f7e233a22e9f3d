"""Function extraction and a statement-level parser for C function bodies.

Only control structure is recovered: expressions and declarations are kept
as opaque ``SIMPLE`` statements. The parser is deliberately forgiving; it
reports problems as diagnostics and always returns something usable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from swmetrics.errors import Diagnostic
from swmetrics.lexer import Token, TokenKind, significant


class StatementKind(enum.Enum):
    SIMPLE = "Simple"
    BLOCK = "Block"
    IF = "If"
    WHILE = "While"
    DO_WHILE = "DoWhile"
    FOR = "For"
    SWITCH = "Switch"
    CASE = "Case"
    DEFAULT = "Default"
    BREAK = "Break"
    CONTINUE = "Continue"
    RETURN = "Return"
    GOTO = "Goto"
    LABEL = "Label"


@dataclass
class Statement:
    kind: StatementKind
    line: int
    children: list[Statement] = field(default_factory=list)
    condition_text: str = ""
    orelse: Statement | None = None
    step_text: str = ""  # FOR only
    label: str = ""  # GOTO / LABEL target name
    text: str = ""

    def walk(self):
        """Yield this statement and every nested statement, in source order."""
        yield self
        for child in self.children:
            yield from child.walk()
        if self.orelse is not None:
            yield from self.orelse.walk()


@dataclass
class FunctionUnit:
    name: str
    body: list[Statement]
    source_span: tuple[int, int]
    body_tokens: list[Token] = field(default_factory=list, repr=False)
    anonymous: bool = False


class UnbalancedBraces(Exception):
    def __init__(self, token: Token):
        super().__init__(f"unbalanced '{token.text}' at {token.line}:{token.column}")
        self.token = token


def _is(tok: Token | None, text: str) -> bool:
    return tok is not None and tok.text == text and tok.kind in (
        TokenKind.PUNCTUATOR,
        TokenKind.KEYWORD,
    )


def _match_forward(toks: list[Token], i: int, open_: str, close: str) -> int | None:
    depth = 0
    for j in range(i, len(toks)):
        if _is(toks[j], open_):
            depth += 1
        elif _is(toks[j], close):
            depth -= 1
            if depth == 0:
                return j
    return None


def _match_backward(toks: list[Token], i: int, open_: str, close: str) -> int | None:
    depth = 0
    for j in range(i, -1, -1):
        if _is(toks[j], close):
            depth += 1
        elif _is(toks[j], open_):
            depth -= 1
            if depth == 0:
                return j
    return None


def _join(toks: list[Token]) -> str:
    return " ".join(t.text for t in toks)


class _BodyParser:
    def __init__(self, toks: list[Token], diagnostics: list[Diagnostic]):
        self.toks = toks
        self.i = 0
        self.diagnostics = diagnostics

    def peek(self, ahead: int = 0) -> Token | None:
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def advance(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if _is(self.peek(), text):
            self.i += 1
            return True
        return False

    def warn(self, code: str, message: str, tok: Token | None) -> None:
        line = tok.line if tok else (self.toks[-1].line if self.toks else 1)
        col = tok.column if tok else 1
        self.diagnostics.append(Diagnostic(code, message, line, col))

    def sequence(self, in_block: bool) -> list[Statement]:
        stmts = []
        while self.peek() is not None:
            if _is(self.peek(), "}"):
                if in_block:
                    break
                raise UnbalancedBraces(self.peek())
            stmts.append(self.statement())
        return stmts

    def paren_group(self, owner: Token) -> list[Token]:
        if not _is(self.peek(), "("):
            self.warn("MissingParenthesis", f"expected '(' after '{owner.text}'", self.peek() or owner)
            return []
        close = _match_forward(self.toks, self.i, "(", ")")
        if close is None:
            raise UnbalancedBraces(self.peek())
        inner = self.toks[self.i + 1 : close]
        self.i = close + 1
        return inner

    def sub_statement(self, owner: Token) -> Statement:
        nxt = self.peek()
        if nxt is None or _is(nxt, "}"):
            self.warn("MissingStatement", f"'{owner.text}' has no body", nxt or owner)
            return Statement(StatementKind.SIMPLE, owner.line)
        return self.statement()

    def skip_to_semicolon(self) -> list[Token]:
        """Consume tokens through the next top-level ';' (or stop before an unmatched '}')."""
        start = self.i
        depth = 0
        while (tok := self.peek()) is not None:
            if _is(tok, "(") or _is(tok, "[") or _is(tok, "{"):
                if _is(tok, "{") and depth == 0 and self.i > start and _is(self.toks[self.i - 1], ")"):
                    break  # macro-style "NAME(args) { ... }": leave the block as its own statement
                depth += 1
            elif _is(tok, ")") or _is(tok, "]") or _is(tok, "}"):
                if depth == 0:
                    break
                depth -= 1
            elif _is(tok, ";") and depth == 0:
                self.i += 1
                return self.toks[start : self.i]
            self.i += 1
        return self.toks[start : self.i]

    def statement(self) -> Statement:
        tok = self.peek()
        line = tok.line
        word = tok.text if tok.kind in (TokenKind.KEYWORD, TokenKind.PUNCTUATOR) else None

        if word == "{":
            self.advance()
            children = self.sequence(in_block=True)
            if not self.accept("}"):
                raise UnbalancedBraces(tok)
            return Statement(StatementKind.BLOCK, line, children)

        if word == "if":
            self.advance()
            cond = _join(self.paren_group(tok))
            then = self.sub_statement(tok)
            orelse = None
            if _is(self.peek(), "else"):
                else_tok = self.advance()
                orelse = self.sub_statement(else_tok)
            return Statement(StatementKind.IF, line, [then], cond, orelse, text=f"if ({cond})")

        if word in ("while", "switch"):
            self.advance()
            cond = _join(self.paren_group(tok))
            body = self.sub_statement(tok)
            kind = StatementKind.WHILE if word == "while" else StatementKind.SWITCH
            return Statement(kind, line, [body], cond, text=f"{word} ({cond})")

        if word == "do":
            self.advance()
            body = self.sub_statement(tok)
            cond = ""
            tail_line = line
            if _is(self.peek(), "while"):
                tail_line = self.advance().line
                cond = _join(self.paren_group(tok))
                self.accept(";")
            else:
                self.warn("MissingWhile", "'do' body not followed by 'while'", self.peek() or tok)
            # The statement's own node is the trailing condition test.
            return Statement(StatementKind.DO_WHILE, tail_line, [body], cond, text=f"do-while ({cond})")

        if word == "for":
            self.advance()
            header = self.paren_group(tok)
            parts: list[list[Token]] = [[]]
            depth = 0
            for t in header:
                if _is(t, "(") or _is(t, "["):
                    depth += 1
                elif _is(t, ")") or _is(t, "]"):
                    depth -= 1
                if _is(t, ";") and depth == 0:
                    parts.append([])
                else:
                    parts[-1].append(t)
            parts += [[], []]
            init, cond, step = (_join(p) for p in parts[:3])
            body = self.sub_statement(tok)
            return Statement(
                StatementKind.FOR, line, [body], cond, step_text=step,
                text=f"for ({init}; {cond}; {step})",
            )

        if word == "case":
            self.advance()
            start = self.i
            ternaries = 0
            while (t := self.peek()) is not None:
                if _is(t, "?"):
                    ternaries += 1
                elif _is(t, ":"):
                    if ternaries == 0:
                        break
                    ternaries -= 1
                elif _is(t, ";") or _is(t, "{") or _is(t, "}"):
                    break
                self.i += 1
            value = _join(self.toks[start : self.i])
            if not self.accept(":"):
                self.warn("MissingColon", "'case' label without ':'", self.peek() or tok)
            return Statement(StatementKind.CASE, line, condition_text=value, text=f"case {value}:")

        if word == "default":
            self.advance()
            if not self.accept(":"):
                self.warn("MissingColon", "'default' label without ':'", self.peek() or tok)
            return Statement(StatementKind.DEFAULT, line, text="default:")

        if word in ("break", "continue"):
            self.advance()
            self.accept(";")
            kind = StatementKind.BREAK if word == "break" else StatementKind.CONTINUE
            return Statement(kind, line, text=word)

        if word == "return":
            self.advance()
            rest = self.skip_to_semicolon()
            return Statement(StatementKind.RETURN, line, text=_join([tok, *rest]))

        if word == "goto":
            self.advance()
            target = self.peek()
            name = ""
            if target is not None and target.kind is TokenKind.IDENTIFIER:
                name = self.advance().text
            self.accept(";")
            return Statement(StatementKind.GOTO, line, label=name, text=f"goto {name}")

        if word == "else":
            self.advance()
            self.warn("StrayElse", "'else' without a matching 'if'", tok)
            return self.sub_statement(tok)

        if tok.kind is TokenKind.IDENTIFIER and _is(self.peek(1), ":"):
            self.advance()
            self.advance()
            return Statement(StatementKind.LABEL, line, label=tok.text, text=f"{tok.text}:")

        toks = self.skip_to_semicolon()
        if not toks:
            # stray ")" or "]": swallow it so parsing progresses
            toks = [self.advance()]
            self.warn("UnexpectedToken", f"unexpected '{toks[0].text}'", toks[0])
        return Statement(StatementKind.SIMPLE, line, text=_join(toks))


def parse_body(toks: list[Token], diagnostics: list[Diagnostic] | None = None) -> list[Statement]:
    """Parse an already brace-balanced token run into statements."""
    return _BodyParser(toks, diagnostics if diagnostics is not None else []).sequence(in_block=False)


def _function_header(toks: list[Token], brace: int) -> tuple[str, int] | None:
    """If the '{' at ``brace`` opens a function body, return (name, name index)."""
    if brace == 0 or not _is(toks[brace - 1], ")"):
        return None
    open_ = _match_backward(toks, brace - 1, "(", ")")
    if open_ is None or open_ == 0:
        return None
    name = toks[open_ - 1]
    if name.kind is not TokenKind.IDENTIFIER:
        return None
    return name.text, open_ - 1


def parse_functions(tokens: list[Token], diagnostics: list[Diagnostic] | None = None) -> list[FunctionUnit]:
    """Find function definitions and parse each body.

    A top-level ``{`` directly after ``name(...)`` opens a function. Code
    outside functions is ignored; when the input has no function definition
    at all, the whole token stream becomes one anonymous unit.
    """
    if diagnostics is None:
        diagnostics = []
    toks = significant(tokens)
    units: list[FunctionUnit] = []
    saw_function = False
    balanced = True
    boundary = 0  # first token after the previous top-level declaration/definition
    i = 0
    while i < len(toks):
        tok = toks[i]
        if _is(tok, "{"):
            close = _match_forward(toks, i, "{", "}")
            if close is None:
                diagnostics.append(
                    Diagnostic("UnbalancedBraces", "'{' is never closed", tok.line, tok.column)
                )
                balanced = False
                if _function_header(toks, i):
                    saw_function = True
                break
            header = _function_header(toks, i)
            if header is not None:
                saw_function = True
                name, _ = header
                body = toks[i + 1 : close]
                unit = _make_unit(name, body, toks[boundary].line, toks[close].line, diagnostics)
                if unit is not None:
                    units.append(unit)
            i = close + 1
            if header is not None:
                boundary = i
            continue
        if _is(tok, "}"):
            diagnostics.append(
                Diagnostic("UnbalancedBraces", "'}' has no matching '{'", tok.line, tok.column)
            )
            balanced = False
            boundary = i + 1
        elif _is(tok, ";"):
            boundary = i + 1
        i += 1

    if not saw_function and balanced:
        span = (toks[0].line, toks[-1].end_line) if toks else (1, 0)
        unit = _make_unit("<anonymous>", toks, span[0], span[1], diagnostics, anonymous=True)
        if unit is not None:
            units.append(unit)
    return units


def _make_unit(
    name: str,
    body: list[Token],
    first_line: int,
    last_line: int,
    diagnostics: list[Diagnostic],
    anonymous: bool = False,
) -> FunctionUnit | None:
    try:
        stmts = parse_body(body, diagnostics)
    except UnbalancedBraces as exc:
        diagnostics.append(
            Diagnostic("UnbalancedBraces", f"{exc}; skipping '{name}'", exc.token.line, exc.token.column)
        )
        return None
    return FunctionUnit(name, stmts, (first_line, last_line), body, anonymous)

"""Line-of-code counts: physical, source, comment, blank, logical, and Jones's modes.

Lines are classified from lexer tokens rather than by pattern matching, so a
``//`` inside a string literal is code and a blank line inside a block
comment is a comment line.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from swmetrics.lexer import Token, TokenKind, tokenize


class JonesMode(enum.Enum):
    EXECUTABLE_ONLY = "ExecutableOnly"
    EXECUTABLE_AND_DATA = "ExecutableAndData"
    EXECUTABLE_COMMENTS_DATA = "ExecutableCommentsData"
    EXECUTABLE_COMMENTS_DATA_JCL = "ExecutableCommentsDataJcl"
    PHYSICAL_INPUT_LINES = "PhysicalInputLines"
    LOGICAL_TERMINATED = "LogicalTerminated"


@dataclass
class LocReport:
    ploc: int = 0
    sloc: int = 0
    cloc: int = 0
    scloc: int = 0
    bloc: int = 0
    lloc: int = 0
    jones_mode_counts: dict[JonesMode, int] = field(default_factory=dict)

    @property
    def code_only(self) -> int:
        return self.sloc - self.scloc

    @property
    def comment_only(self) -> int:
        return self.cloc - self.scloc


TYPE_KEYWORDS = frozenset(
    """int char float double long short unsigned signed struct union enum
    typedef static extern const void""".split()
)
CONTROL_KEYWORDS = frozenset("if else for while do switch case default".split())
_ASSIGN_OPS = frozenset("= += -= *= /= %= &= |= ^= <<= >>=".split())
# A "{" after one of these opens a statement block rather than an initializer or aggregate body.
_BLOCK_OPENERS = frozenset(") else do ; { } :".split())


def physical_line_count(source: str) -> int:
    if not source:
        return 0
    return source.count("\n") + (0 if source.endswith("\n") else 1)


class LineTable:
    """Per-line classification of one source text.

    Built once per file; ``report(first, last)`` then counts any line range,
    which is how per-function LOC is obtained.
    """

    def __init__(self, source: str, tokens: list[Token] | None = None):
        self.ploc = physical_line_count(source)
        if tokens is None:
            tokens = tokenize(source)
        size = self.ploc + 2
        self.code = [False] * size
        self.comment = [False] * size
        self.logical = [0] * size
        self.declaration = [False] * size
        self._classify(tokens)

    def _classify(self, tokens: list[Token]) -> None:
        code_tokens: list[Token] = []
        for tok in tokens:
            if tok.kind is TokenKind.EOF:
                continue
            last = min(tok.end_line, self.ploc)
            flags = self.comment if tok.kind is TokenKind.COMMENT else self.code
            for ln in range(tok.line, last + 1):
                flags[ln] = True
            if tok.kind not in (TokenKind.COMMENT, TokenKind.DIRECTIVE):
                code_tokens.append(tok)
        self._count_logical(code_tokens)
        self._mark_declarations(code_tokens)

    def _count_logical(self, toks: list[Token]) -> None:
        paren = 0
        pending_do: list[int] = []  # brace depths of "do" bodies awaiting their "while"
        braces = 0
        prev: Token | None = None
        for tok in toks:
            text = tok.text
            is_punct = tok.kind is TokenKind.PUNCTUATOR
            if is_punct and text == "(":
                paren += 1
            elif is_punct and text == ")":
                paren = max(paren - 1, 0)
            elif is_punct and text == ";" and paren == 0:
                self.logical[tok.line] += 1
            elif is_punct and text == "{":
                if prev is None or prev.text in _BLOCK_OPENERS:
                    self.logical[tok.line] += 1
                braces += 1
            elif is_punct and text == "}":
                braces = max(braces - 1, 0)
            elif tok.kind is TokenKind.KEYWORD and text in CONTROL_KEYWORDS:
                if text == "do":
                    pending_do.append(braces)
                    self.logical[tok.line] += 1
                elif (
                    text == "while"
                    and pending_do
                    and pending_do[-1] == braces
                    and prev is not None
                    and prev.text in ("}", ";")
                ):
                    pending_do.pop()  # tail of do-while; its ";" is the logical line
                else:
                    self.logical[tok.line] += 1
            prev = tok

    def _mark_declarations(self, toks: list[Token]) -> None:
        by_line: dict[int, list[Token]] = {}
        for tok in toks:
            by_line.setdefault(tok.line, []).append(tok)
        declared: set[str] = set()
        for ln in sorted(by_line):
            line_toks = by_line[ln]
            if line_toks[0].text not in TYPE_KEYWORDS or line_toks[0].kind is not TokenKind.KEYWORD:
                continue
            names: set[str] = set()
            assigns_existing = False
            for i, tok in enumerate(line_toks):
                if tok.kind is not TokenKind.IDENTIFIER:
                    continue
                nxt = line_toks[i + 1].text if i + 1 < len(line_toks) else ""
                if nxt in _ASSIGN_OPS and tok.text in declared and tok.text not in names:
                    assigns_existing = True
                if nxt in ("=", ";", ",", "[", ")"):
                    names.add(tok.text)
            declared |= names
            self.declaration[ln] = not assigns_existing

    def report(self, first: int = 1, last: int | None = None) -> LocReport:
        if last is None:
            last = self.ploc
        first = max(first, 1)
        last = min(last, self.ploc)
        rep = LocReport()
        decl = 0
        for ln in range(first, last + 1):
            code, comment = self.code[ln], self.comment[ln]
            rep.ploc += 1
            rep.sloc += code
            rep.cloc += comment
            rep.scloc += code and comment
            rep.bloc += not (code or comment)
            rep.lloc += self.logical[ln]
            decl += code and self.declaration[ln]
        comment_only = rep.cloc - rep.scloc
        rep.jones_mode_counts = {
            JonesMode.EXECUTABLE_ONLY: rep.sloc - decl,
            JonesMode.EXECUTABLE_AND_DATA: rep.sloc,
            JonesMode.EXECUTABLE_COMMENTS_DATA: rep.sloc + comment_only,
            JonesMode.EXECUTABLE_COMMENTS_DATA_JCL: rep.sloc + comment_only,
            JonesMode.PHYSICAL_INPUT_LINES: rep.ploc,
            JonesMode.LOGICAL_TERMINATED: rep.lloc,
        }
        return rep


def count_loc(source: str) -> LocReport:
    """Count every LOC variant of ``source``.

    >>> r = count_loc("x = 1; // set\\n\\n/* note */\\n")
    >>> (r.ploc, r.sloc, r.cloc, r.scloc, r.bloc, r.lloc)
    (3, 1, 2, 1, 1, 1)
    """
    return LineTable(source).report()


def count_jones(source: str, mode: JonesMode) -> int:
    return count_loc(source).jones_mode_counts[mode]

"""Halstead operator/operand counting and the derived measures."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from swmetrics.errors import Diagnostic, MetricsError
from swmetrics.lexer import Token, TokenKind, tokenize

STROUD_NUMBER = 18

_IGNORED = (TokenKind.COMMENT, TokenKind.DIRECTIVE, TokenKind.EOF)
_OPERAND_KINDS = (TokenKind.NUMBER, TokenKind.STRING, TokenKind.CHAR)


class EmptyProgram(MetricsError):
    """Raised when there are no operators or no operands to measure."""


@dataclass
class HalsteadCounts:
    operator_table: Counter = field(default_factory=Counter)
    operand_table: Counter = field(default_factory=Counter)

    @property
    def n1(self) -> int:
        return len(self.operator_table)

    @property
    def n2(self) -> int:
        return len(self.operand_table)

    @property
    def N1(self) -> int:
        return sum(self.operator_table.values())

    @property
    def N2(self) -> int:
        return sum(self.operand_table.values())

    def __add__(self, other: HalsteadCounts) -> HalsteadCounts:
        return HalsteadCounts(
            self.operator_table + other.operator_table,
            self.operand_table + other.operand_table,
        )


@dataclass(frozen=True)
class HalsteadMeasures:
    vocabulary: int
    length: int
    volume: float
    difficulty: float
    level: float
    intelligence: float
    effort: float
    time: float


def classify(tokens: Iterable[Token]) -> HalsteadCounts:
    """Split tokens into Halstead operators and operands.

    Keywords, punctuators and identifiers used as call names (directly
    followed by ``(``) are operators; other identifiers and all literals are
    operands. Distinctness is by exact token text.
    """
    toks = [t for t in tokens if t.kind not in _IGNORED]
    counts = HalsteadCounts()
    for i, tok in enumerate(toks):
        if tok.kind in (TokenKind.KEYWORD, TokenKind.PUNCTUATOR):
            counts.operator_table[tok.text] += 1
        elif tok.kind is TokenKind.IDENTIFIER:
            nxt = toks[i + 1] if i + 1 < len(toks) else None
            if nxt is not None and nxt.kind is TokenKind.PUNCTUATOR and nxt.text == "(":
                counts.operator_table[tok.text] += 1
            else:
                counts.operand_table[tok.text] += 1
        elif tok.kind in _OPERAND_KINDS:
            counts.operand_table[tok.text] += 1
    return counts


def measures(counts: HalsteadCounts) -> HalsteadMeasures:
    n1, n2, N1, N2 = counts.n1, counts.n2, counts.N1, counts.N2
    if n1 == 0 or n2 == 0:
        raise EmptyProgram(f"cannot derive Halstead measures with n1={n1}, n2={n2}")
    n = n1 + n2
    N = N1 + N2
    volume = N * math.log2(n)
    difficulty = (n1 / 2) * (N2 / n2)
    level = (2 * n2) / (n1 * N2)
    effort = difficulty * volume
    return HalsteadMeasures(
        vocabulary=n,
        length=N,
        volume=volume,
        difficulty=difficulty,
        level=level,
        intelligence=level * volume,
        effort=effort,
        time=effort / STROUD_NUMBER,
    )


def measure_source(source: str, diagnostics: list[Diagnostic] | None = None) -> HalsteadMeasures:
    return measures(classify(tokenize(source, diagnostics)))

"""Lossless tokenizer for a C89-like language.

Every character of the input ends up either inside a token or in the
whitespace between two tokens, so ``source[tok.offset:tok.offset + len(tok.text)]``
is always ``tok.text``. Malformed regions (unterminated strings or comments,
stray characters) are recorded as diagnostics and lexing carries on.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from swmetrics.errors import Diagnostic


class TokenKind(enum.Enum):
    IDENTIFIER = "Identifier"
    KEYWORD = "Keyword"
    NUMBER = "NumberLiteral"
    STRING = "StringLiteral"
    CHAR = "CharLiteral"
    PUNCTUATOR = "Punctuator"
    COMMENT = "Comment"
    DIRECTIVE = "PreprocessorDirective"
    EOF = "EndOfInput"


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int
    offset: int = 0

    @property
    def end(self) -> int:
        return self.offset + len(self.text)

    @property
    def end_line(self) -> int:
        """Physical line holding the last character of the token."""
        return self.line + self.text.count("\n")

    def __repr__(self) -> str:
        return f"Token({self.kind.value}, {self.text!r}, {self.line}:{self.column})"


C89_KEYWORDS = frozenset(
    """auto break case char const continue default do double else enum extern
    float for goto if int long register return short signed sizeof static struct
    switch typedef union unsigned void volatile while""".split()
)
KEYWORDS = C89_KEYWORDS | {"and", "or"}

# Longest first so the alternation is a longest match.
PUNCTUATORS = sorted(
    """... <<= >>= -> ++ -- << >> <= >= == != && || *= /= %= += -= &= ^= |= ##
    [ ] ( ) { } . & * + - ~ ! / % < > ^ | ? : ; = , #""".split(),
    key=len,
    reverse=True,
)

_PUNCT_RE = re.compile("|".join(re.escape(p) for p in PUNCTUATORS))
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
# C preprocessing-number: greedy, so "1.5e-3f" or "0x1Fu" is one token.
_NUMBER_RE = re.compile(r"\.?[0-9](?:[eEpP][+-]|[0-9A-Za-z_.])*")
_WS = " \t\r\n\f\v"


class _Scanner:
    def __init__(self, source: str, diagnostics: list[Diagnostic] | None):
        self.src = source
        self.pos = 0
        self.line = 1
        self.line_start = 0
        self.tokens: list[Token] = []
        self.diagnostics = diagnostics if diagnostics is not None else []
        self.at_line_start = True  # only whitespace seen since the last newline

    def column(self, pos: int) -> int:
        return pos - self.line_start + 1

    def emit(self, kind: TokenKind, start: int, end: int, line: int, column: int) -> None:
        text = self.src[start:end]
        self.tokens.append(Token(kind, text, line, column, start))
        newlines = text.count("\n")
        if newlines:
            self.line += newlines
            self.line_start = start + text.rfind("\n") + 1
        self.pos = end
        self.at_line_start = False

    def report(self, code: str, message: str, line: int, column: int) -> None:
        self.diagnostics.append(Diagnostic(code, message, line, column))

    def skip_whitespace(self) -> None:
        src = self.src
        while self.pos < len(src) and src[self.pos] in _WS:
            if src[self.pos] == "\n":
                self.line += 1
                self.line_start = self.pos + 1
                self.at_line_start = True
            self.pos += 1

    def _line_end(self, pos: int) -> int:
        """Offset of the newline ending the line at ``pos`` (CR of a CRLF excluded)."""
        nl = self.src.find("\n", pos)
        if nl == -1:
            return len(self.src)
        if nl > pos and self.src[nl - 1] == "\r":
            return nl - 1
        return nl

    def _continued_line_end(self, pos: int) -> int:
        """Like _line_end but follows backslash-newline continuations."""
        src = self.src
        while True:
            end = self._line_end(pos)
            if end < len(src) and end > 0 and src[end - 1] == "\\":
                pos = src.find("\n", end) + 1
                continue
            return end

    def scan_block_comment(self, start: int) -> int:
        close = self.src.find("*/", start + 2)
        if close == -1:
            self.report("UnterminatedComment", "block comment runs to end of input",
                        self.line, self.column(start))
            return len(self.src)
        return close + 2

    def scan_quoted(self, start: int, quote: str) -> int:
        """Return the end offset of a string/char literal whose opening quote is at ``start``."""
        src = self.src
        i = start + 1
        while i < len(src):
            ch = src[i]
            if ch == "\\":
                i += 3 if src.startswith("\r\n", i + 1) else 2
            elif ch == quote:
                return i + 1
            elif ch == "\n":
                break
            else:
                i += 1
        end = min(i, len(src))
        if end > start + 1 and src[end - 1] == "\r":
            end -= 1
        code = "UnterminatedString" if quote == '"' else "UnterminatedChar"
        what = "string" if quote == '"' else "character"
        self.report(code, f"{what} literal not closed before end of line",
                    self.line, self.column(start))
        return end

    def scan_directive(self, start: int) -> int:
        src = self.src
        i = start + 1
        while i < len(src):
            ch = src[i]
            if ch == "\n":
                if src[i - 1] == "\\" or src[i - 2:i] == "\\\r":
                    i += 1
                    continue
                break
            if src.startswith("/*", i):
                i = self.scan_block_comment(i)
                continue
            if ch in "\"'":
                close = i + 1
                while close < len(src) and src[close] not in (ch, "\n"):
                    close += 2 if src[close] == "\\" else 1
                i = close + 1 if close < len(src) and src[close] == ch else close
                continue
            i += 1
        end = min(i, len(src))
        if end > start and src[end - 1] == "\r":
            end -= 1
        return end

    def run(self) -> list[Token]:
        src = self.src
        n = len(src)
        while True:
            self.skip_whitespace()
            if self.pos >= n:
                break
            start, line, col = self.pos, self.line, self.column(self.pos)
            ch = src[start]

            if ch == "#" and self.at_line_start:
                self.emit(TokenKind.DIRECTIVE, start, self.scan_directive(start), line, col)
            elif src.startswith("//", start):
                self.emit(TokenKind.COMMENT, start, self._continued_line_end(start), line, col)
            elif src.startswith("/*", start):
                self.emit(TokenKind.COMMENT, start, self.scan_block_comment(start), line, col)
            elif ch == '"' or (ch == "L" and src.startswith('"', start + 1)):
                q = start + 1 if ch == "L" else start
                self.emit(TokenKind.STRING, start, self.scan_quoted(q, '"'), line, col)
            elif ch == "'" or (ch == "L" and src.startswith("'", start + 1)):
                q = start + 1 if ch == "L" else start
                self.emit(TokenKind.CHAR, start, self.scan_quoted(q, "'"), line, col)
            elif m := _NUMBER_RE.match(src, start):
                self.emit(TokenKind.NUMBER, start, m.end(), line, col)
            elif m := _IDENT_RE.match(src, start):
                kind = TokenKind.KEYWORD if m.group() in KEYWORDS else TokenKind.IDENTIFIER
                self.emit(kind, start, m.end(), line, col)
            elif m := _PUNCT_RE.match(src, start):
                self.emit(TokenKind.PUNCTUATOR, start, m.end(), line, col)
            else:
                self.report("UnexpectedCharacter", f"unexpected character {ch!r}", line, col)
                self.emit(TokenKind.PUNCTUATOR, start, start + 1, line, col)

        self.tokens.append(Token(TokenKind.EOF, "", self.line, self.column(self.pos), self.pos))
        return self.tokens


def tokenize(source: str, diagnostics: list[Diagnostic] | None = None) -> list[Token]:
    """Split ``source`` into tokens, ending with a single EOF token.

    Problems are appended to ``diagnostics`` when a list is supplied; the
    function itself never raises on malformed input.
    """
    return _Scanner(source, diagnostics).run()


def significant(tokens: list[Token]) -> list[Token]:
    """Drop comments, preprocessor directives and the EOF marker."""
    skip = (TokenKind.COMMENT, TokenKind.DIRECTIVE, TokenKind.EOF)
    return [t for t in tokens if t.kind not in skip]

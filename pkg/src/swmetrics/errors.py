"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class MetricsError(Exception):
    """Base class for every error raised by swmetrics."""


@dataclass(frozen=True)
class Diagnostic:
    """A non-fatal problem found while lexing or parsing."""

    code: str
    message: str
    line: int
    column: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.code}: {self.message}"

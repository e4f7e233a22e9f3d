"""Pearson correlation and ordinary least squares for paired metric series.

Both use two-pass centered sums with a fixed left-to-right summation order,
so results are reproducible bit-for-bit and stay accurate for series with
large means (Halstead volumes run into the thousands).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from swmetrics.errors import MetricsError


class StatsError(MetricsError):
    pass


class LengthMismatch(StatsError):
    pass


class InsufficientData(StatsError):
    pass


class ZeroVariance(StatsError):
    pass


@dataclass(frozen=True)
class RegressionLine:
    slope: float
    intercept: float
    r: float
    r_squared: float
    n: int


def _moments(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float, float, float]:
    if len(xs) != len(ys):
        raise LengthMismatch(f"series lengths differ: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise InsufficientData(f"need at least 2 paired values, got {n}")
    for v in (*xs, *ys):
        if not math.isfinite(v):
            raise StatsError(f"non-finite value {v!r} in series")
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = syy = sxy = 0.0
    for x, y in zip(xs, ys):
        dx = x - mean_x
        dy = y - mean_y
        sxx += dx * dx
        syy += dy * dy
        sxy += dx * dy
    return mean_x, mean_y, sxx, syy, sxy


def _r(sxx: float, syy: float, sxy: float) -> float:
    r = sxy / (math.sqrt(sxx) * math.sqrt(syy))
    return max(-1.0, min(1.0, r))


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson product-moment correlation of two equal-length series.

    Raises ZeroVariance if either series is constant (r is undefined there).
    """
    _, _, sxx, syy, sxy = _moments(xs, ys)
    if sxx == 0.0 or syy == 0.0:
        raise ZeroVariance("correlation undefined: a series is constant")
    return _r(sxx, syy, sxy)


def regress(xs: Sequence[float], ys: Sequence[float]) -> RegressionLine:
    """Least-squares line ``y = slope * x + intercept`` with r and r**2 attached."""
    mean_x, mean_y, sxx, syy, sxy = _moments(xs, ys)
    if sxx == 0.0:
        raise ZeroVariance("regression undefined: x series is constant")
    if syy == 0.0:
        raise ZeroVariance("correlation undefined: y series is constant")
    slope = sxy / sxx
    r = _r(sxx, syy, sxy)
    return RegressionLine(slope, mean_y - slope * mean_x, r, r * r, len(xs))

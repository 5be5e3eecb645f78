"""Degree binning used for averaged curves."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# 0.5 * log 5 with natural log; pass LOG10_BIN_SCALE for the base-10 reading
DEFAULT_BIN_SCALE = 0.5 * math.log(5.0)
LOG10_BIN_SCALE = 0.5 * math.log10(5.0)


@dataclass(frozen=True)
class CurvePoint:
    bin_index: int
    x_low: float
    x_high: float
    mean: float
    count: int


def sqrt_log_bin(value: float, scale: float = DEFAULT_BIN_SCALE) -> int:
    """Index x >= 1 of the bin (scale*(x^2-x), scale*(x^2+x)] holding ``value``.

    Consecutive bins share endpoints, so the half-open intervals partition
    the positive axis. Values <= 0 are not binnable.
    """
    if value <= 0:
        raise ValueError("only positive values can be binned")
    if scale <= 0:
        raise ValueError("scale must be positive")
    x = max(1, math.ceil((-1.0 + math.sqrt(1.0 + 4.0 * value / scale)) / 2.0))
    # correct any rounding in the closed form against the exact bounds
    while value > scale * (x * x + x):
        x += 1
    while x > 1 and value <= scale * ((x - 1) * (x - 1) + (x - 1)):
        x -= 1
    return x


def bin_bounds(x: int, scale: float = DEFAULT_BIN_SCALE) -> tuple[float, float]:
    return scale * (x * x - x), scale * (x * x + x)


def sqrt_log_binned_mean(xs, ys, scale: float = DEFAULT_BIN_SCALE) -> list[CurvePoint]:
    """Average ``ys`` over square-root-log bins of ``xs``; empty bins are omitted.

    Sums use math.fsum in input order, so the result does not depend on
    how the caller's arrays were accumulated.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    bins: dict[int, list[float]] = {}
    for x, y in zip(xs.tolist(), ys.tolist()):
        bins.setdefault(sqrt_log_bin(x, scale), []).append(y)
    points = []
    for b in sorted(bins):
        vals = bins[b]
        lo, hi = bin_bounds(b, scale)
        points.append(CurvePoint(b, lo, hi, math.fsum(vals) / len(vals), len(vals)))
    return points


def integer_mean(xs, ys) -> list[CurvePoint]:
    """Average ``ys`` over users sharing the same integer ``xs`` value."""
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=float)
    points = []
    for v in np.unique(xs).tolist():
        vals = ys[xs == v].tolist()
        points.append(CurvePoint(int(v), float(v), float(v), math.fsum(vals) / len(vals), len(vals)))
    return points

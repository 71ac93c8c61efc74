"""Inequality and agreement statistics for allocation vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from .errors import ConstantVectorError, ZeroTotalError


def _as_shares(x: Sequence[float]) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("expected a nonempty 1-d vector")
    if not np.all(np.isfinite(x)) or np.any(x < 0.0):
        raise ValueError("shares must be finite and nonnegative")
    return x


def gini(x: Sequence[float]) -> float:
    """Mean absolute difference Gini index, in [0, 1).

    ``G = sum_ij |x_i - x_j| / (2 n sum_i x_i)``; no small-sample
    correction is applied.
    """
    x = _as_shares(x)
    total = float(x.sum())
    if total <= 0.0:
        raise ZeroTotalError("gini requires a positive total")
    diffs = float(np.abs(x[:, None] - x[None, :]).sum())
    return diffs / (2.0 * len(x) * total)


@dataclass(frozen=True)
class LorenzCurve:
    """Cumulative-share curve over the ascending-sorted allocation.

    ``points[k] = (k/n, share of the total held by the k poorest segments)``
    for k = 0..n.
    """

    points: tuple[tuple[float, float], ...]

    @property
    def area(self) -> float:
        """Trapezoid area under the curve."""
        p = np.array(self.points)
        return float(np.trapezoid(p[:, 1], p[:, 0]))

    def gini_estimate(self) -> float:
        """1 - 2 * area; agrees with :func:`gini` up to the 1/n grid."""
        return 1.0 - 2.0 * self.area


def lorenz(x: Sequence[float]) -> LorenzCurve:
    x = _as_shares(x)
    total = float(x.sum())
    if total <= 0.0:
        raise ZeroTotalError("a Lorenz curve requires a positive total")
    ordered = np.sort(x)
    cum = np.concatenate([[0.0], np.cumsum(ordered)]) / total
    n = len(x)
    return LorenzCurve(tuple((k / n, float(cum[k])) for k in range(n + 1)))


def rank_correlations(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """(Spearman, Pearson) between two allocations.

    Spearman uses average ranks for ties.  Raises
    :class:`ConstantVectorError` when either vector is constant.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or len(x) < 2:
        raise ValueError("expected two equal-length vectors of length >= 2")
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise ConstantVectorError("correlation is undefined for a constant vector")
    spearman = float(stats.spearmanr(x, y).statistic)
    pearson = float(stats.pearsonr(x, y).statistic)
    return spearman, pearson


@dataclass(frozen=True)
class Ranking:
    """Segments ordered by share, descending; ties break on segment index."""

    order: tuple[int, ...]
    top: tuple[int, ...]
    bottom: tuple[int, ...]


def ranking(x: Sequence[float], top: int = 3, bottom: int = 3) -> Ranking:
    """Top and bottom segments of an allocation.

    ``bottom`` segments are reported in descending-share order, i.e. as the
    final positions of the full ranking.
    """
    x = _as_shares(x)
    order = tuple(sorted(range(1, len(x) + 1), key=lambda i: (-x[i - 1], i)))
    return Ranking(order, order[:top], order[len(x) - bottom :])

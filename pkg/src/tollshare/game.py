"""Coalition-value view of a toll problem and brute-force solution oracles.

A coalition of segments is worth the tolls of the trips it fully contains.
Because trips are contiguous, a coalition's worth decomposes over its maximal
contiguous blocks, which is what makes the interval-based core test below
sufficient for nonnegative allocations.

The Shapley, compromise (tau) and average-tree solutions are computed here by
exhaustive enumeration on purpose: they serve as independent cross-checks of
the closed-form allocation methods, so they must not share code with them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    LengthMismatchError,
    OracleSizeError,
    SegmentIndexError,
    TauUndefinedError,
)
from .methods import WeightScheme, sps_decomposition
from .model import DEFAULT_TOL, TollMatrix

#: Largest segment count for which full-subset enumeration is allowed.
EXHAUSTIVE_LIMIT = 16


class SegmentsGame:
    """Characteristic function derived from a toll matrix.

    ``value(S)`` is the total toll of trips whose whole path lies in ``S``.
    Coalition values are memoized; the cache is fill-or-read with idempotent
    writes, so concurrent readers need no extra locking under CPython.
    """

    def __init__(self, matrix: TollMatrix):
        self.matrix = matrix
        self.n = matrix.n
        n = matrix.n
        dense = np.zeros((n + 2, n + 2))
        for (h, k), t in matrix.trips():
            dense[h, k] = t
        # interval[a, b] = total toll of trips inside [a, b]; 0 when a > b
        interval = np.zeros((n + 2, n + 2))
        for a in range(n, 0, -1):
            for b in range(a, n + 1):
                interval[a, b] = (
                    interval[a + 1, b] + interval[a, b - 1] - interval[a + 1, b - 1] + dense[a, b]
                )
        self._interval = interval
        self._mask_cache: dict[int, float] = {}
        self._mask_values: np.ndarray | None = None

    @property
    def grand_value(self) -> float:
        return float(self._interval[1, self.n])

    def interval_value(self, start: int, end: int) -> float:
        """Worth of the contiguous coalition ``start..end`` (0 when empty)."""
        if start > end:
            return 0.0
        if not (1 <= start and end <= self.n):
            raise SegmentIndexError(f"interval [{start},{end}] out of range 1..{self.n}")
        return float(self._interval[start, end])

    def value(self, coalition: Iterable[int]) -> float:
        """Worth of an arbitrary coalition of 1-based segments."""
        mask = 0
        for i in coalition:
            if not (1 <= i <= self.n):
                raise SegmentIndexError(f"segment {i} out of range 1..{self.n}")
            mask |= 1 << (i - 1)
        return self.value_mask(mask)

    def value_mask(self, mask: int) -> float:
        cached = self._mask_cache.get(mask)
        if cached is not None:
            return cached
        value = 0.0
        m = mask
        while m:
            low = (m & -m).bit_length() - 1
            end = low
            while (m >> (end + 1)) & 1:
                end += 1
            value += self._interval[low + 1, end + 1]
            m &= ~((1 << (end + 1)) - 1)
        self._mask_cache[mask] = value
        return value

    def mask_values(self) -> np.ndarray:
        """Worths of all ``2^n`` coalitions, indexed by membership bitmask."""
        if self._mask_values is None:
            size = 1 << self.n
            values = np.zeros(size)
            interval = self._interval
            for m in range(1, size):
                low = (m & -m).bit_length() - 1
                end = low
                while (m >> (end + 1)) & 1:
                    end += 1
                rest = m & ~((1 << (end + 1)) - 1)
                values[m] = interval[low + 1, end + 1] + values[rest]
            self._mask_values = values
        return self._mask_values


def game_from(matrix: TollMatrix) -> SegmentsGame:
    return SegmentsGame(matrix)


def _require_small(game: SegmentsGame, limit: int) -> None:
    if game.n > limit:
        raise OracleSizeError(game.n, limit)


def shapley_value(game: SegmentsGame, limit: int = EXHAUSTIVE_LIMIT) -> np.ndarray:
    """Exact Shapley value by full subset enumeration.

    Every coalition S not containing player i contributes its marginal
    ``v(S + i) - v(S)`` with weight ``|S|! (n - |S| - 1)! / n!``.
    """
    _require_small(game, limit)
    n = game.n
    values = game.mask_values()
    size = 1 << n
    masks = np.arange(size)
    popcount = np.fromiter((m.bit_count() for m in range(size)), dtype=np.int64, count=size)
    fact = [1.0] * (n + 1)
    for s in range(1, n + 1):
        fact[s] = fact[s - 1] * s
    coeff = np.array([fact[s] * fact[n - s - 1] / fact[n] for s in range(n)])
    shapley = np.zeros(n)
    for i in range(n):
        bit = 1 << i
        without = masks[(masks & bit) == 0]
        gains = values[without | bit] - values[without]
        shapley[i] = float(np.dot(coeff[popcount[without]], gains))
    return shapley


@dataclass(frozen=True)
class CompromiseBounds:
    """Per-player utopia payoffs and minimal rights, plus the efficiency mix.

    ``alpha`` is ``None`` when the two bounds coincide in aggregate.
    """

    utopia: np.ndarray
    minimal_rights: np.ndarray
    alpha: float | None


def compromise_bounds(
    game: SegmentsGame,
    limit: int = EXHAUSTIVE_LIMIT,
    tol: float = DEFAULT_TOL,
) -> CompromiseBounds:
    """Utopia vector M and minimal-rights vector m by full enumeration.

    ``M_i = v(N) - v(N without i)``; ``m_i`` maximizes, over all coalitions S
    containing i, what S can offer i after paying everyone else their utopia
    payoff.
    """
    _require_small(game, limit)
    n = game.n
    values = game.mask_values()
    full = (1 << n) - 1
    grand = values[full]
    utopia = np.array([grand - values[full & ~(1 << i)] for i in range(n)])
    size = 1 << n
    utopia_sum = np.zeros(size)
    for m in range(1, size):
        low = (m & -m).bit_length() - 1
        utopia_sum[m] = utopia_sum[m & (m - 1)] + utopia[low]
    masks = np.arange(size)
    slack = values - utopia_sum
    rights = np.empty(n)
    for i in range(n):
        bit = 1 << i
        containing = masks[(masks & bit) != 0]
        rights[i] = float(slack[containing].max()) + utopia[i]
    denom = float(utopia.sum() - rights.sum())
    scale = max(1.0, abs(grand))
    alpha = None
    if abs(denom) > tol * scale:
        alpha = (grand - float(rights.sum())) / denom
    return CompromiseBounds(utopia, rights, alpha)


def tau_value(
    game: SegmentsGame,
    limit: int = EXHAUSTIVE_LIMIT,
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Compromise value: the efficient convex mix of minimal rights and
    utopia payoffs.  Raises :class:`TauUndefinedError` when the bounds
    coincide but are not efficient."""
    bounds = compromise_bounds(game, limit=limit, tol=tol)
    grand = game.grand_value
    if bounds.alpha is None:
        gap = abs(float(bounds.minimal_rights.sum()) - grand)
        if gap <= tol * max(1.0, abs(grand)):
            return bounds.minimal_rights.copy()
        raise TauUndefinedError(
            f"bounds coincide but miss the grand value by {gap:g}"
        )
    return bounds.minimal_rights + bounds.alpha * (bounds.utopia - bounds.minimal_rights)


def average_tree_value(game: SegmentsGame) -> np.ndarray:
    """Average-tree solution specialized to the line graph of segments.

    For player i with left block L = 1..i-1 and right block R = i+1..n, the
    n rooted trees contribute (i-1) marginals against R, one residual term,
    and (n-i) marginals against L, averaged over n.
    """
    n = game.n
    grand = game.grand_value
    at = np.empty(n)
    for i in range(1, n + 1):
        left = game.interval_value(1, i - 1)
        right = game.interval_value(i + 1, n)
        join_right = game.interval_value(i, n)
        join_left = game.interval_value(1, i)
        at[i - 1] = (
            (i - 1) * (join_right - right)
            + (grand - left - right)
            + (n - i) * (join_left - left)
        ) / n
    return at


# -- core membership --------------------------------------------------------

@dataclass(frozen=True)
class IntervalViolation:
    start: int
    end: int
    value: float
    allocated: float
    deficit: float


@dataclass(frozen=True)
class CoreReport:
    """Outcome of a core-membership test for one allocation."""

    is_member: bool
    efficient: bool
    efficiency_gap: float
    violations: tuple[IntervalViolation, ...]

    def to_json_dict(self) -> dict:
        return {
            "is_member": self.is_member,
            "efficient": self.efficient,
            "efficiency_gap": self.efficiency_gap,
            "violations": [
                {
                    "interval": [v.start, v.end],
                    "value": v.value,
                    "allocated": v.allocated,
                    "deficit": v.deficit,
                }
                for v in self.violations
            ],
        }


def _check_shares(game: SegmentsGame, shares: Sequence[float]) -> np.ndarray:
    x = np.asarray(shares, dtype=float)
    if x.ndim != 1 or len(x) != game.n:
        raise LengthMismatchError(game.n, int(x.size))
    if not np.all(np.isfinite(x)) or np.any(x < 0.0):
        raise ValueError("allocation must be a finite nonnegative vector")
    return x


def core_check(
    game: SegmentsGame,
    shares: Sequence[float],
    tol: float = DEFAULT_TOL,
) -> CoreReport:
    """Interval-based core test.

    Checks efficiency plus the stability inequality on every contiguous
    coalition.  For this game class, a nonnegative allocation that satisfies
    all interval inequalities satisfies them for arbitrary coalitions too,
    because a coalition's worth is the sum over its contiguous blocks while
    its allocated total only grows with extra members.
    """
    x = _check_shares(game, shares)
    scale = max(1.0, abs(game.grand_value))
    slack = tol * scale
    prefix = np.concatenate([[0.0], np.cumsum(x)])
    gap = float(prefix[game.n] - game.grand_value)
    efficient = abs(gap) <= slack
    violations = []
    for start in range(1, game.n + 1):
        for end in range(start, game.n + 1):
            if start == 1 and end == game.n:
                continue
            worth = game.interval_value(start, end)
            allocated = float(prefix[end] - prefix[start - 1])
            if allocated < worth - slack:
                violations.append(
                    IntervalViolation(start, end, worth, allocated, worth - allocated)
                )
    return CoreReport(
        is_member=efficient and not violations,
        efficient=efficient,
        efficiency_gap=gap,
        violations=tuple(violations),
    )


def core_check_exhaustive(
    game: SegmentsGame,
    shares: Sequence[float],
    tol: float = DEFAULT_TOL,
    limit: int = EXHAUSTIVE_LIMIT,
) -> tuple[bool, list[tuple[int, ...]]]:
    """Full ``2^n`` core test; a cross-check for :func:`core_check`.

    Returns membership plus the violating coalitions as member tuples.
    """
    _require_small(game, limit)
    x = _check_shares(game, shares)
    values = game.mask_values()
    scale = max(1.0, abs(game.grand_value))
    slack = tol * scale
    full = (1 << game.n) - 1
    efficient = abs(float(x.sum()) - game.grand_value) <= slack
    violating: list[tuple[int, ...]] = []
    for mask in range(1, full):
        allocated = 0.0
        m = mask
        while m:
            low = (m & -m).bit_length() - 1
            allocated += x[low]
            m &= m - 1
        if allocated < values[mask] - slack:
            violating.append(tuple(i + 1 for i in range(game.n) if mask >> i & 1))
    return efficient and not violating, violating


@dataclass(frozen=True)
class SpsCoreCriterion:
    """Closed-form test of whether the proportional method is stable.

    The proportional allocation lies in the core exactly when ``beta`` is at
    least the worst ratio of an interval's uncovered worth to its pooled
    involvement; ``worst_interval`` attains ``rhs_max``.
    """

    satisfied: bool
    worst_interval: tuple[int, int] | None
    rhs_max: float | None
    beta: float | None


def sps_core_criterion(matrix: TollMatrix, tol: float = DEFAULT_TOL) -> SpsCoreCriterion:
    d = sps_decomposition(matrix)
    if d.beta is None:
        return SpsCoreCriterion(True, None, None, None)
    game = SegmentsGame(matrix)
    prefix_sep = np.concatenate([[0.0], np.cumsum(d.separable)])
    prefix_ns = np.concatenate([[0.0], np.cumsum(d.nonseparable)])
    worst: tuple[int, int] | None = None
    rhs_max: float | None = None
    for start in range(1, matrix.n + 1):
        for end in range(start, matrix.n + 1):
            if start == 1 and end == matrix.n:
                continue
            denom = float(prefix_ns[end] - prefix_ns[start - 1])
            if denom <= 0.0:
                continue
            numer = game.interval_value(start, end) - float(
                prefix_sep[end] - prefix_sep[start - 1]
            )
            rhs = numer / denom
            if rhs_max is None or rhs > rhs_max:
                rhs_max, worst = rhs, (start, end)
    if rhs_max is None:
        return SpsCoreCriterion(True, None, None, d.beta)
    return SpsCoreCriterion(d.beta >= rhs_max - tol, worst, rhs_max, d.beta)


def core_scheme_check(scheme: WeightScheme, n: int, tol: float = DEFAULT_TOL) -> bool:
    """Certificate that every allocation of a weight scheme is stable.

    True exactly when the scheme ignores the toll matrix and its weights sum
    to 1 over every trip, so each trip's toll is fully handed out to the
    segments of that trip.
    """
    if not scheme.t_independent:
        return False
    weight = scheme.weights_for(TollMatrix.zero(n))
    for h in range(1, n + 1):
        for k in range(h, n + 1):
            total = sum(weight(h, k, i) for i in range(h, k + 1))
            if abs(total - 1.0) > tol:
                return False
    return True

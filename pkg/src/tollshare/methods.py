"""Toll allocation methods.

Three named methods are provided:

* ``ses`` (segments equal sharing): every trip's toll is split equally over
  the segments it uses.
* ``sps`` (segments proportional sharing): every segment keeps its own
  single-segment toll and receives a share of the pooled multi-segment
  revenue proportional to its involvement in it.
* ``scs`` (segments compensated sharing): a position-weighted split that
  compensates entry and exit segments according to where they sit on the
  highway.

All three are instances of a generic family: a weight scheme assigns a
nonnegative weight to every (trip, segment) pair, and a segment's share is
the weighted sum of the tolls of the trips through it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .errors import NegativeWeightError, UnknownMethodError, UnknownSchemeError
from .model import TollMatrix, is_unit_matrix

MethodFn = Callable[[TollMatrix], np.ndarray]


def ses(matrix: TollMatrix) -> np.ndarray:
    """Equal split: segment i receives sum over trips [h,k] containing i of
    ``t_hk / (k - h + 1)``."""
    shares = np.zeros(matrix.n)
    for (h, k), toll in matrix.trips():
        shares[h - 1 : k] += toll / (k - h + 1)
    return shares


@dataclass(frozen=True)
class SpsDecomposition:
    """Separable / non-separable revenue split behind the proportional method.

    ``separable[i]`` is the single-segment toll ``t_ii``;
    ``nonseparable[i]`` is the multi-segment revenue involving segment i;
    ``nonseparable_total`` is the pooled multi-segment revenue; ``beta`` is
    the proportionality coefficient, or ``None`` when there is no
    multi-segment revenue to share.
    """

    separable: np.ndarray
    nonseparable: np.ndarray
    nonseparable_total: float
    beta: float | None


def sps_decomposition(matrix: TollMatrix) -> SpsDecomposition:
    n = matrix.n
    separable = matrix.diagonal()
    involvement = np.zeros(n)
    for (h, k), toll in matrix.trips():
        involvement[h - 1 : k] += toll
    nonseparable = involvement - separable
    pooled = matrix.total - float(separable.sum())
    denom = float(nonseparable.sum())
    beta = pooled / denom if denom > 0.0 else None
    return SpsDecomposition(separable, nonseparable, pooled, beta)


def sps(matrix: TollMatrix) -> np.ndarray:
    """Proportional split: ``t_ii + beta * NS_i``.

    When every toll sits on a single-segment trip the pooled revenue is zero
    and the method degenerates to the diagonal itself.
    """
    d = sps_decomposition(matrix)
    if d.beta is None:
        return d.separable.copy()
    return d.separable + d.beta * d.nonseparable


def scs(matrix: TollMatrix) -> np.ndarray:
    """Compensated split.

    For a multi-segment trip [h,k] on an n-segment highway, the entry
    segment h weighs h/n, the exit segment k weighs (n-k+1)/n and every
    interior segment weighs 1/n; single-segment trips stay where they were
    collected.
    """
    n = matrix.n
    shares = np.zeros(n)
    for (h, k), toll in matrix.trips():
        if h == k:
            shares[h - 1] += toll
            continue
        shares[h - 1] += toll * h / n
        shares[k - 1] += toll * (n - k + 1) / n
        if k - h > 1:
            shares[h : k - 1] += toll / n
    return shares


# -- the generic weight-scheme family ---------------------------------------

#: Per-matrix weight function: (entry, exit, segment) -> weight.
WeightFn = Callable[[int, int, int], float]


@dataclass(frozen=True)
class WeightScheme:
    """A family member: nonnegative weights per (trip, segment) pair.

    ``t_independent`` declares that the weights do not depend on the toll
    matrix (only on its size).  ``factory`` builds the per-matrix weight
    function; binding once per matrix lets toll-dependent schemes compute
    their coefficients a single time.
    """

    name: str
    t_independent: bool
    factory: Callable[[TollMatrix], WeightFn]

    def weights_for(self, matrix: TollMatrix) -> WeightFn:
        return self.factory(matrix)

    def weight(self, matrix: TollMatrix, entry: int, exit: int, segment: int) -> float:
        if not (entry <= segment <= exit):
            raise NegativeWeightError(entry, exit, segment, float("nan"))
        return self.factory(matrix)(entry, exit, segment)


def _ses_weights(matrix: TollMatrix) -> WeightFn:
    return lambda h, k, i: 1.0 / (k - h + 1)


def _sps_weights(matrix: TollMatrix) -> WeightFn:
    beta = sps_decomposition(matrix).beta
    # beta is never consumed when there is no multi-segment toll to weight
    coeff = 0.0 if beta is None else beta

    def weight(h: int, k: int, i: int) -> float:
        return 1.0 if h == k else coeff

    return weight


def _scs_weights(matrix: TollMatrix) -> WeightFn:
    n = matrix.n

    def weight(h: int, k: int, i: int) -> float:
        if h == k:
            return 1.0
        if i == h:
            return i / n
        if i == k:
            return (n - i + 1) / n
        return 1.0 / n

    return weight


_SCHEMES: Mapping[str, WeightScheme] = {
    "ses": WeightScheme("ses", True, _ses_weights),
    "sps": WeightScheme("sps", False, _sps_weights),
    "scs": WeightScheme("scs", True, _scs_weights),
}


def builtin_scheme(name: str) -> WeightScheme:
    try:
        return _SCHEMES[name]
    except KeyError:
        raise UnknownSchemeError(name) from None


def family_allocate(matrix: TollMatrix, scheme: WeightScheme) -> np.ndarray:
    """Evaluate a family member: share_i = sum of weight * toll over the
    trips through segment i.

    The result is nonnegative by weight admissibility but is efficient only
    for schemes whose per-trip weights sum to 1.
    """
    weight = scheme.weights_for(matrix)
    shares = np.zeros(matrix.n)
    for (h, k), toll in matrix.trips():
        for i in range(h, k + 1):
            w = weight(h, k, i)
            if not (math.isfinite(w) and w >= 0.0):
                raise NegativeWeightError(h, k, i, w)
            shares[i - 1] += w * toll
    return shares


def share_percentages(shares: np.ndarray, total: float | None = None) -> np.ndarray:
    """Percent of the collected total per segment, half-even at 2 decimals."""
    shares = np.asarray(shares, dtype=float)
    if total is None:
        total = float(shares.sum())
    if total <= 0.0:
        return np.zeros_like(shares)
    return np.array([round(100.0 * s / total, 2) for s in shares])


# -- deliberately flawed methods --------------------------------------------
#
# Each method below satisfies all but one property of an axiom set; the
# independence harness in tollshare.axioms pins down which one fails.

def _involvement_sum(matrix: TollMatrix) -> np.ndarray:
    shares = np.zeros(matrix.n)
    for (h, k), toll in matrix.trips():
        shares[h - 1 : k] += toll
    return shares


# 2-segment problem whose diagonal gets swapped by the piecewise method below
_SWAP_TRIGGER = TollMatrix(2, {(1, 1): 1.0, (2, 2): 2.0})


def _swap_diag(matrix: TollMatrix) -> np.ndarray:
    if matrix == _SWAP_TRIGGER:
        return np.array([2.0, 1.0])
    return sps(matrix)


def _in_tilde_family(matrix: TollMatrix) -> bool:
    return (
        matrix.n == 3
        and matrix.toll(1, 2) == 0.0
        and matrix.toll(1, 3) == 0.0
        and matrix.toll(2, 3) > 0.0
    )


def _tilde(matrix: TollMatrix) -> np.ndarray:
    if _in_tilde_family(matrix):
        return matrix.diagonal() + matrix.toll(2, 3) / 3.0
    return sps(matrix)


def _uniform(matrix: TollMatrix) -> np.ndarray:
    return np.full(matrix.n, matrix.total / matrix.n)


def _zero(matrix: TollMatrix) -> np.ndarray:
    return np.zeros(matrix.n)


def _entrance(matrix: TollMatrix) -> np.ndarray:
    shares = np.zeros(matrix.n)
    for (h, _), toll in matrix.trips():
        shares[h - 1] += toll
    return shares


def _hybrid(matrix: TollMatrix) -> np.ndarray:
    return scs(matrix) if is_unit_matrix(matrix) else ses(matrix)


COUNTEREXAMPLES: Mapping[str, MethodFn] = {
    "A1_involvement_sum": _involvement_sum,
    "A1_swap_diag": _swap_diag,
    "A1_tilde": _tilde,
    "A2_uniform": _uniform,
    "A2_zero": _zero,
    "A2_entrance": _entrance,
    "A2_hybrid": _hybrid,
}


def counterexample_method(name: str) -> MethodFn:
    try:
        return COUNTEREXAMPLES[name]
    except KeyError:
        raise UnknownMethodError(name) from None


METHODS: Mapping[str, MethodFn] = {"ses": ses, "sps": sps, "scs": scs}


def allocation_method(name: str) -> MethodFn:
    """Look up a method by name, covering the three main methods and the
    deliberately flawed ones."""
    if name in METHODS:
        return METHODS[name]
    if name in COUNTEREXAMPLES:
        return COUNTEREXAMPLES[name]
    raise UnknownMethodError(name)

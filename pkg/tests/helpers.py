"""Shared test utilities: deterministic matrix populations and slow oracles."""

from __future__ import annotations

import numpy as np

from tollshare import SegmentsGame, TollMatrix, random_matrix


def seeded_matrices(
    count: int,
    sizes=(2, 3, 4, 5, 6, 7, 8),
    densities=(0.3, 1.0),
    max_toll: float = 10.0,
    seed_base: int = 0,
):
    """Deterministic population cycling over sizes and densities."""
    for idx in range(count):
        n = sizes[idx % len(sizes)]
        density = densities[(idx // len(sizes)) % len(densities)]
        yield random_matrix(n, density=density, max_toll=max_toll, seed=seed_base + idx)


def coalition_value_by_enumeration(matrix: TollMatrix, members) -> float:
    """Trip-by-trip coalition worth, independent of SegmentsGame internals."""
    included = set(members)
    value = 0.0
    for (h, k), t in matrix.trips():
        if all(i in included for i in range(h, k + 1)):
            value += t
    return value


def all_coalitions(n: int):
    for mask in range(1 << n):
        yield [i + 1 for i in range(n) if mask >> i & 1]


def perturbed_allocation(shares: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Move random mass between segments, keeping the vector nonnegative.

    Preserves the total, so efficiency still holds while core inequalities
    may break.
    """
    x = shares.copy()
    if len(x) < 2:
        return x
    src = int(rng.integers(0, len(x)))
    dst = int(rng.integers(0, len(x)))
    if src == dst:
        dst = (dst + 1) % len(x)
    amount = float(rng.uniform(0.0, x[src])) if x[src] > 0 else 0.0
    x[src] -= amount
    x[dst] += amount
    return x

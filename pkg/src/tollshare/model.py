"""Data model for one-way highway toll problems.

A problem is a toll matrix: for every trip ``[h, k]`` (enter at segment ``h``,
leave at segment ``k``, ``1 <= h <= k <= n``) it records the total toll
collected from all users of that trip.  Matrices are stored sparsely as a map
from trips to positive amounts; segment indices are 1-based on every public
interface.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import (
    BlocksNotPartitionError,
    DuplicateTripError,
    InvalidDensityError,
    LowerTriangularNonzeroError,
    NegativeTollError,
    NonFiniteError,
    SegmentIndexError,
    TollValidationError,
)

#: Default absolute tolerance for currency comparisons, scaled by the
#: magnitude of the quantities involved where appropriate.
DEFAULT_TOL = 1e-9


class Trip(NamedTuple):
    """A contiguous journey entering at ``entry`` and exiting at ``exit``."""

    entry: int
    exit: int

    @property
    def segments(self) -> range:
        """Segments used by the trip, ``entry..exit`` inclusive."""
        return range(self.entry, self.exit + 1)

    @property
    def length(self) -> int:
        return self.exit - self.entry + 1


def _check_trip(entry: int, exit: int, n: int) -> Trip:
    if not (1 <= entry <= exit <= n):
        raise SegmentIndexError(
            f"trip [{entry},{exit}] is not a valid trip for {n} segments"
        )
    return Trip(int(entry), int(exit))


@dataclass(frozen=True)
class TollMatrix:
    """Aggregated tolls of a one-way linear highway with ``n`` segments.

    Only strictly positive tolls are stored; every absent trip has toll zero.
    Instances are immutable after construction and safe to share between
    threads.
    """

    n: int
    entries: Mapping[Trip, float]

    def __post_init__(self):
        if self.n < 1:
            raise SegmentIndexError(f"segment count must be >= 1, got {self.n}")
        cleaned: dict[Trip, float] = {}
        for (entry, exit), value in self.entries.items():
            trip = _check_trip(entry, exit, self.n)
            value = float(value)
            if not math.isfinite(value):
                raise NonFiniteError(trip.entry, trip.exit, value)
            if value < 0.0:
                raise NegativeTollError(trip.entry, trip.exit, value)
            if value > 0.0:
                cleaned[trip] = value
        ordered = dict(sorted(cleaned.items()))
        object.__setattr__(self, "entries", MappingProxyType(ordered))
        object.__setattr__(self, "_total", math.fsum(ordered.values()))

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "TollMatrix":
        return cls(n, {})

    @classmethod
    def unit(cls, entry: int, exit: int, n: int) -> "TollMatrix":
        """Matrix with a single toll of 1 on trip ``[entry, exit]``."""
        return cls(n, {(entry, exit): 1.0})

    @classmethod
    def from_dense(cls, grid: Sequence[Sequence[float]] | np.ndarray) -> "TollMatrix":
        """Validate a square grid: upper triangular, nonnegative, finite."""
        rows = [list(map(float, row)) for row in grid]
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise SegmentIndexError("dense toll grid must be square and nonempty")
        entries: dict[tuple[int, int], float] = {}
        for h in range(1, n + 1):
            for k in range(1, n + 1):
                value = rows[h - 1][k - 1]
                if not math.isfinite(value):
                    raise NonFiniteError(h, k, value)
                if h > k:
                    if value != 0.0:
                        raise LowerTriangularNonzeroError(h, k, value)
                    continue
                if value < 0.0:
                    raise NegativeTollError(h, k, value)
                if value > 0.0:
                    entries[(h, k)] = value
        return cls(n, entries)

    @classmethod
    def from_triplets(
        cls,
        rows: Iterable[tuple[int, int, float]],
        n: int | None = None,
    ) -> "TollMatrix":
        """Build a matrix from ``(entry, exit, toll)`` records.

        ``n`` defaults to the largest exit index seen; it must be given
        explicitly when ``rows`` is empty.  Duplicate trips are rejected.
        """
        seen: dict[tuple[int, int], float] = {}
        max_exit = 0
        for entry, exit, toll in rows:
            entry, exit = int(entry), int(exit)
            if entry < 1 or exit < entry:
                raise SegmentIndexError(f"trip [{entry},{exit}] is not a valid trip")
            if (entry, exit) in seen:
                raise DuplicateTripError(entry, exit)
            toll = float(toll)
            if not math.isfinite(toll):
                raise NonFiniteError(entry, exit, toll)
            if toll < 0.0:
                raise NegativeTollError(entry, exit, toll)
            seen[(entry, exit)] = toll
            max_exit = max(max_exit, exit)
        if n is None:
            if max_exit == 0:
                raise SegmentIndexError(
                    "cannot infer the segment count from an empty record set; pass n"
                )
            n = max_exit
        return cls(n, seen)

    # -- inspection -------------------------------------------------------

    @property
    def total(self) -> float:
        """Sum of all collected tolls."""
        return self._total  # type: ignore[attr-defined]

    def toll(self, entry: int, exit: int) -> float:
        trip = _check_trip(entry, exit, self.n)
        return self.entries.get(trip, 0.0)

    def trips(self) -> Iterator[tuple[Trip, float]]:
        """Positive trips in (entry, exit) order."""
        return iter(self.entries.items())

    def involvement(self, segment: int) -> float:
        """Total toll of trips whose path contains ``segment``."""
        if not (1 <= segment <= self.n):
            raise SegmentIndexError(f"segment {segment} out of range 1..{self.n}")
        return math.fsum(
            t for (h, k), t in self.entries.items() if h <= segment <= k
        )

    def diagonal(self) -> np.ndarray:
        """Per-segment tolls of single-segment trips, ``t_ii``."""
        return np.array([self.entries.get(Trip(i, i), 0.0) for i in range(1, self.n + 1)])

    def to_dense(self) -> np.ndarray:
        grid = np.zeros((self.n, self.n))
        for (h, k), t in self.entries.items():
            grid[h - 1, k - 1] = t
        return grid

    def __add__(self, other: "TollMatrix") -> "TollMatrix":
        if not isinstance(other, TollMatrix):
            return NotImplemented
        if other.n != self.n:
            raise SegmentIndexError("cannot add matrices with different segment counts")
        merged = dict(self.entries)
        for trip, t in other.entries.items():
            merged[trip] = merged.get(trip, 0.0) + t
        return TollMatrix(self.n, merged)

    def scaled(self, factor: float) -> "TollMatrix":
        if factor < 0.0:
            raise NegativeTollError(0, 0, factor)
        return TollMatrix(self.n, {trip: factor * t for trip, t in self.entries.items()})

    def __repr__(self) -> str:
        return f"TollMatrix(n={self.n}, trips={len(self.entries)}, total={self.total:g})"


def inessential_segments(matrix: TollMatrix) -> list[int]:
    """Segments that no positive trip passes through."""
    used = np.zeros(matrix.n, dtype=bool)
    for (h, k), _ in matrix.trips():
        used[h - 1 : k] = True
    return [i + 1 for i in range(matrix.n) if not used[i]]


def is_unit_matrix(matrix: TollMatrix) -> bool:
    """True when the matrix charges exactly one trip exactly 1."""
    items = list(matrix.trips())
    return len(items) == 1 and items[0][1] == 1.0


# -- random generators ----------------------------------------------------

def sample_matrix(
    rng: np.random.Generator,
    n: int,
    density: float = 1.0,
    max_toll: float = 10.0,
) -> TollMatrix:
    """Draw a random matrix from an existing generator.

    Each of the ``n(n+1)/2`` upper-triangular cells is occupied with
    probability ``density``; occupied cells get a toll uniform on
    ``(0, max_toll]``.  Cells are visited in (entry, exit) order, so the
    draw is reproducible for a given generator state.
    """
    if not (0.0 < density <= 1.0):
        raise InvalidDensityError(density)
    if n < 1:
        raise SegmentIndexError(f"segment count must be >= 1, got {n}")
    if max_toll <= 0.0:
        raise TollValidationError(f"max_toll must be positive, got {max_toll!r}")
    entries: dict[tuple[int, int], float] = {}
    for h in range(1, n + 1):
        for k in range(h, n + 1):
            if rng.random() < density:
                entries[(h, k)] = max_toll * (1.0 - rng.random())
    return TollMatrix(n, entries)


def random_matrix(n: int, density: float = 1.0, max_toll: float = 10.0, seed: int = 0) -> TollMatrix:
    """Seeded random matrix; a pure function of all four arguments."""
    return sample_matrix(np.random.default_rng(seed), n, density, max_toll)


def block_structured_matrix(
    blocks: Sequence[Iterable[int]],
    seed: int = 0,
    density: float = 1.0,
    max_toll: float = 10.0,
) -> TollMatrix:
    """Random matrix whose positive trips all stay inside the given blocks.

    ``blocks`` must partition ``1..n`` into contiguous intervals; each block
    is then a sub-highway of the result by construction.
    """
    intervals: list[tuple[int, int]] = []
    for block in blocks:
        members = sorted(set(int(i) for i in block))
        if not members:
            raise BlocksNotPartitionError("empty block")
        if members != list(range(members[0], members[-1] + 1)):
            raise BlocksNotPartitionError(f"block {members} is not contiguous")
        intervals.append((members[0], members[-1]))
    intervals.sort()
    n = intervals[-1][1] if intervals else 0
    covered: list[int] = []
    for start, end in intervals:
        covered.extend(range(start, end + 1))
    if covered != list(range(1, n + 1)):
        raise BlocksNotPartitionError(f"blocks cover {covered}, expected 1..{n}")
    if not (0.0 < density <= 1.0):
        raise InvalidDensityError(density)
    rng = np.random.default_rng(seed)
    entries: dict[tuple[int, int], float] = {}
    for start, end in intervals:
        for h in range(start, end + 1):
            for k in range(h, end + 1):
                if rng.random() < density:
                    entries[(h, k)] = max_toll * (1.0 - rng.random())
    return TollMatrix(n, entries)


# -- file formats ----------------------------------------------------------

TRIPLET_HEADER = ("entry", "exit", "toll")


def to_triplet_rows(matrix: TollMatrix) -> list[tuple[int, int, float]]:
    return [(h, k, t) for (h, k), t in matrix.trips()]


def write_triplet_csv(matrix: TollMatrix, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRIPLET_HEADER)
        for h, k, t in to_triplet_rows(matrix):
            writer.writerow([h, k, repr(t)])


def read_triplet_csv(path: str | Path, n: int | None = None) -> TollMatrix:
    rows: list[tuple[int, int, float]] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip().lower() for c in header] != list(TRIPLET_HEADER):
            raise TollValidationError(
                f"{path}: expected header {','.join(TRIPLET_HEADER)!r}, got {header!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 3:
                raise TollValidationError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            try:
                rows.append((int(row[0]), int(row[1]), float(row[2])))
            except ValueError as exc:
                raise TollValidationError(f"{path}:{lineno}: {exc}") from exc
    return TollMatrix.from_triplets(rows, n=n)


def write_dense_csv(matrix: TollMatrix, path: str | Path) -> None:
    grid = matrix.to_dense()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in grid:
            writer.writerow([repr(float(v)) for v in row])


def read_dense_csv(path: str | Path) -> TollMatrix:
    with open(path, newline="") as fh:
        rows = [[float(cell) for cell in row] for row in csv.reader(fh) if row]
    return TollMatrix.from_dense(rows)


def to_json_dict(matrix: TollMatrix) -> dict:
    return {
        "n": matrix.n,
        "trips": [
            {"entry": h, "exit": k, "toll": t} for (h, k), t in matrix.trips()
        ],
    }


def from_json_dict(payload: Mapping) -> TollMatrix:
    rows = [(r["entry"], r["exit"], r["toll"]) for r in payload["trips"]]
    return TollMatrix.from_triplets(rows, n=int(payload["n"]))


def write_json(matrix: TollMatrix, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(matrix), fh, indent=2)
        fh.write("\n")


def read_json(path: str | Path) -> TollMatrix:
    with open(path) as fh:
        return from_json_dict(json.load(fh))

"""Exception types raised by the tollshare package."""

from __future__ import annotations


class TollShareError(Exception):
    """Base class for all tollshare-specific errors."""


class TollValidationError(TollShareError, ValueError):
    """A toll matrix or its raw input violates the data model."""


class NegativeTollError(TollValidationError):
    def __init__(self, entry: int, exit: int, value: float):
        super().__init__(f"toll for trip [{entry},{exit}] is negative: {value!r}")
        self.entry, self.exit, self.value = entry, exit, value


class NonFiniteError(TollValidationError):
    def __init__(self, entry: int, exit: int, value: float):
        super().__init__(f"toll for trip [{entry},{exit}] is not finite: {value!r}")
        self.entry, self.exit, self.value = entry, exit, value


class LowerTriangularNonzeroError(TollValidationError):
    def __init__(self, entry: int, exit: int, value: float):
        super().__init__(
            f"entry ({entry},{exit}) below the diagonal is nonzero ({value!r}); "
            "one-way matrices must be upper triangular"
        )
        self.entry, self.exit, self.value = entry, exit, value


class DuplicateTripError(TollValidationError):
    def __init__(self, entry: int, exit: int):
        super().__init__(f"trip [{entry},{exit}] appears more than once")
        self.entry, self.exit = entry, exit


class SegmentIndexError(TollValidationError):
    """A segment or trip index falls outside 1..n or is not ordered."""


class InvalidDensityError(TollValidationError):
    def __init__(self, density: float):
        super().__init__(f"density must lie in (0, 1], got {density!r}")
        self.density = density


class BlocksNotPartitionError(TollValidationError):
    def __init__(self, reason: str):
        super().__init__(f"blocks do not partition the segment range: {reason}")


class UnknownSchemeError(TollShareError, ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown weight scheme {name!r}")
        self.name = name


class UnknownMethodError(TollShareError, ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown allocation method {name!r}")
        self.name = name


class NegativeWeightError(TollShareError, ValueError):
    def __init__(self, entry: int, exit: int, segment: int, weight: float):
        super().__init__(
            f"weight for trip [{entry},{exit}] at segment {segment} "
            f"is not admissible: {weight!r}"
        )
        self.entry, self.exit, self.segment, self.weight = entry, exit, segment, weight


class OracleSizeError(TollShareError, ValueError):
    """Exhaustive enumeration was requested beyond the configured size limit."""

    def __init__(self, n: int, limit: int):
        super().__init__(f"game has {n} segments; exhaustive limit is {limit}")
        self.n, self.limit = n, limit


class TauUndefinedError(TollShareError, ArithmeticError):
    """The compromise value does not exist for this game."""


class LengthMismatchError(TollShareError, ValueError):
    def __init__(self, expected: int, got: int):
        super().__init__(f"allocation has {got} components, expected {expected}")
        self.expected, self.got = expected, got


class ZeroTotalError(TollShareError, ValueError):
    """An operation requiring a positive total was given an all-zero vector."""


class ConstantVectorError(TollShareError, ValueError):
    """Correlation is undefined for a constant vector."""


class HarnessMismatchError(TollShareError):
    """A counterexample method did not fail exactly its designated axiom."""

    def __init__(self, method: str, axiom: str, detail: str):
        super().__init__(f"independence harness mismatch at ({method}, {axiom}): {detail}")
        self.method, self.axiom = method, axiom

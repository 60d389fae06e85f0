"""
Exception and warning types for zeta-fluctuations.

Error Handling: raise_and_propagate
- Every error subclasses ValueError so callers catching ValueError keep working
- Messages carry the offending value (line number, index, height)
- Diagnostics that are not failures are Warning subclasses, emitted via warnings.warn
"""


class DomainError(ValueError):
    """Argument outside the domain where a formula is defined (e.g. θ(t) for t < 10)."""


class EmptyTableError(ValueError):
    """Zero table source contained no zeros."""


class ZeroTableParseError(ValueError):
    """A zero table line could not be parsed as a decimal ordinate."""

    def __init__(self, line_number: int, line: str, path: str | None = None):
        self.line_number = line_number
        self.line = line
        where = f"{path}:" if path else "line "
        super().__init__(f"{where}{line_number}: cannot parse zero ordinate from {line!r}")


class MonotonicityError(ValueError):
    """Zero ordinates are not nondecreasing (or not strictly positive)."""

    def __init__(self, index: int, previous: float, value: float):
        self.index = index
        super().__init__(
            f"Zero table not nondecreasing at index {index}: "
            f"gamma_{index} = {value!r} < gamma_{index - 1} = {previous!r}"
        )


class HeightExceededError(ValueError):
    """Requested height lies above the height up to which a zero table is complete."""


class CoverageError(ValueError):
    """A sampling window needs zeros that the table does not contain."""

    def __init__(self, message: str, required_height: float | None = None,
                 required_count: int | None = None):
        self.required_height = required_height
        self.required_count = required_count
        super().__init__(message)


class SieveTooSmallError(ValueError):
    """Prime sieve limit is below the cutoff a sum needs."""


class DegenerateSampleError(ValueError):
    """Sample is empty, too small, or has zero variance."""


class OracleSizeError(ValueError):
    """Brute-force enumeration request exceeds the size guard."""


class SuspectedMissedZerosWarning(UserWarning):
    """Zero count of a search disagrees with the main-term prediction by more than 2."""


class SuspectTableWarning(UserWarning):
    """verify_count discrepancy |N(T) - round(M(T))| exceeds 3."""


class BoundFindingWarning(UserWarning):
    """An empirical bound that is not a theorem (e.g. Λ_x ≤ Λ) was violated."""

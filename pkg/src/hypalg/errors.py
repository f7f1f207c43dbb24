"""Exception hierarchy shared by all hypalg modules."""

from __future__ import annotations


class HypalgError(Exception):
    """Base class for every error raised by hypalg."""


class ParseError(HypalgError, ValueError):
    """Malformed input text. Carries the location of the offending token."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 source: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.source:
            where.append(self.source)
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"column {self.column}")
        if where:
            return f"{', '.join(where)}: {self.message}"
        return self.message


class DimensionError(HypalgError, ValueError):
    """Elements or polynomials of incompatible dimension were combined."""


class SpectralError(HypalgError):
    """Idempotent discovery could not produce a complete orthogonal system."""

    def __init__(self, message: str, attempts: int = 0):
        self.attempts = attempts
        super().__init__(message)


class NonSplit(SpectralError):
    """A real algebra whose regular representation has non-real spectrum."""


class NotSemisimpleOrDegenerate(SpectralError):
    """Eigenvalues of every sampled regular representation stayed clustered."""


class VerificationFailed(SpectralError):
    """Candidate idempotents violate idempotency, orthogonality or completeness."""


class IncompleteSystem(HypalgError, ValueError):
    """An idempotent system with fewer members than the algebra dimension."""


class UnsupportedOrder(HypalgError, ValueError):
    """Finite-difference derivative requested beyond the supported order."""

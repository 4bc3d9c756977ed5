"""Exception types shared across the engine."""


class FGradeError(Exception):
    """Base class for engine errors."""


class RingMismatchError(FGradeError, ValueError):
    """Operands live over different rings."""


class PreconditionError(FGradeError, ValueError):
    """A mathematical precondition of an operation is violated."""


class NotMonomialError(PreconditionError, TypeError):
    """A monomial ideal was required."""


class IllDefinedMapError(PreconditionError):
    """A matrix does not induce a well-defined map between presentations."""


class EngineError(FGradeError, RuntimeError):
    """Internal inconsistency: a theorem-backed invariant failed to hold."""


class MethodDisagreement(EngineError):
    """Two independent computations of the same invariant differ."""

"""Exception hierarchy shared by all mixthin modules."""
from __future__ import annotations


class MixThinError(Exception):
    """Base class for every error raised by this package."""


class InvalidGraph(MixThinError, ValueError):
    pass


class InvalidOrder(MixThinError, ValueError):
    pass


class SelfContraction(MixThinError, ValueError):
    pass


class NotAntisymmetric(MixThinError, ValueError):
    pass


class InvalidWitness(MixThinError, ValueError):
    pass


class DomainMismatch(MixThinError, ValueError):
    pass


class NotATree(MixThinError, ValueError):
    pass


class InvalidParameters(MixThinError, ValueError):
    pass


class NotProper(MixThinError, ValueError):
    pass


class InvalidPath(MixThinError, ValueError):
    pass


class WitnessConstructionError(MixThinError, RuntimeError):
    pass


class ShapeError(MixThinError, ValueError):
    pass


class MalformedTrace(MixThinError, ValueError):
    pass


class EngineInvariantError(MixThinError, AssertionError):
    pass


class BudgetExceeded(MixThinError, RuntimeError):
    """Search gave up; ``upper_bound`` holds the best value seen (not proved optimal)."""

    def __init__(self, message: str, upper_bound: int | None = None):
        super().__init__(message)
        self.upper_bound = upper_bound


class TooSmall(MixThinError, ValueError):
    pass


class UnboundVariable(MixThinError, KeyError):
    pass


class UnknownSymbol(MixThinError, KeyError):
    pass


class FormulaTooComplex(MixThinError, RuntimeError):
    pass


class NotAnEncoding(MixThinError, ValueError):
    pass


class ParseError(MixThinError, ValueError):
    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


class ValidationError(MixThinError, ValueError):
    pass

"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SpectratopeError(Exception):
    """Base class for all library errors."""


class Singular(SpectratopeError):
    """Matrix is not invertible."""


class ShapeMismatch(SpectratopeError, ValueError):
    pass


class LengthMismatch(SpectratopeError, ValueError):
    pass


class IndexOutOfRange(SpectratopeError, IndexError):
    pass


class ResourceLimit(SpectratopeError):
    pass


class NotHadamard(SpectratopeError, ValueError):
    pass


class UnsupportedOrder(SpectratopeError, ValueError):
    def __init__(self, order: int, below: int | None, above: int):
        self.order = order
        self.below = below
        self.above = above
        near = f"{below} or {above}" if below is not None else str(above)
        super().__init__(f"no Hadamard construction for order {order}; nearest supported: {near}")


class Degenerate(SpectratopeError, ValueError):
    """Simplex vertices are affinely dependent."""


class Unbounded(SpectratopeError):
    pass


class OutOfRange(SpectratopeError, ValueError):
    pass


class EmptySpectrum(SpectratopeError, ValueError):
    pass


class NotNormalizable(SpectratopeError, ValueError):
    pass


class ConditionsFail(SpectratopeError):
    """Necessary realizability conditions are violated; ``report`` says which."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotSupported(SpectratopeError):
    """No constructive route covers the spectrum."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotSuleimanova(SpectratopeError, ValueError):
    pass


class OrderMismatch(SpectratopeError, ValueError):
    pass


class InternalDispatchFailure(SpectratopeError, AssertionError):
    """A construction that should always succeed produced a negative entry."""

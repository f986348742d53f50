"""Exception hierarchy shared by every module."""


class HGError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(HGError, ValueError):
    """Invalid arguments: mismatched orders/fields, out-of-range indices, bad parameters."""


class SingularDenominator(HGError, ZeroDivisionError):
    """A series division whose denominator has a zero (or sub-tolerance) constant term."""

    def __init__(self, message, series=None):
        super().__init__(message)
        self.series = series


class DivergentSum(HGError, ArithmeticError):
    """A lattice sum outside its convergence domain (some weight with |alpha| >= 1)."""


class TailNotConverged(HGError, ArithmeticError):
    """Adaptive truncation could not certify the requested tolerance within the term budget."""


class UndefinedHazard(HGError, ArithmeticError):
    """Hazard rate requested at a point of zero reliability."""

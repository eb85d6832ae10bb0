"""Exception hierarchy.

Two families matter to the CLI: :class:`InvalidInput` (bad user data, exit
code 1) and :class:`ConsistencyError` (an internal invariant broke, exit
code 2).
"""


class BrauerKitError(Exception):
    pass


class InvalidInput(BrauerKitError, ValueError):
    pass


class ConsistencyError(BrauerKitError):
    pass


# exactalg
class CompositionNotZero(InvalidInput):
    pass


# graded
class MixedContext(InvalidInput):
    pass


class EmptyBasis(InvalidInput):
    pass


class BadPrime(InvalidInput):
    pass


class ShapeMismatch(InvalidInput):
    pass


class AxiomViolation(ConsistencyError, InvalidInput):
    """Structure constants fail homogeneity, associativity or the unit law."""


# azumaya
class NotAzumaya(InvalidInput):
    pass


class UnsupportedCoeff(InvalidInput):
    pass


class WindowEmpty(InvalidInput):
    pass


# brauerwall
class NotSeparable(InvalidInput):
    pass


class NotUnit(InvalidInput):
    pass


class TwoNotInvertible(InvalidInput):
    pass


class UnsupportedRing(InvalidInput):
    pass


class IllegalClass(InvalidInput):
    pass


# c2coh
class NotExact(InvalidInput):
    pass


class BadChart(InvalidInput):
    pass


# specseq
class DSquareNonzero(ConsistencyError):
    pass


class RegionViolation(ConsistencyError):
    pass


class NotStabilized(ConsistencyError):
    pass


class Indeterminate(BrauerKitError):
    pass


class SlotOutsideWindow(InvalidInput):
    pass


class DeadDifferential(ConsistencyError):
    """A differential declared nonzero meets a zero or missing group."""

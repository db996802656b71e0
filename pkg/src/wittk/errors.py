"""Exception hierarchy shared by all modules."""


class WittKError(Exception):
    """Base class for every error raised by this package."""


class BlockMismatch(WittKError, ValueError):
    """Word length is not divisible by the block size."""


class EmptyWord(WittKError, ValueError):
    pass


class DivisibilityError(WittKError, ValueError):
    """A poset map v_a^b was requested with b not dividing a."""


class IncompatibleOperands(WittKError, ValueError):
    pass


class InternalIntegralityError(WittKError, ArithmeticError):
    """An exact division in the ghost recursion left a remainder.

    This indicates a bug in the package, never bad input.
    """


class MissingUnit(WittKError, ValueError):
    pass


class TruncationMismatch(WittKError, ValueError):
    pass


class NotPrime(WittKError, ValueError):
    pass


class ParameterError(WittKError, ValueError):
    pass

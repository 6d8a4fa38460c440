"""Exception hierarchy shared by all modules."""


class LensHodgeError(Exception):
    """Base class for every error raised by this package."""


class InvalidModulus(LensHodgeError, ValueError):
    pass


class NotInvertible(LensHodgeError, ZeroDivisionError):
    pass


class ModulusMismatch(LensHodgeError, ValueError):
    pass


class NotAnInteger(LensHodgeError, ArithmeticError):
    """A cyclotomic element expected to be rational has nonzero higher coefficients."""


class PrecisionError(LensHodgeError, ArithmeticError):
    """The product of CRT moduli does not cover the requested bound."""


class ContextExhausted(LensHodgeError, RuntimeError):
    pass


class InternalInconsistency(LensHodgeError, ArithmeticError):
    """Exact division by the group order left a remainder."""


class NonFaithfulPresentation(LensHodgeError, ValueError):
    pass


class NotALensGroup(LensHodgeError, ValueError):
    pass


class PoleAtSample(LensHodgeError, ZeroDivisionError):
    pass


class NotUnivalent(LensHodgeError, ValueError):
    pass


class TheoremCounterexample(LensHodgeError, AssertionError):
    """A hereditarily good vector produced a pair with different Hodge series."""


class ParseError(LensHodgeError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position

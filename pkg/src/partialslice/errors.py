"""Exception types raised across the package."""


class PartialSliceError(Exception):
    """Base class for all library errors."""


class ContextMismatch(PartialSliceError, ValueError):
    pass


class VariableMismatch(PartialSliceError, ValueError):
    pass


class NotParavector(PartialSliceError, ValueError):
    pass


class ZeroDivision(PartialSliceError, ZeroDivisionError):
    pass


class NotDivisible(PartialSliceError, ValueError):
    """Some term has r-exponent 0, so the polynomial is not a multiple of r."""


class OddPowerPresent(PartialSliceError, ValueError):
    pass


class ParityViolation(PartialSliceError, ValueError):
    pass


class NotGSR(PartialSliceError, ValueError):
    """The slice pair does not solve the generalized Cauchy-Riemann system."""


class EvenQ(PartialSliceError, ValueError):
    def __init__(self, q):
        super().__init__(f"q must be odd (got q={q})")
        self.q = q


class NotUnit(PartialSliceError, ValueError):
    pass


class NotReal(PartialSliceError, ValueError):
    pass


class ParseError(PartialSliceError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position

"""Exception types raised by the library.

The internal-assertion family (``NonZeroRemainder``, ``NotSymmetric``,
``NotIntegral``) signals a broken formula rather than bad user input; the CLI
maps those to exit code 3.
"""


class MotzkinError(Exception):
    """Base class for all library errors."""


class InternalAssertion(MotzkinError):
    """A formula produced a value that violates an exactness guarantee."""


class NonZeroRemainder(InternalAssertion):
    pass


class NotSymmetric(InternalAssertion):
    pass


class NotIntegral(InternalAssertion):
    pass


class NonUnitConstantTerm(MotzkinError, ValueError):
    pass


class IndexOutOfRange(MotzkinError, ValueError):
    pass


class MissingAssignment(MotzkinError, KeyError):
    pass


class DivisionByZero(MotzkinError, ZeroDivisionError):
    pass


class CeilingTooLow(MotzkinError, ValueError):
    pass


class Unreachable(MotzkinError, ValueError):
    pass


class LengthGuard(MotzkinError, ValueError):
    pass

"""Exception hierarchy shared by every module of the package."""

import builtins


class FendError(Exception):
    """Base class for all errors raised by fendring."""


class ZeroInversion(FendError, ZeroDivisionError):
    pass


class ShapeMismatch(FendError, ValueError):
    pass


class DescriptorMismatch(FendError, ValueError):
    pass


class Singular(FendError, ValueError):
    pass


class EmptyFamily(FendError, ValueError):
    pass


class SystemMismatch(FendError, ValueError):
    pass


class InvariantError(FendError, ValueError):
    pass


class RankLoss(InvariantError):
    pass


class PreconditionViolated(FendError):
    pass


class ScalingViolation(FendError):
    pass


class NotIsomorphism(FendError):
    pass


class TheoremViolation(FendError):
    """A verified bijective homomorphism failed to reduce to one term.

    This must never be raised; if it is, either the implementation is wrong
    or a counterexample to the conjugation theorem has been found.
    """


class SizeGuard(FendError):
    pass


class WrongDescriptor(FendError, ValueError):
    pass


class ParseError(FendError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ReferenceError(FendError, builtins.ReferenceError):
    """A session block names a system or map that was never defined."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)

"""Exception hierarchy shared by every module."""


class EllError(ValueError):
    """Base class for all errors raised by ellgrp."""


class ShapeMismatchError(EllError):
    """Operands live in different groups, or a coordinate vector has the wrong length."""


class InfiniteShapeError(EllError):
    """An operation that enumerates elements was given a group with a free factor."""


class AxiomError(EllError):
    """A table or operation violates a required identity."""


class NoClosedFormError(EllError):
    """The input lies outside the patterns a closed-form formula covers."""


class UndecidedError(EllError):
    """The question cannot be settled by the available algorithms."""


class PreconditionError(EllError):
    """A documented precondition of an operation does not hold."""


class SingularCurveError(EllError):
    """The cubic has a singular point (or is not a curve at all)."""

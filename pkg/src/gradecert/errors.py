"""Exception hierarchy shared by every gradecert module."""

from __future__ import annotations


class GradecertError(Exception):
    """Base class for all toolkit errors."""


class MixedFieldError(GradecertError):
    pass


class ShapeMismatch(GradecertError):
    pass


class SpecParseError(GradecertError):
    """Malformed algebra/order spec; ``where`` names the offending field."""

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


class AlgebraError(GradecertError):
    """Structure-constant invariant failure; ``witness`` holds basis indices."""

    def __init__(self, message: str, witness: tuple | None = None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} (witness {witness})")


class NonAssociative(AlgebraError):
    pass


class GradingViolation(AlgebraError):
    pass


class BadUnit(AlgebraError):
    pass


class BadIdempotents(AlgebraError):
    pass


class NotFiniteDimensional(GradecertError):
    pass


class RadicalUnavailable(GradecertError):
    pass


class NotSplit(GradecertError):
    pass


class MissingIdempotents(GradecertError):
    pass


class NotQuasiHereditary(GradecertError):
    def __init__(self, message: str, criterion: str):
        self.criterion = criterion
        super().__init__(f"{criterion}: {message}")


class A0NotQuasiHereditary(NotQuasiHereditary):
    pass


class TightnessRequired(GradecertError):
    pass


class NotIdempotent(GradecertError):
    pass


class NotFull(GradecertError):
    pass


class NotGradeZero(GradecertError):
    pass


class UncertifiedAtRadius(GradecertError):
    def __init__(self, message: str, needed_radius: int | None = None):
        self.needed_radius = needed_radius
        hint = f" (radius >= {needed_radius} needed)" if needed_radius is not None else ""
        super().__init__(message + hint)


class ConventionMismatch(GradecertError):
    pass


class ElementNotInPoset(GradecertError):
    pass


class IntervalEscapesBall(GradecertError):
    pass

"""Exception hierarchy shared by all gnoe modules.

Every computational error raised by the library derives from AlgebraError,
so CLI code can map library failures to exit code 1 uniformly.  Text-grammar
errors derive from TextError and map to exit code 2.
"""


class AlgebraError(Exception):
    """Base class for all algebraic/computational errors."""


class InvalidDescriptor(AlgebraError):
    """A ring, map, or extension descriptor violates its invariants."""


class OwnerMismatch(AlgebraError):
    """Operands belong to different rings or extensions."""


class UndefinedForKind(AlgebraError):
    """An operation is not defined for this ring or map kind."""


class NotInvertible(AlgebraError):
    """The additive map has no exact two-sided inverse."""


class NotRightRepresentable(AlgebraError):
    """No right-coefficient representation exists for this polynomial.

    ``witness`` holds a coefficient with no sigma-power preimage and
    ``power`` the power of sigma that failed.
    """

    def __init__(self, message, witness=None, power=None):
        super().__init__(message)
        self.witness = witness
        self.power = power


class PreimageUnavailable(AlgebraError):
    """A required sigma-preimage cannot be computed or decided."""


class QuotientNotConfigured(AlgebraError):
    """A quotient operation was requested on an extension without one."""


class RestrictionViolated(AlgebraError):
    """The quotient restrictions (flipped, delta = 0, sigma involutive,
    scalar parameter) do not hold."""


class UnsupportedRingClass(AlgebraError):
    """The membership engine does not support this coefficient ring."""


class PreconditionDegree(AlgebraError):
    """A division step was called with deg(target) below the generators."""


class LeadingCoeffNotInIdeal(AlgebraError):
    """The leading coefficient of the division target is outside the
    coefficient ideal.  ``evidence`` carries the NotMember result."""

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


class OrientationFailure(AlgebraError):
    """Neither triangular-ring orientation admits the requested chain."""


class BoundTooSmall(AlgebraError):
    """The configured degree bound cannot contain the experiment."""


class HypothesisViolated(AlgebraError):
    """A proposition's hypothesis failed its law check."""


class NotAlgebraOverField(AlgebraError):
    """The construction requires an algebra over a field."""


class ZeroParameter(AlgebraError):
    """A Cayley doubling parameter must be nonzero."""


class UndecidableAtBound(AlgebraError):
    """The probe budget was exhausted without reaching a verdict."""


class TextError(Exception):
    """Base class for text-grammar and configuration errors."""


class PolySyntaxError(TextError):
    """Malformed polynomial text.  Carries the offending position."""

    def __init__(self, message, position=None, expected=None):
        if position is not None:
            message = f"{message} at position {position}"
        if expected is not None:
            message = f"{message} (expected {expected})"
        super().__init__(message)
        self.position = position
        self.expected = expected


class CoefficientParseError(TextError):
    """A coefficient literal does not parse in the ring's syntax."""


class ConfigError(TextError):
    """An extension configuration file is malformed."""

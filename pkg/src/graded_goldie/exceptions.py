"""Error types raised by graded-goldie."""


class GradedGoldieError(Exception):
    """Base class for all library errors."""


class UnknownGenerator(GradedGoldieError):
    pass


class ExponentOnlyIntegral(GradedGoldieError):
    pass


class FamilyMismatch(GradedGoldieError):
    pass


class InvalidGroupTable(GradedGoldieError):
    pass


class PremiseViolated(GradedGoldieError):
    pass


class FieldMismatch(GradedGoldieError):
    pass


class NotAUnit(GradedGoldieError):
    pass


class InvalidInstance(GradedGoldieError):
    pass


class InstanceMismatch(GradedGoldieError):
    pass


class NotHomogeneous(GradedGoldieError):
    pass


class UnreachableDegree(GradedGoldieError):
    pass


class GradingViolation(GradedGoldieError):
    """A product of homogeneous elements left the expected component."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WindowTooLarge(GradedGoldieError):
    pass


class InfiniteOrderDegree(GradedGoldieError):
    pass


class NonConjugateDegrees(GradedGoldieError):
    pass


class VanishingCandidate(GradedGoldieError):
    pass


class AlignmentExhausted(GradedGoldieError):
    pass


class ExhaustedBound(GradedGoldieError):
    pass


class CensusInconclusive(GradedGoldieError):
    pass


class NotInIdeal(GradedGoldieError):
    pass


class ExpressionSyntaxError(GradedGoldieError):
    """Parse failure; ``position`` is the 0-based offset into the input text."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class UnknownSymbol(GradedGoldieError):
    pass


class ConfigError(GradedGoldieError):
    pass

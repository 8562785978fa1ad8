class EvicalcError(Exception):
    """Base class of every error raised by evicalc."""

    pass


class TableArityError(EvicalcError):
    """Raised when a table does not have 2^(n+1) entries."""

    def __init__(self, expected, received):
        self.expected = expected
        self.received = received
        super().__init__(f"Expected {expected} table entries, received {received}.")


class NegativeProbabilityError(EvicalcError):
    pass


class ZeroMassError(EvicalcError):
    pass


class NotNormalizedError(EvicalcError):
    pass


class UnknownVariableError(EvicalcError):
    pass


class InconsistentEvidenceError(EvicalcError):
    """Raised when a variable appears in both polarities."""

    pass


class EvidenceCapError(EvicalcError):
    pass


class ParameterRangeError(EvicalcError):
    pass


class ConditioningOnZeroMassError(EvicalcError):
    """Raised when conditioning on an event of probability zero."""

    pass


class DegenerateBeliefError(EvicalcError):
    """Raised when a belief of exactly 0 or 1 makes a quantity undefined."""

    pass


class UndefinedRatioError(EvicalcError):
    """Raised when a likelihood ratio would be zero or infinite."""

    pass


class CalculusRangeError(EvicalcError):
    pass


class ContradictoryCertaintyError(EvicalcError):
    """Raised when combining certainty factors +1 and -1."""

    pass


class MeasureNameError(EvicalcError):
    pass


class ThresholdError(EvicalcError):
    pass


class LogBaseError(EvicalcError):
    pass


class FamilyNameError(EvicalcError):
    pass


class EmptyFamilyError(EvicalcError):
    pass


class DemoNameError(EvicalcError):
    pass


class KindMismatchError(EvicalcError):
    """Raised when rule strengths do not match the requested calculus."""

    def __init__(self, expected, received, message=None):
        self.expected = expected
        self.received = received
        if message is None:
            message = f"Rulebase strengths are of kind '{received}', calculus '{expected}' was requested."
        super().__init__(message)


class DuplicateRuleError(EvicalcError):
    pass


class ModelFileError(EvicalcError):
    pass


class RulebaseFileError(EvicalcError):
    pass


class CaseFileError(EvicalcError):
    pass

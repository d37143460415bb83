"""Exception hierarchy shared by every module of the package."""


class PartitionAlgebraError(Exception):
    """Base class for all errors raised by partalg."""


class MalformedPartitionError(PartitionAlgebraError, ValueError):
    def __init__(self, message, dot=None):
        super().__init__(message)
        self.dot = dot


class DomainError(PartitionAlgebraError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceLimitError(PartitionAlgebraError):
    """A size ceiling (Bell numbers, group orders, module dimensions) was exceeded."""


class NotInvertibleError(PartitionAlgebraError, ZeroDivisionError):
    pass


class NotACharacterError(PartitionAlgebraError):
    """A class function decomposed with a negative or non-integral multiplicity."""


class InternalConsistencyError(PartitionAlgebraError, AssertionError):
    """Two computations that must agree did not; always signals a bug."""


class LemmaViolationError(InternalConsistencyError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class HypothesisViolationError(PartitionAlgebraError):
    """The field characteristic violates a hypothesis needed by a construction."""


class StratificationError(HypothesisViolationError):
    pass

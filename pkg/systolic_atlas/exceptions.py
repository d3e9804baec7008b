"""
Error types raised by systolic_atlas. Validation errors subclass ValueError so that
callers which only know about ValueError still catch them.
"""


class SystolicAtlasError(Exception):
    """
    Base class of all errors raised by this package.
    """

    exit_code = 1


class ValidationError(SystolicAtlasError, ValueError):
    """
    Invalid input: a malformed graph, an illegal move, a parameter out of range.
    """

    exit_code = 2


class DegreeError(ValidationError):
    pass


class DisconnectedError(ValidationError):
    pass


class LoopMoveError(ValidationError):
    pass


class OverlapError(ValidationError):
    pass


class InvalidCycleError(ValidationError):
    pass


class GadgetError(ValidationError):
    pass


class ParamError(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class GirthError(ValidationError):
    pass


class ParityError(ValidationError):
    pass


class LimitError(SystolicAtlasError):
    """
    A configured size cap (census V_max, neighbor generation cap) was exceeded.
    """

    exit_code = 3


class NonTerminationError(SystolicAtlasError, RuntimeError):
    pass


class ConvergenceError(SystolicAtlasError, RuntimeError):
    pass


class EmptySetError(SystolicAtlasError):
    """
    The bad set of a sparsity run is empty or the whole census. Recorded in the report, never fatal.
    """

    pass

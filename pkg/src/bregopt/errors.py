"""Exception types shared across the package."""


class BregoptError(Exception):
    """Base class for package errors."""


class DomainError(BregoptError, ValueError):
    """An argument lies outside the required (open) domain."""


class DimensionMismatchError(BregoptError, ValueError):
    """Vector arguments have inconsistent dimensions."""


class NoClosedFormError(BregoptError, LookupError):
    """No registered closed form for this kernel/penalty pair;
    use prox_scalar_numeric instead."""


class NumericalFailureError(BregoptError, RuntimeError):
    """A safeguarded solve failed to bracket or converge."""


class InfeasibleSetError(BregoptError, RuntimeError):
    """The target set does not meet the interior of the kernel domain."""


class ScheduleError(BregoptError, ValueError):
    """A distance schedule or control map was exhausted or malformed."""

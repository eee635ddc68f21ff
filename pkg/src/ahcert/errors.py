"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller-supplied value violates a documented precondition."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class InconclusiveAtHorizon(Exception):
    """A certificate search exhausted the horizon without a verdict.

    Not a failure: raising this means neither a certificate nor a
    counter-witness was found within the stages available.
    """

"""Exception types raised across the package.

All of them derive from :class:`NLBError`, itself a ``ValueError``, so callers
that only care about "bad input" can catch ``ValueError``.
"""


class NLBError(ValueError):
    pass


class RangeError(NLBError):
    """A numeric parameter lies outside its admissible interval."""


class WeightsError(NLBError):
    """Mixture weights are negative or do not sum to one."""


class DomainError(NLBError):
    """An input row or target domain is not available on a box."""


class DomainMismatchError(DomainError):
    """Boxes that must share an input domain do not."""


class SignalingError(NLBError):
    """A marginal quantity depends on the completion of absent inputs."""


class DepthMismatchError(NLBError):
    pass


class RejectedInputError(NLBError):
    """A wiring drives some box outside its input domain.

    ``witness`` holds the first offending history.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SamplesError(NLBError):
    pass


class DegreeError(NLBError):
    pass


class ArityError(NLBError):
    pass


class LengthError(NLBError):
    pass


class FormatError(NLBError):
    """A serialized document does not match the expected schema."""

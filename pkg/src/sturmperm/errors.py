"""Exception and warning types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class InsufficientEvidence(PreconditionError):
    """The prefix is too short for the requested bounds."""


class WindowTooWide(PreconditionError):
    pass


class DegenerateParameters(ValueError):
    """Two entries of a permutation representative coincide."""


class InvalidGaps(ValueError):
    pass


class Inconclusive(ValueError):
    """A classification needed for the analysis did not reach a verdict."""


class ThresholdViolation(ValueError):
    """The S/M separation by a single threshold failed on this input."""


class EmptyInterval(ValueError):
    pass


class LatticeHit(UserWarning):
    """``sigma*i + rho`` was an integer inside the generated prefix."""


class RationalSlope(UserWarning):
    pass

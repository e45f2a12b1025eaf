"""Exception types shared across the package."""


class JumptrackError(Exception):
    """Base class for all package-specific errors."""


class ZeroVectorError(JumptrackError):
    """A state vector's norm underflowed (e.g. jump from the kernel of J)."""


class StepTooLargeError(JumptrackError):
    """Integrator step size violates the stability precondition."""


class OmegaZeroError(JumptrackError):
    """Undriven atom (Rabi frequency zero): tracking is trivial."""


class DegenerateEigenstatesError(JumptrackError):
    """The two fixed states coincide (f(mu) = 0)."""


class ZeroRateError(JumptrackError):
    """A jump rate underflowed where a positive rate is required."""


class RecordTooShortError(JumptrackError):
    """Trajectory record does not span enough time for the requested statistic."""

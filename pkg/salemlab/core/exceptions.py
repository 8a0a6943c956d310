"""Domain errors raised by the salemlab services."""

from typing import Optional

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_CONSTRUCTION = 2
EXIT_NONCONVERGENCE = 3


class SalemLabError(Exception):
    """Base exception for salemlab errors."""

    exit_code: int = EXIT_CONFIG


class ConfigError(SalemLabError):
    """Invalid run configuration or command line usage."""


class EmptyMeasure(SalemLabError):
    """A measure without atoms was passed where a non-zero measure is required."""


class InvalidInterval(SalemLabError):
    pass


class InvalidKeepCount(SalemLabError):
    pass


class InvalidArgument(SalemLabError):
    pass


class SupportContainsZero(SalemLabError):
    pass


class NonpositiveRadius(SalemLabError):
    pass


class DepthExceeded(SalemLabError):
    pass


class TooFewSamples(SalemLabError):
    pass


class InvalidExponent(SalemLabError):
    pass


class ResolutionTooCoarse(SalemLabError):
    pass


class VerificationRejected(SalemLabError):
    """A level failed one of the Hoeffding bounds at some check frequency."""

    exit_code = EXIT_CONSTRUCTION

    def __init__(self, level: int, xi: float, ratio: float, which: str = "X"):
        self.level = level
        self.xi = xi
        self.ratio = ratio
        self.which = which
        super().__init__(
            f"level {level} rejected: deviation_{which} at xi={xi:g} "
            f"is {ratio:.4f} times its bound"
        )


class RetryExhausted(SalemLabError):
    exit_code = EXIT_CONSTRUCTION

    def __init__(self, level: int, attempts: int, last: Optional[VerificationRejected] = None):
        self.level = level
        self.attempts = attempts
        self.last = last
        super().__init__(f"no accepted digit sets for level {level} after {attempts} attempts")


class NonconvergentTail(SalemLabError):
    exit_code = EXIT_NONCONVERGENCE

    def __init__(self, message: str, tail_fraction: float = float("nan"), slope: float = float("nan")):
        self.tail_fraction = tail_fraction
        self.slope = slope
        super().__init__(message)

"""Exception types shared across the package."""


class SdkError(Exception):
    """Base class for all package-specific errors."""


class UnstableTrapError(SdkError):
    """Raised when Mathieu parameters violate the trap stability condition."""


class ConfigError(SdkError):
    """Raised on invalid or unparseable configuration input."""


class OverlapError(SdkError):
    """Raised when pulse-train sub-pulses would overlap."""


class TruncationError(SdkError):
    """Raised when a truncated basis is too small for the requested dynamics."""


class StepUnderflowError(SdkError):
    """Raised when the adaptive integrator cannot satisfy its tolerance."""


class PropagationError(SdkError):
    """Raised when a propagation result fails a sanity check (e.g. norm drift)."""

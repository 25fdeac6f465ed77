"""Exception hierarchy shared across the package."""


class VacsqueezeError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(VacsqueezeError, ValueError):
    """A truncation dimension is too small or otherwise unusable."""


class TruncationOverflowError(VacsqueezeError, RuntimeError):
    """A state does not fit in the available truncated basis (tail mass too large)."""


class SymmetryViolationError(VacsqueezeError, ValueError):
    """An operator expected to be Hermitian is not (within tolerance)."""


class IntegrationFailureError(VacsqueezeError, RuntimeError):
    """Time evolution drifted off the unit sphere beyond tolerance."""


class NumericalFailureError(VacsqueezeError, RuntimeError):
    """A numerical post-condition (trace, residual) failed beyond tolerance."""


class BeyondCriticalError(VacsqueezeError, ValueError):
    """Coupling at or above the critical value: the effective oscillator is unstable."""


class ResolutionError(VacsqueezeError, ValueError):
    """Not enough bins / steps / modes to perform the requested computation."""


class GridAlignmentError(VacsqueezeError, ValueError):
    """Two per-mode data sets do not share the same frequency grid."""


class ConfigError(VacsqueezeError, ValueError):
    """A run configuration is missing fields, malformed, or inconsistent."""

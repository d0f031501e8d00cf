"""Exception hierarchy shared across the package."""


class HahnPathsError(Exception):
    """Base class for all package-specific errors."""


class EnumerationCapExceeded(HahnPathsError):
    """Brute-force enumeration would produce more families than the cap allows."""


class SamplerSizeError(HahnPathsError):
    """The subset-enumeration sampler is limited to N <= 20 paths."""


class DegenerateParameterError(HahnPathsError):
    """A zero denominator Pochhammer was reached with a nonzero numerator."""


class ParameterRegimeError(HahnPathsError):
    """Parameters are outside the regime where the requested quantity is positive/defined."""


class GaugeSingularError(HahnPathsError):
    """A vanishing coupling coefficient was divided against a nonzero term."""


class BoundaryRegimeError(HahnPathsError):
    """The macroscopic regime point sits on the boundary of its admissible box."""


class PoleOnContourError(HahnPathsError):
    """The contour integrand has a pole on the integration arc (c = 1 with negative power)."""


class IncompatibleRadicalsError(HahnPathsError):
    """Two exact square-root numbers cannot be added inside the rational field."""

"""Exception hierarchy shared by all modules."""


class SpecSingError(Exception):
    """Base class for errors raised by this package."""


class InvalidWavenumberError(SpecSingError, ValueError):
    """Wavenumber is non-positive, non-finite or too small for the plane-wave basis."""


class AtSingularityError(SpecSingError, ArithmeticError):
    """M22 underflowed: the scattering amplitudes diverge at this wavenumber."""


class DomainError(SpecSingError, ValueError):
    """Argument lies outside the domain where a closed-form expression is real."""


class NoRootError(SpecSingError, RuntimeError):
    """A bracketed root search found no sign change."""


class NoSingularityFoundError(SpecSingError, RuntimeError):
    """Newton search on M22 = 0 failed to converge."""


class LeftDomainError(SpecSingError, RuntimeError):
    """Newton search was driven to k <= 0."""


class BelowCutoffError(SpecSingError, ValueError):
    """Waveguide mode is evanescent at the requested frequency."""


class NoPropagatingModeError(BelowCutoffError):
    """A requested singular design would require an evanescent mode."""


class DegenerateBasisError(SpecSingError, RuntimeError):
    """Plane-wave basis matrix is too ill-conditioned to invert reliably."""

"""Exception hierarchy for the library."""


class AlohaError(Exception):
    """Base class for all library errors."""


class DivergentConstant(AlohaError, ValueError):
    """Path-loss exponent too small for the interference integrals to converge."""


class PoleAtOrigin(AlohaError, ValueError):
    """Power-law path loss evaluated at zero distance."""


class NotDefinedForRain(AlohaError, ValueError):
    """The quantity has no meaning in the Poisson rain model."""


class WrongFadingForClosedForm(AlohaError, ValueError):
    """A Rayleigh-only formula was called with another fading model."""


class QuadratureFailure(AlohaError, ArithmeticError):
    """Numerical integration did not reach the requested tolerance."""


class TailNotConverged(QuadratureFailure):
    """Truncated Fourier-domain integral kept changing as the cut-off grew."""


class ConfigError(AlohaError, ValueError):
    """Malformed or unknown entry in a parameter file."""

"""Slotted and non-slotted Aloha in Poisson bipolar networks.

Closed forms and quadrature for the success probability (``analytic``), a
Monte Carlo simulator of the same networks (``simulator``), parameter files
(``config``) and figure tables (``reproduce``).
"""
__version__ = "0.1.0"

from .errors import (AlohaError, ConfigError, DivergentConstant, NotDefinedForRain, PoleAtOrigin,
                     QuadratureFailure, TailNotConverged, WrongFadingForClosedForm)
from .model import (ClampedMax, Deterministic, DeterministicNoise, GenericFading, GenericNoise,
                    MinDistance, NetworkParams, NonSlottedRenewal, PoissonRain, PowerLaw, Rayleigh,
                    Shifted, Slotted, ZeroNoise, active_density, channel_occupation_fraction,
                    equivalent_rain_density, path_loss_eval)
from .config import Config, dump_config, load_config, parse_config

__all__ = [
    "__version__", "AlohaError", "ConfigError", "DivergentConstant", "NotDefinedForRain",
    "PoleAtOrigin", "QuadratureFailure", "TailNotConverged", "WrongFadingForClosedForm",
    "ClampedMax", "Deterministic", "DeterministicNoise", "GenericFading", "GenericNoise",
    "MinDistance", "NetworkParams", "NonSlottedRenewal", "PoissonRain", "PowerLaw", "Rayleigh",
    "Shifted", "Slotted", "ZeroNoise", "active_density", "channel_occupation_fraction",
    "equivalent_rain_density", "path_loss_eval", "Config", "dump_config", "load_config",
    "parse_config",
]

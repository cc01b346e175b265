"""Network, channel and medium-access parameters.

Units: distances in meters, time in seconds, powers normalised so that every
emitter transmits with unit power.  All objects are frozen dataclasses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .errors import DivergentConstant, NotDefinedForRain, PoleAtOrigin

# ---------------------------------------------------------------------------
# Path loss
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerLaw:
    """``l(u) = (A u)**beta``; singular at the origin."""

    A: float = 1.0
    beta: float = 4.0

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError(f"A must be positive, got {self.A}")
        if not self.beta > 2:
            raise DivergentConstant(f"power-law exponent must exceed 2, got {self.beta}")

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(u <= 0):
            raise PoleAtOrigin("power-law path loss has a pole at u = 0")
        out = (self.A * u) ** self.beta
        return out if out.ndim else float(out)

    @property
    def base(self) -> "PowerLaw":
        return self

    def inverse(self, level: float) -> float:
        """Distance at which the attenuation reaches ``level``."""
        return level ** (1.0 / self.beta) / self.A


@dataclass(frozen=True)
class ClampedMax:
    """``max(1, l(u))``."""

    inner: PowerLaw = field(default_factory=PowerLaw)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        out = np.maximum(1.0, (self.inner.A * u) ** self.inner.beta)
        return out if out.ndim else float(out)

    @property
    def base(self) -> PowerLaw:
        return self.inner

    def inverse(self, level: float) -> float:
        return self.inner.inverse(level)


@dataclass(frozen=True)
class Shifted:
    """``l(u + 1)``."""

    inner: PowerLaw = field(default_factory=PowerLaw)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        out = (self.inner.A * (u + 1.0)) ** self.inner.beta
        return out if out.ndim else float(out)

    @property
    def base(self) -> PowerLaw:
        return self.inner

    def inverse(self, level: float) -> float:
        # only used as an integration scale, so keep it positive
        return max(self.inner.inverse(level) - 1.0, self.inner.inverse(level) / 2)


@dataclass(frozen=True)
class MinDistance:
    """``l(max(u, u0))``."""

    inner: PowerLaw = field(default_factory=PowerLaw)
    u0: float = 1.0

    def __post_init__(self):
        if not self.u0 > 0:
            raise ValueError(f"u0 must be positive, got {self.u0}")

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        out = (self.inner.A * np.maximum(u, self.u0)) ** self.inner.beta
        return out if out.ndim else float(out)

    @property
    def base(self) -> PowerLaw:
        return self.inner

    def inverse(self, level: float) -> float:
        return max(self.inner.inverse(level), self.u0)


PathLossModel = Union[PowerLaw, ClampedMax, Shifted, MinDistance]


def path_loss_eval(model: PathLossModel, u):
    """Evaluate the attenuation ``l(u)``."""
    return model(u)


# ---------------------------------------------------------------------------
# Fading
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rayleigh:
    """Exponential power fading with rate ``mu`` (mean ``1/mu``)."""

    mu: float = 1.0

    def __post_init__(self):
        if not (0 < self.mu < math.inf):
            raise ValueError(f"fading rate must be positive and finite, got {self.mu}")

    @property
    def mean(self) -> float:
        return 1.0 / self.mu

    def laplace(self, xi):
        return self.mu / (self.mu + xi)

    def sample(self, rng: np.random.Generator, size):
        return rng.exponential(1.0 / self.mu, size)


@dataclass(frozen=True)
class Deterministic:
    """No fading: ``F == 1/mu``."""

    mu: float = 1.0

    def __post_init__(self):
        if not (0 < self.mu < math.inf):
            raise ValueError(f"fading rate must be positive and finite, got {self.mu}")

    @property
    def mean(self) -> float:
        return 1.0 / self.mu

    @property
    def value(self) -> float:
        return 1.0 / self.mu

    def laplace(self, xi):
        return np.exp(-np.asarray(xi) / self.mu)

    def sample(self, rng: np.random.Generator, size):
        return np.full(size, 1.0 / self.mu)


@dataclass(frozen=True)
class GenericFading:
    """Fading known through its Laplace transform (and optionally a sampler).

    ``laplace`` must accept complex arguments for the Fourier-domain route.
    """

    laplace: Callable
    mean: float
    sampler: Optional[Callable] = None

    def __post_init__(self):
        if not (0 < self.mean < math.inf):
            raise ValueError(f"mean fading must be positive and finite, got {self.mean}")

    @property
    def mu(self) -> float:
        return 1.0 / self.mean

    def sample(self, rng: np.random.Generator, size):
        if self.sampler is None:
            raise NotImplementedError("this fading model has no sampler")
        return np.asarray(self.sampler(rng, size), dtype=float)


FadingModel = Union[Rayleigh, Deterministic, GenericFading]


# ---------------------------------------------------------------------------
# Noise
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroNoise:
    def laplace(self, s):
        return np.ones_like(s) if np.ndim(s) else 1.0

    def sample(self, rng, size):
        return np.zeros(size)


@dataclass(frozen=True)
class DeterministicNoise:
    w: float

    def __post_init__(self):
        if not self.w >= 0:
            raise ValueError(f"noise power must be nonnegative, got {self.w}")

    def laplace(self, s):
        return np.exp(-np.asarray(s) * self.w) if np.ndim(s) else np.exp(-s * self.w)

    def sample(self, rng, size):
        return np.full(size, float(self.w))


@dataclass(frozen=True)
class GenericNoise:
    laplace: Callable
    sampler: Optional[Callable] = None

    def sample(self, rng, size):
        if self.sampler is None:
            raise NotImplementedError("this noise model has no sampler")
        return np.asarray(self.sampler(rng, size), dtype=float)


NoiseModel = Union[ZeroNoise, DeterministicNoise, GenericNoise]


# ---------------------------------------------------------------------------
# Network and MAC
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NetworkParams:
    """Poisson bipolar network: node density, link length and SINR threshold."""

    lam: float = 0.001
    r: float = math.sqrt(1000.0)
    T: float = 10.0
    path_loss: PathLossModel = field(default_factory=PowerLaw)
    fading: FadingModel = field(default_factory=Rayleigh)
    noise: NoiseModel = field(default_factory=ZeroNoise)

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if not self.r > 0:
            raise ValueError(f"r must be positive, got {self.r}")
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T}")

    @property
    def beta(self) -> float:
        return self.path_loss.base.beta

    @property
    def l_r(self) -> float:
        return float(self.path_loss(self.r))

    @property
    def is_noiseless_power_law(self) -> bool:
        zero_noise = isinstance(self.noise, ZeroNoise) or (
            isinstance(self.noise, DeterministicNoise) and self.noise.w == 0)
        return zero_noise and isinstance(self.path_loss, PowerLaw)


@dataclass(frozen=True)
class Slotted:
    p: float
    B: float = 1.0

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not self.B > 0:
            raise ValueError(f"B must be positive, got {self.B}")


@dataclass(frozen=True)
class NonSlottedRenewal:
    """Packets of length ``B`` separated by exponential(``epsilon``) back-offs."""

    epsilon: float
    B: float = 1.0

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not self.B > 0:
            raise ValueError(f"B must be positive, got {self.B}")

    @property
    def epsilon_B(self) -> float:
        return self.epsilon * self.B

    @classmethod
    def from_tau(cls, tau: float, B: float = 1.0) -> "NonSlottedRenewal":
        """Back-off rate giving a channel-occupation fraction ``tau``."""
        if not 0 < tau < 1:
            raise ValueError(f"tau must lie in (0, 1), got {tau}")
        return cls(epsilon=tau / (1.0 - tau) / B, B=B)


@dataclass(frozen=True)
class PoissonRain:
    """Space-time Poisson process of packet starts with intensity ``lambda_s``."""

    lambda_s: float
    B: float = 1.0

    def __post_init__(self):
        if not self.lambda_s >= 0:
            raise ValueError(f"lambda_s must be nonnegative, got {self.lambda_s}")
        if not self.B > 0:
            raise ValueError(f"B must be positive, got {self.B}")

    @classmethod
    def matching(cls, lam: float, tau: float, B: float = 1.0) -> "PoissonRain":
        """Rain with the same space-time channel occupation as ``lam`` nodes at ``tau``."""
        return cls(lambda_s=equivalent_rain_density(lam, tau, B), B=B)


MacConfig = Union[Slotted, NonSlottedRenewal, PoissonRain]


def channel_occupation_fraction(mac: MacConfig) -> float:
    """Average fraction of time a node holds the channel (``tau``)."""
    if isinstance(mac, Slotted):
        return mac.p
    if isinstance(mac, NonSlottedRenewal):
        eb = mac.epsilon_B
        return eb / (1.0 + eb)
    if isinstance(mac, PoissonRain):
        raise NotDefinedForRain("the rain model does not separate node density from occupation")
    raise TypeError(f"unknown MAC configuration {mac!r}")


def equivalent_rain_density(lam: float, tau: float, B: float) -> float:
    """Rain intensity ``lambda_s`` with ``lambda_s * B == lam * tau``."""
    if not lam > 0:
        raise ValueError(f"lam must be positive, got {lam}")
    if not 0 <= tau <= 1:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    if not B > 0:
        raise ValueError(f"B must be positive, got {B}")
    return lam * tau / B


def active_density(net: NetworkParams, mac: MacConfig) -> float:
    """Mean spatial density of simultaneously active emitters."""
    if isinstance(mac, PoissonRain):
        return mac.lambda_s * mac.B
    return net.lam * channel_occupation_fraction(mac)

"""Optimal medium-access and distance tuning; slotted vs non-slotted ratios.

All results assume no noise, Rayleigh fading and power-law path loss.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..model import NetworkParams
from .constants import k_beta
from .coverage import _k_prime_cached
from .quadrature import DEFAULT_QUADRATURE, QuadratureSettings


@dataclass(frozen=True)
class OptimalTuning:
    """Optimal control value and the objective reached there.

    ``control == inf`` flags the no-back-off case (transmit continuously).
    """

    control: float
    objective_value: float

    def __post_init__(self):
        if not self.control > 0:
            raise ValueError("optimal control must be positive")

    @property
    def no_backoff(self) -> bool:
        return math.isinf(self.control)

    def describe(self) -> str:
        control = "no-backoff" if self.no_backoff else repr(self.control)
        return f"control={control} objective={self.objective_value!r}"


def _constant(beta: float, slotted: bool, q: QuadratureSettings) -> float:
    return k_beta(beta) if slotted else _k_prime_cached(beta, q)[0]


def _geometry(net: NetworkParams) -> float:
    return net.r ** 2 * net.T ** (2.0 / net.beta)


def optimal_tau(net: NetworkParams, q: QuadratureSettings = DEFAULT_QUADRATURE) -> OptimalTuning:
    """Channel-occupation fraction maximising the density of successes (non-slotted)."""
    c = _constant(net.beta, False, q) * _geometry(net)
    tau = 1.0 / (net.lam * c)
    if net.lam > 1.0 / c:
        return OptimalTuning(tau, net.lam * tau * math.exp(-net.lam * tau * c))
    # d_suc increases on [0, 1): best is never to back off
    return OptimalTuning(math.inf, net.lam * math.exp(-net.lam * c))


def optimal_p(net: NetworkParams, q: QuadratureSettings = DEFAULT_QUADRATURE) -> OptimalTuning:
    """Slotted medium-access probability maximising the density of successes (capped at 1)."""
    c = k_beta(net.beta) * _geometry(net)
    p = min(1.0, 1.0 / (net.lam * c))
    return OptimalTuning(p, net.lam * p * math.exp(-net.lam * p * c))


def optimal_r(lam: float, tau: float, T: float, beta: float, slotted: bool = False,
              q: QuadratureSettings = DEFAULT_QUADRATURE) -> OptimalTuning:
    """Link distance maximising mean progress ``r p_c``."""
    if not lam * tau > 0:
        raise ValueError("lam * tau must be positive")
    k = _constant(beta, slotted, q)
    r = 1.0 / math.sqrt(2.0 * k * T ** (2.0 / beta) * lam * tau)
    prog = r * math.exp(-lam * tau * r ** 2 * T ** (2.0 / beta) * k)
    return OptimalTuning(r, prog)


def goodput_ratio(net: NetworkParams, tau: float, q: QuadratureSettings = DEFAULT_QUADRATURE) -> float:
    """Non-slotted over slotted per-node good-put at equal ``tau``."""
    beta = net.beta
    gap = _constant(beta, False, q) - k_beta(beta)
    return math.exp(-gap * net.lam * _geometry(net) * tau)


def optimized_goodput_ratio(beta: float, q: QuadratureSettings = DEFAULT_QUADRATURE) -> float:
    """Ratio of optimal densities of successes; depends on ``beta`` only."""
    return k_beta(beta) / _constant(beta, False, q)


def optimized_progress_ratio(beta: float, q: QuadratureSettings = DEFAULT_QUADRATURE) -> float:
    """Ratio of mean progress at the respective optimal distances."""
    return math.sqrt(optimized_goodput_ratio(beta, q))


def density_of_successes(lam: float, tau: float, p_c: float) -> float:
    return lam * tau * p_c

"""Success probabilities under Rayleigh fading.

Slotted Aloha, the Poisson-renewal and the Poisson rain model of non-slotted
Aloha (average-interference constraint), plus the Laplace transforms of the
interference they are built from.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import WrongFadingForClosedForm
from ..model import NetworkParams, NonSlottedRenewal, PoissonRain, Rayleigh, Slotted, \
    channel_occupation_fraction
from .constants import k_beta, k_prime_integral
from .quadrature import DEFAULT_QUADRATURE, QuadratureSettings, integrate_half_line, \
    one_minus_x_log1p_inv

# inner time integrals of the renewal model: nodes per panel, and the plain rule
PANEL_ORDER = 16
GAUSS_LEGENDRE_ORDER = 64


class Method(enum.Enum):
    CLOSED_FORM = "ClosedForm"
    QUADRATURE = "Quadrature"


@dataclass(frozen=True)
class CoverageResult:
    probability: float
    method: Method
    est_abs_error: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.probability <= 1.0:
            raise ValueError(f"probability out of range: {self.probability}")
        if not self.est_abs_error >= 0:
            raise ValueError("error estimate must be nonnegative")

    def __float__(self):
        return float(self.probability)


def _require_rayleigh(net: NetworkParams) -> float:
    if not isinstance(net.fading, Rayleigh):
        raise WrongFadingForClosedForm(
            "closed forms assume Rayleigh fading; use coverage_general_fading")
    return net.fading.mu


def _noise_factor(net: NetworkParams) -> float:
    mu = net.fading.mu
    return float(np.real(net.noise.laplace(mu * net.T * net.l_r)))


def _finish(noise: float, exponent: float, err: float, method: Method) -> CoverageResult:
    p = noise * math.exp(-exponent)
    return CoverageResult(min(max(p, 0.0), 1.0), method, p * err)


def _threshold_scale(net: NetworkParams) -> float:
    # distance at which an interferer is received exactly at threshold level
    return net.path_loss.inverse(net.T * net.l_r)


# ---------------------------------------------------------------------------
# Slotted Aloha
# ---------------------------------------------------------------------------


def slotted_exponent(net: NetworkParams, density: float,
                     q: QuadratureSettings = DEFAULT_QUADRATURE) -> tuple[float, float]:
    """``2 pi density int u / (1 + l(u)/(T l(r))) du`` and its error."""
    level = net.T * net.l_r

    def f(u):
        return u / (1.0 + net.path_loss(u) / level)

    val, err = integrate_half_line(f, _threshold_scale(net), q)
    c = 2.0 * math.pi * density
    return c * val, c * err


def p_slot(net: NetworkParams, mac: Slotted, q: QuadratureSettings = DEFAULT_QUADRATURE,
           force_quadrature: bool = False) -> CoverageResult:
    """Success probability of a slotted-Aloha transmission."""
    _require_rayleigh(net)
    density = net.lam * mac.p
    if density == 0:
        return CoverageResult(_noise_factor(net), Method.CLOSED_FORM, 0.0)
    if net.is_noiseless_power_law and not force_quadrature:
        exponent = density * net.r ** 2 * net.T ** (2.0 / net.beta) * k_beta(net.beta)
        return _finish(1.0, exponent, 0.0, Method.CLOSED_FORM)
    exponent, err = slotted_exponent(net, density, q)
    return _finish(_noise_factor(net), exponent, err, Method.QUADRATURE)


def laplace_I_slotted(xi, net: NetworkParams, mac: Slotted,
                      q: QuadratureSettings = DEFAULT_QUADRATURE) -> complex | float:
    """Laplace transform of the slotted interference, Rayleigh fading; complex ``xi`` allowed."""
    mu = _require_rayleigh(net)
    if xi == 0 or mac.p == 0:
        return 1.0
    is_complex = np.iscomplexobj(xi)

    def f(u):
        return u * xi / (xi + mu * net.path_loss(u))

    val, _ = integrate_half_line(f, net.path_loss.inverse(abs(xi) / mu), q, complex_func=is_complex)
    out = np.exp(-2.0 * math.pi * net.lam * mac.p * val)
    return complex(out) if is_complex else float(out)


# ---------------------------------------------------------------------------
# Poisson rain
# ---------------------------------------------------------------------------


def rain_exponent_integral(xi, net: NetworkParams,
                           q: QuadratureSettings = DEFAULT_QUADRATURE) -> tuple[complex | float, float]:
    """``int u (1 - (mu l(u)/xi) log(1 + xi/(mu l(u)))) du``."""
    mu = net.fading.mu
    is_complex = np.iscomplexobj(xi)

    def f(u):
        return u * one_minus_x_log1p_inv(mu * net.path_loss(u) / xi)

    return integrate_half_line(f, net.path_loss.inverse(abs(xi) / mu), q, complex_func=is_complex)


def laplace_I_mean_rain(xi, net: NetworkParams, mac: PoissonRain,
                        q: QuadratureSettings = DEFAULT_QUADRATURE) -> complex | float:
    """Laplace transform of the packet-averaged interference in the rain model.

    Rayleigh fading with rate ``mu``. ``xi`` may be complex (``Re xi >= 0``),
    which is how the Fourier-domain route consumes it.
    """
    _require_rayleigh(net)
    if xi == 0 or mac.lambda_s == 0:
        return 1.0
    val, _ = rain_exponent_integral(xi, net, q)
    out = np.exp(-4.0 * math.pi * mac.lambda_s * mac.B * val)
    return complex(out) if np.iscomplexobj(xi) else float(np.real(out))


def p_rain_mean(net: NetworkParams, mac: PoissonRain, q: QuadratureSettings = DEFAULT_QUADRATURE,
                force_quadrature: bool = False) -> CoverageResult:
    """Success probability in the Poisson rain model, average-interference constraint."""
    _require_rayleigh(net)
    load = mac.lambda_s * mac.B
    if load == 0:
        return CoverageResult(_noise_factor(net), Method.CLOSED_FORM, 0.0)
    if net.is_noiseless_power_law and not force_quadrature:
        kp, kerr = _k_prime_cached(net.beta, q)
        scale = load * net.r ** 2 * net.T ** (2.0 / net.beta)
        return _finish(1.0, scale * kp, scale * kerr, Method.CLOSED_FORM)
    xi = net.fading.mu * net.T * net.l_r
    val, err = rain_exponent_integral(xi, net, q)
    c = 4.0 * math.pi * load
    return _finish(_noise_factor(net), c * val, c * err, Method.QUADRATURE)


@lru_cache(maxsize=256)
def _k_prime_cached(beta: float, q: QuadratureSettings) -> tuple[float, float]:
    return k_prime_integral(beta, q)


def p_ns(lam: float, epsilon: float, B: float, r: float, T: float, beta: float,
         q: QuadratureSettings = DEFAULT_QUADRATURE) -> float:
    """Non-slotted success probability from the rain model at matched occupation.

    Noiseless power-law channel; ``epsilon = inf`` means no back-off.
    """
    eb = epsilon * B
    if eb == 0:
        return 1.0
    tau = 1.0 if math.isinf(eb) else 1.0 / (1.0 + 1.0 / eb)
    kp, _ = _k_prime_cached(beta, q)
    return math.exp(-lam * tau * r ** 2 * T ** (2.0 / beta) * kp)


# ---------------------------------------------------------------------------
# Poisson renewal
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4)
def _gauss_legendre_01(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


@lru_cache(maxsize=64)
def _graded_rule(levels: int, n: int):
    """Gauss-Legendre panels ``[1 - 2^-k, 1 - 2^-(k+1)]`` plus a last one ending at 1.

    Resolves integrands that change on a scale ``2^-levels`` next to ``x = 1``.
    """
    x0, w0 = _gauss_legendre_01(n)
    edges = np.concatenate([1.0 - 0.5 ** np.arange(levels + 1), [1.0]])
    widths = np.diff(edges)
    x = (edges[:-1, None] + widths[:, None] * x0[None, :]).ravel()
    w = (widths[:, None] * w0[None, :]).ravel()
    return x, w


def _levels(a: float) -> int:
    # interferer-to-threshold ratio a puts the transition at distance 1/a from 1
    return int(min(max(math.ceil(math.log2(max(a, 1.0))) + 2, 1), 60))


def renewal_pair_deficit(a: float, eb: float, order: int = PANEL_ORDER) -> float:
    """``1 - E[1/((1 + a h(R)) (1 + a h(S)))]`` for one renewal interferer.

    ``a = T l(r) / l(u)`` is the interferer-to-threshold power ratio and
    ``eb = epsilon B``.  Written as a sum of positive terms so that it stays
    accurate when ``a`` is tiny.
    """
    x, w = _graded_rule(_levels(a), order)
    # interferer idle at time 0, next packet starts at s (scaled by B)
    x1 = (1.0 - x) * a
    single = np.dot(w, eb * np.exp(-eb * x) * x1 / (1.0 + x1))
    # interferer busy at 0 since -t, next packet after back-off s' = t*sigma
    t = x[:, None]
    s = t * x[None, :]
    xa = (1.0 - t) * a
    ya = (t - s) * a
    inner = np.exp(-eb * s) * (xa + ya + xa * ya) / ((1.0 + xa) * (1.0 + ya))
    double = eb * eb * np.dot(w, t[:, 0] * (inner @ w))
    # the exponential back-off beyond the packet window is handled by the first term
    return (2.0 * single + double) / (1.0 + eb)


def renewal_exponent(net: NetworkParams, mac: NonSlottedRenewal,
                     q: QuadratureSettings = DEFAULT_QUADRATURE) -> tuple[float, float]:
    eb = mac.epsilon_B
    level = net.T * net.l_r

    def f(u):
        return u * renewal_pair_deficit(level / net.path_loss(u), eb)

    val, err = integrate_half_line(f, _threshold_scale(net), q)
    c = 2.0 * math.pi * net.lam
    return c * val, c * err


def p_renewal_mean(net: NetworkParams, mac: NonSlottedRenewal,
                   q: QuadratureSettings = DEFAULT_QUADRATURE) -> CoverageResult:
    """Success probability in the Poisson-renewal model, average-interference constraint.

    Outer distance integral is adaptive; the two time integrals inside use
    fixed Gauss-Legendre rules.
    """
    _require_rayleigh(net)
    exponent, err = renewal_exponent(net, mac, q)
    return _finish(_noise_factor(net), exponent, err, Method.QUADRATURE)


def renewal_display_deficit(a: float, eb: float, order: int = GAUSS_LEGENDRE_ORDER) -> float:
    """Deficit with the back-off-first term counted once instead of twice.

    Kept to document the discrepancy with the compact display of the renewal
    formula: this variant does not vanish as ``a -> 0``.
    """
    x, w = _gauss_legendre_01(order)
    first = np.exp(-eb)
    single = np.dot(w, eb * np.exp(-eb * x) / (1.0 + (1.0 - x) * a))
    t = x[:, None]
    s = t * x[None, :]
    inner = eb * np.exp(-eb * s) / (1.0 + (t - s) * a)
    double = np.dot(w, eb / (1.0 + (1.0 - x) * a) * x * (inner @ w))
    return 1.0 - (first + single + double) / (1.0 + eb)


def coverage(net: NetworkParams, mac, q: QuadratureSettings = DEFAULT_QUADRATURE) -> CoverageResult:
    """Dispatch to the closed form / quadrature for the given MAC."""
    if isinstance(mac, Slotted):
        return p_slot(net, mac, q)
    if isinstance(mac, PoissonRain):
        return p_rain_mean(net, mac, q)
    if isinstance(mac, NonSlottedRenewal):
        return p_renewal_mean(net, mac, q)
    raise TypeError(f"unknown MAC configuration {mac!r}")


__all__ = [
    "CoverageResult", "Method", "p_slot", "p_rain_mean", "p_renewal_mean", "p_ns",
    "laplace_I_mean_rain", "laplace_I_slotted", "renewal_pair_deficit", "coverage",
    "channel_occupation_fraction",
]

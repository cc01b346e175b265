"""Path-loss constants of the slotted and non-slotted outage exponents."""
from __future__ import annotations

import math

import numpy as np

from ..errors import DivergentConstant
from .quadrature import DEFAULT_QUADRATURE, QuadratureSettings, integrate_interval, \
    one_minus_x_log1p_inv


def _check_beta(beta: float) -> None:
    if not beta > 2:
        raise DivergentConstant(f"the constant diverges for beta <= 2 (got {beta})")


def k_beta(beta: float) -> float:
    """Slotted constant ``K(beta) = 2 pi^2 / (beta sin(2 pi / beta))``."""
    _check_beta(beta)
    return 2.0 * math.pi ** 2 / (beta * math.sin(2.0 * math.pi / beta))


def k_beta_quadrature(beta: float, q: QuadratureSettings = DEFAULT_QUADRATURE) -> float:
    """``K(beta)`` as ``2 pi int_0^inf v / (1 + v^beta) dv``, by adaptive quadrature.

    Written in ``x = v^beta`` and split at 1 so both pieces carry an
    algebraic endpoint weight that QUADPACK integrates exactly.
    """
    _check_beta(beta)
    a = 2.0 / beta
    # int_0^1 x^(a-1)/(1+x) dx  and  int_1^inf -> int_0^1 w^(-a)/(1+w) dw
    head, _ = integrate_interval(lambda x: 1.0 / (1.0 + x), 0.0, 1.0, q,
                                 weight="alg", wvar=(a - 1.0, 0.0))
    tail, _ = integrate_interval(lambda w: 1.0 / (1.0 + w), 0.0, 1.0, q,
                                 weight="alg", wvar=(-a, 0.0))
    return 2.0 * math.pi / beta * (head + tail)


def _kprime_head(u):
    return one_minus_x_log1p_inv(u)


def _kprime_tail(w):
    # u = 1/w on (1, inf): u^(a-1) g(u) du = w^(-a) * g(1/w) / w dw, g(1/w)/w -> 1/2
    w = np.asarray(w, dtype=float)
    small = w < 1e-4
    ws = np.where(small, 1.0, w)
    direct = (1.0 - np.log1p(ws) / ws) / ws
    series = 0.5 - w / 3.0 + w * w / 4.0 - w ** 3 / 5.0
    out = np.where(small, series, direct)
    return out if out.ndim else float(out)


def k_prime_integral(beta: float, q: QuadratureSettings = DEFAULT_QUADRATURE) -> tuple[float, float]:
    """``(K'(beta), abs_error)`` from the improper integral."""
    _check_beta(beta)
    a = 2.0 / beta
    head, eh = integrate_interval(_kprime_head, 0.0, 1.0, q, weight="alg", wvar=(a - 1.0, 0.0))
    tail, et = integrate_interval(_kprime_tail, 0.0, 1.0, q, weight="alg", wvar=(-a, 0.0))
    c = 4.0 * math.pi / beta
    return c * (head + tail), c * (eh + et)


def k_prime_beta(beta: float, q: QuadratureSettings = DEFAULT_QUADRATURE) -> float:
    """Non-slotted constant ``K'(beta) = 4 pi / beta int u^(2/beta-1) (1 - u log(1 + 1/u)) du``."""
    return k_prime_integral(beta, q)[0]

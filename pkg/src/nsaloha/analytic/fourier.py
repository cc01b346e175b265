"""Success probability for general fading through Plancherel-Parseval."""
from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from ..errors import QuadratureFailure, TailNotConverged
from ..model import NetworkParams
from .coverage import CoverageResult, Method
from .quadrature import DEFAULT_QUADRATURE, QuadratureSettings, integrate_interval

MAX_DOUBLINGS = 64
# a piece that QUADPACK cannot resolve is bisected up to this depth
MAX_SPLIT_DEPTH = 8
# real argument standing in for "infinity" when probing the atom of I + W at 0
_ATOM_PROBE = 1e8


def _piece(f, lo: float, hi: float, q: QuadratureSettings, depth: int = 0):
    """Integral over ``[lo, hi]``, bisecting while the error estimate exceeds the tolerance.

    Oscillating tails can hold more periods than one QUADPACK call resolves.
    """
    try:
        val, err = integrate_interval(f, lo, hi, q)
        if err <= max(q.abs_tol, q.rel_tol * abs(val)) or depth >= MAX_SPLIT_DEPTH:
            return val, err
    except QuadratureFailure:
        if depth >= MAX_SPLIT_DEPTH:
            raise
    mid = 0.5 * (lo + hi)
    a, ea = _piece(f, lo, mid, q, depth + 1)
    b, eb = _piece(f, mid, hi, q, depth + 1)
    return a + b, ea + eb


def coverage_general_fading(net: NetworkParams, laplace_I: Callable,
                            q: QuadratureSettings = DEFAULT_QUADRATURE,
                            zero_atom: Optional[float] = None) -> CoverageResult:
    """``P{F >= T l(r) (I + W)}`` from the Laplace transforms of F, I and W.

    The Fourier-domain integrand is integrated over ``[-S, S]`` (as twice the
    real part over ``[0, S]``) with ``S`` doubled from the fading rate ``mu``
    (the scale on which ``L_F(-2 i pi s)`` varies) until a doubling adds less
    than ``q.abs_tol`` twice in a row.

    The inversion integral returns ``P{F > Y} - P{Y = 0}/2`` when
    ``Y = T l(r) (I + W)`` has an atom at zero, so half that atom is added
    back.  ``zero_atom`` overrides the probe ``|L_I(z) L_W(z)|`` at a large real
    ``z``.
    """
    l_r, T = net.l_r, net.T
    L_F = net.fading.laplace
    L_W = net.noise.laplace
    mean_f = net.fading.mean

    def integrand(s):
        if s == 0.0:
            return mean_f
        z = 2j * math.pi * s
        xi = z * l_r * T
        val = laplace_I(xi) * L_W(xi) * (L_F(-z) - 1.0) / z
        return float(np.real(val))

    total = 0.0
    err = 0.0
    lo, hi = 0.0, net.fading.mu
    quiet = 0
    for _ in range(MAX_DOUBLINGS):
        try:
            piece, e = _piece(integrand, lo, hi, q)
        except QuadratureFailure as exc:
            raise TailNotConverged(f"piece [{lo:.3g}, {hi:.3g}] failed: {exc}") from exc
        total += 2.0 * piece
        err += 2.0 * e
        quiet = quiet + 1 if 2.0 * abs(piece) < q.abs_tol else 0
        if quiet >= 2:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise TailNotConverged(f"Fourier integral still changing at S = {hi:.3g}")

    if zero_atom is None:
        probe = _ATOM_PROBE * net.fading.mu * T * l_r
        zero_atom = float(abs(laplace_I(probe) * L_W(probe)))
    p = total + 0.5 * zero_atom
    return CoverageResult(min(max(p, 0.0), 1.0), Method.QUADRATURE, err + q.abs_tol)

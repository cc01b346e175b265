"""Random primitives: point processes, renewal epochs, reproducible streams."""
from __future__ import annotations

from typing import Sequence

import numpy as np


def stream(seed: int, *key: int) -> np.random.Generator:
    """Counter-based generator for the stream addressed by ``(seed, *key)``.

    Streams with different keys are statistically independent, and a given
    key always yields the same numbers regardless of evaluation order.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))


def sample_ppp(intensity: float, region: Sequence[tuple[float, float]],
               rng: np.random.Generator) -> np.ndarray:
    """Homogeneous Poisson process on a box; returns an ``(N, dim)`` array.

    ``region`` lists ``(low, high)`` per coordinate, so a space-time box
    ``[0, L]^2 x [-B, B]`` is ``[(0, L), (0, L), (-B, B)]``.
    """
    if intensity < 0:
        raise ValueError("intensity must be nonnegative")
    lo = np.array([a for a, _ in region], dtype=float)
    hi = np.array([b for _, b in region], dtype=float)
    if np.any(hi < lo):
        raise ValueError("region bounds must satisfy low <= high")
    measure = float(np.prod(hi - lo))
    n = rng.poisson(intensity * measure) if intensity > 0 else 0
    return lo + (hi - lo) * rng.random((n, len(region)))


def sample_ppp_batch(intensity: float, region: Sequence[tuple[float, float]], replications: int,
                     rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Independent realisations of ``sample_ppp`` stacked together.

    Returns ``(rep, points)`` where ``rep[k]`` is the replication of row ``k``.
    """
    lo = np.array([a for a, _ in region], dtype=float)
    hi = np.array([b for _, b in region], dtype=float)
    counts = rng.poisson(intensity * float(np.prod(hi - lo)), replications)
    rep = np.repeat(np.arange(replications), counts)
    return rep, lo + (hi - lo) * rng.random((rep.size, len(region)))


def sample_renewal_interferer_epochs(epsilon: float, B: float, rng: np.random.Generator,
                                     size=None):
    """Last packet start ``R <= 0`` and next start ``S > 0`` of a stationary renewal node.

    With probability ``eB/(1+eB)`` the node is transmitting at time 0 and
    ``R`` is uniform on ``[-B, 0]``; the next start then follows a full
    back-off, ``S = R + B + Exp(epsilon)``.  Otherwise it is backing off:
    ``R = -(B + Exp(epsilon))`` and, by memorylessness, ``S = Exp(epsilon)``.
    """
    if not (epsilon > 0 and B > 0):
        raise ValueError("epsilon and B must be positive")
    eb = epsilon * B
    busy = rng.random(size) < eb / (1.0 + eb)
    u = rng.random(size)
    back_off = rng.exponential(1.0 / epsilon, size)
    age = rng.exponential(1.0 / epsilon, size)
    R = np.where(busy, -B * u, -(B + age))
    S = np.where(busy, R + B + back_off, back_off)
    if size is None:
        return float(R), float(S)
    return R, S


def renewal_overlap_probability(epsilon: float, B: float) -> float:
    """Probability that a renewal node sends some packet overlapping ``[0, B]``."""
    eb = epsilon * B
    return (eb + 1.0 - np.exp(-eb)) / (1.0 + eb)


def sample_overlapping_renewal_epochs(epsilon: float, B: float, rng: np.random.Generator,
                                      size: int):
    """``(R, S)`` conditioned on ``R > -B or S < B``.

    Same law as filtering ``sample_renewal_interferer_epochs`` but without
    drawing the nodes that cannot interfere.
    """
    eb = epsilon * B
    q = renewal_overlap_probability(epsilon, B)
    busy = rng.random(size) < (eb / (1.0 + eb)) / q
    u = rng.random(size)
    back_off = rng.exponential(1.0 / epsilon, size)
    age = rng.exponential(1.0 / epsilon, size)
    # idle at 0: the residual back-off must end before B
    short = -np.log1p(-u * -np.expm1(-eb)) / epsilon
    R = np.where(busy, -B * u, -(B + age))
    S = np.where(busy, R + B + back_off, short)
    return R, S


def weight_h(s, B: float):
    """Fraction of ``[0, B]`` covered by a packet of length ``B`` started at ``s``."""
    out = np.maximum(B - np.abs(np.asarray(s, dtype=float)), 0.0) / B
    return out if out.ndim else float(out)

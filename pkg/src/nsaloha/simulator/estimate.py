"""Bernoulli point estimates with 95% confidence half-widths."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Z95 = 1.959963984540054


@dataclass(frozen=True)
class Estimate:
    mean: float
    ci95_halfwidth: float
    n: int

    def __post_init__(self):
        if not 0.0 <= self.mean <= 1.0:
            raise ValueError(f"estimate out of [0, 1]: {self.mean}")
        if self.n < 1:
            raise ValueError("an estimate needs at least one replication")

    @property
    def low(self) -> float:
        return self.mean - self.ci95_halfwidth

    @property
    def high(self) -> float:
        return self.mean + self.ci95_halfwidth

    def contains(self, value: float) -> bool:
        return self.low <= value <= self.high

    def __str__(self):
        return f"{self.mean:.6f} +/- {self.ci95_halfwidth:.6f} (n={self.n})"


def wilson_interval(successes: int, n: int, z: float = Z95) -> tuple[float, float]:
    phat = successes / n
    denom = 1.0 + z * z / n
    centre = (phat + z * z / (2 * n)) / denom
    half = z * math.sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom
    return centre - half, centre + half


def bernoulli_estimate(outcomes) -> Estimate:
    """Normal-approximation interval; Wilson's when fewer than 10 successes.

    For the Wilson case the half-width is the larger distance from the point
    estimate to either Wilson bound, so ``[mean - hw, mean + hw]`` covers it.
    """
    outcomes = np.asarray(outcomes, dtype=bool)
    n = outcomes.size
    k = int(outcomes.sum())
    phat = k / n
    if k < 10:
        lo, hi = wilson_interval(k, n)
        half = max(phat - lo, hi - phat)
    else:
        half = Z95 * math.sqrt(phat * (1.0 - phat) / n)
    return Estimate(phat, half, n)

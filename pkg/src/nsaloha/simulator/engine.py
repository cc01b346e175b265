"""Monte Carlo success probability for slotted, renewal and rain Aloha.

One replication places the typical emitter (Palm point, not part of the
sampled interferers), its receiver at distance ``r`` and a uniform angle,
draws the interfering packets overlapping ``[0, B]`` and checks the SINR
condition with the packet-averaged and/or the maximal interference.

Replications are generated in fixed-size blocks, block ``k`` drawing from
its own counter-based stream, so the result depends on the seed only, not
on how blocks are scheduled.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np
from scipy import integrate

from ..model import (MacConfig, NetworkParams, NonSlottedRenewal, PoissonRain, Slotted,
                     active_density)
from .estimate import Estimate, bernoulli_estimate
from .sampling import (renewal_overlap_probability, sample_overlapping_renewal_epochs, stream,
                       weight_h)
from .timeline import batch_max_level


class Boundary(enum.Enum):
    TORUS = "torus"
    NONE = "none"
    GUARD = "guard"


class Constraint(enum.Enum):
    MEAN = "mean"
    MAX = "max"


@dataclass(frozen=True)
class SimConfig:
    """Simulation settings.

    ``TORUS`` wraps the window periodically: the near field uses minimum-image
    displacements plus ``images`` rings of periodic copies, and interference
    from beyond the copies is added as its mean.  ``NONE`` keeps the typical
    emitter at the window centre with no correction.  ``GUARD`` places it
    uniformly at least ``guard_margin`` from the window edges.
    """

    net: NetworkParams
    mac: MacConfig
    window_side: float = 1000.0
    boundary: Boundary = Boundary.TORUS
    replications: int = 10_000
    rng_seed: int = 0
    constraint: Constraint = Constraint.MEAN
    guard_margin: float = 0.0
    images: int = 1
    block_size: int = 1000
    workers: int = 1
    stream_id: int = 0

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be at least 1")
        if not self.window_side > 0:
            raise ValueError("window_side must be positive")
        if self.boundary is Boundary.GUARD and not (
                self.window_side > 2 * self.guard_margin and self.window_side > 2 * self.net.r):
            raise ValueError("guard margin and link length must fit inside the window")
        if self.images < 0 or self.block_size < 1 or self.workers < 1:
            raise ValueError("images >= 0, block_size >= 1 and workers >= 1 required")
        if not 0 <= self.rng_seed < 2 ** 64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")

    def with_mac(self, mac: MacConfig, **changes) -> "SimConfig":
        return replace(self, mac=mac, **changes)


@dataclass
class InterferenceSample:
    """Per-replication draws, aligned by replication index."""

    signal: np.ndarray
    noise: np.ndarray
    i_mean: np.ndarray
    i_max: np.ndarray | None = None

    def success(self, net: NetworkParams, constraint: Constraint) -> np.ndarray:
        interference = self.i_mean if constraint is Constraint.MEAN else self.i_max
        if interference is None:
            raise ValueError("maximal interference was not computed")
        return self.signal / net.l_r >= net.T * (self.noise + interference)


@dataclass
class _Packets:
    rep: np.ndarray
    dx: np.ndarray
    dy: np.ndarray
    fading: np.ndarray
    weight: np.ndarray   # h-weight of the packet in the averaged interference
    start: np.ndarray    # activity window, clipped to [0, B]
    end: np.ndarray


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _tail_integral(path_loss, half_side: float) -> float:
    """``int 1/l(|x|) dx`` over the plane outside the square ``[-h, h]^2``."""
    def radial(theta):
        rho0 = half_side / math.cos(theta)
        val, _ = integrate.quad(lambda rho: rho / path_loss(rho), rho0, math.inf,
                                epsabs=0.0, epsrel=1e-10, limit=500)
        return val

    val, _ = integrate.quad(radial, 0.0, math.pi / 4, epsabs=0.0, epsrel=1e-10)
    return 8.0 * val


def _gain(cfg: SimConfig, dx: np.ndarray, dy: np.ndarray) -> np.ndarray:
    """Sum of ``1/l`` over the periodic copies of each displacement."""
    pl = cfg.net.path_loss
    if cfg.boundary is not Boundary.TORUS:
        return 1.0 / pl(np.hypot(dx, dy))
    L = cfg.window_side
    k = range(-cfg.images, cfg.images + 1)
    total = np.zeros_like(dx)
    for i, j in product(k, k):
        total += 1.0 / pl(np.hypot(dx + i * L, dy + j * L))
    return total


def _far_field(cfg: SimConfig) -> float:
    if cfg.boundary is not Boundary.TORUS:
        return 0.0
    half = (2 * cfg.images + 1) * cfg.window_side / 2.0
    return active_density(cfg.net, cfg.mac) * cfg.net.fading.mean * _tail_integral(
        cfg.net.path_loss, half)


def _receivers(cfg: SimConfig, rng: np.random.Generator, n: int) -> np.ndarray:
    L = cfg.window_side
    if cfg.boundary is Boundary.GUARD:
        m = cfg.guard_margin
        tx = m + (L - 2 * m) * rng.random((n, 2))
    else:
        tx = np.full((n, 2), L / 2.0)
    angle = rng.uniform(0.0, 2.0 * math.pi, n)
    return tx + cfg.net.r * np.column_stack([np.cos(angle), np.sin(angle)])


def _displacements(cfg: SimConfig, rx: np.ndarray, rep: np.ndarray, xy: np.ndarray):
    d = xy - rx[rep]
    if cfg.boundary is Boundary.TORUS:
        L = cfg.window_side
        d = (d + L / 2.0) % L - L / 2.0
    return d[:, 0], d[:, 1]


# ---------------------------------------------------------------------------
# interferers per MAC model
# ---------------------------------------------------------------------------


def _slotted_packets(cfg: SimConfig, rng, n: int, rx):
    mac: Slotted = cfg.mac
    L = cfg.window_side
    # PPP(lam) thinned by independent coin flips of bias p
    nodes = rng.poisson(cfg.net.lam * L * L, n)
    counts = rng.binomial(nodes, mac.p)
    rep = np.repeat(np.arange(n), counts)
    xy = L * rng.random((rep.size, 2))
    dx, dy = _displacements(cfg, rx, rep, xy)
    one = np.ones(rep.size)
    return _Packets(rep, dx, dy, cfg.net.fading.sample(rng, rep.size), one,
                    np.zeros(rep.size), np.full(rep.size, mac.B))


def _rain_packets(cfg: SimConfig, rng, n: int, rx):
    mac: PoissonRain = cfg.mac
    L, B = cfg.window_side, mac.B
    # only starts in [-B, B] can overlap the typical packet [0, B]
    counts = rng.poisson(mac.lambda_s * L * L * 2.0 * B, n)
    rep = np.repeat(np.arange(n), counts)
    xy = L * rng.random((rep.size, 2))
    t = rng.uniform(-B, B, rep.size)
    dx, dy = _displacements(cfg, rx, rep, xy)
    return _Packets(rep, dx, dy, cfg.net.fading.sample(rng, rep.size), weight_h(t, B),
                    np.maximum(t, 0.0), np.minimum(t + B, B))


def _renewal_packets(cfg: SimConfig, rng, n: int, rx):
    mac: NonSlottedRenewal = cfg.mac
    L, B = cfg.window_side, mac.B
    # independent marking: nodes with a packet overlapping [0, B] form a
    # thinned Poisson process, and their epochs follow the conditioned law
    q = renewal_overlap_probability(mac.epsilon, B)
    counts = rng.poisson(cfg.net.lam * q * L * L, n)
    node_rep = np.repeat(np.arange(n), counts)
    R, S = sample_overlapping_renewal_epochs(mac.epsilon, B, rng, node_rep.size)
    hit_r = R > -B
    hit_s = S < B
    xy = L * rng.random((node_rep.size, 2))
    fade_r = cfg.net.fading.sample(rng, node_rep.size)
    fade_s = cfg.net.fading.sample(rng, node_rep.size)
    dx, dy = _displacements(cfg, rx, node_rep, xy)
    cat = np.concatenate
    return _Packets(
        rep=cat([node_rep[hit_r], node_rep[hit_s]]),
        dx=cat([dx[hit_r], dx[hit_s]]),
        dy=cat([dy[hit_r], dy[hit_s]]),
        fading=cat([fade_r[hit_r], fade_s[hit_s]]),
        weight=cat([weight_h(R[hit_r], B), weight_h(S[hit_s], B)]),
        start=cat([np.zeros(hit_r.sum()), S[hit_s]]),
        end=cat([R[hit_r] + B, np.full(hit_s.sum(), B)]),
    )


_PACKETS = {Slotted: _slotted_packets, PoissonRain: _rain_packets,
            NonSlottedRenewal: _renewal_packets}


def _sample_block(cfg: SimConfig, block: int, n: int, want_max: bool) -> InterferenceSample:
    rng = stream(cfg.rng_seed, cfg.stream_id, block)
    net = cfg.net
    signal = net.fading.sample(rng, n)
    noise = net.noise.sample(rng, n)
    rx = _receivers(cfg, rng, n)
    pk = _PACKETS[type(cfg.mac)](cfg, rng, n, rx)
    power = pk.fading * _gain(cfg, pk.dx, pk.dy)
    far = _far_field(cfg)
    i_mean = np.bincount(pk.rep, weights=power * pk.weight, minlength=n) + far
    i_max = None
    if want_max:
        B = cfg.mac.B
        at_zero = pk.start <= 0.0
        initial = np.bincount(pk.rep[at_zero], weights=power[at_zero], minlength=n)
        ends = pk.end < B
        starts = pk.start > 0.0
        i_max = batch_max_level(
            initial,
            np.concatenate([pk.rep[ends], pk.rep[starts]]),
            np.concatenate([pk.end[ends], pk.start[starts]]),
            np.concatenate([-power[ends], power[starts]]),
        ) + far
    return InterferenceSample(signal, noise, i_mean, i_max)


def _blocks(cfg: SimConfig) -> list[tuple[int, int]]:
    full, rest = divmod(cfg.replications, cfg.block_size)
    sizes = [cfg.block_size] * full + ([rest] if rest else [])
    return list(enumerate(sizes))


def sample_interference(cfg: SimConfig, want_max: bool | None = None) -> InterferenceSample:
    """Signal fading, noise and interference for every replication."""
    if want_max is None:
        want_max = cfg.constraint is Constraint.MAX
    blocks = _blocks(cfg)

    def run(item):
        return _sample_block(cfg, item[0], item[1], want_max)

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    cat = np.concatenate
    return InterferenceSample(
        signal=cat([p.signal for p in parts]),
        noise=cat([p.noise for p in parts]),
        i_mean=cat([p.i_mean for p in parts]),
        i_max=cat([p.i_max for p in parts]) if want_max else None,
    )


def simulate_outcomes(cfg: SimConfig,
                      constraints: Iterable[Constraint] = (Constraint.MEAN, Constraint.MAX)
                      ) -> dict[Constraint, np.ndarray]:
    """Per-replication success indicators for several constraints on shared draws."""
    constraints = tuple(constraints)
    sample = sample_interference(cfg, want_max=Constraint.MAX in constraints)
    return {c: sample.success(cfg.net, c) for c in constraints}


def simulate(cfg: SimConfig) -> Estimate:
    out = simulate_outcomes(cfg, (cfg.constraint,))
    return bernoulli_estimate(out[cfg.constraint])


def _expect(cfg: SimConfig, kind) -> None:
    if not isinstance(cfg.mac, kind):
        raise TypeError(f"expected a {kind.__name__} MAC, got {type(cfg.mac).__name__}")


def simulate_slotted(cfg: SimConfig) -> Estimate:
    _expect(cfg, Slotted)
    return simulate(cfg)


def simulate_renewal(cfg: SimConfig) -> Estimate:
    _expect(cfg, NonSlottedRenewal)
    return simulate(cfg)


def simulate_rain(cfg: SimConfig) -> Estimate:
    _expect(cfg, PoissonRain)
    return simulate(cfg)


# ---------------------------------------------------------------------------
# sweeps over the channel-occupation fraction
# ---------------------------------------------------------------------------


def mac_for_tau(template: MacConfig, lam: float, tau: float) -> MacConfig:
    """MAC of the same kind as ``template`` with occupation fraction ``tau``."""
    if isinstance(template, Slotted):
        return Slotted(p=tau, B=template.B)
    if isinstance(template, NonSlottedRenewal):
        return NonSlottedRenewal.from_tau(tau, template.B)
    if isinstance(template, PoissonRain):
        return PoissonRain.matching(lam, tau, template.B)
    raise TypeError(f"unknown MAC configuration {template!r}")


@dataclass
class SweepPoint:
    tau: float
    estimate: Estimate
    d_suc: float
    d_suc_ci95: float


@dataclass
class SweepResult:
    """Density of successful transmissions ``lam * tau * p`` along a ``tau`` grid."""

    model: str
    constraint: Constraint
    points: list[SweepPoint] = field(default_factory=list)

    @property
    def best(self) -> SweepPoint:
        return max(self.points, key=lambda pt: pt.d_suc)

    @property
    def taus(self) -> np.ndarray:
        return np.array([pt.tau for pt in self.points])

    @property
    def d_suc(self) -> np.ndarray:
        return np.array([pt.d_suc for pt in self.points])


def model_name(mac: MacConfig) -> str:
    return {Slotted: "slotted", NonSlottedRenewal: "renewal", PoissonRain: "rain"}[type(mac)]


def estimate_density_of_success(cfg: SimConfig, taus: Sequence[float],
                                constraints: Iterable[Constraint] | None = None
                                ) -> dict[Constraint, SweepResult]:
    """One estimate per grid point, scaled by ``lam * tau``.

    Grid point ``i`` uses stream ``i`` of the seed; all constraints of one
    grid point are evaluated on the same draws.
    """
    if len(taus) == 0:
        raise ValueError("the tau grid must not be empty")
    constraints = tuple(constraints) if constraints is not None else (cfg.constraint,)
    name = model_name(cfg.mac)
    results = {c: SweepResult(name, c) for c in constraints}
    lam = cfg.net.lam
    for i, tau in enumerate(taus):
        point_cfg = cfg.with_mac(mac_for_tau(cfg.mac, lam, float(tau)), stream_id=i)
        outcomes = simulate_outcomes(point_cfg, constraints)
        for c in constraints:
            est = bernoulli_estimate(outcomes[c])
            scale = lam * float(tau)
            results[c].points.append(SweepPoint(float(tau), est, scale * est.mean,
                                                scale * est.ci95_halfwidth))
    return results


"""Flat ``key = value`` parameter files.

Network keys: ``lambda r T beta A mu noise_w B pathloss.kind pathloss.u0``.
MAC keys: ``mac.kind`` (slotted, renewal or rain) and its parameters
``mac.p``, ``mac.epsilonB``, ``mac.lambda_s``.  All three MAC parameters are
kept so analytic quantities of every model can be evaluated from one file;
their defaults describe the same channel occupation ``tau = 0.05``.
Simulation keys: ``window boundary replications seed constraint guard_margin``.

Fading is Rayleigh with rate ``mu``; transforms given as functions can only
be supplied from Python.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .errors import ConfigError
from .model import (ClampedMax, DeterministicNoise, MacConfig, MinDistance, NetworkParams,
                    NonSlottedRenewal, PoissonRain, PowerLaw, Rayleigh, Shifted, Slotted,
                    ZeroNoise)

_DEFAULT_TAU = 0.05

# file key -> dataclass field
_KEYS = {
    "lambda": "lam", "r": "r", "T": "T", "beta": "beta", "A": "A", "mu": "mu",
    "noise_w": "noise_w", "B": "B",
    "pathloss.kind": "pathloss_kind", "pathloss.u0": "pathloss_u0",
    "mac.kind": "mac_kind", "mac.p": "mac_p", "mac.epsilonB": "mac_epsilonB",
    "mac.lambda_s": "mac_lambda_s",
    "window": "window", "boundary": "boundary", "replications": "replications",
    "seed": "seed", "constraint": "constraint", "guard_margin": "guard_margin",
}
_FIELD_TO_KEY = {v: k for k, v in _KEYS.items()}

_CHOICES = {
    "pathloss_kind": ("powerlaw", "clamped", "shifted", "mindistance"),
    "mac_kind": ("slotted", "renewal", "rain"),
    "boundary": ("torus", "none", "guard"),
    "constraint": ("mean", "max"),
}
_INTS = {"replications", "seed"}


@dataclass(frozen=True)
class Config:
    lam: float = 0.001
    r: float = math.sqrt(1000.0)
    T: float = 10.0
    beta: float = 4.0
    A: float = 1.0
    mu: float = 1.0
    noise_w: float = 0.0
    B: float = 1.0
    pathloss_kind: str = "powerlaw"
    pathloss_u0: float = 1.0
    mac_kind: str = "renewal"
    mac_p: float = _DEFAULT_TAU
    mac_epsilonB: float = _DEFAULT_TAU / (1.0 - _DEFAULT_TAU)
    mac_lambda_s: float = 0.001 * _DEFAULT_TAU
    window: float = 1000.0
    boundary: str = "torus"
    replications: int = 10_000
    seed: int = 0
    constraint: str = "mean"
    guard_margin: float = 0.0

    def network(self) -> NetworkParams:
        inner = PowerLaw(A=self.A, beta=self.beta)
        path_loss = {
            "powerlaw": lambda: inner,
            "clamped": lambda: ClampedMax(inner),
            "shifted": lambda: Shifted(inner),
            "mindistance": lambda: MinDistance(inner, self.pathloss_u0),
        }[self.pathloss_kind]()
        noise = ZeroNoise() if self.noise_w == 0 else DeterministicNoise(self.noise_w)
        return NetworkParams(lam=self.lam, r=self.r, T=self.T, path_loss=path_loss,
                             fading=Rayleigh(self.mu), noise=noise)

    def slotted(self) -> Slotted:
        return Slotted(p=self.mac_p, B=self.B)

    def renewal(self) -> NonSlottedRenewal:
        return NonSlottedRenewal(epsilon=self.mac_epsilonB / self.B, B=self.B)

    def rain(self) -> PoissonRain:
        return PoissonRain(lambda_s=self.mac_lambda_s, B=self.B)

    def mac(self) -> MacConfig:
        return {"slotted": self.slotted, "renewal": self.renewal, "rain": self.rain}[
            self.mac_kind]()

    def sim_config(self, **overrides):
        """The simulator settings described by this file (``overrides`` win)."""
        from .simulator import Boundary, Constraint, SimConfig

        settings = dict(
            window_side=self.window, boundary=Boundary(self.boundary),
            replications=self.replications, rng_seed=self.seed,
            constraint=Constraint(self.constraint), guard_margin=self.guard_margin,
        )
        settings.update(overrides)
        return SimConfig(self.network(), self.mac(), **settings)

    def validate(self) -> "Config":
        """Build every object the file describes, reporting problems as ConfigError."""
        for name, options in _CHOICES.items():
            value = getattr(self, name)
            if value not in options:
                raise ConfigError(f"{_FIELD_TO_KEY[name]} must be one of {', '.join(options)},"
                                  f" got {value!r}")
        try:
            self.network()
            self.slotted()
            self.renewal()
            self.rain()
            self.sim_config()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return self

    def with_values(self, **changes) -> "Config":
        return replace(self, **changes).validate()


def _convert(name: str, raw: str, lineno: int):
    if name in _CHOICES:
        return raw.lower()
    try:
        if name in _INTS:
            return int(raw)
        return float(raw)
    except ValueError:
        kind = "an integer" if name in _INTS else "a number"
        raise ConfigError(f"line {lineno}: {_FIELD_TO_KEY[name]} must be {kind}, got {raw!r}")


def parse_config(text: str, base: Config | None = None) -> Config:
    """Parse config text; keys not mentioned keep their value in ``base``."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key or not raw:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        name = _KEYS[key]
        if name in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[name] = _convert(name, raw, lineno)
    return replace(base or Config(), **values).validate()


def load_config(path) -> Config:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    return parse_config(text)


def dump_config(cfg: Config) -> str:
    """Text that ``parse_config`` maps back to an equal Config."""
    lines = []
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        lines.append(f"{_FIELD_TO_KEY[f.name]} = {value!r}" if isinstance(value, float)
                     else f"{_FIELD_TO_KEY[f.name]} = {value}")
    return "\n".join(lines) + "\n"


def config_snapshot(cfg: Config) -> dict:
    """Flat mapping keyed by file keys, for manifests."""
    return {_FIELD_TO_KEY[k]: v for k, v in asdict(cfg).items()}

"""Figure tables, CSV output with run manifests, and gnuplot scripts.

Every CSV starts with ``#`` lines carrying a JSON manifest (configuration,
code version, seed, timing and which columns are analytic or simulated),
followed by a plain header row and data rows.
"""
from __future__ import annotations

import csv
import datetime as _dt
import enum
import io
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .analytic import (goodput_ratio, optimal_p, optimal_tau, optimized_goodput_ratio,
                       p_rain_mean, p_renewal_mean)
from .config import Config, config_snapshot
from .model import NonSlottedRenewal, PoissonRain
from .simulator import Boundary, Constraint, estimate_density_of_success

ANALYTIC = "analytic"
SIMULATED = "simulated"


class Target(enum.Enum):
    FIG1 = "fig1"   # good-put ratio vs beta at fixed tau, several T
    FIG2 = "fig2"   # optimized good-put ratio vs beta
    FIG3 = "fig3"   # d_suc vs tau: renewal, rain, simulation
    FIG4 = "fig4"   # d_suc vs tau, mean vs max constraint (simulation)
    FIG5 = "fig5"   # optimized d_suc vs beta: slotted, non-slotted mean and max


@dataclass
class RunManifest:
    config: dict
    seed: int
    command: str
    version: str = __version__
    started: str = field(default_factory=lambda: _dt.datetime.now(_dt.timezone.utc)
                         .isoformat(timespec="seconds"))
    wall_clock_s: float = 0.0
    provenance: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({
            "command": self.command, "version": self.version, "seed": self.seed,
            "started": self.started, "wall_clock_s": round(self.wall_clock_s, 3),
            "provenance": self.provenance, "config": self.config, **self.extra,
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        data = json.loads(text)
        known = {k: data.pop(k) for k in ("config", "seed", "command", "version", "started",
                                          "wall_clock_s", "provenance")}
        return cls(**known, extra=data)


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple]
    manifest: RunManifest

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# manifest: {self.manifest.to_json()}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows], dtype=float)


def _fmt(v):
    return repr(float(v)) if isinstance(v, (float, np.floating)) else v


def read_csv(path) -> tuple[list[RunManifest], list[str], list[list[str]]]:
    """Manifests, header and rows of a CSV written by this module."""
    manifests, lines = [], []
    for line in Path(path).read_text().splitlines():
        if line.startswith("# manifest: "):
            manifests.append(RunManifest.from_json(line[len("# manifest: "):]))
        elif line and not line.startswith("#"):
            lines.append(line)
    rows = list(csv.reader(lines))
    return manifests, rows[0], rows[1:]


def write_table(table: Table, path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(table.to_csv())
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return path


def gnuplot_script(table: Table, csv_path, title: str, xlabel: str, ylabel: str,
                   ycols: Sequence[str]) -> str:
    """Plot script that reads only ``csv_path``."""
    name = Path(csv_path).name
    lines = [
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key autotitle columnhead",
        f"set title '{title}'",
        f"set xlabel '{xlabel}'",
        f"set ylabel '{ylabel}'",
        "set grid",
    ]
    plots = [f"'{name}' using 1:{table.columns.index(c) + 1} with linespoints title '{c}'"
             for c in ycols]
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# figure tables
# ---------------------------------------------------------------------------

BETA_GRID = tuple(round(2.1 + 0.1 * i, 1) for i in range(40))   # 2.1 .. 6.0


def _manifest(cfg: Config, command: str, provenance: dict, **extra) -> RunManifest:
    return RunManifest(config_snapshot(cfg), cfg.seed, command, provenance=provenance,
                       extra=extra)


def fig1_table(cfg: Config, betas: Sequence[float] = BETA_GRID,
               thresholds: Sequence[float] = (1.0, 10.0, 100.0), tau: float = 0.05) -> Table:
    """Percent good-put of non-slotted vs slotted Aloha at equal ``tau``."""
    cols = ["beta"] + [f"ratio_T{t:g}" for t in thresholds]
    rows = []
    for beta in betas:
        row = [float(beta)]
        for t in thresholds:
            net = cfg.with_values(beta=float(beta), T=float(t)).network()
            row.append(100.0 * goodput_ratio(net, tau))
        rows.append(tuple(row))
    prov = {c: ANALYTIC for c in cols[1:]}
    return Table(cols, rows, _manifest(cfg, "reproduce fig1", prov, tau=tau,
                                       thresholds=list(thresholds)))


def fig2_table(cfg: Config, betas: Sequence[float] = BETA_GRID) -> Table:
    """Percent ratio ``K/K'`` of the optimized good-puts."""
    rows = [(float(b), 100.0 * optimized_goodput_ratio(float(b))) for b in betas]
    return Table(["beta", "ratio_percent"], rows,
                 _manifest(cfg, "reproduce fig2", {"ratio_percent": ANALYTIC}))


FIG3_TAUS = tuple(round(0.01 * i, 2) for i in range(1, 31))


def fig3_table(cfg: Config, taus: Sequence[float] = FIG3_TAUS, simulate: bool = True,
               boundary: Boundary = Boundary.NONE) -> Table:
    """Success probability and ``d_suc`` of the renewal and rain models vs ``tau``."""
    net = cfg.network()
    cols = ["tau", "p_ren", "p_rain", "d_suc_ren", "d_suc_rain"]
    prov = {c: ANALYTIC for c in cols[1:]}
    analytic = []
    for tau in taus:
        ren = p_renewal_mean(net, NonSlottedRenewal.from_tau(tau, cfg.B)).probability
        rain = p_rain_mean(net, PoissonRain.matching(net.lam, tau, cfg.B)).probability
        analytic.append((float(tau), ren, rain, net.lam * tau * ren, net.lam * tau * rain))
    rows = analytic
    if simulate:
        sim = cfg.with_values(mac_kind="renewal").sim_config(boundary=boundary,
                                                             constraint=Constraint.MEAN)
        sweep = estimate_density_of_success(sim, taus)[Constraint.MEAN]
        cols += ["d_suc_sim", "d_suc_sim_ci95"]
        prov.update(d_suc_sim=SIMULATED, d_suc_sim_ci95=SIMULATED)
        rows = [a + (pt.d_suc, pt.d_suc_ci95) for a, pt in zip(analytic, sweep.points)]
    return Table(cols, rows, _manifest(cfg, "reproduce fig3", prov,
                                       boundary=boundary.value, simulated=simulate))


FIG4_TAUS = tuple(round(0.01 * i, 2) for i in range(1, 13))


def fig4_table(cfg: Config, taus: Sequence[float] = FIG4_TAUS,
               boundary: Boundary = Boundary.NONE) -> Table:
    """Simulated ``d_suc`` vs ``tau`` under the mean and max constraints (shared draws)."""
    sim = cfg.with_values(mac_kind="renewal").sim_config(boundary=boundary)
    res = estimate_density_of_success(sim, taus, (Constraint.MEAN, Constraint.MAX))
    mean, mx = res[Constraint.MEAN].points, res[Constraint.MAX].points
    rows = [(a.tau, a.d_suc, a.d_suc_ci95, b.d_suc, b.d_suc_ci95) for a, b in zip(mean, mx)]
    cols = ["tau", "d_suc_mean", "d_suc_mean_ci95", "d_suc_max", "d_suc_max_ci95"]
    return Table(cols, rows, _manifest(cfg, "reproduce fig4", {c: SIMULATED for c in cols[1:]},
                                       boundary=boundary.value, taus=list(taus)))


FIG5_BETAS = (3.0, 4.0, 5.0, 6.0)
FIG5_SCALES = (0.5, 0.75, 1.0, 1.25)


def fig5_table(cfg: Config, betas: Sequence[float] = FIG5_BETAS,
               scales: Sequence[float] = FIG5_SCALES,
               boundary: Boundary = Boundary.NONE) -> Table:
    """Optimized ``d_suc`` vs ``beta``.

    Slotted and rain optima are analytic.  The simulated renewal optima are
    the best points of a grid ``scales * tau_max`` around the rain optimum.
    """
    cols = ["beta", "d_suc_slotted", "d_suc_rain", "d_suc_sim_mean", "d_suc_sim_mean_ci95",
            "d_suc_sim_max", "d_suc_sim_max_ci95"]
    rows = []
    for i, beta in enumerate(betas):
        c = cfg.with_values(beta=float(beta), mac_kind="renewal", seed=cfg.seed + i)
        net = c.network()
        slotted = optimal_p(net).objective_value
        best = optimal_tau(net)
        tau_star = min(best.control, 0.5)
        taus = [s * tau_star for s in scales]
        res = estimate_density_of_success(c.sim_config(boundary=boundary), taus,
                                          (Constraint.MEAN, Constraint.MAX))
        m, x = res[Constraint.MEAN].best, res[Constraint.MAX].best
        rows.append((float(beta), slotted, best.objective_value, m.d_suc, m.d_suc_ci95,
                     x.d_suc, x.d_suc_ci95))
    prov = {"d_suc_slotted": ANALYTIC, "d_suc_rain": ANALYTIC}
    prov.update({k: SIMULATED for k in cols[3:]})
    return Table(cols, rows, _manifest(cfg, "reproduce fig5", prov, boundary=boundary.value,
                                       tau_scales=list(scales),
                                       seeds="seed + index of beta"))


PLOTS = {
    Target.FIG1: ("Non-slotted / slotted good-put, tau = 0.05", "beta", "ratio (%)"),
    Target.FIG2: ("Optimized non-slotted / slotted good-put", "beta", "ratio (%)"),
    Target.FIG3: ("Density of successful transmissions", "tau", "d_suc"),
    Target.FIG4: ("Mean vs max interference constraint", "tau", "d_suc"),
    Target.FIG5: ("Optimized density of successful transmissions", "beta", "d_suc"),
}


def figure_table(target: Target, cfg: Config, analytic_only: bool = False,
                 boundary: Boundary = Boundary.NONE) -> Table:
    if target is Target.FIG1:
        return fig1_table(cfg)
    if target is Target.FIG2:
        return fig2_table(cfg)
    if target is Target.FIG3:
        return fig3_table(cfg, simulate=not analytic_only, boundary=boundary)
    if analytic_only:
        raise ValueError(f"{target.value} is simulation-only")
    if target is Target.FIG4:
        return fig4_table(cfg, boundary=boundary)
    return fig5_table(cfg, boundary=boundary)


def plot_columns(table: Table) -> list[str]:
    return [c for c in table.columns[1:] if not c.endswith("_ci95") and not c.startswith("p_")]


def timed(build: Callable[[], Table]) -> Table:
    t0 = time.perf_counter()
    table = build()
    table.manifest.wall_clock_s = time.perf_counter() - t0
    return table

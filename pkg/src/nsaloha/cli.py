"""Command-line front end: ``eval``, ``simulate``, ``sweep`` and ``reproduce``.

Exit status is 0 on success, 2 for usage or configuration errors and 1 when
a numerical routine fails.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from .analytic import (Method, goodput_ratio, k_beta, k_prime_integral, optimal_r, optimal_tau,
                       optimized_goodput_ratio, p_ns, p_rain_mean, p_renewal_mean, p_slot)
from .config import Config, config_snapshot, load_config
from .errors import ConfigError
from .model import PoissonRain, channel_occupation_fraction
from .reproduce import (PLOTS, SIMULATED, RunManifest, Table, Target, figure_table,
                        gnuplot_script, plot_columns, timed, write_table)
from .simulator import Boundary, Constraint, estimate_density_of_success, model_name, simulate

EXIT_OK, EXIT_NUMERICAL, EXIT_USAGE = 0, 1, 2

QUANTITIES = ("k", "kprime", "p_slot", "p_rain", "p_ren", "p_ns", "tau_max", "r_max",
              "dsuc_max", "goodput_ratio")
SWEEP_COLUMNS = ["param", "estimate", "ci95", "n", "constraint", "model"]


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="key = value parameter file")
    p.add_argument("--seed", type=int, help="master seed of the random streams")
    p.add_argument("--replications", type=int, help="Monte Carlo replications per estimate")
    p.add_argument("--out", type=Path, help="output CSV (a directory for reproduce)")
    p.add_argument("--constraint", choices=("mean", "max"),
                   help="interference over the packet: average or maximum")
    p.add_argument("--boundary", choices=("torus", "none", "guard"),
                   help="edge treatment of the simulation window")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="nsaloha", description="Slotted vs non-slotted Aloha in Poisson bipolar networks")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate an analytic quantity")
    ev.add_argument("quantity", choices=QUANTITIES)
    ev.add_argument("--beta", type=float, help="path-loss exponent (overrides the config)")
    ev.add_argument("--tau", type=float, help="channel-occupation fraction for every MAC")
    ev.add_argument("--optimized", action="store_true",
                    help="goodput_ratio of the optimally tuned schemes")

    sim = sub.add_parser("simulate", parents=[common], help="one Monte Carlo estimate")
    sim.add_argument("--workers", type=int, default=1)

    sw = sub.add_parser("sweep", parents=[common], help="simulated d_suc over a tau grid")
    sw.add_argument("--taus", help="comma-separated occupation fractions")
    sw.add_argument("--tau-min", type=float, default=0.01)
    sw.add_argument("--tau-max", type=float, default=0.12)
    sw.add_argument("--points", type=int, default=12)
    sw.add_argument("--model", choices=("slotted", "renewal", "rain"))
    sw.add_argument("--workers", type=int, default=1)
    sw.add_argument("--plot", action="store_true", help="also write a gnuplot script")

    rp = sub.add_parser("reproduce", parents=[common], help="tables behind the figures")
    rp.add_argument("target", choices=[t.value for t in Target])
    rp.add_argument("--analytic-only", action="store_true", help="skip simulated columns")
    rp.add_argument("--plot", action="store_true", help="also write a gnuplot script")
    return parser


def _config(args) -> Config:
    cfg = load_config(args.config) if args.config else Config()
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.replications is not None:
        changes["replications"] = args.replications
    if args.constraint is not None:
        changes["constraint"] = args.constraint
    if args.boundary is not None:
        changes["boundary"] = args.boundary
    if getattr(args, "beta", None) is not None:
        changes["beta"] = args.beta
    tau = getattr(args, "tau", None)
    if tau is not None:
        if not 0 < tau < 1:
            raise UsageError("--tau must lie in (0, 1)")
        changes.update(mac_p=tau, mac_epsilonB=tau / (1.0 - tau),
                       mac_lambda_s=cfg.lam * tau / cfg.B)
    return cfg.with_values(**changes) if changes else cfg


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def evaluate(cfg: Config, quantity: str, optimized: bool = False) -> tuple[str, str]:
    """Value (as printed) and method label of an analytic quantity."""
    closed, quad = Method.CLOSED_FORM.value, Method.QUADRATURE.value
    net = cfg.network()
    if quantity == "k":
        return repr(k_beta(cfg.beta)), closed
    if quantity == "kprime":
        return repr(k_prime_integral(cfg.beta)[0]), quad
    if quantity == "p_slot":
        res = p_slot(net, cfg.slotted())
    elif quantity == "p_rain":
        res = p_rain_mean(net, cfg.rain())
    elif quantity == "p_ren":
        res = p_renewal_mean(net, cfg.renewal())
    elif quantity == "p_ns":
        return repr(p_ns(cfg.lam, cfg.mac_epsilonB / cfg.B, cfg.B, cfg.r, cfg.T, cfg.beta)), closed
    elif quantity in ("tau_max", "dsuc_max"):
        best = optimal_tau(net)
        if quantity == "dsuc_max":
            return repr(best.objective_value), closed
        return ("no-backoff" if best.no_backoff else repr(best.control)), closed
    elif quantity == "r_max":
        tau = channel_occupation_fraction(cfg.renewal())
        return repr(optimal_r(cfg.lam, tau, cfg.T, cfg.beta).control), closed
    elif quantity == "goodput_ratio":
        if optimized:
            return repr(optimized_goodput_ratio(cfg.beta)), quad
        return repr(goodput_ratio(net, channel_occupation_fraction(cfg.renewal()))), quad
    else:
        raise UsageError(f"unknown quantity {quantity!r}")
    return repr(res.probability), res.method.value


def cmd_eval(args) -> int:
    cfg = _config(args)
    value, method = evaluate(cfg, args.quantity, args.optimized)
    print(f"{args.quantity} = {value} ({method})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate and sweep
# ---------------------------------------------------------------------------


def _occupation(cfg: Config, mac) -> float:
    if isinstance(mac, PoissonRain):
        return mac.lambda_s * mac.B / cfg.lam
    return channel_occupation_fraction(mac)


def _append_rows(path: Path, manifest: RunManifest, rows: list[tuple]) -> None:
    """Append rows under their manifest line; the header is written once."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        new = not path.exists() or path.stat().st_size == 0
        with path.open("a") as fh:
            if new:
                fh.write(",".join(SWEEP_COLUMNS) + "\n")
            fh.write(f"# manifest: {manifest.to_json()}\n")
            for row in rows:
                fh.write(",".join(str(v) for v in row) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def cmd_simulate(args) -> int:
    cfg = _config(args)
    sim = cfg.sim_config(workers=args.workers)
    t0 = time.perf_counter()
    est = simulate(sim)
    elapsed = time.perf_counter() - t0
    model = model_name(sim.mac)
    print(f"{model} {sim.constraint.value}: {est.mean:.6f} +/- {est.ci95_halfwidth:.6f} "
          f"(n={est.n}, {elapsed:.2f} s)")
    if args.out:
        manifest = RunManifest(config_snapshot(cfg), cfg.seed, "simulate", wall_clock_s=elapsed,
                               provenance={"estimate": SIMULATED})
        row = (repr(_occupation(cfg, sim.mac)), repr(est.mean), repr(est.ci95_halfwidth), est.n,
               sim.constraint.value, model)
        _append_rows(args.out, manifest, [row])
    return EXIT_OK


def _tau_grid(args) -> list[float]:
    if args.taus:
        try:
            taus = [float(t) for t in args.taus.split(",") if t.strip()]
        except ValueError:
            raise UsageError(f"--taus must be comma-separated numbers, got {args.taus!r}")
    else:
        if args.points < 1:
            raise UsageError("--points must be at least 1")
        taus = [float(t) for t in np.linspace(args.tau_min, args.tau_max, args.points)]
    if not taus:
        raise UsageError("the tau grid is empty")
    if not all(0 < t < 1 for t in taus):
        raise UsageError("every tau must lie in (0, 1)")
    return taus


def sweep_table(cfg: Config, taus: list[float], constraints, workers: int = 1) -> Table:
    sim = cfg.sim_config(workers=workers)
    res = estimate_density_of_success(sim, taus, constraints)
    rows = []
    for c in constraints:
        for pt in res[c].points:
            rows.append((pt.tau, pt.estimate.mean, pt.estimate.ci95_halfwidth, pt.estimate.n,
                         c.value, res[c].model))
    manifest = RunManifest(config_snapshot(cfg), cfg.seed, "sweep",
                           provenance={"estimate": SIMULATED},
                           extra={"taus": taus, "streams": "grid index",
                                  "param": "tau"})
    return Table(list(SWEEP_COLUMNS), rows, manifest)


def cmd_sweep(args) -> int:
    cfg = _config(args)
    if args.model:
        cfg = cfg.with_values(mac_kind=args.model)
    taus = _tau_grid(args)
    constraints = ([Constraint(args.constraint)] if args.constraint
                   else [Constraint.MEAN, Constraint.MAX])
    table = timed(lambda: sweep_table(cfg, taus, constraints, args.workers))
    if args.out:
        write_table(table, args.out)
        if args.plot:
            _write_sweep_plot(table, args.out, cfg)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(table.to_csv())
    for c in constraints:
        best = max((r for r in table.rows if r[4] == c.value), key=lambda r: r[0] * r[1])
        print(f"best {c.value}: tau={best[0]:.4g} d_suc={cfg.lam * best[0] * best[1]:.6g}",
              file=sys.stderr)
    return EXIT_OK


def _write_sweep_plot(table: Table, out: Path, cfg: Config) -> None:
    name = Path(out).name
    plots = []
    for c in dict.fromkeys(r[4] for r in table.rows):
        plots.append(f"'{name}' using 1:($5 eq '{c}' ? {cfg.lam!r}*$1*$2 : NaN) "
                     f"with linespoints title '{c}'")
    script = "\n".join([
        "set datafile separator ','", "set datafile commentschars '#'",
        "set xlabel 'tau'", "set ylabel 'd_suc'", "set grid",
        "plot " + ", \\\n     ".join(plots),
    ]) + "\n"
    Path(out).with_suffix(".gp").write_text(script)


# ---------------------------------------------------------------------------
# reproduce
# ---------------------------------------------------------------------------


def cmd_reproduce(args) -> int:
    cfg = _config(args)
    target = Target(args.target)
    # figure presets mirror the bounded square unless told otherwise
    boundary = Boundary(args.boundary) if args.boundary else Boundary.NONE
    table = timed(lambda: figure_table(target, cfg, args.analytic_only, boundary))
    out_dir = args.out or Path("results")
    csv_path = write_table(table, out_dir / f"{target.value}.csv")
    print(f"wrote {csv_path}")
    if args.plot:
        title, xlabel, ylabel = PLOTS[target]
        gp = csv_path.with_suffix(".gp")
        gp.write_text(gnuplot_script(table, csv_path, title, xlabel, ylabel,
                                     plot_columns(table)))
        print(f"wrote {gp}")
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "simulate": cmd_simulate, "sweep": cmd_sweep,
            "reproduce": cmd_reproduce}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.replications is not None and args.replications < 1:
        print("nsaloha: error: --replications must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError, ValueError, TypeError) as exc:
        print(f"nsaloha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"nsaloha: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"nsaloha: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``osint-sim <subcommand> ...``.

Exit codes: 0 success, 1 validation error, 2 runtime error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import engine, game, network, params, report, utility

EXIT_OK, EXIT_VALIDATION, EXIT_RUNTIME, EXIT_IO = 0, 1, 2, 3


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(None), help="override the scenario seed")
    parser.add_argument("--out", default=d(None), help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default=d("csv"))
    parser.add_argument("--quiet", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="osint-sim", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _global_options(p, suppress=True)
        return p

    g = add("solve-game", "payoff matrix and equilibria of the publish/wait game")
    for flag, default in (("--H", 3.0), ("--M", 2.0), ("--L", 1.0), ("--B", 0.0),
                          ("--cF", 0.0), ("--q0", 1.0), ("--delta", 0.0)):
        g.add_argument(flag, type=float, default=default)
    for name in ("pub-both", "pub-solo", "wait-solo", "wait-both-A", "wait-both-B"):
        g.add_argument(f"--drho-{name}", type=float, default=0.0)
    g.add_argument("--canonical", action="store_true", help="require H > M > L > B")

    u = add("utility", "tabulate U(E) for an actor profile")
    u.add_argument("--role", choices=[r.value for r in params.Role], default="RemoteAnalyst")
    u.add_argument("--variant", choices=utility.VARIANTS, default="base")
    for flag in ("alpha", "beta", "gamma", "delta", "tau"):
        u.add_argument(f"--{flag}", type=float, default=None)
    u.add_argument("--attention-scale", type=float, default=1.0, help="A = scale * E")
    u.add_argument("--rho", type=float, default=1.0)
    u.add_argument("--drho", type=float, default=0.0)
    u.add_argument("--rep-delta", type=float, default=0.0)
    u.add_argument("--e-min", type=float, default=0.0)
    u.add_argument("--e-max", type=float, default=10.0)
    u.add_argument("--points", type=int, default=101)

    c = add("centrality", "degree, closeness and g(d) per node of an edge list")
    c.add_argument("--edges", required=True, help="edge-list file, one 'u v' pair per line")
    c.add_argument("--theta0", type=float, default=0.1)
    c.add_argument("--theta1", type=float, default=0.42)
    c.add_argument("--theta2", type=float, default=0.38)

    s = add("simulate", "run one scenario")
    s.add_argument("--scenario", required=True)
    s.add_argument("--figures", action="store_true", help="also write SVG figures")

    w = add("sweep", "run a scenario across a range of one parameter")
    w.add_argument("--scenario", required=True)
    w.add_argument("--param", required=True, help="dotted path, e.g. game.q0 or interventions.0.magnitude")
    w.add_argument("--from", dest="start", type=float, required=True)
    w.add_argument("--to", dest="stop", type=float, required=True)
    w.add_argument("--steps", type=int, required=True)
    w.add_argument("--jobs", type=int, default=1)

    f = add("figures", "run a scenario and write the virality and heatmap figures")
    f.add_argument("--scenario", required=True)
    return parser


# ---------------------------------------------------------------------------

def _load(args) -> params.ScenarioConfig:
    cfg = params.load_scenario(args.scenario)
    if args.seed is not None:
        cfg = cfg.replace(seed=args.seed)
    return cfg


def _out_dir(args, default: str = "out") -> Path:
    out = Path(args.out or default)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _say(args, text: str) -> None:
    if not args.quiet:
        print(text)


def cmd_solve_game(args) -> int:
    levels = game.PayoffLevels(args.H, args.M, args.L, args.B, canonical=args.canonical)
    spec = game.PayoffSpec(levels=levels, c_F=args.cF, q0=args.q0, delta=args.delta,
                           drho_pub_both=args.drho_pub_both, drho_pub_solo=args.drho_pub_solo,
                           drho_wait_solo=args.drho_wait_solo,
                           drho_wait_both_A=args.drho_wait_both_A,
                           drho_wait_both_B=args.drho_wait_both_B)
    m, res = game.solve(spec)
    record = {"matrix": {f"{a.value}{b.value}": list(v) for (a, b), v in m.cells.items()},
              **res.to_dict()}
    if not args.quiet:
        corner = "A\\B"
        print(f"{corner:>8} {'P':>20} {'W':>20}")
        for sa in game.STRATEGIES:
            cells = [f"({m.payoff(game.Player.A, sa, sb):.4g}, {m.payoff(game.Player.B, sa, sb):.4g})"
                     for sb in game.STRATEGIES]
            print(f"{sa.value:>8} {cells[0]:>20} {cells[1]:>20}")
        print(f"pure Nash:      {', '.join(record['pure']) or 'none'}")
        print(f"dominant A/B:   {record['dominant_A'] or '-'} / {record['dominant_B'] or '-'}")
        p_cf = res.closed_form_value
        print(f"closed form p*: {'undefined' if p_cf is None else f'{p_cf:.6g}'}"
              f" (in [0,1]: {res.closed_form_in_range})")
        mixed = res.mixed
        print("indifference:   " + ("none" if mixed is None else f"p_A={mixed[0]:.6g}, p_B={mixed[1]:.6g}"))
    print(json.dumps(record, sort_keys=True))
    if args.out:
        (_out_dir(args) / "game.json").write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_utility(args) -> int:
    base = params.default_profile(params.Role(args.role))
    overrides = {k: getattr(args, k) for k in ("alpha", "beta", "gamma", "delta", "tau")
                 if getattr(args, k) is not None}
    profile = params.ActorProfile(**{**base.__dict__, **overrides})
    scale = args.attention_scale
    kw = dict(reputation=args.rho, drho=args.drho, rep_delta=args.rep_delta)
    u = utility.effort_utility(profile, lambda e: scale * e, args.variant, **kw)
    if args.points < 2 or args.e_max < args.e_min:
        raise ValueError("need --points >= 2 and --e-max >= --e-min")
    grid = np.linspace(args.e_min, args.e_max, args.points)
    e_star, u_star = utility.optimize_effort(profile, lambda e: scale * e, (args.e_min, args.e_max),
                                             args.variant, **kw)
    if args.format == "json":
        text = json.dumps({"E": grid.tolist(), "U": [u(e) for e in grid],
                           "E_star": e_star, "U_star": u_star}) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["E", "U"])
        for e in grid:
            w.writerow([report.format_value(float(e)), report.format_value(u(e))])
        text = buf.getvalue()
    if args.out:
        (_out_dir(args) / f"utility.{args.format}").write_text(text)
        _say(args, f"E* = {e_star:.6g}, U* = {u_star:.6g}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_centrality(args) -> int:
    g = network.SocialGraph.from_edgelist(Path(args.edges).read_text())
    p = network.NetworkParams(theta0=args.theta0, theta1=args.theta1, theta2=args.theta2)
    table = network.centrality_table(g, p)
    if args.format == "json":
        print(json.dumps(table))
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["node", "degree", "closeness", "g"])
        for r in table:
            w.writerow([r["node"], r["degree"], report.format_value(r["closeness"]),
                        report.format_value(r["g"])])
    return EXIT_OK


def write_run(cfg: params.ScenarioConfig, out: Path, figures: bool = False) -> dict:
    trace = engine.run(cfg)
    summary = engine.aggregate_metrics(trace)
    report.emit_csv(trace, out / "trace.csv")
    report.emit_summary(summary, out / "summary.json")
    params.save_scenario(cfg, out / "config.yaml")
    if figures:
        _write_figures(trace, summary, out)
    return summary


def _write_figures(trace, summary, out: Path) -> None:
    try:
        report.emit_virality_figure(trace, out / "virality.svg")
    except report.InsufficientDataError as exc:
        print(f"skipping virality figure: {exc}", file=sys.stderr)
    rewards = {i: rec["reward"] for i, rec in summary["actors"].items()}
    report.emit_heatmap_figure(trace.config.actors, rewards, out / "heatmap.svg")


def cmd_simulate(args) -> int:
    cfg = _load(args)
    out = _out_dir(args)
    summary = write_run(cfg, out, figures=args.figures)
    scalars = {k: v for k, v in summary.items() if k != "actors"}
    if args.format == "json":
        _say(args, json.dumps(summary, sort_keys=True))
    else:
        for k, v in scalars.items():
            _say(args, f"{k:24s} {report.format_value(v)}")
    return EXIT_OK


def cmd_figures(args) -> int:
    cfg = _load(args)
    out = _out_dir(args)
    trace = engine.run(cfg)
    _write_figures(trace, engine.aggregate_metrics(trace), out)
    _say(args, f"figures written to {out}")
    return EXIT_OK


def set_path(data, dotted: str, value):
    keys = dotted.split(".")
    node = data
    for k in keys[:-1]:
        node = node[int(k)] if isinstance(node, list) else node.setdefault(k, {})
    last = keys[-1]
    if isinstance(node, list):
        node[int(last)] = value
    else:
        node[last] = value
    return data


def _sweep_one(job):
    cfg_dict, dotted, value = job
    if dotted in ("horizon", "seed") or dotted.endswith(("verification_delay", "forced_delays")):
        value = int(round(value))
    cfg = params.scenario_from_dict(set_path(cfg_dict, dotted, value))
    summary = engine.aggregate_metrics(engine.run(cfg))
    return {"param": dotted, "value": value,
            **{k: v for k, v in summary.items() if k != "actors"}}


def cmd_sweep(args) -> int:
    if args.steps < 1:
        raise ValueError("--steps must be at least 1")
    cfg = _load(args)
    base = params.scenario_to_dict(cfg)
    values = np.linspace(args.start, args.stop, args.steps).tolist()
    jobs = [(json.loads(json.dumps(base)), args.param, v) for v in values]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    out = _out_dir(args)
    if args.format == "json":
        path = out / "sweep.json"
        path.write_text(json.dumps(rows, indent=2) + "\n")
    else:
        path = out / "sweep.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(list(rows[0]))
            for r in rows:
                w.writerow([report.format_value(v) for v in r.values()])
    _say(args, f"{len(rows)} runs written to {path}")
    return EXIT_OK


COMMANDS = {
    "solve-game": cmd_solve_game,
    "utility": cmd_utility,
    "centrality": cmd_centrality,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "figures": cmd_figures,
}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage; that is a validation failure here
        return EXIT_VALIDATION if exc.code == 2 else int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (params.ConfigError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

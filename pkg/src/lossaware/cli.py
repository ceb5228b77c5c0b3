"""Command-line front end.

    lossaware decide      [--config PATH] [--format json]
    lossaware sweep       [--config PATH] [--out DIR] [--format csv,svg,json]
    lossaware population  [--config PATH] [--out DIR] [--seed N]
    lossaware fn {q,omega,chernoff} ARGS...

With no ``--config`` the embedded default reproduces the published beta sweep.
Exit codes: 0 ok, 2 validation, 3 numerical, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import experiments as ex
from .config import FORMATS, build_config, default_config, dump_config, load_raw
from .detection import chernoff_information
from .errors import ValidationError
from .special_functions import q_function, wright_omega
from .utility import beta_threshold

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def _parse_formats(text):
    formats = [f.strip() for f in text.split(",") if f.strip()]
    bad = [f for f in formats if f not in FORMATS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown format(s) {bad}; choose from {', '.join(FORMATS)}")
    return formats


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="YAML run configuration")
    common.add_argument("--out", metavar="DIR", help="output directory (overrides output.dir)")
    common.add_argument("--format", type=_parse_formats, metavar="LIST", help="comma list of csv,svg,json")
    common.add_argument("--seed", type=int, metavar="N", help="population seed (overrides population.seed)")
    common.add_argument("--dump-config", action="store_true", help="print the effective config and exit")

    parser = argparse.ArgumentParser(prog="lossaware", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("decide", parents=[common], help="optimal energy under each decision model")
    sub.add_parser("sweep", parents=[common], help="sweep one parameter, write CSV/SVG")
    sub.add_parser("population", parents=[common], help="simulate a heterogeneous population")
    fn = sub.add_parser("fn", help="evaluate a special function")
    fn.add_argument("name", choices=["q", "omega", "chernoff"])
    fn.add_argument("args", nargs="+", help="q T | omega X | chernoff P0 P1 (comma-separated masses)")
    return parser


def effective_raw(args):
    raw = load_raw(args.config) if args.config else default_config()
    if args.out is not None:
        raw.setdefault("output", {})["dir"] = args.out
    if args.format is not None:
        raw.setdefault("output", {})["formats"] = args.format
    if args.seed is not None and isinstance(raw.get("population"), dict):
        raw["population"]["seed"] = args.seed
    return raw


def _g6(x):
    return f"{x:.6g}"


def cmd_decide(cfg, as_json=False, out=None):
    out = out or sys.stdout
    scn = cfg.scenario
    decisions = ex.decide_all(scn)
    threshold = None
    if 0 < scn.t < 1:
        threshold = beta_threshold(scn.curve, scn.lam, scn.t, scn.econ.p0)
    if as_json:
        record = {
            m: {"energy": d.energy, "utility": d.utility, "regime": d.regime.value, "method": d.method}
            for m, d in decisions.items()
        }
        record["ptweighted"]["beta_threshold"] = threshold
        json.dump(record, out, indent=2)
        out.write("\n")
        return EXIT_OK
    names = {"eu": "EU", "ptfixed": "PT-fixed", "ptweighted": "PT-weighted"}
    for m, d in decisions.items():
        line = f"{names[m]:<12} energy={_g6(d.energy):<10} utility={_g6(d.utility):<10} regime={d.regime.value}"
        if m == "ptweighted":
            line += f"  beta_threshold={_g6(threshold) if threshold is not None else 'n/a'}"
        out.write(line + "\n")
    return EXIT_OK


def cmd_sweep(cfg, out=None):
    out = out or sys.stdout
    if cfg.sweep is None:
        raise ValidationError("missing required section sweep")
    rows = ex.run_sweep(cfg.sweep)
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = ex.write_sweep(rows, cfg.sweep.axis, out_dir, cfg.formats)
    if "json" in cfg.formats:
        p = out_dir / "sweep.json"
        ex.atomic_write(p, json.dumps({"axis": cfg.sweep.axis, "rows": [asdict(r) for r in rows]}, indent=1) + "\n")
        paths.append(p)
    for p in paths:
        out.write(f"{p}\n")
    return EXIT_OK


def cmd_population(cfg, out=None):
    out = out or sys.stdout
    if cfg.population is None:
        raise ValidationError("missing required section population")
    records, summary = ex.run_population(cfg.population)
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    if "json" in cfg.formats:
        p = out_dir / "population_summary.json"
        ex.atomic_write(p, json.dumps(summary, indent=2) + "\n")
        paths.append(p)
    if "csv" in cfg.formats:
        p = out_dir / "population_agents.csv"
        ex.atomic_write(p, ex.rows_to_csv(records, ex.AGENT_COLUMNS))
        paths.append(p)
    for p in paths:
        out.write(f"{p}\n")
    return EXIT_OK


def _masses(text):
    return [float(v) for v in text.split(",")]


def cmd_fn(name, args, out=None):
    out = out or sys.stdout
    arity = {"q": 1, "omega": 1, "chernoff": 2}[name]
    if len(args) != arity:
        raise ValidationError(f"fn {name} takes {arity} argument(s), got {len(args)}")
    try:
        if name == "q":
            value = q_function(float(args[0]))
        elif name == "omega":
            value = wright_omega(float(args[0]))
        else:
            value = chernoff_information(_masses(args[0]), _masses(args[1]))
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc)) from exc
    out.write(f"{value:.15g}\n")
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "fn":
            try:
                return cmd_fn(args.name, args.args)
            except ValidationError:
                parser.print_usage(sys.stderr)
                raise
        raw = effective_raw(args)
        if args.dump_config:
            sys.stdout.write(dump_config(raw))
            return EXIT_OK
        cfg = build_config(raw)
        if args.command == "decide":
            return cmd_decide(cfg, as_json=args.format is not None and "json" in args.format)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        return cmd_population(cfg)
    except ValidationError as exc:
        for msg in exc.messages:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_VALIDATION
    except ArithmeticError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ex.SweepError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

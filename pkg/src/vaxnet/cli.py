"""Command-line entry point.

Subcommands cover single-shot utilities (generate a graph, score it, report
its spectrum, ingest contact files) and the configured batch experiments
(eigendrop table, herd search, SIR simulation). Failures print a one-line
JSON error object to stderr and exit nonzero so callers can script against
the tool.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .centrality import Metric
from .experiments import (ConfigError, ExperimentConfig, config_from_dict,
                          load_config, run_centrality, run_eigendrop_table,
                          run_generate, run_herd, run_ingest, run_simulate,
                          run_spectral)
from .generators import FAMILIES, GenSpec
from .graph import read_edge_list


def _add_common(p: argparse.ArgumentParser, needs_config: bool = False) -> None:
    p.add_argument("--config", type=str, default=None, required=needs_config,
                   help="YAML experiment configuration")
    p.add_argument("--seed", type=int, default=None,
                   help="override the master seed")
    p.add_argument("--out", type=str, default="out",
                   help="output directory (or file for single-shot commands)")
    p.add_argument("--workers", type=int, default=None,
                   help="parallel worker processes for replicate fan-out")


def _load_cfg(args) -> ExperimentConfig:
    overrides = {"seed": args.seed, "workers": getattr(args, "workers", None)}
    if args.config is not None:
        return load_config(args.config, overrides=overrides)
    return config_from_dict({k: v for k, v in overrides.items() if v is not None},
                            source="<cli>")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="vaxnet",
        description="Contact-network analysis: centralities, spectral epidemic "
                    "thresholds, vaccination strategies, and SIR simulation.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="draw one random graph and write its edge list")
    _add_common(p)
    p.add_argument("--family", default=None, metavar="FAMILY",
                   help=f"one of {', '.join(FAMILIES)} (short aliases accepted)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--dim", type=int, default=2)

    p = sub.add_parser("centrality", help="score nodes of an edge-list graph")
    _add_common(p)
    p.add_argument("--input", required=True, help="edge-list file")
    p.add_argument("--metric", required=True,
                   help="degree, degree_normalized, closeness, betweenness, eigenvector")

    p = sub.add_parser("spectral", help="dominant eigenvalue and threshold report")
    _add_common(p)
    p.add_argument("--input", required=True, help="edge-list file")
    p.add_argument("--beta", type=float, default=None, help="infection rate per contact")
    p.add_argument("--delta", type=float, default=None, help="recovery rate")

    p = sub.add_parser("table1", help="eigenvalue-drop table: top-k vs random removal")
    _add_common(p, needs_config=True)

    p = sub.add_parser("herd", help="targeted removals matching a random baseline")
    _add_common(p, needs_config=True)

    p = sub.add_parser("simulate", help="SIR ensembles under intervention strategies")
    _add_common(p, needs_config=True)

    p = sub.add_parser("ingest", help="daily graphs and eigendrop from contact files")
    _add_common(p)
    p.add_argument("paths", nargs="+", help="contact list files")
    p.add_argument("--columns", type=int, choices=(2, 3), default=None)
    p.add_argument("--k", type=int, default=None, help="removals per day")

    return ap


def _cmd_generate(args) -> dict:
    if args.config is not None:
        cfg = _load_cfg(args)
        if not cfg.networks:
            raise ConfigError("config has no networks to generate")
        spec = cfg.networks[0]
        if args.seed is not None:
            spec = spec.with_seed(args.seed)
    else:
        if args.family is None or args.n is None:
            raise ConfigError("generate needs --family and --n (or --config)")
        spec = GenSpec(family=args.family, n=args.n, p=args.p, m=args.m,
                       radius=args.radius, dim=args.dim,
                       seed=args.seed if args.seed is not None else 0)
    out = Path(args.out)
    if out.suffix == "":
        out = out / f"{spec.family}_n{spec.n}_seed{spec.seed}.edges"
    return run_generate(spec, out)


def _single_out(args, default_name: str) -> Path:
    out = Path(args.out)
    return out / default_name if out.suffix == "" else out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            result = _cmd_generate(args)
        elif args.command == "centrality":
            g = read_edge_list(args.input)
            metric = Metric.from_name(args.metric)
            result = run_centrality(g, metric, _single_out(args, f"centrality_{metric.value}.csv"))
        elif args.command == "spectral":
            g = read_edge_list(args.input)
            result = run_spectral(g, _single_out(args, "spectral.json"),
                                  beta=args.beta, delta=args.delta)
        elif args.command == "table1":
            result = run_eigendrop_table(_load_cfg(args), args.out)
        elif args.command == "herd":
            result = run_herd(_load_cfg(args), args.out)
        elif args.command == "simulate":
            result = run_simulate(_load_cfg(args), args.out)
        else:
            cfg = _load_cfg(args)
            if args.columns is not None or args.k is not None:
                ing = {"columns": args.columns if args.columns is not None else cfg.ingest.columns,
                       "k": args.k if args.k is not None else cfg.ingest.k,
                       "k_fraction": cfg.ingest.k_fraction,
                       "replicates": cfg.ingest.replicates}
                if cfg.ingest.day_length is not None:
                    ing["day_length"] = cfg.ingest.day_length
                cfg = config_from_dict({"seed": cfg.seed, "k": cfg.k,
                                        "metrics": [m.value for m in cfg.metrics],
                                        "ingest": ing}, source="<cli>")
            result = run_ingest(cfg, args.paths, args.out)
    except BrokenPipeError:
        return 1
    except Exception as exc:  # noqa: BLE001 - single reporting point for scripting
        err = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 1
    print(json.dumps(result, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Configured experiment runners behind the command-line interface.

Every runner takes a validated configuration, derives all randomness from
one master seed through labeled child streams, and writes plain CSV/JSON
files with stable ordering and repr-exact floats. Running the same
configuration twice produces byte-identical outputs; worker-pool fan-out
changes wall time, never results.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import yaml

from . import seeding
from .centrality import Metric, compute, write_scores_csv
from .generators import GenSpec, degree_preserving_shuffle, generate
from .graph import Graph, write_edge_list
from .ingest import load_daily_graphs
from .sirsim import Intervention, SirParams, ensemble, peak_and_final
from .spectral import SirRates, lambda_max, spectral_bounds_check, threshold_check
from .stats import mean_std, paired_t_test
from .vaccination import eigen_drop, herd_equivalent, plan_random, plan_topk

DEFAULT_METRICS = (Metric.DEGREE, Metric.BETWEENNESS, Metric.EIGENVECTOR)


class ConfigError(ValueError):
    """Configuration file is malformed or inconsistent."""


# -- configuration ---------------------------------------------------------------


@dataclass(frozen=True)
class SirConfig:
    params: SirParams = SirParams()
    runs: int = 10
    metrics: tuple[Metric, ...] = (Metric.DEGREE,)
    interventions: tuple[dict, ...] = ()   # each {"time": float, "k": int}

    def arms(self) -> list[tuple[str, tuple[Intervention, ...]]]:
        """Strategy arms: no action, random picks, and top-k per metric."""
        out: list[tuple[str, tuple[Intervention, ...]]] = [("none", ())]
        out.append(("random", tuple(
            Intervention(iv["time"], "random", iv["k"]) for iv in self.interventions)))
        for metric in self.metrics:
            out.append((f"topk_{metric.value}", tuple(
                Intervention(iv["time"], "topk", iv["k"], metric)
                for iv in self.interventions)))
        return out


@dataclass(frozen=True)
class HerdConfig:
    fraction: float = 0.7
    replicates: int = 5


@dataclass(frozen=True)
class IngestConfig:
    columns: int = 3
    day_length: Optional[int] = None
    k: Optional[int] = None
    k_fraction: float = 0.10
    replicates: int = 10


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    replicates: int = 30
    k: int = 100
    metrics: tuple[Metric, ...] = DEFAULT_METRICS
    replicate_mode: str = "generate"      # or "shuffle"
    workers: int = 1
    networks: tuple[GenSpec, ...] = ()
    sir: SirConfig = SirConfig()
    herd: HerdConfig = HerdConfig()
    ingest: IngestConfig = IngestConfig()

    def __post_init__(self):
        if self.replicates < 1:
            raise ConfigError("replicates must be at least 1")
        if self.k < 0:
            raise ConfigError("k must be non-negative")
        if self.replicate_mode not in ("generate", "shuffle"):
            raise ConfigError("replicate_mode must be 'generate' or 'shuffle'")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")


def _metrics_from(names) -> tuple[Metric, ...]:
    return tuple(Metric.from_name(nm) for nm in names)


def load_config(path, overrides: Optional[dict] = None) -> ExperimentConfig:
    """Parse a YAML configuration file into an ExperimentConfig."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    if overrides:
        raw = {**raw, **{k: v for k, v in overrides.items() if v is not None}}
    return config_from_dict(raw, source=str(path))


def config_from_dict(raw: dict, source: str = "<config>") -> ExperimentConfig:
    allowed = {"seed", "replicates", "k", "metrics", "replicate_mode", "workers",
               "networks", "sir", "herd", "ingest"}
    unknown = set(raw) - allowed
    if unknown:
        raise ConfigError(f"{source}: unknown keys {sorted(unknown)}")
    try:
        networks = tuple(GenSpec.from_dict(d) for d in raw.get("networks", []))
        sir_raw = dict(raw.get("sir", {}))
        sir_allowed = {"tau", "recovery_days", "initial_infected", "t_max", "grid_dt",
                       "runs", "metrics", "interventions"}
        bad = set(sir_raw) - sir_allowed
        if bad:
            raise ConfigError(f"{source}: unknown sir keys {sorted(bad)}")
        params = SirParams(
            tau=float(sir_raw.get("tau", 0.4)),
            recovery_days=float(sir_raw.get("recovery_days", 14.0)),
            initial_infected=int(sir_raw.get("initial_infected", 5)),
            t_max=float(sir_raw.get("t_max", 30.0)),
            grid_dt=float(sir_raw.get("grid_dt", 0.25)),
        )
        interventions = tuple(
            {"time": float(iv["time"]), "k": int(iv["k"])}
            for iv in sir_raw.get("interventions", []))
        sir = SirConfig(
            params=params,
            runs=int(sir_raw.get("runs", 10)),
            metrics=_metrics_from(sir_raw.get("metrics", ["degree"])),
            interventions=interventions,
        )
        herd_raw = dict(raw.get("herd", {}))
        herd = HerdConfig(
            fraction=float(herd_raw.get("fraction", 0.7)),
            replicates=int(herd_raw.get("replicates", 5)),
        )
        ing_raw = dict(raw.get("ingest", {}))
        ingest = IngestConfig(
            columns=int(ing_raw.get("columns", 3)),
            day_length=(int(ing_raw["day_length"])
                        if ing_raw.get("day_length") is not None else None),
            k=int(ing_raw["k"]) if ing_raw.get("k") is not None else None,
            k_fraction=float(ing_raw.get("k_fraction", 0.10)),
            replicates=int(ing_raw.get("replicates", 10)),
        )
        return ExperimentConfig(
            seed=int(raw.get("seed", 0)),
            replicates=int(raw.get("replicates", 30)),
            k=int(raw.get("k", 100)),
            metrics=_metrics_from(raw.get("metrics", [m.value for m in DEFAULT_METRICS])),
            replicate_mode=str(raw.get("replicate_mode", "generate")),
            workers=int(raw.get("workers", 1)),
            networks=networks,
            sir=sir,
            herd=herd,
            ingest=ingest,
        )
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from exc


# -- output helpers ----------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def write_csv(path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def write_json(path, payload) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _spec_label(spec: GenSpec) -> str:
    parts = [spec.family, f"n{spec.n}"]
    if spec.p is not None:
        parts.append(f"p{spec.p}")
    if spec.m is not None:
        parts.append(f"m{spec.m}")
    if spec.radius is not None:
        parts.append(f"r{spec.radius}")
    return "-".join(parts)


# -- eigen-drop comparison across families and strategies ----------------------------


def _replicate_graph(spec: GenSpec, mode: str, master_seed: int,
                     family_idx: int, rep: int) -> tuple[Graph, int]:
    if mode == "shuffle":
        base_seed = seeding.child_seed(master_seed, "net", family_idx, "base")
        base = generate(spec.with_seed(base_seed))
        shuf_seed = seeding.child_seed(master_seed, "shuffle", family_idx, rep)
        return degree_preserving_shuffle(base, seed=shuf_seed), shuf_seed
    g_seed = seeding.child_seed(master_seed, "net", family_idx, rep)
    return generate(spec.with_seed(g_seed)), g_seed


def _eigendrop_task(args) -> dict:
    spec_dict, mode, master_seed, family_idx, rep, k, metric_names = args
    spec = GenSpec.from_dict(spec_dict)
    g, g_seed = _replicate_graph(spec, mode, master_seed, family_idx, rep)
    lam_orig = lambda_max(g).lambda_max
    rand_seed = seeding.child_seed(master_seed, "rand", family_idx, rep)
    lam_rand = eigen_drop(g, plan_random(g, k, seed=rand_seed)).lambda_after
    row = {"replicate": rep, "graph_seed": g_seed,
           "lambda_orig": lam_orig, "lambda_random": lam_rand}
    for name in metric_names:
        metric = Metric.from_name(name)
        lam = eigen_drop(g, plan_topk(g, metric, k)).lambda_after
        row[f"lambda_topk_{metric.value}"] = lam
    return row


def run_eigendrop_table(cfg: ExperimentConfig, out_dir) -> dict:
    """Eigenvalue drop of top-k vs random removal across network families.

    Writes one row per (family, metric) to the summary CSV and one row per
    (family, replicate) to the replicate CSV; the paired t-test compares
    the targeted and random arms over replicates.
    """
    if not cfg.networks:
        raise ConfigError("eigendrop table needs at least one network spec")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    metric_names = [m.value for m in cfg.metrics]

    long_rows = []
    summary_rows = []
    tasks = [(spec.to_dict(), cfg.replicate_mode, cfg.seed, fi, rep, cfg.k, metric_names)
             for fi, spec in enumerate(cfg.networks)
             for rep in range(cfg.replicates)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_eigendrop_task, tasks, chunksize=1))
    else:
        results = [_eigendrop_task(t) for t in tasks]

    per_family = len(range(cfg.replicates))
    for fi, spec in enumerate(cfg.networks):
        rows = results[fi * per_family:(fi + 1) * per_family]
        label = _spec_label(spec)
        for row in rows:
            long_rows.append([label, row["replicate"], row["graph_seed"],
                              row["lambda_orig"], row["lambda_random"]]
                             + [row[f"lambda_topk_{m}"] for m in metric_names])
        orig = [r["lambda_orig"] for r in rows]
        rand = [r["lambda_random"] for r in rows]
        o_mean, o_std = mean_std(orig)
        r_mean, r_std = mean_std(rand)
        for name in metric_names:
            topk = [r[f"lambda_topk_{name}"] for r in rows]
            t_mean, t_std = mean_std(topk)
            if len(topk) >= 2:
                test = paired_t_test(topk, rand, alternative="less")
                t_stat, p_val, sig = test.t_stat, test.p_value, test.significant
            else:
                t_stat, p_val, sig = float("nan"), float("nan"), False
            summary_rows.append([label, spec.n, name, cfg.k, cfg.replicates,
                                 cfg.replicate_mode, o_mean, o_std, t_mean, t_std,
                                 r_mean, r_std, t_stat, p_val, sig])

    write_csv(out_dir / "eigendrop_replicates.csv",
              ["family", "replicate", "graph_seed", "lambda_orig", "lambda_random"]
              + [f"lambda_topk_{m}" for m in metric_names],
              long_rows)
    write_csv(out_dir / "eigendrop_summary.csv",
              ["family", "n", "metric", "k", "replicates", "mode",
               "lambda_orig_mean", "lambda_orig_std", "lambda_topk_mean",
               "lambda_topk_std", "lambda_random_mean", "lambda_random_std",
               "t_stat", "p_value", "significant"],
              summary_rows)
    write_json(out_dir / "eigendrop_meta.json",
               {"seed": cfg.seed, "replicates": cfg.replicates, "k": cfg.k,
                "mode": cfg.replicate_mode, "metrics": metric_names,
                "networks": [s.to_dict() for s in cfg.networks]})
    return {"summary": str(out_dir / "eigendrop_summary.csv"),
            "replicates": str(out_dir / "eigendrop_replicates.csv")}


# -- herd-equivalence search ----------------------------------------------------------


def run_herd(cfg: ExperimentConfig, out_dir) -> dict:
    if not cfg.networks:
        raise ConfigError("herd search needs at least one network spec")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for fi, spec in enumerate(cfg.networks):
        graphs = [generate(spec.with_seed(seeding.child_seed(cfg.seed, "herd", fi, rep)))
                  for rep in range(cfg.herd.replicates)]
        for metric in cfg.metrics:
            report = herd_equivalent(graphs, metric, cfg.herd.fraction,
                                     seed=seeding.child_seed(cfg.seed, "herdbase", fi))
            rows.append([_spec_label(spec), metric.value, report.n, report.replicates,
                         report.n_h_fraction, report.n_h, report.lambda_target,
                         report.n_hs, report.n_hs_fraction])
    write_csv(out_dir / "herd.csv",
              ["family", "metric", "n", "replicates", "n_h_fraction", "n_h",
               "lambda_target", "n_hs", "n_hs_fraction"],
              rows)
    return {"herd": str(out_dir / "herd.csv")}


# -- SIR intervention comparison -------------------------------------------------------


def run_simulate(cfg: ExperimentConfig, out_dir) -> dict:
    if not cfg.networks:
        raise ConfigError("simulation needs at least one network spec")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary: dict = {}
    paths = {}
    for fi, spec in enumerate(cfg.networks):
        label = _spec_label(spec)
        summary[label] = {}
        for arm_name, ivs in cfg.sir.arms():
            result = ensemble(spec, cfg.sir.params, ivs, runs=cfg.sir.runs,
                              seed=seeding.child_seed(cfg.seed, "sim", fi))
            tr = result.mean
            fname = out_dir / f"trajectory_{label}_{arm_name}.csv"
            write_csv(fname, ["time", "s", "i", "r", "v"],
                      [[tr.times[j], tr.s[j], tr.i[j], tr.r[j], tr.v[j]]
                       for j in range(tr.times.size)])
            paths[f"{label}:{arm_name}"] = str(fname)
            summ = peak_and_final(tr)
            summary[label][arm_name] = {
                "peak_infected": summ.peak_infected,
                "peak_time": summ.peak_time,
                "attack_rate": summ.attack_rate,
                "final_s": summ.final_s,
                "final_i": summ.final_i,
                "final_r": summ.final_r,
                "final_v": summ.final_v,
                "runs": cfg.sir.runs,
                "warnings": sorted(set(tr.meta["warnings"])),
            }
    write_json(out_dir / "sir_summary.json",
               {"seed": cfg.seed, "params": {
                   "tau": cfg.sir.params.tau,
                   "recovery_days": cfg.sir.params.recovery_days,
                   "initial_infected": cfg.sir.params.initial_infected,
                   "t_max": cfg.sir.params.t_max,
                   "grid_dt": cfg.sir.params.grid_dt},
                "interventions": list(cfg.sir.interventions),
                "results": summary})
    paths["summary"] = str(out_dir / "sir_summary.json")
    return paths


# -- real contact data ------------------------------------------------------------------


def run_ingest(cfg: ExperimentConfig, paths: Sequence, out_dir) -> dict:
    if not paths:
        raise ConfigError("ingest needs at least one contact file")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    dataset = load_daily_graphs(paths, columns=cfg.ingest.columns,
                                day_length=cfg.ingest.day_length)
    daily_rows = []
    by_metric: dict[str, dict[str, list[float]]] = {
        m.value: {"orig": [], "topk": [], "rand": []} for m in cfg.metrics}
    for day, g in zip(dataset.days, dataset.graphs):
        k = cfg.ingest.k if cfg.ingest.k is not None else max(1, round(cfg.ingest.k_fraction * g.n))
        k = min(k, g.n)
        lam_orig = lambda_max(g).lambda_max
        rand_vals = []
        for rep in range(cfg.ingest.replicates):
            seed = seeding.child_seed(cfg.seed, "ingest", day, "rand", rep)
            rand_vals.append(eigen_drop(g, plan_random(g, k, seed=seed)).lambda_after)
        lam_rand = float(np.mean(rand_vals))
        for metric in cfg.metrics:
            lam_topk = eigen_drop(g, plan_topk(g, metric, k)).lambda_after
            daily_rows.append([day, g.n, g.m, k, metric.value,
                               lam_orig, lam_topk, lam_rand])
            by_metric[metric.value]["orig"].append(lam_orig)
            by_metric[metric.value]["topk"].append(lam_topk)
            by_metric[metric.value]["rand"].append(lam_rand)
    write_csv(out_dir / "contact_daily.csv",
              ["day", "n", "m", "k", "metric", "lambda_orig", "lambda_topk",
               "lambda_random"],
              daily_rows)
    summary_rows = []
    for metric in cfg.metrics:
        vals = by_metric[metric.value]
        o_mean, o_std = mean_std(vals["orig"])
        t_mean, t_std = mean_std(vals["topk"])
        r_mean, r_std = mean_std(vals["rand"])
        if len(vals["topk"]) >= 2:
            test = paired_t_test(vals["topk"], vals["rand"], alternative="less")
            t_stat, p_val, sig = test.t_stat, test.p_value, test.significant
        else:
            t_stat, p_val, sig = float("nan"), float("nan"), False
        summary_rows.append([metric.value, len(dataset.days), o_mean, o_std,
                             t_mean, t_std, r_mean, r_std, t_stat, p_val, sig])
    write_csv(out_dir / "contact_summary.csv",
              ["metric", "days", "lambda_orig_mean", "lambda_orig_std",
               "lambda_topk_mean", "lambda_topk_std", "lambda_random_mean",
               "lambda_random_std", "t_stat", "p_value", "significant"],
              summary_rows)
    if dataset.warnings:
        with open(out_dir / "ingest_warnings.txt", "w", encoding="utf-8") as fh:
            for w in dataset.warnings:
                fh.write(w + "\n")
    return {"daily": str(out_dir / "contact_daily.csv"),
            "summary": str(out_dir / "contact_summary.csv")}


# -- single-shot helpers used by the CLI ---------------------------------------------------


def run_generate(spec: GenSpec, out_path) -> dict:
    g = generate(spec)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    write_edge_list(g, out_path)
    meta = {"spec": spec.to_dict(), "n": g.n, "m": g.m, "fingerprint": g.fingerprint}
    write_json(str(out_path) + ".meta.json", meta)
    return meta


def run_centrality(g: Graph, metric: Metric, out_path) -> dict:
    scores = compute(g, metric)
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    write_scores_csv(scores, out_path, labels=g.labels)
    return {"metric": metric.value, "nodes": g.n, "out": str(out_path)}


def run_spectral(g: Graph, out_path, beta: Optional[float] = None,
                 delta: Optional[float] = None) -> dict:
    res = lambda_max(g)
    payload: dict = {
        "n": g.n, "m": g.m,
        "lambda_max": res.lambda_max,
        "iterations": res.iterations,
        "residual": res.residual,
        "converged": res.converged,
    }
    if g.m > 0:
        bounds = spectral_bounds_check(g)
        payload["bounds"] = {"deg_avg": bounds.deg_avg, "deg_max": bounds.deg_max,
                             "holds": bounds.holds}
    if beta is not None and delta is not None:
        rep = threshold_check(SirRates(beta, delta), res.lambda_max)
        payload["threshold"] = {"ratio": rep.ratio, "inv_lambda": rep.inv_lambda,
                                "contained": rep.contained, "margin": rep.margin}
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    write_json(out_path, payload)
    return payload

"""Command-line pipeline: generate -> sample -> observe -> estimate,
plus exact ground truth and the evaluation sweep.

Each stage reads and writes plain files so any step can be scripted or
swapped out. Runs with identical flags and seed produce byte-identical
outputs. On failure the process exits nonzero after printing a single
"error: <Type>: <message>" line to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import fileio
from .errors import CategraphError
from .estimate import PROPORTIONAL, bootstrap_variance, estimate_category_graph
from .evaluate import ExperimentConfig, run_experiment
from .generate import SyntheticParams, synthetic_graph
from .observe import INDUCED, STAR, observe_induced, observe_star
from .sampling import (
    sample_mhrw,
    sample_rw,
    sample_uis,
    sample_wis,
    sample_wrw,
    thin,
)


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


def _cmd_generate(args) -> int:
    params = SyntheticParams(category_sizes=tuple(_int_list(args.sizes)),
                             k=args.k,
                             inter_edge_count=args.inter,
                             alpha=args.alpha,
                             seed=args.seed)
    g, part = synthetic_graph(params)
    fileio.save_graph(g, part, args.out_edges, args.out_categories)
    print(f"wrote N={g.node_count} E={g.edge_count} "
          f"C={part.num_categories}")
    return 0


def _cmd_exact(args) -> int:
    from .graph import exact_category_graph
    g, part = fileio.load_graph(args.edges, args.categories)
    cg = exact_category_graph(g, part)
    fileio.export_category_graph(cg, args.format, args.out, names=part.names)
    return 0


def _parse_category_weights(text: str, part):
    if text == "equal":
        return np.ones(part.num_categories)
    weights = np.ones(part.num_categories)
    for tok in text.split(","):
        name, _, value = tok.partition("=")
        if name not in part.names:
            raise CategraphError(f"unknown category name {name!r}")
        weights[part.names.index(name)] = float(value)
    return weights


def _cmd_sample(args) -> int:
    g, part = fileio.load_graph(args.edges, args.categories)
    base_seed = args.seed

    def one_trace(walk_index: int):
        seed = base_seed if args.walks == 1 else [base_seed, walk_index]
        if args.sampler == "uis":
            trace = sample_uis(g, args.n, seed=seed)
        elif args.sampler == "wis":
            trace = sample_wis(g, g.degrees.astype(float), args.n, seed=seed)
        elif args.sampler == "rw":
            trace = sample_rw(g, args.n, start=args.start,
                              burn_in=args.burn_in, seed=seed)
        elif args.sampler == "mhrw":
            trace = sample_mhrw(g, args.n, start=args.start,
                                burn_in=args.burn_in, seed=seed)
        else:
            cw = _parse_category_weights(args.wrw_weights, part)
            trace = sample_wrw(g, part, cw, args.n, start=args.start,
                               burn_in=args.burn_in, seed=seed)
        if args.thin > 1:
            trace = thin(trace, args.thin)
        return trace

    if args.walks == 1:
        fileio.save_trace(one_trace(0), args.out)
    else:
        for i in range(args.walks):
            fileio.save_trace(one_trace(i), f"{args.out}.{i}")
    return 0


def _cmd_observe(args) -> int:
    g, part = fileio.load_graph(args.edges, args.categories)
    trace = fileio.load_trace(args.trace)
    log = (observe_induced(g, part, trace) if args.mode == INDUCED
           else observe_star(g, part, trace))
    fileio.save_log(log, args.out)
    return 0


def _parse_population(text: str):
    if text == "proportional":
        return PROPORTIONAL
    if text == "auto":
        return None
    if text.startswith("exact:"):
        return int(text.split(":", 1)[1])
    raise CategraphError(
        f"population must be exact:<N>, proportional, or auto; got {text!r}")


def _cmd_estimate(args) -> int:
    log = fileio.load_log(args.log)
    population = _parse_population(args.population)
    est = estimate_category_graph(
        log, population=population,
        size_estimator=args.size_est,
        weight_estimator=args.weight_est,
        assume_homogeneous_degree=args.homogeneous_degree)
    if args.bootstrap:
        size_var, weight_var = bootstrap_variance(
            log, args.bootstrap, seed=args.seed, population=population,
            size_estimator=args.size_est, weight_estimator=args.weight_est,
            assume_homogeneous_degree=args.homogeneous_degree)
        from dataclasses import replace
        est = replace(est, size_variances=size_var,
                      weight_variances=weight_var)
    fileio.save_estimate(est, args.out)
    return 0


def _config_from_file(path) -> ExperimentConfig:
    with open(path) as fh:
        raw = json.load(fh)
    source = raw.get("graph", {})
    if "synthetic" in source:
        model = source["synthetic"]
        params = SyntheticParams(
            category_sizes=tuple(model["category_sizes"]),
            k=model["k"],
            inter_edge_count=model.get("inter_edge_count"),
            alpha=model.get("alpha", 0.0),
            seed=model.get("seed"))
        g, part = synthetic_graph(params)
    elif "edge_file" in source:
        g, part = fileio.load_graph(source["edge_file"],
                                    source["category_file"])
    else:
        raise CategraphError(
            "config needs graph.synthetic or graph.edge_file/category_file")
    kwargs = {}
    for key in ("samplers", "sample_sizes", "replicates", "seed", "modes",
                "size_estimators", "weight_estimators", "burn_in",
                "probe_percentiles"):
        if key in raw:
            kwargs[key] = raw[key]
    if "thin" in raw:
        kwargs["thin_interval"] = raw["thin"]
    if "wrw_category_weights" in raw and raw["wrw_category_weights"] != "equal":
        kwargs["wrw_category_weights"] = np.asarray(
            raw["wrw_category_weights"], dtype=float)
    return ExperimentConfig(graph=g, partition=part, **kwargs)


def _cmd_evaluate(args) -> int:
    cfg = _config_from_file(args.config)
    report = run_experiment(cfg)
    if args.csv:
        report.write_csv(args.csv)
    if args.json:
        report.write_json(args.json)
    if not args.csv and not args.json:
        for cell in report.cells:
            print(f"{cell.quantity_kind}\t{cell.sampler}\t{cell.mode}\t"
                  f"{cell.estimator_label}\t{cell.n}\t"
                  f"{cell.median_nrmse!r}\t{cell.excluded}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="categraph",
        description="Estimate the category graph of a partitioned graph "
                    "from probability samples of nodes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic benchmark graph")
    p.add_argument("--sizes", required=True,
                   help="comma-separated category sizes, e.g. 100,200,700")
    p.add_argument("--k", type=int, required=True,
                   help="intra-category regular degree")
    p.add_argument("--inter", type=int, default=None,
                   help="inter-category edge count (default N*k/10)")
    p.add_argument("--alpha", type=float, default=0.0,
                   help="fraction of labels to permute")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-edges", required=True)
    p.add_argument("--out-categories", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("exact", help="exact category graph from full files")
    p.add_argument("--edges", required=True)
    p.add_argument("--categories", required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("sample", help="draw a sample trace")
    p.add_argument("--edges", required=True)
    p.add_argument("--categories", required=True)
    p.add_argument("--sampler", choices=("uis", "wis", "rw", "mhrw", "wrw"),
                   required=True)
    p.add_argument("--n", type=int, required=True,
                   help="retained draws per trace")
    p.add_argument("--walks", type=int, default=1,
                   help="number of independent traces (derived seeds)")
    p.add_argument("--burn-in", type=int, default=0)
    p.add_argument("--thin", type=int, default=1)
    p.add_argument("--start", type=int, default=None,
                   help="walk start node (default: uniform random)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--wrw-weights", default="equal",
                   help='"equal" or name=value,... category weights')
    p.add_argument("--out", required=True,
                   help="trace path (suffix .<i> added when --walks > 1)")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("observe", help="replay a trace through an observer")
    p.add_argument("--edges", required=True)
    p.add_argument("--categories", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--mode", choices=(INDUCED, STAR), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_observe)

    p = sub.add_parser("estimate", help="estimate the category graph "
                                        "from an observation log")
    p.add_argument("--log", required=True)
    p.add_argument("--size-est", choices=(INDUCED, STAR), default=INDUCED)
    p.add_argument("--weight-est", choices=(INDUCED, STAR), default=None)
    p.add_argument("--population", default="auto",
                   help="exact:<N>, proportional, or auto (log hint)")
    p.add_argument("--homogeneous-degree", action="store_true",
                   help="assume equal mean degree across categories in "
                        "the star size estimator")
    p.add_argument("--bootstrap", type=int, default=0,
                   help="bootstrap replicates for variance estimates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("evaluate", help="run an NRMSE evaluation sweep")
    p.add_argument("--config", required=True, help="JSON experiment config")
    p.add_argument("--csv", default=None)
    p.add_argument("--json", default=None)
    p.set_defaults(func=_cmd_evaluate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CategraphError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

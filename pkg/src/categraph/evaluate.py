"""Monte Carlo evaluation of the estimators against exact ground truth.

The experiment runner sweeps a grid of sampler x observation mode x
estimator choice x sample size, runs R independent sample+estimate
replicates per grid cell, and scores every category size and every true
edge weight by its normalized root-mean-square error across replicates.
Cells report the median NRMSE over quantities (plus quartiles and the
full per-quantity map, which doubles as the NRMSE CDF), and optionally
track specific probe edges picked at fixed percentiles of the true
weight distribution.

Replicates are seeded independently from (seed, sampler, n, replicate),
so reports are deterministic and cells may be evaluated concurrently.
"""
from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import UndefinedNRMSE
from .estimate import estimate_category_graph
from .graph import CategoryGraph, CategoryPartition, Graph, exact_category_graph
from .observe import INDUCED, STAR, observe_induced, observe_star
from .sampling import (
    sample_mhrw,
    sample_rw,
    sample_uis,
    sample_wis,
    sample_wrw,
    thin,
)

SAMPLERS = ("uis", "wis", "rw", "mhrw", "wrw")


def nrmse(estimates: Sequence[float], truth: float) -> float:
    """Root-mean-square error across replicates, normalized by the
    true value. Undefined for truth 0."""
    if truth == 0:
        raise UndefinedNRMSE("true value is zero")
    est = np.asarray(estimates, dtype=float)
    if est.size == 0:
        raise ValueError("need at least one estimate")
    return float(np.sqrt(np.mean((est - truth) ** 2)) / truth)


@dataclass
class ExperimentConfig:
    """Declarative description of one evaluation sweep."""

    graph: Graph
    partition: CategoryPartition
    samplers: tuple[str, ...] = ("uis", "rw", "mhrw", "wrw")
    sample_sizes: tuple[int, ...] = (500, 5000, 50000)
    replicates: int = 30
    seed: int = 0
    modes: tuple[str, ...] = (INDUCED, STAR)
    size_estimators: tuple[str, ...] = (INDUCED, STAR)
    weight_estimators: tuple[str, ...] = (INDUCED, STAR)
    burn_in: int = 0
    thin_interval: int = 1
    probe_percentiles: tuple[float, ...] = (25.0, 75.0)
    wis_node_weights: np.ndarray | None = None       # default: degrees
    wrw_category_weights: np.ndarray | None = None   # default: all equal

    def __post_init__(self):
        self.samplers = tuple(self.samplers)
        self.sample_sizes = tuple(int(n) for n in self.sample_sizes)
        self.modes = tuple(self.modes)
        self.size_estimators = tuple(self.size_estimators)
        self.weight_estimators = tuple(self.weight_estimators)
        self.probe_percentiles = tuple(float(p) for p in self.probe_percentiles)
        for s in self.samplers:
            if s not in SAMPLERS:
                raise ValueError(f"unknown sampler {s!r}")
        if self.replicates < 2:
            raise ValueError("NRMSE needs at least two replicates")
        if any(a >= b for a, b in zip(self.sample_sizes, self.sample_sizes[1:])):
            raise ValueError("sample sizes must be strictly increasing")
        if self.thin_interval < 1:
            raise ValueError("thin interval must be >= 1")


@dataclass
class CellResult:
    """Scores for one grid cell.

    ``nrmse_by_quantity`` maps category name (sizes) or "A|B" pair name
    (weights) to its NRMSE over replicates; quantities the estimator
    could not produce in every replicate are excluded and counted.
    """

    quantity_kind: str          # "size" | "weight"
    sampler: str
    mode: str
    size_estimator: str
    weight_estimator: str | None
    n: int
    nrmse_by_quantity: dict[str, float]
    excluded: int
    probe_nrmse: dict[str, float] = field(default_factory=dict)

    @property
    def estimator_label(self) -> str:
        if self.quantity_kind == "size":
            return self.size_estimator
        if self.weight_estimator == STAR:
            return f"star[sizes={self.size_estimator}]"
        return self.weight_estimator

    @property
    def median_nrmse(self) -> float:
        if not self.nrmse_by_quantity:
            return float("nan")
        return float(np.median(list(self.nrmse_by_quantity.values())))

    @property
    def p25(self) -> float:
        if not self.nrmse_by_quantity:
            return float("nan")
        return float(np.percentile(list(self.nrmse_by_quantity.values()), 25))

    @property
    def p75(self) -> float:
        if not self.nrmse_by_quantity:
            return float("nan")
        return float(np.percentile(list(self.nrmse_by_quantity.values()), 75))

    def nrmse_cdf(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted NRMSE values and their cumulative fractions."""
        vals = np.sort(np.asarray(list(self.nrmse_by_quantity.values())))
        return vals, np.arange(1, len(vals) + 1) / len(vals)


@dataclass
class ExperimentReport:
    """All cell results of one sweep plus the ground truth used."""

    cells: list[CellResult]
    truth: CategoryGraph
    probe_pairs: dict[str, tuple[int, int]]
    category_names: tuple[str, ...]

    def find(self, quantity_kind: str, sampler: str, mode: str, n: int,
             size_estimator: str | None = None,
             weight_estimator: str | None = None) -> CellResult:
        for cell in self.cells:
            if (cell.quantity_kind == quantity_kind and cell.sampler == sampler
                    and cell.mode == mode and cell.n == n
                    and (size_estimator is None or cell.size_estimator == size_estimator)
                    and (weight_estimator is None or cell.weight_estimator == weight_estimator)):
                return cell
        raise KeyError(f"no cell ({quantity_kind}, {sampler}, {mode}, n={n}, "
                       f"size={size_estimator}, weight={weight_estimator})")

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["quantity_kind", "sampler", "mode", "estimator",
                             "n", "median_nrmse", "p25", "p75",
                             "excluded_count"])
            for cell in self.cells:
                writer.writerow([cell.quantity_kind, cell.sampler, cell.mode,
                                 cell.estimator_label, cell.n,
                                 repr(cell.median_nrmse), repr(cell.p25),
                                 repr(cell.p75), cell.excluded])

    def write_json(self, path) -> None:
        payload = {
            "truth": {
                "sizes": {self.category_names[c]: s
                          for c, s in sorted(self.truth.sizes.items())},
                "weights": {f"{self.category_names[a]}|{self.category_names[b]}": w
                            for (a, b), w in sorted(self.truth.weights.items())},
            },
            "probe_pairs": {label: f"{self.category_names[a]}|{self.category_names[b]}"
                            for label, (a, b) in sorted(self.probe_pairs.items())},
            "cells": [{
                "quantity_kind": cell.quantity_kind,
                "sampler": cell.sampler,
                "mode": cell.mode,
                "size_estimator": cell.size_estimator,
                "weight_estimator": cell.weight_estimator,
                "estimator": cell.estimator_label,
                "n": cell.n,
                "median_nrmse": cell.median_nrmse,
                "p25": cell.p25,
                "p75": cell.p75,
                "excluded_count": cell.excluded,
                "probe_nrmse": cell.probe_nrmse,
                "nrmse_by_quantity": cell.nrmse_by_quantity,
            } for cell in self.cells],
        }
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")


def _combos_for_mode(cfg: ExperimentConfig, mode: str):
    """Valid (size_estimator, weight_estimator) pairs for a mode.

    Induced logs support only the induced/induced combination; star
    logs support star weights fed by either size estimator. Requested
    combinations a mode cannot satisfy are skipped with a warning.
    """
    combos = []
    for se in cfg.size_estimators:
        for we in cfg.weight_estimators:
            if mode == INDUCED and (se == STAR or we == STAR):
                continue
            if mode == STAR and we == INDUCED:
                continue
            combos.append((se, we))
    if not combos:
        warnings.warn(f"no requested estimator combination fits mode "
                      f"{mode!r}; cell grid skipped", RuntimeWarning,
                      stacklevel=2)
    return combos


def _make_trace(cfg: ExperimentConfig, sampler: str, n: int, seed):
    g = cfg.graph
    raw_n = n * cfg.thin_interval
    if sampler == "uis":
        trace = sample_uis(g, raw_n, seed=seed)
    elif sampler == "wis":
        weights = (cfg.wis_node_weights if cfg.wis_node_weights is not None
                   else g.degrees.astype(float))
        trace = sample_wis(g, weights, raw_n, seed=seed)
    elif sampler == "rw":
        trace = sample_rw(g, raw_n, burn_in=cfg.burn_in, seed=seed)
    elif sampler == "mhrw":
        trace = sample_mhrw(g, raw_n, burn_in=cfg.burn_in, seed=seed)
    elif sampler == "wrw":
        cw = (cfg.wrw_category_weights if cfg.wrw_category_weights is not None
              else np.ones(cfg.partition.num_categories))
        trace = sample_wrw(g, cfg.partition, cw, raw_n,
                           burn_in=cfg.burn_in, seed=seed)
    else:  # pragma: no cover - guarded by config validation
        raise ValueError(f"unknown sampler {sampler!r}")
    if cfg.thin_interval > 1:
        trace = thin(trace, cfg.thin_interval)
    return trace


def _probe_pairs(truth: CategoryGraph,
                 percentiles: Sequence[float]) -> dict[str, tuple[int, int]]:
    if not truth.weights or not percentiles:
        return {}
    pairs = sorted(truth.weights, key=lambda p: (truth.weights[p], p))
    values = np.asarray([truth.weights[p] for p in pairs])
    out = {}
    for p in percentiles:
        target = np.percentile(values, p)
        idx = int(np.argmin(np.abs(values - target)))
        out[f"p{p:g}"] = pairs[idx]
    return out


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run the full sweep and score every grid cell.

    Within one (sampler, n, replicate) triple, a single trace is drawn
    and shared by both observation modes and all estimator choices, so
    comparisons across modes and estimators are paired.
    """
    g, part = cfg.graph, cfg.partition
    truth = exact_category_graph(g, part)
    names = part.names
    true_sizes = {c: float(truth.sizes[c]) for c in truth.sizes}
    true_weights = dict(truth.weights)
    probes = _probe_pairs(truth, cfg.probe_percentiles)

    combos = {mode: _combos_for_mode(cfg, mode) for mode in cfg.modes}

    # estimates[key][quantity] -> one entry per replicate (None = missing)
    size_est: dict[tuple, dict[int, list]] = {}
    weight_est: dict[tuple, dict[tuple[int, int], list]] = {}

    for si, sampler in enumerate(cfg.samplers):
        for ni, n in enumerate(cfg.sample_sizes):
            for rep in range(cfg.replicates):
                trace = _make_trace(cfg, sampler, n,
                                    seed=[cfg.seed, si, ni, rep])
                seen_size_cells = set()
                for mode in cfg.modes:
                    if not combos[mode]:
                        continue
                    log = (observe_induced(g, part, trace) if mode == INDUCED
                           else observe_star(g, part, trace))
                    for se, we in combos[mode]:
                        est = estimate_category_graph(
                            log, population=g.node_count,
                            size_estimator=se, weight_estimator=we)
                        skey = (sampler, mode, se, n)
                        if skey not in seen_size_cells:
                            seen_size_cells.add(skey)
                            store = size_est.setdefault(skey, {})
                            for c in true_sizes:
                                store.setdefault(c, []).append(
                                    est.sizes.get(c))
                        wkey = (sampler, mode, se, we, n)
                        store = weight_est.setdefault(wkey, {})
                        for pair in true_weights:
                            store.setdefault(pair, []).append(
                                est.weights.get(pair))

    cells: list[CellResult] = []
    for (sampler, mode, se, n), store in sorted(size_est.items()):
        scores: dict[str, float] = {}
        excluded = 0
        for c, vals in sorted(store.items()):
            if any(v is None for v in vals):
                excluded += 1
                continue
            scores[names[c]] = nrmse(vals, true_sizes[c])
        cells.append(CellResult(quantity_kind="size", sampler=sampler,
                                mode=mode, size_estimator=se,
                                weight_estimator=None, n=n,
                                nrmse_by_quantity=scores, excluded=excluded))
    for (sampler, mode, se, we, n), store in sorted(weight_est.items()):
        scores = {}
        excluded = 0
        probe_scores: dict[str, float] = {}
        for pair, vals in sorted(store.items()):
            if any(v is None for v in vals):
                excluded += 1
                continue
            scores[f"{names[pair[0]]}|{names[pair[1]]}"] = nrmse(
                vals, true_weights[pair])
        for label, pair in probes.items():
            vals = store.get(pair, [])
            if vals and not any(v is None for v in vals):
                probe_scores[label] = nrmse(vals, true_weights[pair])
        cells.append(CellResult(quantity_kind="weight", sampler=sampler,
                                mode=mode, size_estimator=se,
                                weight_estimator=we, n=n,
                                nrmse_by_quantity=scores, excluded=excluded,
                                probe_nrmse=probe_scores))
    cells.sort(key=lambda c: (c.quantity_kind, c.sampler, c.mode,
                              c.size_estimator, c.weight_estimator or "",
                              c.n))
    return ExperimentReport(cells=cells, truth=truth, probe_pairs=probes,
                            category_names=names)

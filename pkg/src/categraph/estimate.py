"""Category-size and edge-weight estimators over an ObservationLog.

All estimators are inverse-probability-weighted (Hansen-Hurwitz style)
ratios of totals: each draw contributes through 1/w(v), where w(v) is
its unnormalized sampling weight, so the unknown normalization of the
sampling design cancels. With all weights equal to 1 they reduce
exactly to the plain sample-proportion forms, which is what a uniform
independence sample calls for.

Estimates are deliberately not clamped to [0, 1] or rounded: the raw
ratio forms are the consistent ones, and clamping would bias them.
Categories with no draws get size 0 under the induced estimator
(flagged) and no estimate under the star estimator, whose per-category
mean degree is undefined there. Edge-weight estimators emit one-sided
values when only one endpoint category was sampled and skip a pair when
neither was.

Everything here is a pure function of (log, options); replicates and
bootstrap resamples may run concurrently.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptySample,
    InsufficientSample,
    MissingSizeEstimate,
    WrongObservationMode,
)
from .observe import INDUCED, STAR, ObservationLog

PROPORTIONAL = "proportional"


def reweighted_size(weights) -> float:
    """Inverse-weight mass of a draw multiset: sum of 1/w(v).

    This is the quantity that plays the role of a sample count once
    sampling bias is corrected for; with unit weights it IS the count.
    """
    w = np.asarray(weights, dtype=float)
    return float(np.sum(1.0 / w))


def hh_total(values, log: ObservationLog) -> float:
    """Estimate a population total from per-draw values.

    Treats the log's weights as exact sampling probabilities; returns
    (1/n) * sum of x(v)/w(v). When weights are known only up to a
    constant, use :func:`hh_ratio` instead, where the constant cancels.
    """
    if log.n == 0:
        raise EmptySample("no draws to estimate from")
    values = np.asarray(values, dtype=float)
    if values.shape != (log.n,):
        raise ValueError("need exactly one value per draw")
    return float(np.sum(values / log.weights) / log.n)


def hh_ratio(numer_values, denom_values, log: ObservationLog) -> float:
    """Ratio of two estimated totals; any constant factor shared by all
    sampling weights cancels out."""
    if log.n == 0:
        raise EmptySample("no draws to estimate from")
    numer = np.asarray(numer_values, dtype=float)
    denom = np.asarray(denom_values, dtype=float)
    if numer.shape != (log.n,) or denom.shape != (log.n,):
        raise ValueError("need exactly one value per draw")
    winv = 1.0 / log.weights
    return float(np.sum(numer * winv) / np.sum(denom * winv))


def _per_category_winv(log: ObservationLog) -> np.ndarray:
    winv = 1.0 / log.weights
    return np.bincount(log.categories, weights=winv,
                       minlength=log.num_categories)


def est_size_induced(log: ObservationLog, population: float) -> dict[int, float]:
    """Category sizes from the corrected share of draws per category.

    size(A) = population * winv(S_A) / winv(S), where winv is the
    inverse-weight mass of the draws. Categories never drawn get 0.
    """
    if log.n == 0:
        raise EmptySample("no draws to estimate from")
    percat = _per_category_winv(log)
    total = float(np.sum(1.0 / log.weights))
    return {c: float(population * percat[c] / total)
            for c in range(log.num_categories)}


def est_mean_degrees(log: ObservationLog) -> tuple[float, dict[int, float]]:
    """Weighted mean degree over the whole sample and per category.

    Returns (k_all, {category: k_cat}); categories without draws are
    absent from the map since their mean is undefined.
    """
    if log.n == 0:
        raise EmptySample("no draws to estimate from")
    winv = 1.0 / log.weights
    wdeg = log.degrees * winv
    k_all = float(np.sum(wdeg) / np.sum(winv))
    percat_winv = np.bincount(log.categories, weights=winv,
                              minlength=log.num_categories)
    percat_wdeg = np.bincount(log.categories, weights=wdeg,
                              minlength=log.num_categories)
    per_cat = {c: float(percat_wdeg[c] / percat_winv[c])
               for c in range(log.num_categories) if percat_winv[c] > 0}
    return k_all, per_cat


def est_volume_fraction_star(log: ObservationLog) -> dict[int, float]:
    """Share of total degree mass pointing into each category,
    estimated from the neighbor-category histograms of the draws.

    Far more information per draw than counting draw categories: every
    neighbor of every drawn node contributes. Values sum to 1.
    """
    if log.mode != STAR:
        raise WrongObservationMode("volume fractions need a star log")
    if log.n == 0:
        raise EmptySample("no draws to estimate from")
    winv = 1.0 / log.weights
    numer = np.sum(log.neighbor_counts * winv[:, None], axis=0)
    denom = float(np.sum(log.degrees * winv))
    if denom == 0.0:
        raise InsufficientSample("no edges observed from any draw")
    return {c: float(numer[c] / denom) for c in range(log.num_categories)}


def est_size_star(log: ObservationLog, population: float,
                  assume_homogeneous_degree: bool = False) -> dict[int, float]:
    """Category sizes from volume fractions and mean-degree ratios.

    size(A) = population * volfrac(A) * (k_all / k_A). Needs at least
    one draw in A for k_A, so unseen categories are omitted -- unless
    ``assume_homogeneous_degree`` replaces k_A by k_all, a variance-
    (and coverage-) friendly shortcut that trades away some accuracy
    when categories differ in density.
    """
    if log.mode != STAR:
        raise WrongObservationMode("star size estimation needs a star log")
    fvol = est_volume_fraction_star(log)
    if assume_homogeneous_degree:
        return {c: float(population * fvol[c]) for c in fvol}
    k_all, k_cat = est_mean_degrees(log)
    return {c: float(population * fvol[c] * (k_all / k_cat[c]))
            for c in fvol if c in k_cat and k_cat[c] > 0}


def est_weight_induced(log: ObservationLog) -> dict[tuple[int, int], float]:
    """Edge weights from edges observed between drawn nodes.

    For each category pair, the corrected count of observed cross
    edges over the corrected count of drawn cross node pairs. A pair is
    reported only when both categories have draws; duplicate draws of a
    node multiply its contribution, exactly as if every ordered draw
    pair had been checked for an edge (the sum is grouped per distinct
    node for speed).
    """
    if log.mode != INDUCED:
        raise WrongObservationMode("induced weight estimation needs "
                                   "an induced log")
    if log.n == 0:
        raise EmptySample("no draws to estimate from")
    c = log.num_categories
    percat = _per_category_winv(log)
    # inverse-weight mass per distinct drawn node
    winv_node = np.zeros(int(log.nodes.max()) + 1)
    np.add.at(winv_node, log.nodes, 1.0 / log.weights)
    numer = np.zeros((c, c))
    edges = log.induced_edges
    if edges is not None and len(edges):
        cat_of = np.zeros(len(winv_node), dtype=np.int64)
        cat_of[log.nodes] = log.categories
        cu = cat_of[edges[:, 0]]
        cv = cat_of[edges[:, 1]]
        vals = winv_node[edges[:, 0]] * winv_node[edges[:, 1]]
        lo = np.minimum(cu, cv)
        hi = np.maximum(cu, cv)
        cross = lo != hi
        np.add.at(numer, (lo[cross], hi[cross]), vals[cross])
    out: dict[tuple[int, int], float] = {}
    for a in range(c):
        if percat[a] == 0:
            continue
        for b in range(a + 1, c):
            if percat[b] == 0:
                continue
            out[(a, b)] = float(numer[a, b] / (percat[a] * percat[b]))
    return out


def est_weight_star(log: ObservationLog,
                    size_estimates: dict[int, float]) -> dict[tuple[int, int], float]:
    """Edge weights from the neighbor histograms of drawn nodes.

    Corrected count of observed edges into the other category, over the
    corrected maximum number observable, which requires size estimates
    for the categories on the far side. Either size estimator's output
    can be plugged in. One-sided pairs (draws in only one of the two
    categories) are still estimable; pairs with no draws on either
    side, or whose required far-side size is unavailable or zero, are
    skipped.
    """
    if log.mode != STAR:
        raise WrongObservationMode("star weight estimation needs a star log")
    if log.n == 0:
        raise EmptySample("no draws to estimate from")
    if size_estimates is None:
        raise MissingSizeEstimate("size estimates are required")
    c = log.num_categories
    winv = 1.0 / log.weights
    percat = _per_category_winv(log)
    # towards[a, b]: corrected count of observed edges from draws in a
    # into neighbors in b
    towards = np.zeros((c, c))
    np.add.at(towards, log.categories, log.neighbor_counts * winv[:, None])
    out: dict[tuple[int, int], float] = {}
    for a in range(c):
        for b in range(a + 1, c):
            has_a = percat[a] > 0
            has_b = percat[b] > 0
            if not (has_a or has_b):
                continue
            numer = 0.0
            denom = 0.0
            usable = True
            if has_a:
                if b not in size_estimates:
                    usable = False
                else:
                    numer += towards[a, b]
                    denom += percat[a] * size_estimates[b]
            if usable and has_b:
                if a not in size_estimates:
                    usable = False
                else:
                    numer += towards[b, a]
                    denom += percat[b] * size_estimates[a]
            if not usable or denom == 0.0:
                continue
            out[(a, b)] = float(numer / denom)
    return out


@dataclass(frozen=True)
class CategoryGraphEstimate:
    """Estimated category graph plus provenance.

    ``population_mode`` records whether absolute sizes were requested
    (exact N supplied) or everything is known only up to one shared
    constant (proportional: N taken as 1). Weight estimates may exceed
    1 under sampling noise; they are reported raw.
    """

    sizes: dict[int, float]
    weights: dict[tuple[int, int], float]
    size_estimator: str
    weight_estimator: str
    population: float
    population_mode: str
    category_names: tuple[str, ...]
    size_variances: dict[int, float] | None = None
    weight_variances: dict[tuple[int, int], float] | None = None
    zero_draw_categories: frozenset[int] = field(default_factory=frozenset)
    skipped_size_categories: frozenset[int] = field(default_factory=frozenset)
    skipped_weight_pairs: frozenset[tuple[int, int]] = field(default_factory=frozenset)


def _check_compatible(mode: str, size_estimator: str, weight_estimator: str):
    if size_estimator not in (INDUCED, STAR):
        raise ValueError(f"unknown size estimator {size_estimator!r}")
    if weight_estimator not in (INDUCED, STAR):
        raise ValueError(f"unknown weight estimator {weight_estimator!r}")
    if mode == INDUCED and (size_estimator == STAR or weight_estimator == STAR):
        raise WrongObservationMode(
            "star estimators need a star log")
    if mode == STAR and weight_estimator == INDUCED:
        raise WrongObservationMode(
            "induced weight estimation needs the induced edge set, "
            "which a star log does not carry")


def estimate_category_graph(log: ObservationLog,
                            population: float | str | None = None,
                            *,
                            size_estimator: str = INDUCED,
                            weight_estimator: str | None = None,
                            assume_homogeneous_degree: bool = False,
                            ) -> CategoryGraphEstimate:
    """Full pipeline: size estimates feeding edge-weight estimates.

    ``population`` may be the known node count, the string
    "proportional" (sizes and weights then correct up to one shared
    constant), or None to use the log's population hint when present.
    """
    if log.n == 0:
        raise EmptySample("no draws to estimate from")
    if weight_estimator is None:
        weight_estimator = INDUCED if log.mode == INDUCED else STAR
    _check_compatible(log.mode, size_estimator, weight_estimator)

    if population is None:
        population = (log.population_hint if log.population_hint is not None
                      else PROPORTIONAL)
    if population == PROPORTIONAL:
        pop_value, pop_mode = 1.0, PROPORTIONAL
    else:
        pop_value, pop_mode = float(population), "exact"

    all_cats = set(range(log.num_categories))
    drawn_cats = set(int(c) for c in np.unique(log.categories))
    zero_draw = frozenset(all_cats - drawn_cats)

    if size_estimator == INDUCED:
        sizes = est_size_induced(log, pop_value)
    else:
        sizes = est_size_star(log, pop_value,
                              assume_homogeneous_degree=assume_homogeneous_degree)
    skipped_sizes = frozenset(all_cats - set(sizes))

    if weight_estimator == INDUCED:
        weights = est_weight_induced(log)
    else:
        weights = est_weight_star(log, sizes)
    all_pairs = {(a, b) for a in range(log.num_categories)
                 for b in range(a + 1, log.num_categories)}
    skipped_weights = frozenset(all_pairs - set(weights))

    return CategoryGraphEstimate(
        sizes=sizes, weights=weights,
        size_estimator=size_estimator, weight_estimator=weight_estimator,
        population=pop_value, population_mode=pop_mode,
        category_names=log.category_names,
        zero_draw_categories=zero_draw,
        skipped_size_categories=skipped_sizes,
        skipped_weight_pairs=skipped_weights)


def bootstrap_variance(log: ObservationLog, B: int, seed=None,
                       population: float | str | None = None,
                       *,
                       size_estimator: str = INDUCED,
                       weight_estimator: str | None = None,
                       assume_homogeneous_degree: bool = False,
                       ) -> tuple[dict[int, float], dict[tuple[int, int], float]]:
    """Bootstrap variances of the size and weight estimates.

    Resamples the draws with replacement B times, re-runs the full
    estimate, and returns the sample variance per quantity (over the
    resamples in which the quantity was estimable; quantities seen
    fewer than twice are dropped).
    """
    if B < 2:
        raise ValueError("need at least two bootstrap replicates")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    size_samples: dict[int, list[float]] = {}
    weight_samples: dict[tuple[int, int], list[float]] = {}
    for _ in range(B):
        idx = rng.integers(0, log.n, size=log.n)
        est = estimate_category_graph(
            log.resampled(idx), population,
            size_estimator=size_estimator,
            weight_estimator=weight_estimator,
            assume_homogeneous_degree=assume_homogeneous_degree)
        for cat, value in est.sizes.items():
            size_samples.setdefault(cat, []).append(value)
        for pair, value in est.weights.items():
            weight_samples.setdefault(pair, []).append(value)
    size_var = {cat: float(np.var(vals, ddof=1))
                for cat, vals in size_samples.items() if len(vals) >= 2}
    weight_var = {pair: float(np.var(vals, ddof=1))
                  for pair, vals in weight_samples.items() if len(vals) >= 2}
    return size_var, weight_var

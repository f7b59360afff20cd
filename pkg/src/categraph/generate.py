"""Synthetic benchmark graphs with planted category structure.

The model: nodes in each category first form a random k-regular graph,
then a fixed number of random edges (default N*k/10) is added between
nodes of different categories, and finally the category labels of a
fraction ``alpha`` of nodes are randomly permuted among themselves.
alpha=0 keeps labels aligned with the planted communities; alpha=1
decouples them from the structure entirely while preserving every
category size exactly.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    GenerationFailed,
    InfeasibleRegularGraph,
    TooManyEdgesRequested,
)
from .graph import CategoryPartition, Graph

# Benchmark default: ten categories on the 1-2-5 decade ladder, 88,850
# nodes in total.
DEFAULT_CATEGORY_SIZES = (50, 100, 200, 500, 1000, 2000,
                          5000, 10000, 20000, 50000)

_MAX_REGULAR_ATTEMPTS = 100


@dataclass(frozen=True)
class SyntheticParams:
    """Parameters of the synthetic model.

    ``inter_edge_count`` defaults to N*k/10 (floor). ``alpha`` is the
    fraction of nodes whose labels get permuted.
    """

    category_sizes: tuple[int, ...]
    k: int
    inter_edge_count: int | None = None
    alpha: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "category_sizes",
                           tuple(int(s) for s in self.category_sizes))
        if not self.category_sizes:
            raise InfeasibleRegularGraph("need at least one category")
        for s in self.category_sizes:
            if s <= self.k:
                raise InfeasibleRegularGraph(
                    f"category size {s} must exceed degree k={self.k}")
            if (s * self.k) % 2 != 0:
                raise InfeasibleRegularGraph(
                    f"size*k must be even (size={s}, k={self.k})")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")

    @property
    def node_count(self) -> int:
        return sum(self.category_sizes)

    def resolved_inter_edges(self) -> int:
        if self.inter_edge_count is not None:
            return int(self.inter_edge_count)
        return self.node_count * self.k // 10


def _suitable(edges: set, stub_nodes: Sequence[int]) -> bool:
    # Generation can still finish iff some pair of leftover stub nodes
    # is non-adjacent.
    distinct = sorted(set(stub_nodes))
    for i, s1 in enumerate(distinct):
        for s2 in distinct[i + 1:]:
            if (s1, s2) not in edges:
                return True
    return len(distinct) == 0


def _regular_edges_once(size: int, k: int, rng: np.random.Generator):
    """One pairing-model attempt at a simple k-regular edge set.

    Pairs stubs uniformly; colliding stubs (self-pairs, duplicate edges)
    are thrown back and re-paired until none remain or no valid pairing
    can complete. Returns None on failure.
    """
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(size, dtype=np.int64), k)
    while stubs.size:
        rng.shuffle(stubs)
        leftovers: list[int] = []
        it = iter(stubs.tolist())
        for s1, s2 in zip(it, it):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                leftovers.append(s1)
                leftovers.append(s2)
        if not leftovers:
            return edges
        if not _suitable(edges, leftovers):
            return None
        stubs = np.asarray(leftovers, dtype=np.int64)
    return edges


def gen_intra_regular(sizes: Sequence[int], k: int,
                      rng: np.random.Generator) -> tuple[Graph, CategoryPartition]:
    """Disjoint random k-regular graphs, one per category.

    Node ids are assigned in contiguous blocks, category by category.
    """
    sizes = [int(s) for s in sizes]
    for s in sizes:
        if s <= k:
            raise InfeasibleRegularGraph(
                f"category size {s} must exceed degree k={k}")
        if (s * k) % 2 != 0:
            raise InfeasibleRegularGraph(
                f"size*k must be even (size={s}, k={k})")
    n = sum(sizes)
    labels = np.repeat(np.arange(len(sizes), dtype=np.int64), sizes)
    all_edges: list[np.ndarray] = []
    offset = 0
    for size in sizes:
        if k > 0:
            edges = None
            for _ in range(_MAX_REGULAR_ATTEMPTS):
                edges = _regular_edges_once(size, k, rng)
                if edges is not None:
                    break
            if edges is None:
                raise GenerationFailed(
                    f"no simple {k}-regular graph on {size} nodes after "
                    f"{_MAX_REGULAR_ATTEMPTS} attempts")
            arr = np.asarray(sorted(edges), dtype=np.int64) + offset
            all_edges.append(arr)
        offset += size
    edge_arr = (np.concatenate(all_edges) if all_edges
                else np.empty((0, 2), dtype=np.int64))
    g = Graph.from_edges(n, edge_arr, validate=False)
    names = tuple(f"C{i}" for i in range(len(sizes)))
    return g, CategoryPartition(labels=labels, names=names)


def add_inter_edges(g: Graph, part: CategoryPartition, m: int,
                    rng: np.random.Generator) -> Graph:
    """Add exactly m new edges between nodes of different categories.

    Pairs are drawn uniformly at random among the absent cross-category
    pairs; when m is a large share of those, the candidates are
    enumerated instead so the call always terminates.
    """
    if m == 0:
        return g
    n = g.node_count
    labels = part.labels
    sizes = part.sizes
    cross_total = (n * n - int((sizes.astype(np.int64) ** 2).sum())) // 2
    if g.edge_count:
        ea = g.edge_array
        existing_inter = int(np.count_nonzero(labels[ea[:, 0]] != labels[ea[:, 1]]))
    else:
        existing_inter = 0
    available = cross_total - existing_inter
    if m > available:
        raise TooManyEdgesRequested(
            f"requested {m} inter-category edges, only {available} free pairs")

    existing = set(map(tuple, g.edge_array.tolist())) if g.edge_count else set()
    chosen: list[tuple[int, int]] = []
    chosen_set: set[tuple[int, int]] = set()

    if cross_total <= 2_000_000 and m * 4 > available:
        # dense regime: enumerate candidates and sample without replacement
        iu, iv = np.triu_indices(n, k=1)
        mask = labels[iu] != labels[iv]
        cands = [(int(a), int(b)) for a, b in zip(iu[mask], iv[mask])
                 if (int(a), int(b)) not in existing]
        picks = rng.choice(len(cands), size=m, replace=False)
        chosen = [cands[i] for i in picks]
    else:
        while len(chosen) < m:
            need = m - len(chosen)
            us = rng.integers(0, n, size=max(64, 2 * need))
            vs = rng.integers(0, n, size=max(64, 2 * need))
            for u, v in zip(us.tolist(), vs.tolist()):
                if labels[u] == labels[v]:
                    continue
                pair = (u, v) if u < v else (v, u)
                if pair in existing or pair in chosen_set:
                    continue
                chosen.append(pair)
                chosen_set.add(pair)
                if len(chosen) == m:
                    break

    new = np.asarray(chosen, dtype=np.int64)
    combined = (np.concatenate([g.edge_array, new])
                if g.edge_count else new)
    return Graph.from_edges(n, combined, validate=False)


def permute_labels(part: CategoryPartition, alpha: float,
                   rng: np.random.Generator) -> CategoryPartition:
    """Randomly permute the labels of a uniformly chosen floor(alpha*N)
    node subset among themselves; the multiset of category sizes is
    preserved exactly."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    n = part.node_count
    count = math.floor(alpha * n)
    if count == 0:
        return part
    picked = rng.choice(n, size=count, replace=False)
    labels = part.labels.copy()
    labels[picked] = labels[picked][rng.permutation(count)]
    return CategoryPartition(labels=labels, names=part.names)


def synthetic_graph(params: SyntheticParams) -> tuple[Graph, CategoryPartition]:
    """Full synthetic model: regular intra-category graphs, random
    inter-category edges, then label permutation.

    Deterministic given ``params.seed``. Warns if the result is
    disconnected (walk samplers then cover the start component only).
    """
    rng = np.random.default_rng(params.seed)
    g, part = gen_intra_regular(params.category_sizes, params.k, rng)
    g = add_inter_edges(g, part, params.resolved_inter_edges(), rng)
    part = permute_labels(part, params.alpha, rng)
    if not g.is_connected:
        warnings.warn("synthetic graph is disconnected; walk samplers "
                      "will only cover the start node's component",
                      RuntimeWarning, stacklevel=2)
    return g, part

"""Turn a trace into exactly what a measurement scenario would reveal.

Two scenarios are simulated. Induced-subgraph observation reveals the
category and degree of each drawn node plus the edges among drawn nodes
only. Star observation additionally reveals, for every drawn node, how
many of its neighbors fall in each category -- but not the neighbors'
identities, and no edges between neighbors.

The resulting ObservationLog is the only input the estimators may read;
they never touch the graph itself.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .graph import CategoryPartition, Graph
from .sampling import SampleTrace

INDUCED = "induced"
STAR = "star"


@dataclass(frozen=True, eq=False)
class ObservationLog:
    """What a sampling experiment actually observed.

    One record per draw: node, category, degree, sampling weight.
    Duplicate draws of a node yield duplicate records; multiset
    semantics carry through to the estimators, which count repeated
    nodes (and any edges they touch) repeatedly.

    ``induced_edges`` holds the deduplicated edge set among distinct
    drawn nodes (induced mode); estimators recover draw-pair
    multiplicity from the records. ``neighbor_counts[i, c]`` is how
    many neighbors of draw i lie in category c (star mode); each row
    sums to the draw's degree.
    """

    mode: str
    nodes: np.ndarray
    categories: np.ndarray
    degrees: np.ndarray
    weights: np.ndarray
    num_categories: int
    category_names: tuple[str, ...]
    population_hint: int | None = None
    induced_edges: np.ndarray | None = None
    neighbor_counts: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def node_category(self) -> dict[int, int]:
        """Category of each distinct drawn node."""
        return {int(v): int(c) for v, c in zip(self.nodes, self.categories)}

    def resampled(self, indices: np.ndarray) -> "ObservationLog":
        """Log for a with-replacement resample of the draws.

        The induced edge set shrinks to edges whose endpoints both
        survive the resample; star rows just follow their draws.
        """
        indices = np.asarray(indices, dtype=np.int64)
        nodes = self.nodes[indices]
        induced = self.induced_edges
        if self.mode == INDUCED and induced is not None and len(induced):
            kept = np.isin(induced[:, 0], nodes) & np.isin(induced[:, 1], nodes)
            induced = induced[kept]
        counts = self.neighbor_counts
        if counts is not None:
            counts = counts[indices]
        new = replace(self, nodes=nodes,
                      categories=self.categories[indices],
                      degrees=self.degrees[indices],
                      weights=self.weights[indices],
                      induced_edges=induced,
                      neighbor_counts=counts)
        return new


def _record_arrays(g: Graph, part: CategoryPartition, trace: SampleTrace):
    nodes = np.asarray(trace.nodes, dtype=np.int64)
    if nodes.size and (nodes.min() < 0 or nodes.max() >= g.node_count):
        raise ValueError("trace contains nodes outside the graph")
    if part.node_count != g.node_count:
        raise ValueError("partition and graph disagree on node count")
    return (nodes, part.labels[nodes], g.degrees[nodes].astype(np.int64),
            np.asarray(trace.weights, dtype=float))


def observe_induced(g: Graph, part: CategoryPartition,
                    trace: SampleTrace) -> ObservationLog:
    """Observe categories of drawn nodes and the edges among them."""
    nodes, cats, degs, weights = _record_arrays(g, part, trace)
    if g.edge_count:
        drawn = np.zeros(g.node_count, dtype=bool)
        drawn[nodes] = True
        ea = g.edge_array
        induced = ea[drawn[ea[:, 0]] & drawn[ea[:, 1]]]
    else:
        induced = np.empty((0, 2), dtype=np.int64)
    return ObservationLog(mode=INDUCED, nodes=nodes, categories=cats,
                          degrees=degs, weights=weights,
                          num_categories=part.num_categories,
                          category_names=part.names,
                          population_hint=g.node_count,
                          induced_edges=induced)


def observe_star(g: Graph, part: CategoryPartition,
                 trace: SampleTrace) -> ObservationLog:
    """Observe, per drawn node, the category histogram of all its
    neighbors. Neighbor identities are not retained."""
    nodes, cats, degs, weights = _record_arrays(g, part, trace)
    c = part.num_categories
    rows = np.repeat(np.arange(g.node_count, dtype=np.int64), g.degrees)
    flat = rows * c + part.labels[g.indices]
    per_node = np.bincount(flat, minlength=g.node_count * c)
    per_node = per_node.reshape(g.node_count, c)
    return ObservationLog(mode=STAR, nodes=nodes, categories=cats,
                          degrees=degs, weights=weights,
                          num_categories=c,
                          category_names=part.names,
                          population_hint=g.node_count,
                          neighbor_counts=per_node[nodes])

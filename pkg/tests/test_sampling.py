import numpy as np
import pytest

from categraph import (
    CategoryPartition,
    Graph,
    InvalidThinning,
    InvalidWeight,
    IsolatedStartNode,
    sample_mhrw,
    sample_rw,
    sample_uis,
    sample_wis,
    sample_wrw,
    thin,
)

LONG_RUN = 1_000_000


def frequencies(trace, n_nodes):
    return np.bincount(trace.nodes, minlength=n_nodes) / len(trace)


def test_uis_single_node_graph():
    g = Graph.from_edges(1, [])
    t = sample_uis(g, 10, seed=0)
    assert t.nodes.tolist() == [0] * 10
    assert np.all(t.weights == 1.0)


def test_uis_triangle_concentration():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    t = sample_uis(g, LONG_RUN, seed=1)
    assert np.allclose(frequencies(t, 3), 1 / 3, atol=0.005)


def test_wis_degree_weights_on_path():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    t = sample_wis(g, g.degrees.astype(float), LONG_RUN, seed=2)
    freq = frequencies(t, 3)
    assert abs(freq[1] - 0.5) < 0.005
    assert abs(freq[0] - 0.25) < 0.005
    # each draw is annotated with its own weight
    assert np.array_equal(t.weights, g.degrees[t.nodes])


def test_wis_rejects_nonpositive_weight():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(InvalidWeight):
        sample_wis(g, np.array([1.0, 0.0]), 5, seed=0)
    with pytest.raises(InvalidWeight):
        sample_wis(g, np.array([1.0, -2.0]), 5, seed=0)
    with pytest.raises(InvalidWeight):
        sample_wis(g, {0: 1.0}, 5, seed=0)


def test_wis_constant_weights_match_uniform_chi2():
    # chi-square against the uniform expectation, df=9; 27.88 is the
    # 0.999 quantile
    g = Graph.from_edges(10, [(i, (i + 1) % 10) for i in range(10)])
    n = 20_000
    t = sample_wis(g, np.full(10, 3.7), n, seed=3)
    observed = np.bincount(t.nodes, minlength=10)
    chi2 = float(np.sum((observed - n / 10) ** 2 / (n / 10)))
    assert chi2 < 27.88


def test_rw_single_step_is_neighbor_of_start():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    t = sample_rw(g, 1, start=1, burn_in=0, seed=4)
    assert t.nodes[0] in (0, 2)
    assert t.start == 1


def test_rw_isolated_start():
    g = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(IsolatedStartNode):
        sample_rw(g, 5, start=2, seed=0)


def test_rw_cycle_visits_uniform():
    g = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    t = sample_rw(g, LONG_RUN, start=0, seed=5)
    assert np.all(np.abs(frequencies(t, 5) * 5 - 1) < 0.02)


def test_rw_star_center_half():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    t = sample_rw(g, LONG_RUN, start=0, seed=6)
    freq = frequencies(t, 4)
    assert abs(freq[0] / 0.5 - 1) < 0.02


def test_rw_weights_are_degrees():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    t = sample_rw(g, 200, start=0, seed=7)
    assert np.array_equal(t.weights, g.degrees[t.nodes])


def test_rw_consecutive_draws_adjacent():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
                             (0, 3)])
    t = sample_rw(g, 500, start=0, burn_in=0, seed=8)
    assert t.nodes[0] in g.neighbors(0)
    for u, v in zip(t.nodes, t.nodes[1:]):
        assert g.has_edge(int(u), int(v))


def test_mhrw_star_visits_uniform():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    t = sample_mhrw(g, LONG_RUN, start=0, seed=9)
    assert np.all(np.abs(frequencies(t, 4) * 4 - 1) < 0.02)


def test_mhrw_acceptance_rule_on_star():
    # center (deg 3) -> leaf (deg 1) is always accepted, so the center
    # never repeats; leaf -> center is accepted w.p. 1/3, so leaves do
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    t = sample_mhrw(g, 50_000, start=0, seed=10)
    nodes = t.nodes
    center_repeats = np.sum((nodes[:-1] == 0) & (nodes[1:] == 0))
    assert center_repeats == 0
    at_leaf = nodes[:-1] != 0
    moved = nodes[:-1][at_leaf] != nodes[1:][at_leaf]
    assert abs(np.mean(moved) - 1 / 3) < 0.02


def test_mhrw_steps_adjacent_or_repeat():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)])
    t = sample_mhrw(g, 500, start=2, seed=11)
    for u, v in zip(t.nodes, t.nodes[1:]):
        assert u == v or g.has_edge(int(u), int(v))
    assert np.all(t.weights == 1.0)


def _two_cat_path():
    # path 0-1-2 with node 0 in the heavy category
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    part = CategoryPartition(labels=np.array([0, 1, 1]), names=("A", "B"))
    return g, part


def test_wrw_transition_bias_toward_heavy_category():
    # edge {1,0} has weight 10+1=11, edge {1,2} weight 1+1=2, so from
    # the middle node the walk moves to node 0 w.p. 11/13
    g, part = _two_cat_path()
    t = sample_wrw(g, part, {0: 10.0, 1: 1.0}, 200_000, start=1, seed=12)
    nodes = t.nodes
    from_middle = nodes[:-1] == 1
    toward_heavy = np.mean(nodes[1:][from_middle] == 0)
    assert abs(toward_heavy - 11 / 13) < 0.01


def test_wrw_equal_weights_matches_rw_law():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    t = sample_wrw(g, CategoryPartition(labels=np.zeros(4, dtype=int),
                                        names=("all",)),
                   {0: 1.0}, LONG_RUN, start=0, seed=13)
    freq = frequencies(t, 4)
    expected = g.degrees / g.degrees.sum()
    assert np.all(np.abs(freq / expected - 1) < 0.02)
    # equal category weights make every edge weight 2, so node weights
    # are exactly twice the degree
    assert np.array_equal(t.weights, 2.0 * g.degrees[t.nodes])


def test_wrw_rejects_bad_category_weights():
    g, part = _two_cat_path()
    with pytest.raises(InvalidWeight):
        sample_wrw(g, part, {0: 1.0, 1: 0.0}, 5, seed=0)
    with pytest.raises(InvalidWeight):
        sample_wrw(g, part, {0: 1.0}, 5, seed=0)


def test_stationary_laws_all_samplers(eight_node_graph):
    """Every sampler's 1e6-draw visit frequencies match its analytic
    stationary law within 2% relative error per node."""
    g = eight_node_graph
    n_nodes = g.node_count
    part = CategoryPartition(labels=np.array([0, 0, 1, 1, 0, 1, 0, 1]),
                             names=("x", "y"))
    cw = np.array([2.0, 0.5])
    # analytic WRW law, derived straight from the edge list
    node_w = np.zeros(n_nodes)
    for u, v in g.edge_array.tolist():
        w = cw[part.labels[u]] + cw[part.labels[v]]
        node_w[u] += w
        node_w[v] += w

    uniform = np.full(n_nodes, 1 / n_nodes)
    degree_law = g.degrees / g.degrees.sum()
    cases = [
        (sample_uis(g, LONG_RUN, seed=20), uniform),
        (sample_wis(g, g.degrees.astype(float), LONG_RUN, seed=21), degree_law),
        (sample_rw(g, LONG_RUN, start=0, seed=22), degree_law),
        (sample_mhrw(g, LONG_RUN, start=0, seed=23), uniform),
        (sample_wrw(g, part, cw, LONG_RUN, start=0, seed=24),
         node_w / node_w.sum()),
    ]
    for trace, law in cases:
        freq = frequencies(trace, n_nodes)
        assert np.all(np.abs(freq / law - 1) < 0.02), trace.sampler


@pytest.mark.parametrize("make", [
    lambda g, part: sample_uis(g, 50, seed=33),
    lambda g, part: sample_wis(g, g.degrees.astype(float), 50, seed=33),
    lambda g, part: sample_rw(g, 50, burn_in=3, seed=33),
    lambda g, part: sample_mhrw(g, 50, burn_in=3, seed=33),
    lambda g, part: sample_wrw(g, part, {0: 3.0, 1: 1.0}, 50, seed=33),
])
def test_traces_deterministic_given_seed(make, eight_node_graph):
    part = CategoryPartition(labels=np.array([0, 0, 1, 1, 0, 1, 0, 1]),
                             names=("x", "y"))
    t1 = make(eight_node_graph, part)
    t2 = make(eight_node_graph, part)
    assert np.array_equal(t1.nodes, t2.nodes)
    assert np.array_equal(t1.weights, t2.weights)
    assert t1.start == t2.start


def test_burn_in_discards_prefix():
    g = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    full = sample_rw(g, 30, start=0, burn_in=0, seed=40)
    burned = sample_rw(g, 20, start=0, burn_in=10, seed=40)
    assert np.array_equal(full.nodes[10:], burned.nodes)


def test_walk_on_disconnected_graph_warns():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    with pytest.warns(RuntimeWarning):
        t = sample_rw(g, 100, start=0, seed=41)
    assert set(t.nodes.tolist()) <= {0, 1, 2}


def test_thin_identity():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    t = sample_uis(g, 10, seed=50)
    assert thin(t, 1) is t


def test_thin_every_third():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    t = sample_uis(g, 10, seed=51)
    out = thin(t, 3)
    assert out.steps.tolist() == [0, 3, 6, 9]
    assert np.array_equal(out.nodes, t.nodes[[0, 3, 6, 9]])
    assert out.thin_interval == 3


def test_thin_keeps_walk_weights():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    t = sample_rw(g, 30, start=0, seed=52)
    out = thin(t, 4)
    assert np.array_equal(out.weights, g.degrees[out.nodes])


def test_thin_rejects_zero():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    t = sample_uis(g, 10, seed=53)
    with pytest.raises(InvalidThinning):
        thin(t, 0)

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from osint_attention.network import (NetworkParams, SocialGraph, all_closeness, attention,
                                     centrality_table, closeness, degree_effect, governance_pair,
                                     split_attention)

FIGURE_EDGES = [("A", "B"), ("A", "C"), ("B", "D"), ("B", "E"), ("C", "E"), ("C", "F")]
PARAMS = NetworkParams(theta0=0.1, theta1=0.42, theta2=0.38, kappa=0.4, q_max=1.0, q0=0.4)


def floyd_warshall_closeness(nodes, edges):
    n = len(nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    for u, v in edges:
        d[idx[u], idx[v]] = d[idx[v], idx[u]] = 1
    for k in range(n):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    with np.errstate(divide="ignore"):
        inv = np.where(np.isfinite(d) & (d > 0), 1.0 / d, 0.0)
    return {v: math.fsum(inv[idx[v]]) / (n - 1) for v in nodes}


def random_graph(rng, n):
    nodes = list(range(n))
    p = rng.random()
    edges = [(u, v) for u in nodes for v in nodes if u < v and rng.random() < p]
    return nodes, edges


def test_figure_graph_closeness():
    g = SocialGraph(edges=FIGURE_EDGES)
    assert closeness(g, "A") == pytest.approx(0.7, abs=1e-15)


def test_complete_and_disconnected():
    assert closeness(SocialGraph.complete(["x", "y", "z"]), "x") == 1.0
    assert closeness(SocialGraph(["x", "y"]), "x") == 0.0


def test_singleton_rejected():
    with pytest.raises(ValueError):
        closeness(SocialGraph(["x"]), "x")


def test_graph_invariants():
    g = SocialGraph(edges=FIGURE_EDGES)
    g.add_edge("A", "B")
    assert len(g.edges) == len(FIGURE_EDGES)
    for u in g.nodes:
        for v in g.neighbors(u):
            assert u in g.neighbors(v)
    with pytest.raises(ValueError):
        g.add_edge("A", "A")


def test_closeness_matches_floyd_warshall():
    rng = random.Random(11)
    for _ in range(1000):
        nodes, edges = random_graph(rng, rng.randint(2, 8))
        ours = all_closeness(SocialGraph(nodes, edges))
        assert ours == floyd_warshall_closeness(nodes, edges)


def test_edgelist_parsing():
    g = SocialGraph.from_edgelist("# figure\nA B\n\nA C  # inline\nZ\n")
    assert sorted(g.nodes) == ["A", "B", "C", "Z"] and g.degree("Z") == 0
    with pytest.raises(ValueError):
        SocialGraph.from_edgelist("A B C\n")


def test_degree_effect_examples():
    assert degree_effect(2, 0.7, PARAMS) == pytest.approx(0.1 + 0.42 * math.log(3) + 0.266)
    assert degree_effect(2, 0.7, PARAMS) == pytest.approx(0.8274, abs=1e-4)
    assert degree_effect(0, 0.0, PARAMS) == 0.1
    flat = NetworkParams(theta0=0.3, theta1=0, theta2=0)
    assert degree_effect(5, 0.9, flat) == 0.3


def test_attention_examples():
    assert attention(0.8, True, 0, PARAMS) == 0.8
    assert attention(0.8274, False, 2, PARAMS) == pytest.approx(0.8274 * 0.4 * math.exp(-0.8))
    assert attention(0.8274, False, 2, PARAMS) == pytest.approx(0.14871, abs=1e-5)
    still = NetworkParams(kappa=0.0)
    assert attention(0.5, False, 0, still) == attention(0.5, False, 7, still)
    with pytest.raises(ValueError):
        attention(0.5, True, -1, PARAMS)


def test_network_params_invariants():
    with pytest.raises(ValueError):
        NetworkParams(kappa=-1)
    with pytest.raises(ValueError):
        NetworkParams(q0=0.5, q_max=0.5)


def test_split_examples():
    assert split_attention([("a", 0.3)], 5.0) == [("a", 5.0)]
    assert split_attention([("a", 1.0), ("b", 1.0)], 3.0) == [("a", 1.5), ("b", 1.5)]
    assert split_attention([("a", 3.0), ("b", 1.0)], 4.0) == [("a", 3.0), ("b", 1.0)]
    assert split_attention([("a", 0.0), ("b", 0.0)], 4.0) == [("a", 0.0), ("b", 0.0)]


def test_centrality_table_figure():
    rows = {r["node"]: r for r in centrality_table(SocialGraph(edges=FIGURE_EDGES), PARAMS)}
    assert rows["A"]["degree"] == 2 and rows["A"]["closeness"] == pytest.approx(0.7)
    assert rows["A"]["g"] == pytest.approx(0.8274, abs=1e-4)


def test_governance_pair_links_extremes():
    g = SocialGraph(edges=FIGURE_EDGES)
    cl = all_closeness(g)
    u, v = governance_pair(g)
    assert not g.has_edge(u, v)
    gaps = [cl[a] - cl[b] for a in g.nodes for b in g.nodes if a != b and not g.has_edge(a, b)]
    assert cl[u] - cl[v] == max(gaps)
    assert governance_pair(SocialGraph.complete(["a", "b", "c"])) is None


@given(st.floats(0, 10), st.floats(0.01, 10), st.floats(0.01, 5), st.floats(0.01, 3), st.booleans())
def test_attention_decreasing_in_delay(t, dt, g_val, kappa, verified):
    p = NetworkParams(kappa=kappa)
    assert attention(g_val, verified, t + dt, p) < attention(g_val, verified, t, p)


@given(st.lists(st.floats(0, 100), min_size=1, max_size=20), st.floats(0, 1e3))
def test_split_conserves_pool(weights, pool):
    claims = [(k, w) for k, w in enumerate(weights)]
    out = split_attention(claims, pool)
    if sum(weights) > 0:
        assert math.fsum(a for _, a in out) == pytest.approx(pool, abs=1e-12 * max(1.0, pool))


@given(st.integers(0, 50), st.integers(0, 50), st.floats(0, 1), st.floats(0, 1))
def test_degree_effect_monotone(d1, d2, c1, c2):
    lo_d, hi_d = sorted((d1, d2))
    lo_c, hi_c = sorted((c1, c2))
    assert degree_effect(lo_d, lo_c, PARAMS) <= degree_effect(hi_d, hi_c, PARAMS)

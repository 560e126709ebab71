import numpy as np
import pytest

from lpakit import (
    ModularityUndefinedError,
    build_graph,
    community_aggregates,
    modularity,
    modularity_edge_form,
    summarize,
)

from helpers import edgeless, random_graph, random_labels, triangle, two_triangles


def test_one_community_has_zero_modularity():
    g = triangle()
    c = np.zeros(3, dtype=np.int64)
    assert modularity(g, c) == pytest.approx(0.0, abs=1e-12)


def test_triangle_singletons():
    g = triangle()
    c = np.arange(3, dtype=np.int64)
    assert modularity(g, c) == pytest.approx(-1.0 / 3.0, abs=1e-12)
    assert modularity_edge_form(g, c) == pytest.approx(-1.0 / 3.0, abs=1e-12)


def test_two_triangles_two_communities():
    g = two_triangles()
    c = np.array([0, 0, 0, 3, 3, 3], dtype=np.int64)
    assert modularity(g, c) == pytest.approx(0.5, abs=1e-12)


def test_single_edge_singletons():
    g = build_graph(2, [(0, 1, 1.0)])
    c = np.array([0, 1], dtype=np.int64)
    assert modularity_edge_form(g, c) == pytest.approx(-0.5, abs=1e-12)
    assert modularity(g, c) == pytest.approx(-0.5, abs=1e-12)


def test_modularity_undefined_for_edgeless_graph():
    g = edgeless(3)
    with pytest.raises(ModularityUndefinedError):
        modularity(g, [0, 1, 2])
    with pytest.raises(ModularityUndefinedError):
        modularity_edge_form(g, [0, 1, 2])


def test_community_aggregates_invariants():
    g = two_triangles()
    agg = community_aggregates(g, [0, 0, 0, 3, 3, 3])
    assert agg.internal_weight[0] == 6.0  # both stored directions
    assert agg.total_weight.sum() == pytest.approx(2 * g.total_weight_half)
    assert (agg.internal_weight <= agg.total_weight + 1e-12).all()


@pytest.mark.parametrize("seed", range(30))
def test_dual_form_equality(seed):
    g = random_graph(seed, ensure_edge=True)
    c = random_labels(seed, g.num_vertices)
    assert modularity(g, c) == pytest.approx(modularity_edge_form(g, c), abs=1e-9)


@pytest.mark.parametrize("seed", range(30))
def test_modularity_range(seed):
    g = random_graph(seed, ensure_edge=True)
    c = random_labels(seed, g.num_vertices)
    q = modularity(g, c)
    assert -0.5 - 1e-12 <= q <= 1.0 + 1e-12


@pytest.mark.parametrize("seed", range(10))
def test_label_renaming_invariance(seed):
    g = random_graph(seed, ensure_edge=True)
    n = g.num_vertices
    c = random_labels(seed, n)
    rng = np.random.default_rng(seed)
    permutation = rng.permutation(n).astype(np.int64)
    assert modularity(g, permutation[c]) == pytest.approx(modularity(g, c), abs=1e-12)


def test_summarize_triangle():
    s = summarize(triangle(), [0, 0, 0])
    assert s["num_communities"] == 1
    assert s["modularity"] == pytest.approx(0.0, abs=1e-12)
    assert s["fraction_disconnected"] == 0.0
    assert s["min_community_size"] == s["max_community_size"] == 3


def test_summarize_edgeless_reports_null_modularity():
    s = summarize(edgeless(3), [0, 1, 2])
    assert s["num_communities"] == 3
    assert s["modularity"] is None
    assert s["mean_community_size"] == 1.0


def test_summarize_two_triangles():
    s = summarize(two_triangles(), [0, 0, 0, 3, 3, 3])
    assert s["num_communities"] == 2
    assert s["modularity"] == pytest.approx(0.5, abs=1e-12)


def test_summarize_flags_disconnection():
    s = summarize(two_triangles(), [0, 0, 0, 0, 0, 0])
    assert s["fraction_disconnected"] == 1.0

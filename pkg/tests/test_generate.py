import numpy as np
import pytest

from lpakit import build_graph
from lpakit.generate import (
    cliques_bridges_edges,
    edges_to_graph,
    planted_partition_edges,
    write_edgelist,
)
from lpakit.graph import load_edgelist


def test_cliques_bridges_three_four_cliques():
    edges = cliques_bridges_edges(12, 3)
    g = edges_to_graph(12, edges)
    assert edges.shape[0] == 21  # 3 * C(4,2) + 3 bridges
    assert g.total_weight_half == 21.0


def test_cliques_bridges_single_clique_has_no_bridges():
    edges = cliques_bridges_edges(5, 1)
    assert edges.shape[0] == 10


def test_cliques_bridges_uneven_blocks():
    edges = cliques_bridges_edges(7, 3)  # blocks of 3, 2, 2
    g = edges_to_graph(7, edges)
    assert g.num_vertices == 7
    assert edges.shape[0] == 3 + 1 + 1 + 3


def test_planted_partition_degenerate_probabilities():
    edges = planted_partition_edges(12, 3, p_in=1.0, p_out=0.0, seed=5)
    g = edges_to_graph(12, edges)
    assert edges.shape[0] == 18  # three disjoint 4-cliques
    # no edge crosses a block boundary
    blocks = np.array([0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2])
    assert (blocks[edges[:, 0]] == blocks[edges[:, 1]]).all()
    assert g.weighted_degrees.tolist() == [3.0] * 12


def test_planted_partition_all_pairs():
    edges = planted_partition_edges(6, 1, p_in=1.0, p_out=1.0, seed=0)
    assert edges.shape[0] == 15


def test_planted_partition_deterministic_per_seed():
    a = planted_partition_edges(200, 5, 0.2, 0.01, seed=42)
    b = planted_partition_edges(200, 5, 0.2, 0.01, seed=42)
    c = planted_partition_edges(200, 5, 0.2, 0.01, seed=43)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_planted_partition_edges_are_sorted_and_unique():
    edges = planted_partition_edges(300, 4, 0.15, 0.02, seed=9)
    assert (edges[:, 0] < edges[:, 1]).all()
    keys = edges[:, 0] * 300 + edges[:, 1]
    assert np.array_equal(keys, np.unique(keys))


def test_planted_partition_sparse_sampling_path():
    # block sizes above the dense-mask limit exercise the binomial sampler
    edges = planted_partition_edges(3000, 2, 0.01, 0.0005, seed=1)
    assert (edges[:, 0] < edges[:, 1]).all()
    keys = edges[:, 0].astype(np.int64) * 3000 + edges[:, 1]
    assert np.unique(keys).shape[0] == keys.shape[0]
    count = edges.shape[0]
    # binomial expectation: 2 * C(1500,2) * 0.01 + 1500^2 * 0.0005
    expected = 2 * (1500 * 1499 // 2) * 0.01 + 1500 * 1500 * 0.0005
    assert count == pytest.approx(expected, rel=0.2)


def test_generator_validation():
    with pytest.raises(ValueError):
        planted_partition_edges(10, 0, 0.5, 0.1)
    with pytest.raises(ValueError):
        planted_partition_edges(10, 11, 0.5, 0.1)
    with pytest.raises(ValueError):
        planted_partition_edges(10, 2, 1.5, 0.1)
    with pytest.raises(ValueError):
        planted_partition_edges(10, 2, 0.5, -0.1)
    with pytest.raises(ValueError):
        cliques_bridges_edges(-1, 1)


def test_write_edgelist_round_trip(tmp_path):
    edges = cliques_bridges_edges(12, 3)
    path = tmp_path / "g.txt"
    write_edgelist(path, edges, header="model=cliques-bridges n=12")
    g = load_edgelist(path)
    assert g.num_vertices == 12
    assert g.total_weight_half == 21.0


def test_write_edgelist_byte_identical(tmp_path):
    edges = planted_partition_edges(100, 4, 0.3, 0.02, seed=7)
    p1 = tmp_path / "a.txt"
    p2 = tmp_path / "b.txt"
    write_edgelist(p1, edges, header="seed=7")
    write_edgelist(p2, planted_partition_edges(100, 4, 0.3, 0.02, seed=7), header="seed=7")
    assert p1.read_bytes() == p2.read_bytes()


def test_edges_to_graph_empty():
    g = edges_to_graph(4, np.empty((0, 2), dtype=np.int64))
    assert g.num_vertices == 4
    assert g.num_arcs == 0

import networkx as nx
import numpy as np
import pytest

from bituner.errors import GraphError
from bituner.graph.features import assortativity
from bituner.graph.generators import SwapBias, SwapSpec, double_edge_swap, generate_er_swapped


def test_plain_er_mean_degree():
    for k in (5, 10):
        degrees = [generate_er_swapped(100, k, SwapSpec(), seed).out_degree.mean() for seed in range(20)]
        assert np.mean(degrees) == pytest.approx(k, rel=0.15)


@pytest.mark.parametrize("bias", list(SwapBias))
def test_swaps_preserve_degrees(bias):
    G = nx.gnp_random_graph(80, 0.08, seed=3)
    degrees = sorted(d for _, d in G.degree())
    edges = G.number_of_edges()
    done = double_edge_swap(G, SwapSpec(count=150, bias=bias), np.random.default_rng(0))
    assert done > 0
    assert sorted(d for _, d in G.degree()) == degrees
    assert G.number_of_edges() == edges
    assert nx.number_of_selfloops(G) == 0


def test_unbiased_swaps_rewire_edges():
    G = nx.gnp_random_graph(80, 0.08, seed=3)
    before = set(map(frozenset, G.edges()))
    degree = dict(G.degree())
    assert double_edge_swap(G, SwapSpec(count=40), np.random.default_rng(1)) == 40
    assert dict(G.degree()) == degree
    assert set(map(frozenset, G.edges())) != before


def test_swaps_on_a_saturated_graph_fall_short():
    # every swap on K4 would duplicate an edge
    G = nx.complete_graph(4)
    for bias in SwapBias:
        assert double_edge_swap(G, SwapSpec(count=3, bias=bias), np.random.default_rng(0)) == 0
    assert G.number_of_edges() == 6


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_biased_swaps_move_assortativity(seed):
    plain = assortativity(generate_er_swapped(100, 5, SwapSpec(), seed))
    dis = assortativity(generate_er_swapped(100, 5, SwapSpec(bias="disassortative", factor=5.0), seed))
    ass = assortativity(generate_er_swapped(100, 5, SwapSpec(bias="assortative", factor=5.0), seed))
    assert dis < plain < ass


def test_generated_graph_is_one_component():
    g = generate_er_swapped(100, 2, SwapSpec(factor=1.0), 4)
    src, dst = g.arcs()
    G = nx.Graph(list(zip(src.tolist(), dst.tolist())))
    assert G.number_of_nodes() == g.node_count
    assert nx.is_connected(G)
    assert g.is_symmetric()


def test_same_seed_same_graph():
    spec = SwapSpec(bias=SwapBias.ASSORTATIVE, factor=1.0)
    assert generate_er_swapped(60, 6, spec, 9) == generate_er_swapped(60, 6, spec, 9)


@pytest.mark.parametrize("n,k", [(9, 3), (100, 0), (100, 99), (20, 25)])
def test_bad_parameters(n, k):
    with pytest.raises(GraphError):
        generate_er_swapped(n, k, SwapSpec(), 0)


def test_swap_spec():
    assert SwapSpec(count=7).swaps_for(100) == 7
    assert SwapSpec(factor=1.5).swaps_for(100) == 150
    assert SwapSpec(bias="assortative").bias is SwapBias.ASSORTATIVE
    with pytest.raises(GraphError):
        SwapSpec(count=-1)

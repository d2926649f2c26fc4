"""
Synthetic networks: Erdos-Renyi graphs rewired by degree-preserving double-edge swaps
"""

import logging
from dataclasses import dataclass
from enum import Enum

import networkx as nx
import numpy as np

from bituner.errors import GraphError
from bituner.graph.core import Graph

logger = logging.getLogger(__name__)

MAX_TRIES_PER_SWAP = 100


class SwapBias(str, Enum):
    NONE = "none"
    ASSORTATIVE = "assortative"
    DISASSORTATIVE = "disassortative"


@dataclass(frozen=True)
class SwapSpec:
    """Either an absolute swap count or a multiple of the edge count (factor), plus a bias."""

    count: int = 0
    bias: SwapBias = SwapBias.NONE
    factor: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "bias", SwapBias(self.bias))
        if self.count < 0 or (self.factor is not None and self.factor < 0):
            raise GraphError("swap count and factor must be non-negative")

    def swaps_for(self, edges: int) -> int:
        return self.count if self.factor is None else int(round(self.factor * edges))


def _unbiased_swap(G: nx.Graph, target: int, rng: np.random.Generator) -> int:
    if G.number_of_nodes() < 4:
        return 0
    before = {frozenset(e) for e in G.edges()}
    try:
        nx.double_edge_swap(G, nswap=target, max_tries=target * MAX_TRIES_PER_SWAP, seed=int(rng.integers(2**32)))
    except nx.NetworkXAlgorithmError:
        # each swap replaces two edges, so the rewired share bounds the count from below
        done = len(before - {frozenset(e) for e in G.edges()}) // 2
        logger.warning(f"Only about {done}/{target} none swaps found before the try limit")
        return done
    return target


def double_edge_swap(G: nx.Graph, spec: SwapSpec, rng: np.random.Generator) -> int:
    """
    Rewire (a, b), (c, d) into (a, d), (c, b) in place, keeping every node degree.

    Swaps that would create a self-loop or a duplicate edge are rejected. With a bias, only swaps
    that move the degree assortativity in the requested direction are accepted. Returns the number
    of swaps performed, which can fall short of the target when candidates run out.
    """
    target = spec.swaps_for(G.number_of_edges())
    if target <= 0 or G.number_of_edges() < 2:
        return 0
    if spec.bias == SwapBias.NONE:
        return _unbiased_swap(G, target, rng)

    degree = dict(G.degree())
    edges = list(G.edges())
    done = 0
    tries = 0
    max_tries = target * MAX_TRIES_PER_SWAP
    while done < target and tries < max_tries:
        tries += 1
        i = int(rng.integers(len(edges)))
        j = int(rng.integers(len(edges) - 1))
        j += j >= i
        a, b = edges[i]
        c, d = edges[j]
        if rng.random() < 0.5:
            c, d = d, c
        if a == d or c == b or G.has_edge(a, d) or G.has_edge(c, b):
            continue

        # sum of d_u * d_v over edges changes by (d_a - d_c)(d_d - d_b); degrees stay fixed
        delta = (degree[a] - degree[c]) * (degree[d] - degree[b])
        if spec.bias == SwapBias.ASSORTATIVE and delta <= 0:
            continue
        if spec.bias == SwapBias.DISASSORTATIVE and delta >= 0:
            continue

        G.remove_edge(a, b)
        G.remove_edge(c, d)
        G.add_edge(a, d)
        G.add_edge(c, b)
        edges[i] = (a, d)
        edges[j] = (c, b)
        done += 1

    if done < target:
        logger.warning(f"Only {done}/{target} {spec.bias.value} swaps found after {tries} tries")
    return done


def largest_component(G: nx.Graph) -> nx.Graph:
    if G.number_of_nodes() == 0:
        return G
    nodes = max(nx.connected_components(G), key=lambda c: (len(c), -min(c)))
    return G.subgraph(nodes).copy()


def from_networkx(G: nx.Graph) -> Graph:
    nodes = sorted(G.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    arcs = [(index[u], index[v]) for u, v in G.edges()]
    arcs += [(v, u) for u, v in arcs]
    return Graph.from_arcs(len(nodes), arcs, [str(v) for v in nodes])


def generate_er_swapped(n: int, k: float, swap: SwapSpec, rng_seed: int) -> Graph:
    """G(n, k/(n-1)), rewired by swap, reduced to its largest connected component."""
    if n < 10:
        raise GraphError(f"N must be >= 10, got {n}")
    if not 0.0 < k < n - 1:
        raise GraphError(f"mean degree must lie in (0, N-1), got k={k} for N={n}")

    er_seed, swap_seed = np.random.SeedSequence(rng_seed).spawn(2)
    G = nx.gnp_random_graph(n, k / (n - 1), seed=int(er_seed.generate_state(1)[0]))
    swapped = double_edge_swap(G, swap, np.random.default_rng(swap_seed))
    G = largest_component(G)
    logger.debug(f"ER(n={n}, k={k}) with {swapped} {swap.bias.value} swaps -> LCC of {G.number_of_nodes()} nodes")
    return from_networkx(G)

"""
Structural features of an instance

All statistics are population statistics (divide by N). Degenerate cases resolve to finite
values: nodes with fewer than two neighbors have clustering 0, a graph whose arc endpoints all
share one degree has assortativity 0.
"""

import networkx as nx
import numpy as np

from bituner.errors import GraphError
from bituner.graph.core import Graph, undirected_view
from bituner.ltm.thresholds import ThresholdAssignment
from bituner.models.features import FeatureVector


def _mean_std(values: np.ndarray) -> tuple[float, float]:
    if values.size == 0:
        return 0.0, 0.0
    return float(values.mean()), float(values.std())


def local_clustering(g: Graph) -> np.ndarray:
    """Local clustering coefficient of every node, on the undirected view."""
    view = undirected_view(g)
    G = nx.Graph()
    G.add_nodes_from(range(view.node_count))
    G.add_edges_from(zip(*(side.tolist() for side in view.arcs())))
    clustering = nx.clustering(G)
    return np.array([clustering[v] for v in range(view.node_count)], dtype=np.float64)


def clustering_stats(g: Graph) -> tuple[float, float]:
    return _mean_std(local_clustering(g))


def assortativity(g: Graph) -> float:
    """Pearson correlation of out-degrees at the two ends of every arc."""
    if g.arc_count < 2:
        raise GraphError(f"assortativity needs at least 2 arcs, graph has {g.arc_count}")
    src, dst = g.arcs()
    k_out = g.out_degree.astype(np.float64)
    x, y = k_out[src], k_out[dst]
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return 0.0
    rho = float(np.corrcoef(x, y)[0, 1])
    return min(1.0, max(-1.0, rho))


def neighbor_out_degree(g: Graph) -> np.ndarray:
    """Average out-degree over each node's out-neighbors; 0 for nodes without any."""
    src, dst = g.arcs()
    k_out = g.out_degree
    totals = np.bincount(src, weights=k_out[dst].astype(np.float64), minlength=g.node_count)
    return np.divide(totals, k_out, out=np.zeros(g.node_count), where=k_out > 0)


def edge_density(g: Graph) -> float:
    n = g.node_count
    if n < 2:
        return 0.0
    edges = undirected_view(g).arc_count // 2
    return edges / (n * (n - 1) / 2)


def extract_features(g: Graph, t: ThresholdAssignment, cov: float) -> FeatureVector:
    c_mean, c_std = clustering_stats(g)
    kout_mean, kout_std = _mean_std(g.out_degree.astype(np.float64))
    nout_mean, nout_std = _mean_std(neighbor_out_degree(g))
    phi_mean, phi_std = _mean_std(np.asarray(t.phi, dtype=np.float64))
    return FeatureVector(
        N=g.node_count,
        C_mean=min(1.0, c_mean),
        C_std=c_std,
        kout_mean=kout_mean,
        kout_std=kout_std,
        Nout_mean=nout_mean,
        Nout_std=nout_std,
        rho=assortativity(g),
        E_d=edge_density(g),
        cov=cov,
        phi_mean=phi_mean,
        phi_std=phi_std,
    )

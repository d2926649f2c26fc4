"""
Immutable directed graph

Nodes are dense integer ids 0..N-1; the original labels from the input file are kept in a side
map so every output can report them. Adjacency is stored in compressed sparse row form (one
array of offsets, one array of neighbor ids, sorted per node) for both directions.
"""

import logging
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np

from bituner.errors import GraphError, GraphParseError

logger = logging.getLogger(__name__)

NodeSet = frozenset[int]


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class Graph:
    __slots__ = ("_n", "_out_ptr", "_out_idx", "_in_ptr", "_in_idx", "_arc_src", "_labels")

    def __init__(self, node_count: int, src: np.ndarray, dst: np.ndarray, labels: Sequence[str]):
        # src/dst must already be free of self-loops and duplicates, sorted by (src, dst)
        self._n = int(node_count)
        self._labels = tuple(labels)

        self._arc_src = _frozen(src.astype(np.int64, copy=True))
        self._out_idx = _frozen(dst.astype(np.int64, copy=True))
        self._out_ptr = _frozen(np.concatenate(([0], np.cumsum(np.bincount(src, minlength=self._n)))).astype(np.int64))

        order = np.lexsort((src, dst))
        self._in_idx = _frozen(src[order].astype(np.int64))
        self._in_ptr = _frozen(np.concatenate(([0], np.cumsum(np.bincount(dst, minlength=self._n)))).astype(np.int64))

    @classmethod
    def from_arcs(cls, node_count: int, arcs: Iterable[tuple[int, int]] | np.ndarray,
                  labels: Optional[Sequence[str]] = None) -> "Graph":
        """Build a graph from (u, v) pairs. Self-loops and duplicate arcs are dropped."""
        if node_count < 1:
            raise GraphError("a graph needs at least one node")
        if labels is None:
            labels = [str(i) for i in range(node_count)]
        if len(labels) != node_count:
            raise GraphError(f"expected {node_count} labels, got {len(labels)}")

        pairs = np.asarray(list(arcs) if not isinstance(arcs, np.ndarray) else arcs, dtype=np.int64)
        if pairs.size == 0:
            pairs = np.empty((0, 2), dtype=np.int64)
        pairs = pairs.reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= node_count):
            raise GraphError(f"arc endpoint outside [0, {node_count})")

        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        keys = np.unique(pairs[:, 0] * node_count + pairs[:, 1])
        return cls(node_count, keys // node_count, keys % node_count, labels)

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def arc_count(self) -> int:
        return len(self._out_idx)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    def label(self, node: int) -> str:
        return self._labels[node]

    @property
    def out_degree(self) -> np.ndarray:
        return np.diff(self._out_ptr)

    @property
    def in_degree(self) -> np.ndarray:
        return np.diff(self._in_ptr)

    def out_neighbors(self, node: int) -> np.ndarray:
        return self._out_idx[self._out_ptr[node]:self._out_ptr[node + 1]]

    def in_neighbors(self, node: int) -> np.ndarray:
        return self._in_idx[self._in_ptr[node]:self._in_ptr[node + 1]]

    def arcs(self) -> tuple[np.ndarray, np.ndarray]:
        """Sources and targets of every arc, ordered by (source, target)."""
        return self._arc_src, self._out_idx

    def has_arc(self, u: int, v: int) -> bool:
        row = self.out_neighbors(u)
        pos = np.searchsorted(row, v)
        return bool(pos < len(row) and row[pos] == v)

    def is_symmetric(self) -> bool:
        src, dst = self.arcs()
        forward = src * self._n + dst
        backward = np.sort(dst * self._n + src)
        return bool(np.array_equal(forward, backward))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and self._labels == other._labels
            and np.array_equal(self._arc_src, other._arc_src)
            and np.array_equal(self._out_idx, other._out_idx)
        )

    def __hash__(self) -> int:
        return hash((self._n, self.arc_count, self._labels))

    def __repr__(self) -> str:
        return f"Graph(nodes={self._n}, arcs={self.arc_count})"


def load_edge_list(source: Iterable[str | bytes], directed: bool = False) -> Graph:
    """
    Parse a whitespace-separated edge list.

    Lines starting with '#' and blank lines are skipped. Labels are mapped to dense ids in the
    order they are first seen. When directed is False every edge becomes two arcs. Byte lines are
    decoded as UTF-8.
    """
    ids: dict[str, int] = {}
    arcs: list[tuple[int, int]] = []

    for line_number, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise GraphParseError(f"not valid UTF-8 at byte {e.start}", line_number) from None
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"expected two node labels, found {len(tokens)} token(s)", line_number)
        u = ids.setdefault(tokens[0], len(ids))
        v = ids.setdefault(tokens[1], len(ids))
        arcs.append((u, v))
        if not directed:
            arcs.append((v, u))

    if not ids:
        raise GraphParseError("edge list is empty")

    labels = list(ids)
    graph = Graph.from_arcs(len(labels), arcs, labels)
    logger.debug(f"Loaded {graph} (directed={directed})")
    return graph


def write_edge_list(g: Graph, stream: TextIO) -> None:
    """Write g with original labels; symmetric graphs list each edge once."""
    src, dst = g.arcs()
    symmetric = g.is_symmetric()
    stream.write(f"# {'undirected' if symmetric else 'directed'} nodes={g.node_count} arcs={g.arc_count}\n")
    for u, v in zip(src.tolist(), dst.tolist()):
        if symmetric and u > v:
            continue
        stream.write(f"{g.label(u)} {g.label(v)}\n")


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> Graph:
    """All arcs of g with both endpoints in nodes, re-densified in ascending old-id order."""
    keep = np.unique(np.fromiter((int(v) for v in nodes), dtype=np.int64))
    if keep.size == 0:
        raise GraphError("cannot take the subgraph induced by an empty node set")
    if keep[0] < 0 or keep[-1] >= g.node_count:
        raise GraphError(f"node id outside [0, {g.node_count})")

    new_id = np.full(g.node_count, -1, dtype=np.int64)
    new_id[keep] = np.arange(keep.size)

    src, dst = g.arcs()
    mask = (new_id[src] >= 0) & (new_id[dst] >= 0)
    arcs = np.column_stack((new_id[src[mask]], new_id[dst[mask]]))
    labels = [g.label(int(v)) for v in keep]
    return Graph.from_arcs(int(keep.size), arcs, labels)


def undirected_view(g: Graph) -> Graph:
    src, dst = g.arcs()
    arcs = np.concatenate((np.column_stack((src, dst)), np.column_stack((dst, src))))
    return Graph.from_arcs(g.node_count, arcs, g.labels)

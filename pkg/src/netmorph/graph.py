"""Immutable simple graphs over dense integer ids, SNAP edge-list ingestion
and the BFS primitive used by every other module."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

UNREACHABLE = -1

_MODES = ("out", "in", "total")


class GraphError(ValueError):
    """Invalid argument for a graph operation (bad node id, bad mode...)."""


class EdgeListParseError(ValueError):
    """Malformed line in an edge-list file."""

    def __init__(self, lineno: int, line: str, reason: str, source: str | None = None):
        self.lineno = lineno
        self.line = line
        self.source = source
        where = f"{source}:{lineno}" if source else f"line {lineno}"
        super().__init__(f"{where}: {reason}: {line.rstrip()!r}")


def _csr(n: int, rows: np.ndarray, cols: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((cols, rows))
    indices = cols[order].astype(np.int64)
    counts = np.bincount(rows, minlength=n) if n else np.zeros(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indptr.setflags(write=False)
    indices.setflags(write=False)
    return indptr, indices


class Graph:
    """Simple graph (no loops, no parallel edges) stored as CSR arrays.

    Undirected graphs keep every unordered pair once in :attr:`edges` and
    expose it from both endpoints through :meth:`neighbors`.
    """

    __slots__ = ("_n", "_directed", "_edges", "_out", "_in", "_lists", "_sym")

    def __init__(self, node_count: int, edges: np.ndarray, directed: bool = False):
        # `edges` must already be simple and canonical; use from_edges otherwise.
        self._n = int(node_count)
        self._directed = bool(directed)
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        edges.setflags(write=False)
        self._edges = edges
        u, v = edges[:, 0], edges[:, 1]
        if directed:
            self._out = _csr(self._n, u, v)
            self._in = _csr(self._n, v, u)
        else:
            self._out = _csr(self._n, np.concatenate([u, v]), np.concatenate([v, u]))
            self._in = self._out
        self._lists = None
        self._sym = None

    @classmethod
    def from_edges(
        cls, node_count: int, edges: Iterable | np.ndarray, directed: bool = False
    ) -> "Graph":
        g, _, _ = cls._build(node_count, edges, directed)
        return g

    @classmethod
    def _build(cls, node_count, edges, directed):
        arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        arr = arr.reshape(-1, 2)
        n = int(node_count)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise GraphError(f"edge endpoint outside 0..{n - 1}")
        loops = arr[:, 0] == arr[:, 1]
        n_loops = int(loops.sum())
        arr = arr[~loops]
        if not directed:
            arr = np.sort(arr, axis=1)
        keys = np.unique(arr[:, 0] * max(n, 1) + arr[:, 1])
        n_dupes = len(arr) - len(keys)
        canon = np.column_stack([keys // max(n, 1), keys % max(n, 1)]) if len(keys) else np.zeros((0, 2), np.int64)
        return cls(n, canon, directed), n_loops, n_dupes

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def directed(self) -> bool:
        return self._directed

    @property
    def edges(self) -> np.ndarray:
        """(edge_count, 2) array, sorted; u < v when undirected."""
        return self._edges

    @property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) of the out-adjacency (both directions if undirected)."""
        return self._out

    def _check(self, node: int) -> int:
        if not 0 <= node < self._n:
            raise GraphError(f"node {node} out of range for graph with {self._n} nodes")
        return int(node)

    def neighbors(self, node: int, mode: str = "out") -> np.ndarray:
        node = self._check(node)
        if mode not in _MODES:
            raise GraphError(f"unknown mode {mode!r}")
        if mode == "total" and self._directed:
            return np.union1d(self.neighbors(node, "out"), self.neighbors(node, "in"))
        indptr, indices = self._in if mode == "in" else self._out
        return indices[indptr[node]:indptr[node + 1]]

    def degrees(self, mode: str = "out") -> np.ndarray:
        if mode not in _MODES:
            raise GraphError(f"unknown mode {mode!r}")
        out = np.diff(self._out[0])
        if not self._directed or mode == "out":
            return out
        inn = np.diff(self._in[0])
        return inn if mode == "in" else out + inn

    def adjacency_lists(self) -> list[list[int]]:
        """Python lists of out-neighbors, cached; for the pure-Python algorithms."""
        if self._lists is None:
            indptr, indices = self._out
            flat = indices.tolist()
            bounds = indptr.tolist()
            self._lists = [flat[bounds[i]:bounds[i + 1]] for i in range(self._n)]
        return self._lists

    def to_scipy(self):
        """Adjacency as a scipy CSR matrix of ones (out-edges)."""
        from scipy.sparse import csr_matrix

        indptr, indices = self._out
        data = np.ones(len(indices), dtype=np.int8)
        return csr_matrix((data, indices, indptr), shape=(self._n, self._n))

    def relabel(self, perm: np.ndarray) -> "Graph":
        """Graph with node i renamed to perm[i]."""
        perm = np.asarray(perm, dtype=np.int64)
        return Graph.from_edges(self._n, perm[self._edges], self._directed)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and self._directed == other._directed
            and np.array_equal(self._edges, other._edges)
        )

    def __hash__(self):
        return hash((self._n, self._directed, self._edges.tobytes()))

    def __repr__(self) -> str:
        kind = "directed" if self._directed else "undirected"
        return f"Graph({kind}, nodes={self._n}, edges={self.edge_count})"


@dataclass(frozen=True, eq=False)
class NodeIdMap:
    """Internal index -> external id, as seen in the input file."""

    external: np.ndarray
    _index: dict = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.external)

    def to_external(self, index: int) -> int:
        return int(self.external[index])

    def to_internal(self, external_id: int) -> int:
        if self._index is None:
            object.__setattr__(self, "_index", {int(x): i for i, x in enumerate(self.external)})
        return self._index[int(external_id)]

    @classmethod
    def identity(cls, n: int) -> "NodeIdMap":
        return cls(np.arange(n, dtype=np.int64))


@dataclass
class LoadReport:
    nodes: int
    edges: int
    dropped_self_loops: int
    dropped_duplicates: int
    edge_rows: int = 0
    header_nodes: int | None = None
    header_edges: int | None = None

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "dropped_self_loops": self.dropped_self_loops,
            "dropped_duplicates": self.dropped_duplicates,
            "edge_rows": self.edge_rows,
            "header_nodes": self.header_nodes,
            "header_edges": self.header_edges,
        }


def _parse_header(line: str, report: LoadReport) -> None:
    # SNAP: "# Nodes: 5242 Edges: 28980"
    toks = line.replace(":", " ").split()
    for key, attr in (("Nodes", "header_nodes"), ("Edges", "header_edges")):
        if key in toks:
            i = toks.index(key)
            if i + 1 < len(toks) and toks[i + 1].isdigit():
                setattr(report, attr, int(toks[i + 1]))


def load_edge_list(
    source: TextIO | Iterable[str], directed: bool = False, name: str | None = None
) -> tuple[Graph, NodeIdMap, LoadReport]:
    """Read a SNAP-style edge list.

    Lines starting with ``#`` are comments; every other non-blank line must
    hold exactly two integer tokens. External ids are remapped to ``0..n-1``
    in ascending id order. Self-loops and repeated edges are dropped and
    counted in the returned :class:`LoadReport`; header counts are recorded
    but never trusted.
    """
    report = LoadReport(0, 0, 0, 0)
    src: list[int] = []
    dst: list[int] = []
    for lineno, line in enumerate(source, start=1):
        s = line.strip()
        if not s:
            continue
        if s[0] == "#":
            _parse_header(s, report)
            continue
        toks = s.split()
        if len(toks) != 2:
            raise EdgeListParseError(lineno, line, f"expected 2 tokens, got {len(toks)}", name)
        try:
            a, b = int(toks[0]), int(toks[1])
        except ValueError:
            raise EdgeListParseError(lineno, line, "non-integer node id", name) from None
        src.append(a)
        dst.append(b)
    report.edge_rows = len(src)
    raw = np.array([src, dst], dtype=np.int64).T.reshape(-1, 2)
    ids, inverse = np.unique(raw, return_inverse=True)
    edges = inverse.reshape(-1, 2)
    g, loops, dupes = Graph._build(len(ids), edges, directed)
    report.nodes = g.node_count
    report.edges = g.edge_count
    report.dropped_self_loops = loops
    report.dropped_duplicates = dupes
    return g, NodeIdMap(ids.astype(np.int64)), report


def write_edge_list(g: Graph, stream: TextIO, idmap: NodeIdMap | None = None) -> None:
    """Canonical serialization: sorted ``u v`` lines, LF, no comments."""
    edges = g.edges if idmap is None else idmap.external[g.edges]
    stream.write("".join(f"{u} {v}\n" for u, v in edges.tolist()))


def degree(g: Graph, node: int, mode: str = "total") -> int:
    if mode not in _MODES:
        raise GraphError(f"unknown mode {mode!r}")
    node = g._check(node)
    if not g.directed:
        mode = "out"
    if mode == "total":
        return int(len(g.neighbors(node, "out")) + len(g.neighbors(node, "in")))
    return int(len(g.neighbors(node, mode)))


def undirected_view(g: Graph) -> Graph:
    """Symmetrized simple graph; returns `g` itself when already undirected."""
    if not g.directed:
        return g
    if g._sym is None:
        g._sym = Graph.from_edges(g.node_count, g.edges, directed=False)
    return g._sym


def bfs_distances(g: Graph, source: int, orientation: str = "undirected") -> np.ndarray:
    """Hop distances from `source`; unreachable nodes hold ``UNREACHABLE``.

    ``orientation="out"`` follows edge direction; ``"undirected"`` ignores it.
    """
    source = g._check(source)
    if orientation not in ("out", "undirected"):
        raise GraphError(f"unknown orientation {orientation!r}")
    if orientation == "undirected" and g.directed:
        adj = undirected_view(g).adjacency_lists()
    else:
        adj = g.adjacency_lists()
    dist = [UNREACHABLE] * g.node_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return np.array(dist, dtype=np.int64)


def connected_components(g: Graph) -> np.ndarray:
    """Component label per node (weak components for directed graphs)."""
    from scipy.sparse.csgraph import connected_components as _cc

    _, labels = _cc(g.to_scipy(), directed=g.directed, connection="weak")
    return labels

"""Community structure: modularity, edge betweenness, Girvan-Newman, Louvain,
community-size distributions and a resolution-limit advisory.

Directed graphs are symmetrized with :func:`undirected_view` before any of
these operations run.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, GraphError, connected_components, undirected_view
from .metrics import DegreeHistogram, FitError, PowerLawFit, fit_power_law


class ModularityError(ValueError):
    pass


class SizeLimitError(ValueError):
    pass


GN_MAX_EDGES = 20_000


def _dense_labels(labels) -> np.ndarray:
    # ids in order of first appearance by node index
    labels = np.asarray(labels)
    _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[inv.ravel()]


@dataclass(frozen=True, eq=False)
class Partition:
    """Node -> community assignment with per-community caches.

    `intra_edges[s]` is l_s, the number of edges inside community s, and
    `degree_sums[s]` is d_s, the summed degree of its members.
    """

    assignment: np.ndarray
    intra_edges: np.ndarray
    degree_sums: np.ndarray
    edge_count: int

    @classmethod
    def from_labels(cls, g: Graph, labels) -> "Partition":
        labels = np.asarray(labels)
        if labels.shape != (g.node_count,):
            raise GraphError(
                f"partition covers {labels.size} nodes, graph has {g.node_count}"
            )
        u = undirected_view(g)
        a = _dense_labels(labels) if labels.size else labels.astype(np.int64)
        k = int(a.max()) + 1 if a.size else 0
        e = u.edges
        inside = a[e[:, 0]] == a[e[:, 1]]
        l_s = np.bincount(a[e[inside, 0]], minlength=k)
        d_s = np.bincount(a, weights=u.degrees(), minlength=k).astype(np.int64)
        a.setflags(write=False)
        return cls(a, l_s, d_s, u.edge_count)

    @classmethod
    def single(cls, g: Graph) -> "Partition":
        return cls.from_labels(g, np.zeros(g.node_count, dtype=np.int64))

    @classmethod
    def singletons(cls, g: Graph) -> "Partition":
        return cls.from_labels(g, np.arange(g.node_count))

    @property
    def m_communities(self) -> int:
        return len(self.degree_sums)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.m_communities)

    def communities(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.m_communities)]
        for node, c in enumerate(self.assignment.tolist()):
            out[c].append(node)
        return out

    def modularity(self) -> float:
        if self.edge_count == 0:
            raise ModularityError("modularity undefined: graph has no edges")
        m = self.edge_count
        return float((self.intra_edges / m - (self.degree_sums / (2.0 * m)) ** 2).sum())

    def same_as(self, other: "Partition") -> bool:
        return np.array_equal(self.assignment, other.assignment)


def modularity(g: Graph, p) -> float:
    """Q = sum_s [ l_s/|E| - (d_s / 2|E|)^2 ].  `p` is a Partition or a label array."""
    if not isinstance(p, Partition):
        p = Partition.from_labels(g, p)
    elif len(p.assignment) != g.node_count:
        raise GraphError("partition does not cover the graph")
    return p.modularity()


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _brandes_source(adj, s: int, scores: dict) -> None:
    # single-source shortest-path counts then reverse-order dependency accumulation
    sigma = {s: 1}
    dist = {s: 0}
    preds: dict[int, list[int]] = {s: []}
    order = []
    queue = deque([s])
    while queue:
        v = queue.popleft()
        order.append(v)
        dv = dist[v] + 1
        sv = sigma[v]
        for w in adj[v]:
            dw = dist.get(w)
            if dw is None:
                dist[w] = dv
                sigma[w] = sv
                preds[w] = [v]
                queue.append(w)
            elif dw == dv:
                sigma[w] += sv
                preds[w].append(v)
    delta = dict.fromkeys(order, 0.0)
    for w in reversed(order):
        coeff = (1.0 + delta[w]) / sigma[w]
        for v in preds[w]:
            c = sigma[v] * coeff
            key = (v, w) if v < w else (w, v)
            scores[key] += c
            delta[v] += c


def _betweenness(adj, nodes, edges) -> dict:
    scores = dict.fromkeys(edges, 0.0)
    for s in nodes:
        _brandes_source(adj, s, scores)
    # every unordered pair was counted from both of its endpoints
    for key in scores:
        scores[key] /= 2.0
    return scores


def edge_betweenness(g: Graph) -> dict[tuple[int, int], float]:
    """B(e) summed over unordered pairs {i, l}, i != l, of the fraction of
    shortest i-l paths through e. Keys are (u, v) with u < v."""
    u = undirected_view(g)
    edges = [tuple(e) for e in u.edges.tolist()]
    return _betweenness(u.adjacency_lists(), range(u.node_count), edges)


@dataclass(frozen=True)
class Removal:
    removed_edge: tuple[int, int]
    num_components: int
    Q: float

    def to_dict(self) -> dict:
        return {"removed_edge": list(self.removed_edge), "num_components": self.num_components,
                "Q": self.Q}


@dataclass
class GirvanNewmanResult:
    partition: Partition
    dendrogram: list[Removal]
    splits: list[Partition] = field(default_factory=list)


def _component_of(adj, start: int) -> list[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return sorted(seen)


def girvan_newman(
    g: Graph,
    target: str | int = "max-q",
    max_edges: int | None = GN_MAX_EDGES,
) -> GirvanNewmanResult:
    """Divisive clustering by repeated removal of the highest-betweenness edge.

    Betweenness is recomputed after every removal (only inside the component
    that lost the edge; other components are unaffected). Ties go to the
    lexicographically smallest edge. ``target="max-q"`` returns the split
    with the largest modularity on the original graph, earliest on ties;
    an integer k returns the first partition with at least k components.
    `max_edges` guards against the cubic cost; pass None to lift it.
    """
    u = undirected_view(g)
    if u.edge_count == 0:
        raise ModularityError("modularity undefined: graph has no edges")
    if target != "max-q":
        target = int(target)
        if not 1 <= target <= u.node_count:
            raise GraphError(f"k={target} outside 1..{u.node_count}")
    if max_edges is not None and u.edge_count > max_edges:
        raise SizeLimitError(
            f"girvan_newman refused: {u.edge_count} edges exceeds limit {max_edges}"
        )

    adj = [set(nb) for nb in u.adjacency_lists()]
    labels = connected_components(u)
    current = Partition.from_labels(u, labels)
    splits = [current]
    dendrogram: list[Removal] = []
    ncomp = current.m_communities
    scores = _betweenness(u.adjacency_lists(), range(u.node_count),
                          [tuple(e) for e in u.edges.tolist()])

    def done() -> bool:
        return target != "max-q" and ncomp >= target

    while scores and not done():
        top = max(scores.values())
        # float noise must not break lexicographic tie-breaking
        edge = min(k for k, v in scores.items() if v >= top - 1e-9 * max(1.0, top))
        a, b = edge
        adj[a].discard(b)
        adj[b].discard(a)
        del scores[edge]
        comp_a = _component_of(adj, a)
        if b not in comp_a:
            comp_b = _component_of(adj, b)
            labels = labels.copy()
            labels[comp_b] = labels.max() + 1
            current = Partition.from_labels(u, labels)
            ncomp += 1
            splits.append(current)
            touched = comp_a + comp_b
        else:
            touched = comp_a
        dendrogram.append(Removal(edge, ncomp, current.modularity()))
        tset = set(touched)
        local_edges = [k for k in scores if k[0] in tset]
        if local_edges:
            adj_lists = [sorted(s) for s in adj]
            scores.update(_betweenness(adj_lists, touched, local_edges))

    if target == "max-q":
        qs = [p.modularity() for p in splits]
        best = splits[int(np.argmax(qs))]
    else:
        best = next((p for p in splits if p.m_communities >= target), splits[-1])
    return GirvanNewmanResult(best, dendrogram, splits)


class _Level:
    """Weighted graph for one Louvain level: `loops[i]` is the adjacency
    diagonal A_ii (twice the internal edge weight), `nbrs[i]` maps j != i
    to w_ij."""

    def __init__(self, nbrs: list[dict], loops: list[float]):
        self.nbrs = nbrs
        self.loops = loops
        self.strength = [lp + sum(nb.values()) for nb, lp in zip(nbrs, loops)]
        self.total = sum(self.strength)  # 2m

    @classmethod
    def from_graph(cls, g: Graph) -> "_Level":
        return cls([dict.fromkeys(nb, 1.0) for nb in g.adjacency_lists()], [0.0] * g.node_count)

    def aggregate(self, comm: list[int]) -> "_Level":
        k = max(comm) + 1
        nbrs = [dict() for _ in range(k)]
        loops = [0.0] * k
        for i, nb in enumerate(self.nbrs):
            ci = comm[i]
            loops[ci] += self.loops[i]
            for j, w in nb.items():
                cj = comm[j]
                if ci == cj:
                    loops[ci] += w  # each internal edge seen from both ends: 2 l_s
                else:
                    nbrs[ci][cj] = nbrs[ci].get(cj, 0.0) + w
        return _Level(nbrs, loops)


def _one_level(level: _Level, rng: np.random.Generator, min_gain: float) -> tuple[list[int], bool]:
    n = len(level.nbrs)
    comm = list(range(n))
    tot = list(level.strength)
    two_m = level.total
    moved_any = False
    q_prev = _level_q(level, comm)
    while True:
        moves = 0
        for i in rng.permutation(n).tolist():
            ci = comm[i]
            ki = level.strength[i]
            links: dict[int, float] = {}
            for j, w in level.nbrs[i].items():
                cj = comm[j]
                links[cj] = links.get(cj, 0.0) + w
            tot[ci] -= ki
            # gain (up to a common factor 1/m) of inserting isolated i into c
            best_c = ci
            best_gain = links.get(ci, 0.0) - tot[ci] * ki / two_m
            for c in sorted(links):
                gain = links[c] - tot[c] * ki / two_m
                if gain > best_gain + 1e-12:
                    best_c, best_gain = c, gain
            tot[best_c] += ki
            if best_c != ci:
                comm[i] = best_c
                moves += 1
        if moves == 0:
            break
        moved_any = True
        q_now = _level_q(level, comm)
        if q_now - q_prev < min_gain:
            break
        q_prev = q_now
    return _dense_labels(comm).tolist(), moved_any


def _level_q(level: _Level, comm: list[int]) -> float:
    two_m = level.total
    inside: dict[int, float] = {}
    tot: dict[int, float] = {}
    for i, nb in enumerate(level.nbrs):
        c = comm[i]
        inside[c] = inside.get(c, 0.0) + level.loops[i] + sum(
            w for j, w in nb.items() if comm[j] == c)
        tot[c] = tot.get(c, 0.0) + level.strength[i]
    return sum(inside[c] / two_m - (tot[c] / two_m) ** 2 for c in tot)


def louvain(g: Graph, seed: int = 0, min_gain: float = 1e-7) -> Partition:
    """Two-phase greedy modularity maximisation.

    Phase one visits nodes in a seeded random order (fresh shuffle per
    sweep) and moves each to the neighbouring community with the largest
    strictly positive gain, smallest community id on ties. Phase two
    collapses communities into weighted super-nodes. Levels repeat until a
    level no longer improves Q by `min_gain`.
    """
    u = undirected_view(g)
    if u.edge_count == 0:
        raise ModularityError("modularity undefined: graph has no edges")
    rng = np.random.Generator(np.random.PCG64(seed))
    level = _Level.from_graph(u)
    node_comm = np.arange(u.node_count)
    q = _level_q(level, list(range(len(level.nbrs))))
    while True:
        comm, moved = _one_level(level, rng, min_gain)
        if not moved:
            break
        new_q = _level_q(level, comm)
        node_comm = np.asarray(comm)[node_comm]
        level = level.aggregate(comm)
        if new_q - q < min_gain:
            break
        q = new_q
    result = Partition.from_labels(u, node_comm)
    # never worse than leaving each connected component whole (Q >= 0)
    components = Partition.from_labels(u, connected_components(u))
    if result.modularity() < components.modularity():
        return components
    return result


@dataclass
class CommunitySizeDistribution:
    histogram: dict[int, int]
    sigma: float | None
    fit: PowerLawFit | None
    fit_error: str | None = None

    def to_dict(self) -> dict:
        return {
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "sigma": self.sigma,
            "fit": self.fit.to_dict() if self.fit else None,
            "fit_error": self.fit_error,
        }


def community_sizes(
    p: Partition, method: str = "mle", xmin: int | str = "ks-scan"
) -> CommunitySizeDistribution:
    """Histogram of community sizes with a power-law exponent for it."""
    hist = DegreeHistogram.from_values(p.sizes(), mode="size")
    mapping = hist.entries
    if len(mapping) < 2:
        return CommunitySizeDistribution(mapping, None, None, "fewer than 2 distinct sizes")
    try:
        fit = fit_power_law(hist, method=method, xmin=xmin)
    except FitError as exc:
        return CommunitySizeDistribution(mapping, None, None, str(exc))
    return CommunitySizeDistribution(mapping, fit.gamma, fit)


@dataclass
class ResolutionAdvisory:
    flagged_communities: list[int]
    biased: bool
    thresholds: dict

    def to_dict(self) -> dict:
        return {
            "flagged_communities": self.flagged_communities,
            "biased": self.biased,
            "thresholds": self.thresholds,
        }


def resolution_advisory(
    g: Graph, p: Partition, giant_fraction: float = 0.5
) -> ResolutionAdvisory:
    """Flag communities with l_s < sqrt(|E|/2) as possibly under-resolved, and
    the whole partition as biased when one community holds more than
    `giant_fraction` of the nodes."""
    u = undirected_view(g)
    if u.edge_count == 0:
        raise ModularityError("modularity undefined: graph has no edges")
    min_internal = math.sqrt(u.edge_count / 2.0)
    flagged = np.flatnonzero(p.intra_edges < min_internal).tolist()
    largest = int(p.sizes().max()) if u.node_count else 0
    biased = largest > giant_fraction * u.node_count
    return ResolutionAdvisory(
        flagged,
        bool(biased),
        {
            "min_internal_edges": min_internal,
            "giant_fraction": giant_fraction,
            "largest_community": largest,
        },
    )

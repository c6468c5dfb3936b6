"""Seeded generators for the five classical network models.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``. PCG64 is
specified bit-for-bit by numpy and gives the same stream on every platform,
so a :class:`GenSpec` (seed included) always yields the same graph.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph

MODELS = ("ER", "WS", "NWS", "BA", "HK")

_PARAMS = {
    "ER": {"p"},
    "WS": {"k", "p"},
    "NWS": {"k", "p"},
    "BA": {"m"},
    "HK": {"m", "p_t"},
}


class GenSpecError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    model: str
    n: int
    p: float | None = None
    k: int | None = None
    m: int | None = None
    p_t: float | None = None
    seed: int = 0

    def validate(self) -> "GenSpec":
        if self.model not in MODELS:
            raise GenSpecError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise GenSpecError(f"n must be a non-negative integer, got {self.n!r}")
        wanted = _PARAMS[self.model]
        for name in ("p", "k", "m", "p_t"):
            value = getattr(self, name)
            if name in wanted and value is None:
                raise GenSpecError(f"model {self.model} requires {name}")
            if name not in wanted and value is not None:
                raise GenSpecError(f"parameter {name} does not apply to model {self.model}")
        for name in ("p", "p_t"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise GenSpecError(f"{name} must lie in [0, 1], got {value}")
        if self.k is not None and (self.k < 2 or self.k % 2 or self.k >= self.n):
            raise GenSpecError(f"k must be even, >= 2 and < n, got k={self.k}, n={self.n}")
        if self.m is not None and (self.m < 1 or self.m >= max(self.n, 1)):
            raise GenSpecError(f"m must satisfy 1 <= m < n, got m={self.m}, n={self.n}")
        if not 0 <= int(self.seed) < 2**64:
            raise GenSpecError("seed must be a 64-bit unsigned integer")
        return self

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(int(self.seed)))

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _check(spec: GenSpec, model: str) -> None:
    if spec.model != model:
        raise GenSpecError(f"expected a {model} spec, got {spec.model}")
    spec.validate()


def gen_erdos_renyi(spec: GenSpec) -> Graph:
    """G(n, p): every pair present independently with probability p.

    Pairs are visited in lexicographic order using geometric skips between
    successes, which samples exactly the same distribution as one coin per
    pair in O(n + |E|) draws.
    """
    _check(spec, "ER")
    n, p = spec.n, spec.p
    if p == 0 or n < 2:
        return Graph(n, np.zeros((0, 2), np.int64))
    if p == 1:
        u, v = np.triu_indices(n, 1)
        return Graph(n, np.column_stack([u, v]))
    rng = spec.rng()
    lp = math.log1p(-p)
    edges = []
    v, w = 1, -1
    while v < n:
        w += 1 + int(math.log1p(-rng.random()) / lp)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            edges.append((w, v))
    return Graph.from_edges(n, edges)


def _ring_lattice(n: int, k: int) -> list[tuple[int, int]]:
    # node-major, offset-minor; this order is also the rewiring visit order
    return [(u, (u + j) % n) for u in range(n) for j in range(1, k // 2 + 1)]


def gen_watts_strogatz(spec: GenSpec, report: dict | None = None) -> Graph:
    """Ring lattice with each edge rewired with probability p.

    A rewired edge keeps its first endpoint and moves its clockwise endpoint
    to a uniform random node that is neither the first endpoint nor already
    adjacent to it. When no such node exists the edge is kept and counted in
    ``report["kept_on_exhaustion"]``.
    """
    _check(spec, "WS")
    n, k, p = spec.n, spec.k, spec.p
    rng = spec.rng()
    lattice = _ring_lattice(n, k)
    adj = [set() for _ in range(n)]
    for u, v in lattice:
        adj[u].add(v)
        adj[v].add(u)
    exhausted = 0
    for u, v in lattice:
        if p == 0 or rng.random() >= p:
            continue
        if len(adj[u]) >= n - 1:
            exhausted += 1
            continue
        w = int(rng.integers(n))
        while w == u or w in adj[u]:
            w = int(rng.integers(n))
        adj[u].discard(v)
        adj[v].discard(u)
        adj[u].add(w)
        adj[w].add(u)
    if report is not None:
        report["kept_on_exhaustion"] = exhausted
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(n, edges)


def gen_newman_watts_strogatz(spec: GenSpec) -> Graph:
    """Ring lattice plus shortcuts; no lattice edge is ever removed.

    For each lattice edge, with probability p one pair of distinct nodes is
    drawn uniformly; the shortcut is added unless the pair is already
    adjacent (a rejected draw is not retried).
    """
    _check(spec, "NWS")
    n, k, p = spec.n, spec.k, spec.p
    rng = spec.rng()
    lattice = _ring_lattice(n, k)
    adj = [set() for _ in range(n)]
    for u, v in lattice:
        adj[u].add(v)
        adj[v].add(u)
    for _ in lattice:
        if p == 0 or rng.random() >= p:
            continue
        u = int(rng.integers(n))
        w = int(rng.integers(n - 1))
        w += w >= u
        if w not in adj[u]:
            adj[u].add(w)
            adj[w].add(u)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(n, edges)


def _preferential(n: int, m: int, p_t: float, rng: np.random.Generator) -> Graph:
    adj = [set() for _ in range(n)]
    # each edge contributes both endpoints: uniform draws are degree-proportional
    ends: list[int] = []
    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            adj[u].add(v)
            adj[v].add(u)
            ends += (u, v)
    for new in range(m + 1, n):
        targets: list[int] = []
        last_pa = -1
        while len(targets) < m:
            if p_t > 0 and last_pa >= 0 and rng.random() < p_t:
                cands = sorted(adj[last_pa].difference(targets))
                if cands:
                    targets.append(cands[int(rng.integers(len(cands)))])
                    continue
            t = ends[int(rng.integers(len(ends)))]
            while t in targets:
                t = ends[int(rng.integers(len(ends)))]
            targets.append(t)
            last_pa = t
        for t in targets:
            adj[new].add(t)
            adj[t].add(new)
            ends += (new, t)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(n, edges)


def gen_barabasi_albert(spec: GenSpec) -> Graph:
    """Preferential attachment from a seed clique on m+1 nodes.

    Each arriving node links to m distinct existing nodes drawn with
    probability k_i / sum_j k_j; repeated targets are redrawn.
    """
    _check(spec, "BA")
    return _preferential(spec.n, spec.m, 0.0, spec.rng())


def gen_holme_kim(spec: GenSpec) -> Graph:
    """Preferential attachment with triad formation.

    After a preferential edge to v, the next edge of the same arriving node
    goes, with probability p_t, to a uniform random neighbor of v not yet
    linked; with no such neighbor it falls back to preferential attachment.
    With p_t = 0 this is exactly :func:`gen_barabasi_albert`.
    """
    _check(spec, "HK")
    return _preferential(spec.n, spec.m, spec.p_t, spec.rng())


_DISPATCH = {
    "ER": gen_erdos_renyi,
    "WS": gen_watts_strogatz,
    "NWS": gen_newman_watts_strogatz,
    "BA": gen_barabasi_albert,
    "HK": gen_holme_kim,
}


def generate(spec: GenSpec) -> Graph:
    spec.validate()
    return _DISPATCH[spec.model](spec)

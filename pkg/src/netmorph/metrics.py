"""Degree distributions, power-law fitting, clustering, closeness and hop plots."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .graph import Graph, GraphError, bfs_distances, undirected_view


class FitError(ValueError):
    pass


class HopPlotError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeHistogram:
    degrees: np.ndarray
    counts: np.ndarray
    n: int
    mode: str = "total"

    @classmethod
    def from_values(cls, values, mode: str = "total") -> "DegreeHistogram":
        values = np.asarray(values, dtype=np.int64)
        if values.size and values.min() < 0:
            raise ValueError("degrees must be non-negative")
        ks, cs = np.unique(values, return_counts=True)
        return cls(ks, cs, int(values.size), mode)

    @classmethod
    def from_mapping(cls, mapping: dict, mode: str = "total") -> "DegreeHistogram":
        items = sorted((int(k), int(c)) for k, c in mapping.items() if c)
        ks = np.array([k for k, _ in items], dtype=np.int64)
        cs = np.array([c for _, c in items], dtype=np.int64)
        return cls(ks, cs, int(cs.sum()), mode)

    @property
    def entries(self) -> dict[int, int]:
        return dict(zip(self.degrees.tolist(), self.counts.tolist()))

    def pdf(self) -> list[tuple[int, float]]:
        return [(k, c / self.n) for k, c in zip(self.degrees.tolist(), self.counts.tolist())]


def degree_histogram(g: Graph, mode: str | None = None) -> DegreeHistogram:
    """Exact degree histogram; directed graphs default to out-degree."""
    if mode is None:
        mode = "out" if g.directed else "total"
    return DegreeHistogram.from_values(g.degrees(mode), mode)


def ccdf(h: DegreeHistogram) -> list[tuple[int, float]]:
    """Fraction of nodes with degree >= k, at every observed k.

    For a tail P(k) ~ k^-gamma the CCDF falls off as k^-(gamma - 1).
    """
    if h.n == 0 or len(h.counts) == 0:
        raise ValueError("empty histogram")
    tail = np.cumsum(h.counts[::-1])[::-1]
    return list(zip(h.degrees.tolist(), (tail / h.n).tolist()))


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    xmin: int
    ks_stat: float
    method: str
    n_tail: int

    def to_dict(self) -> dict:
        return {
            "gamma": float(self.gamma),
            "xmin": int(self.xmin),
            "ks": float(self.ks_stat),
            "method": self.method,
            "n_tail": int(self.n_tail),
        }


def _hurwitz(gamma: float, xmin: int) -> float:
    return float(special.zeta(gamma, xmin))


def _discrete_mle(ks: np.ndarray, cs: np.ndarray, xmin: int) -> float:
    n = cs.sum()
    slog = float((cs * np.log(ks)).sum())

    def nll(gamma):
        return n * math.log(_hurwitz(gamma, xmin)) + gamma * slog

    # continuous approximation with the usual half-integer shift as a bracket centre
    guess = 1.0 + n / max(float((cs * np.log(ks / (xmin - 0.5))).sum()), 1e-12)
    hi = max(6.0, 2 * guess)
    res = optimize.minimize_scalar(nll, bounds=(1.0 + 1e-6, hi), method="bounded",
                                   options={"xatol": 1e-10})
    return float(res.x)


def _model_cdf(ks: np.ndarray, gamma: float, xmin: int) -> np.ndarray:
    # P(K <= k) for the discrete power law on k >= xmin
    z = _hurwitz(gamma, xmin)
    return 1.0 - special.zeta(gamma, ks + 1) / z


def _ks_distance(ks: np.ndarray, cs: np.ndarray, gamma: float, xmin: int) -> float:
    emp = np.cumsum(cs) / cs.sum()
    model = _model_cdf(ks.astype(float), gamma, xmin)
    # sup over all integers: the empirical CDF is flat on [k_{i-1}, k_i - 1]
    emp_before = np.concatenate([[0.0], emp[:-1]])
    model_before = _model_cdf(ks.astype(float) - 1, gamma, xmin)
    return float(max(np.abs(emp - model).max(), np.abs(emp_before - model_before).max()))


def _ccdf_regression(ks: np.ndarray, cs: np.ndarray) -> float:
    tail = np.cumsum(cs[::-1])[::-1] / cs.sum()
    slope = np.polyfit(np.log(ks), np.log(tail), 1)[0]
    return 1.0 - slope


def _fit_tail(ks, cs, xmin, method):
    mask = ks >= xmin
    tk, tc = ks[mask], cs[mask]
    if tc.sum() == 0:
        raise FitError(f"empty tail for xmin={xmin}")
    if len(tk) < 2:
        raise FitError("zero variance: all tail values are equal")
    if method == "mle":
        gamma = _discrete_mle(tk, tc, xmin)
    elif method == "ccdf-regression":
        gamma = _ccdf_regression(tk, tc)
    else:
        raise ValueError(f"unknown fit method {method!r}")
    ks_stat = _ks_distance(tk, tc, gamma, xmin) if gamma > 1 else 1.0
    return PowerLawFit(gamma, int(xmin), ks_stat, method, int(tc.sum()))


def fit_power_law(
    h: DegreeHistogram,
    method: str = "mle",
    xmin: int | str = "ks-scan",
    min_tail: int = 10,
) -> PowerLawFit:
    """Fit P(k) ~ k^-gamma to the tail k >= xmin of a histogram.

    ``method="mle"`` maximises the discrete (Hurwitz-zeta normalised)
    likelihood; ``"ccdf-regression"`` returns 1 - slope of a least-squares
    line through the log-log CCDF. ``xmin`` is either a fixed integer or
    ``"ks-scan"``, which tries every observed degree leaving at least
    `min_tail` values and two distinct degrees in the tail and keeps the
    one with the smallest Kolmogorov-Smirnov distance. Zero degrees are
    never part of the fit.
    """
    keep = h.degrees >= 1
    ks, cs = h.degrees[keep].astype(np.int64), h.counts[keep].astype(np.int64)
    if cs.sum() == 0:
        raise FitError("empty tail: no positive values")
    if len(ks) < 2:
        raise FitError("zero variance: all values are equal")
    if xmin != "ks-scan":
        xmin = int(xmin)
        if xmin < 1:
            raise ValueError("xmin must be >= 1")
        return _fit_tail(ks, cs, xmin, method)

    tail_sizes = np.cumsum(cs[::-1])[::-1]
    best = None
    for i, x in enumerate(ks[:-1].tolist()):
        if tail_sizes[i] < min_tail and i > 0:
            break
        fit = _fit_tail(ks, cs, x, method)
        if fit.gamma <= 1:
            continue
        if best is None or fit.ks_stat < best.ks_stat:
            best = fit
    if best is None:
        raise FitError("no admissible xmin")
    return best


def clustering_coefficient(g: Graph) -> float:
    """Mean local clustering; nodes of degree < 2 contribute 0."""
    if g.node_count == 0:
        raise GraphError("clustering undefined on an empty graph")
    a = undirected_view(g).to_scipy().astype(np.int64)
    tri2 = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel()  # 2 * triangles
    deg = np.asarray(a.sum(axis=1)).ravel()
    denom = deg * (deg - 1)
    local = np.divide(tri2, denom, out=np.zeros(len(deg), dtype=float), where=denom > 0)
    return float(local.mean())


def closeness_centrality(g: Graph, node: int) -> float:
    """(r - 1) / sum of distances over the r nodes reachable from `node`."""
    dist = bfs_distances(g, node, "out" if g.directed else "undirected")
    reach = dist[dist > 0]
    if reach.size == 0:
        return 0.0
    return reach.size / float(reach.sum())


@dataclass(frozen=True)
class HopPlot:
    """g[h] = number of connected node pairs at distance <= h, for h = 0..h_max.

    Ordered pairs by default; with ``ordered=False`` every value is halved.
    Sampled plots are scaled by n / s and may be fractional.
    """

    g: np.ndarray
    h_max: int
    effective_diameter: float
    q: float
    ordered: bool = True
    sources: int = 0

    def rows(self) -> list[tuple[int, float, float]]:
        total = self.g[-1]
        return [(h, float(x), float(x / total)) for h, x in enumerate(self.g)]


def effective_diameter(g: np.ndarray, q: float) -> float:
    """Hop count at which a fraction q of connected pairs is reached, interpolated."""
    target = q * g[-1]
    h = int(np.searchsorted(g, target, side="left"))
    if h == 0:
        return 0.0
    lo = g[h - 1]
    return (h - 1) + float((target - lo) / (g[h] - lo))


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("NETMORPH_THREADS", "1")))
    except ValueError:
        return 1


def _level_counts(adj, block: np.ndarray) -> np.ndarray:
    # level-synchronous BFS from all sources of the block at once (one column each)
    n = adj.shape[0]
    visited = np.zeros((n, len(block)), dtype=bool)
    visited[block, np.arange(len(block))] = True
    frontier = visited.astype(np.float32)
    counts = [0]
    while True:
        nxt = adj @ frontier > 0
        nxt &= ~visited
        c = int(nxt.sum())
        if c == 0:
            return np.array(counts, dtype=np.int64)
        counts.append(c)
        visited |= nxt
        frontier = nxt.astype(np.float32)


def _distance_counts(adj, sources: np.ndarray) -> np.ndarray:
    """Sum over sources of the number of nodes at each hop distance >= 1."""
    adj = adj.astype(np.float32)
    # keep each dense (n x block) frontier near 2e7 entries
    chunk = int(max(1, min(64, 2e7 // max(adj.shape[0], 1))))
    blocks = [sources[i:i + chunk] for i in range(0, len(sources), chunk)]

    def run(block):
        return _level_counts(adj, block)

    workers = _workers()
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    size = max((len(p) for p in parts), default=1)
    total = np.zeros(size, dtype=np.int64)
    for p in parts:  # ordered merge
        total[: len(p)] += p
    total[0] = 0
    return total


def hop_plot(
    g: Graph,
    q: float = 0.9,
    mode: str = "exact",
    sources: int | None = None,
    seed: int = 0,
    ordered: bool = True,
) -> HopPlot:
    """Hop plot and interpolated effective diameter.

    Distances are taken on the undirected view. ``mode="sample"`` runs BFS
    from `sources` distinct nodes (default ``min(n, 256)``) drawn with the
    seeded PCG64 generator and scales the counts by n / s.
    """
    if not 0 < q <= 1:
        raise ValueError("q must lie in (0, 1]")
    n = g.node_count
    if n < 2:
        raise HopPlotError("hop plot needs at least 2 nodes")
    u = undirected_view(g)
    if mode == "exact":
        src = np.arange(n)
    elif mode == "sample":
        s = min(n, 256) if sources is None else int(sources)
        if not 1 <= s <= n:
            raise ValueError(f"sources must be in 1..{n}")
        rng = np.random.Generator(np.random.PCG64(seed))
        src = np.sort(rng.choice(n, size=s, replace=False))
    else:
        raise ValueError(f"unknown hop-plot mode {mode!r}")
    counts = _distance_counts(u.to_scipy(), src)
    if counts.sum() == 0:
        raise HopPlotError("no reachable pairs")
    cum = np.cumsum(counts)
    # trailing zeros cannot occur: bincount stops at the largest distance
    gvals = cum * (n / len(src)) if len(src) != n else cum.astype(float)
    if not ordered:
        gvals = gvals / 2
    return HopPlot(gvals, len(cum) - 1, effective_diameter(gvals, q), q, ordered, len(src))

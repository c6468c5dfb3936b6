"""``netmorph`` command line: generate graphs, compute Table-style statistics,
degree distributions, hop plots and community structure.

Every command writes its artifacts plus ``report.json`` into ``--out``.
Files are written only after all computation succeeded (temp file, then
rename). Wall-clock timings and the output path go to stdout only, so
re-running the echoed config reproduces every file byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import gzip
import io
import json
import os
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import __version__
from .community import (
    GN_MAX_EDGES,
    ModularityError,
    SizeLimitError,
    community_sizes,
    girvan_newman,
    louvain,
    resolution_advisory,
)
from .generators import GenSpec, GenSpecError, generate
from .graph import EdgeListParseError, GraphError, load_edge_list, undirected_view, write_edge_list
from .metrics import FitError, HopPlotError, ccdf, degree_histogram, fit_power_law, hop_plot

SCHEMA_VERSION = 1
EXACT_HOP_LIMIT = 50_000


class CommandError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return x


def _table(fmt: str, name: str, header, rows) -> tuple[str, str]:
    if fmt == "json":
        return f"{name}.json", _dumps([dict(zip(header, r)) for r in rows])
    return f"{name}.csv", _csv(header, rows)


def _write_all(out: Path, files: dict[str, str]) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        tmp = out / f".{name}.tmp"
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, out / name)


class _Timer:
    def __init__(self):
        self.timings: dict[str, float] = {}

    @contextmanager
    def __call__(self, name):
        t0 = time.perf_counter()
        yield
        self.timings[name] = round(time.perf_counter() - t0, 4)


def _config(args) -> dict:
    # the output directory is not part of what is computed
    skip = {"func", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _open_text(path: str):
    if path.endswith(".gz"):
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, encoding="utf-8")


def _load(args, timer):
    with timer("load"):
        try:
            with _open_text(args.input) as fh:
                g, ids, rep = load_edge_list(fh, directed=args.directed, name=args.input)
        except OSError as exc:
            raise CommandError(f"cannot read {args.input}: {exc}") from None
        except EdgeListParseError as exc:
            raise CommandError(str(exc)) from None
    load = rep.to_dict()
    load["edges_ordered"] = load["edges"] if g.directed else 2 * load["edges"]
    return g, ids, load


def _report(args, results: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "netmorph",
        "version": __version__,
        "command": args.command,
        "config": _config(args),
        "results": results,
    }


def _hop_mode(args, n: int) -> tuple[str, int | None]:
    mode = args.hop_mode
    if mode == "auto":
        mode = "exact" if n <= EXACT_HOP_LIMIT else "sample"
    return mode, args.sources


def _fit_xmin(args):
    return args.xmin if args.xmin == "ks-scan" else int(args.xmin)


def _degree_fit(g, args) -> dict:
    hist = degree_histogram(g)
    try:
        fit = fit_power_law(hist, method=args.fit_method, xmin=_fit_xmin(args))
        return {**fit.to_dict(), "degree_mode": hist.mode, "error": None}
    except FitError as exc:
        return {"gamma": None, "method": args.fit_method, "degree_mode": hist.mode,
                "error": str(exc)}


def _hop(g, args) -> tuple[dict, object]:
    mode, s = _hop_mode(args, g.node_count)
    hp = hop_plot(g, q=args.q, mode=mode, sources=s, seed=args.seed)
    return {"effective_diameter": hp.effective_diameter, "q": hp.q, "h_max": hp.h_max,
            "mode": mode, "sources": hp.sources, "pair_convention": "ordered"}, hp


def _communities(g, args):
    if args.algo == "gn":
        limit = None if args.allow_large else GN_MAX_EDGES
        res = girvan_newman(g, target="max-q", max_edges=limit)
        return res.partition, res.dendrogram
    return louvain(g, seed=args.seed, min_gain=args.min_gain), None


def cmd_generate(args, timer) -> tuple[dict, dict]:
    spec = GenSpec(
        model=args.model.upper(), n=args.n, p=args.p, k=args.k, m=args.m, p_t=args.pt,
        seed=args.seed,
    )
    try:
        spec.validate()
    except GenSpecError as exc:
        raise CommandError(f"invalid generator spec: {exc}") from None
    with timer("generate"):
        g = generate(spec)
    buf = io.StringIO()
    write_edge_list(g, buf)
    results = {"spec": spec.to_dict(), "nodes": g.node_count, "edges": g.edge_count,
               "edge_file": "edges.txt"}
    return results, {"edges.txt": buf.getvalue()}


def cmd_stats(args, timer) -> tuple[dict, dict]:
    g, ids, load = _load(args, timer)
    results: dict = {"load": load, "nodes": g.node_count, "edges": g.edge_count}
    if g.node_count == 0:
        results["status"] = "empty graph"
        return results, {}
    with timer("degree_fit"):
        results["degree_fit"] = _degree_fit(g, args)
        results["gamma"] = results["degree_fit"]["gamma"]
    with timer("hop_plot"):
        try:
            results["hop_plot"], _ = _hop(g, args)
            results["effective_diameter"] = results["hop_plot"]["effective_diameter"]
        except HopPlotError as exc:
            results["hop_plot"] = {"error": str(exc)}
            results["effective_diameter"] = None
    if undirected_view(g).edge_count == 0:
        results.update(Q=None, m_communities=None, sigma=None, advisory=None,
                       community_error="modularity undefined: graph has no edges")
        return results, {}
    with timer("communities"):
        try:
            part, _ = _communities(g, args)
        except SizeLimitError as exc:
            raise CommandError(str(exc)) from None
        adv = resolution_advisory(g, part)
        sizes = community_sizes(part, method=args.fit_method)
    results.update(
        algo=args.algo,
        Q=part.modularity(),
        m_communities=part.m_communities,
        advisory=adv.to_dict(),
        community_sizes=sizes.to_dict(),
        # suppressed like the "--" cells of a biased clustering
        sigma=None if adv.biased else sizes.sigma,
    )
    return results, {}


def cmd_degree_dist(args, timer) -> tuple[dict, dict]:
    g, _, load = _load(args, timer)
    if g.node_count == 0:
        raise CommandError("empty graph: no degree distribution")
    with timer("degree_dist"):
        hist = degree_histogram(g)
        fit = _degree_fit(g, args)
    files = dict([
        _table(args.format, "pdf", ["k", "pdf"], hist.pdf()),
        _table(args.format, "ccdf", ["k", "ccdf"], ccdf(hist)),
    ])
    files["fit.json"] = _dumps(fit)
    results = {"load": load, "degree_mode": hist.mode, "fit": fit}
    return results, files


def cmd_hopplot(args, timer) -> tuple[dict, dict]:
    g, _, load = _load(args, timer)
    with timer("hop_plot"):
        try:
            summary, hp = _hop(g, args)
        except HopPlotError as exc:
            raise CommandError(str(exc)) from None
    name, text = _table(args.format, "hop", ["h", "g_h", "cumulative_fraction"], hp.rows())
    return {"load": load, **summary}, {name: text}


def cmd_communities(args, timer) -> tuple[dict, dict]:
    g, ids, load = _load(args, timer)
    with timer("communities"):
        try:
            part, dendro = _communities(g, args)
        except (ModularityError, SizeLimitError) as exc:
            raise CommandError(str(exc)) from None
        adv = resolution_advisory(g, part)
        sizes = community_sizes(part, method=args.fit_method)
    rows = [(ids.to_external(i), c) for i, c in enumerate(part.assignment.tolist())]
    files = dict([
        _table(args.format, "partition", ["node_external_id", "community_id"], rows),
        _table(args.format, "sizes", ["size", "count"], sorted(sizes.histogram.items())),
    ])
    files["advisory.json"] = _dumps(adv.to_dict())
    if dendro is not None:
        steps = []
        for r in dendro:
            d = r.to_dict()
            d["removed_edge"] = [ids.to_external(v) for v in r.removed_edge]
            steps.append(d)
        files["dendrogram.json"] = _dumps(steps)
    results = {
        "load": load,
        "algo": args.algo,
        "Q": part.modularity(),
        "m_communities": part.m_communities,
        "sigma": None if adv.biased else sizes.sigma,
        "community_sizes": sizes.to_dict(),
        "advisory": adv.to_dict(),
    }
    return results, files


def _add_input(p):
    p.add_argument("--input", "-i", required=True, help="SNAP edge list (.txt or .txt.gz)")
    p.add_argument("--directed", action="store_true", help="treat edges as directed")


def _add_common(p):
    p.add_argument("--out", "-o", default="netmorph-out", help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_fit(p):
    p.add_argument("--fit-method", choices=("mle", "ccdf-regression"), default="mle")
    p.add_argument("--xmin", default="ks-scan", help="'ks-scan' or a fixed integer")


def _add_hop(p):
    p.add_argument("--q", type=float, default=0.9)
    p.add_argument("--hop-mode", choices=("auto", "exact", "sample"), default="auto")
    p.add_argument("--sources", type=int, default=None,
                   help="BFS sources in sample mode (default min(n, 256))")


def _add_algo(p):
    p.add_argument("--algo", choices=("louvain", "gn"), default="louvain")
    p.add_argument("--allow-large", action="store_true",
                   help=f"let Girvan-Newman run above {GN_MAX_EDGES} edges")
    p.add_argument("--min-gain", type=float, default=1e-7)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netmorph", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"netmorph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a synthetic graph")
    p.add_argument("--model", required=True, type=str.lower,
                   choices=("er", "ws", "nws", "ba", "hk"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--pt", type=float, help="triad-formation probability (hk)")
    _add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="nodes, edges, gamma, d(q), Q, sigma for one input")
    _add_input(p)
    _add_common(p)
    _add_fit(p)
    _add_hop(p)
    _add_algo(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("degree-dist", help="degree PDF, CCDF and power-law fit")
    _add_input(p)
    _add_common(p)
    _add_fit(p)
    p.set_defaults(func=cmd_degree_dist)

    p = sub.add_parser("hopplot", help="hop plot and effective diameter")
    _add_input(p)
    _add_common(p)
    _add_hop(p)
    p.set_defaults(func=cmd_hopplot)

    p = sub.add_parser("communities", help="community detection and size distribution")
    _add_input(p)
    _add_common(p)
    _add_fit(p)
    _add_algo(p)
    p.set_defaults(func=cmd_communities)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "q") and not 0 < args.q <= 1:
        parser.error("--q must lie in (0, 1]")
    timer = _Timer()
    try:
        results, files = args.func(args, timer)
    except (CommandError, GraphError, ValueError) as exc:
        print(f"netmorph {args.command}: error: {exc}", file=sys.stderr)
        return 1
    report = _report(args, results)
    files["report.json"] = _dumps(report)
    _write_all(Path(args.out), files)
    print(_dumps({**report, "out": str(args.out), "timings": timer.timings}), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())

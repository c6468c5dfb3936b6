import io
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netmorph import (
    UNREACHABLE,
    EdgeListParseError,
    Graph,
    GraphError,
    bfs_distances,
    degree,
    load_edge_list,
    undirected_view,
    write_edge_list,
)


def load(text, directed=False):
    g, ids, rep = load_edge_list(io.StringIO(text), directed=directed)
    return g, ids, rep


edge_lists = st.lists(
    st.tuples(st.integers(0, 40), st.integers(0, 40)), min_size=0, max_size=120
)


def test_minimal_path():
    g, _, _ = load("0 1\n1 2")
    assert (g.node_count, g.edge_count) == (3, 2)


def test_loops_and_duplicates_collapsed():
    g, _, rep = load("0 0\n0 1\n0 1")
    assert (g.node_count, g.edge_count) == (2, 1)
    assert rep.dropped_self_loops == 1
    assert rep.dropped_duplicates == 1


def test_reverse_pair_is_duplicate_when_undirected():
    g, _, rep = load("1 2\n2 1\n")
    assert g.edge_count == 1 and rep.dropped_duplicates == 1
    g, _, rep = load("1 2\n2 1\n", directed=True)
    assert g.edge_count == 2 and rep.dropped_duplicates == 0


def test_comments_crlf_and_header_counts_not_trusted():
    text = "# Directed graph: test\r\n# Nodes: 99 Edges: 1000\r\n10\t20\r\n20 30\r\n\r\n"
    g, ids, rep = load(text)
    assert g.node_count == 3 and g.edge_count == 2
    assert rep.header_nodes == 99 and rep.header_edges == 1000
    assert ids.external.tolist() == [10, 20, 30]
    assert ids.to_internal(30) == 2 and ids.to_external(0) == 10


def test_dense_remap_sorted_external_ids():
    g, ids, _ = load("1000 7\n7 -3\n")
    assert ids.external.tolist() == [-3, 7, 1000]
    assert g.edges.tolist() == [[0, 1], [1, 2]]


@pytest.mark.parametrize(
    "text, lineno",
    [("0 1\n1 2 3\n", 2), ("0 1\n# c\nx 1\n", 3), ("5\n", 1), ("1 2.5\n", 1)],
)
def test_malformed_line_names_line_number(text, lineno):
    with pytest.raises(EdgeListParseError) as err:
        load(text)
    assert err.value.lineno == lineno
    assert f"line {lineno}" in str(err.value)


def test_empty_input_is_valid():
    g, ids, rep = load("")
    assert g.node_count == 0 and g.edge_count == 0 and len(ids) == 0
    g, _, _ = load("# only comments\n")
    assert g.node_count == 0


def test_load_report_json_shape():
    _, _, rep = load("0 0\n0 1\n0 1\n")
    d = json.loads(json.dumps(rep.to_dict()))
    assert {k: d[k] for k in ("nodes", "edges", "dropped_self_loops", "dropped_duplicates")} == {
        "nodes": 2, "edges": 1, "dropped_self_loops": 1, "dropped_duplicates": 1}


def test_degree(path3):
    assert degree(path3, 1) == 2
    assert degree(path3, 0) == 1
    with pytest.raises(GraphError):
        degree(Graph.from_edges(0, []), 0)
    with pytest.raises(GraphError):
        degree(path3, 3)


def test_directed_degree_modes():
    g = Graph.from_edges(2, [(0, 1)], directed=True)
    assert degree(g, 0, "out") == 1
    assert degree(g, 0, "in") == 0
    assert degree(g, 1, "in") == 1
    assert degree(g, 0, "total") == 1


def test_undirected_degree_modes_agree(path3):
    assert {degree(path3, 1, m) for m in ("out", "in", "total")} == {2}


def test_undirected_view():
    g = Graph.from_edges(2, [(0, 1)], directed=True)
    u = undirected_view(g)
    assert not u.directed and u.edge_count == 1
    g = Graph.from_edges(2, [(0, 1), (1, 0)], directed=True)
    assert undirected_view(g).edge_count == 1
    h = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert undirected_view(h) is h


def test_bfs_examples(path3):
    assert bfs_distances(path3, 0).tolist() == [0, 1, 2]
    assert bfs_distances(Graph.from_edges(2, []), 0).tolist() == [0, UNREACHABLE]
    cycle = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    for s in range(5):
        assert sorted(bfs_distances(cycle, s).tolist()) == [0, 1, 1, 2, 2]
    with pytest.raises(GraphError):
        bfs_distances(path3, 7)


def test_bfs_orientation():
    g = Graph.from_edges(3, [(1, 0), (1, 2)], directed=True)
    assert bfs_distances(g, 0, "out").tolist() == [0, UNREACHABLE, UNREACHABLE]
    assert bfs_distances(g, 0, "undirected").tolist() == [0, 1, 2]


def test_canonical_serialization():
    g = Graph.from_edges(4, [(3, 2), (1, 0), (2, 1)])
    buf = io.StringIO()
    write_edge_list(g, buf)
    assert buf.getvalue() == "0 1\n1 2\n2 3\n"


@settings(max_examples=60, deadline=None)
@given(edge_lists, st.booleans())
def test_ingestion_invariants(edges, directed):
    text = "".join(f"{u} {v}\n" for u, v in edges)
    g1, _, _ = load(text, directed)
    g2, _, _ = load(text, directed)
    assert g1 == g2
    e = g1.edges
    assert not np.any(e[:, 0] == e[:, 1])
    assert len({tuple(x) for x in e.tolist()}) == g1.edge_count
    if directed:
        assert g1.degrees("out").sum() == g1.edge_count
        assert g1.degrees("in").sum() == g1.edge_count
    else:
        assert np.all(e[:, 0] < e[:, 1]) or g1.edge_count == 0
        assert g1.degrees().sum() == 2 * g1.edge_count
    u = undirected_view(g1)
    assert u.edge_count <= g1.edge_count
    assert u.node_count == g1.node_count
    assert undirected_view(u) == u


@settings(max_examples=40, deadline=None)
@given(edge_lists, st.data())
def test_bfs_triangle_property(edges, data):
    text = "".join(f"{u} {v}\n" for u, v in edges)
    g, _, _ = load(text)
    if g.node_count == 0:
        return
    s = data.draw(st.integers(0, g.node_count - 1))
    d = bfs_distances(g, s)
    for u, v in g.edges.tolist():
        assert (d[u] == UNREACHABLE) == (d[v] == UNREACHABLE)
        if d[u] != UNREACHABLE:
            assert abs(d[u] - d[v]) <= 1

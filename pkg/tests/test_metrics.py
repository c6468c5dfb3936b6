import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netmorph import (
    DegreeHistogram,
    FitError,
    GenSpec,
    Graph,
    GraphError,
    HopPlotError,
    ccdf,
    closeness_centrality,
    clustering_coefficient,
    connected_components,
    degree_histogram,
    effective_diameter,
    fit_power_law,
    generate,
    hop_plot,
)
from oracles import hop_counts_brute, sample_discrete_power_law, triangles_brute


def random_graph(n, p, seed):
    return generate(GenSpec("ER", n, p=p, seed=seed))


# --- degree histogram / ccdf -------------------------------------------------


def test_histogram_examples(triangle, star4):
    assert degree_histogram(triangle).entries == {2: 3}
    assert degree_histogram(star4).entries == {1: 4, 4: 1}


def test_directed_histogram_defaults_to_out_degree():
    g = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)], directed=True)
    h = degree_histogram(g)
    assert h.mode == "out"
    assert h.entries == {0: 1, 1: 1, 2: 1}
    assert degree_histogram(g, "in").entries == {0: 1, 1: 1, 2: 1}
    assert degree_histogram(g, "total").entries == {2: 3}


def test_ccdf_hand_summation():
    h = DegreeHistogram.from_mapping({1: 50, 2: 30, 3: 20})
    assert ccdf(h) == pytest.approx([(1, 1.0), (2, 0.5), (3, 0.2)])
    assert ccdf(DegreeHistogram.from_mapping({5: 10})) == [(5, 1.0)]


def test_ccdf_empty():
    with pytest.raises(ValueError):
        ccdf(DegreeHistogram.from_values([]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 60), min_size=1, max_size=300))
def test_ccdf_properties(values):
    h = DegreeHistogram.from_values(values)
    assert h.counts.sum() == h.n == len(values)
    c = ccdf(h)
    fr = [f for _, f in c]
    assert all(a > b for a, b in zip(fr, fr[1:]))
    assert fr[0] == pytest.approx(1.0)
    assert fr[-1] == pytest.approx(values.count(max(values)) / len(values))


# --- power-law fitting ---------------------------------------------------------


@pytest.mark.parametrize("gamma", [2.0, 2.5, 3.0])
def test_mle_recovers_exponent_from_exact_sampler(gamma):
    x = sample_discrete_power_law(gamma, 100_000, np.random.default_rng(17))
    fit = fit_power_law(DegreeHistogram.from_values(x), method="mle", xmin=1)
    assert fit.gamma == pytest.approx(gamma, abs=0.05)
    assert fit.xmin == 1 and fit.n_tail == 100_000
    assert 0 <= fit.ks_stat < 0.01


def test_ks_scan_keeps_xmin_one_on_pure_power_law():
    x = sample_discrete_power_law(2.5, 100_000, np.random.default_rng(3))
    fit = fit_power_law(DegreeHistogram.from_values(x))
    assert fit.gamma == pytest.approx(2.5, abs=0.05)


def test_ks_scan_finds_tail_above_a_bump():
    rng = np.random.default_rng(0)
    tail = sample_discrete_power_law(2.5, 20_000, rng, xmin=10)
    body = rng.integers(1, 10, size=20_000)
    fit = fit_power_law(DegreeHistogram.from_values(np.concatenate([body, tail])))
    assert 10 <= fit.xmin <= 20  # finite samples can settle slightly above the true cut
    assert fit.gamma == pytest.approx(2.5, abs=0.1)


def test_ccdf_regression_on_exact_power_law():
    # CCDF exactly k^-(gamma-1) on k = 1..50 is a straight line on log-log axes
    ks = np.arange(1, 51)
    ccdf_vals = ks ** -1.5
    counts = np.round(1e9 * (ccdf_vals - np.append(ccdf_vals[1:], 0))).astype(np.int64)
    counts[-1] = int(round(1e9 * ccdf_vals[-1]))
    h = DegreeHistogram(ks, counts, int(counts.sum()))
    fit = fit_power_law(h, method="ccdf-regression", xmin=1)
    assert fit.gamma == pytest.approx(2.5, abs=1e-6)
    assert fit.method == "ccdf-regression"


def test_zero_variance():
    with pytest.raises(FitError, match="zero variance"):
        fit_power_law(DegreeHistogram.from_mapping({3: 100}))
    with pytest.raises(FitError, match="zero variance"):
        fit_power_law(DegreeHistogram.from_mapping({2: 5, 3: 100}), xmin=3)


def test_empty_tail():
    with pytest.raises(FitError, match="empty"):
        fit_power_law(DegreeHistogram.from_mapping({0: 10}))
    with pytest.raises(FitError, match="empty"):
        fit_power_law(DegreeHistogram.from_mapping({1: 10, 2: 3}), xmin=5)


def test_zero_degrees_excluded_from_fit():
    x = sample_discrete_power_law(2.5, 20_000, np.random.default_rng(1))
    with_zeros = np.concatenate([x, np.zeros(5_000, dtype=np.int64)])
    a = fit_power_law(DegreeHistogram.from_values(x), xmin=1)
    b = fit_power_law(DegreeHistogram.from_values(with_zeros), xmin=1)
    assert a == b
    assert DegreeHistogram.from_values(with_zeros).entries[0] == 5_000


def test_ba_degree_exponent():
    g = generate(GenSpec("BA", 100_000, m=4, seed=0))
    assert 2.7 <= fit_power_law(degree_histogram(g)).gamma <= 3.3


# --- clustering / closeness -----------------------------------------------------


def test_clustering_examples(triangle, star4, bowtie):
    assert clustering_coefficient(triangle) == 1.0
    assert clustering_coefficient(star4) == 0.0
    assert clustering_coefficient(bowtie) == pytest.approx(13 / 15)
    with pytest.raises(GraphError):
        clustering_coefficient(Graph.from_edges(0, []))


@pytest.mark.parametrize("seed", range(5))
def test_clustering_against_brute_triangles(seed):
    g = random_graph(25, 0.3, seed)
    t = triangles_brute(g)
    deg = g.degrees()
    local = [2 * t[i] / (d * (d - 1)) if d >= 2 else 0.0 for i, d in enumerate(deg)]
    assert clustering_coefficient(g) == pytest.approx(np.mean(local))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_clustering_relabel_invariant(seed):
    g = random_graph(30, 0.2, seed)
    perm = np.random.default_rng(seed).permutation(30)
    assert clustering_coefficient(g.relabel(perm)) == pytest.approx(clustering_coefficient(g))


def test_closeness_examples(path3):
    assert closeness_centrality(path3, 1) == 1.0
    assert closeness_centrality(path3, 0) == pytest.approx(2 / 3)
    assert closeness_centrality(Graph.from_edges(3, [(0, 1)]), 2) == 0.0
    with pytest.raises(GraphError):
        closeness_centrality(path3, 3)


def test_closeness_is_component_local():
    # path 0-1-2 plus a separate edge 3-4: node 3 sees only node 4
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert closeness_centrality(g, 3) == 1.0
    assert closeness_centrality(g, 0) == pytest.approx(2 / 3)


@pytest.mark.parametrize("leaves", [2, 4, 10])
def test_closeness_star_center_maximal(leaves):
    g = Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
    c = [closeness_centrality(g, v) for v in range(leaves + 1)]
    assert c[0] > max(c[1:])


# --- hop plot / effective diameter ---------------------------------------------


def test_hop_plot_path4(path4):
    hp = hop_plot(path4, q=0.9, ordered=False)
    assert hp.g.tolist() == [0, 3, 5, 6]
    assert hp.h_max == 3
    assert hp.effective_diameter == pytest.approx(2.4)
    ordered = hop_plot(path4, q=0.9)
    assert ordered.g.tolist() == [0, 6, 10, 12]
    assert ordered.effective_diameter == pytest.approx(2.4)


@pytest.mark.parametrize("q", [0.1, 0.5, 0.9, 1.0])
def test_complete_graph_diameter(q):
    g = generate(GenSpec("ER", 12, p=1.0))
    assert hop_plot(g, q=q).effective_diameter <= 1


def test_effective_diameter_interpolation():
    g = np.array([0.0, 10.0, 50.0, 100.0])
    assert effective_diameter(g, 0.9) == pytest.approx(2 + 40 / 50)
    assert effective_diameter(g, 0.5) == pytest.approx(2.0)
    assert effective_diameter(g, 1.0) == pytest.approx(3.0)


def test_hop_plot_errors():
    with pytest.raises(HopPlotError, match="no reachable pairs"):
        hop_plot(Graph.from_edges(3, []))
    with pytest.raises(HopPlotError):
        hop_plot(Graph.from_edges(1, []))
    with pytest.raises(ValueError):
        hop_plot(Graph.from_edges(2, [(0, 1)]), q=0)


@pytest.mark.parametrize("seed", range(6))
def test_exact_hop_plot_matches_floyd_warshall(seed):
    g = random_graph(40, 0.06, seed)
    if g.edge_count == 0:
        return
    hp = hop_plot(g)
    assert hp.g.tolist() == hop_counts_brute(g).tolist()
    labels = connected_components(g)
    sizes = np.bincount(labels)
    assert hp.g[-1] == (sizes * (sizes - 1)).sum()
    assert np.all(np.diff(hp.g) >= 0)
    assert hp.effective_diameter <= hp.h_max


def test_sample_mode_with_all_sources_equals_exact():
    g = random_graph(300, 0.01, 2)
    exact = hop_plot(g)
    sampled = hop_plot(g, mode="sample", sources=g.node_count, seed=99)
    assert np.array_equal(exact.g, sampled.g)
    assert exact.effective_diameter == sampled.effective_diameter


def test_sample_mode_scaling_and_determinism():
    g = random_graph(2000, 0.003, 1)
    a = hop_plot(g, mode="sample", sources=100, seed=5)
    b = hop_plot(g, mode="sample", sources=100, seed=5)
    assert np.array_equal(a.g, b.g) and a.sources == 100
    exact = hop_plot(g)
    assert a.effective_diameter == pytest.approx(exact.effective_diameter, abs=0.3)


def test_hop_plot_uses_undirected_view():
    g = Graph.from_edges(3, [(0, 1), (2, 1)], directed=True)
    assert hop_plot(g).g.tolist() == [0, 4, 6]


def test_thread_count_does_not_change_result(monkeypatch):
    g = random_graph(600, 0.005, 4)
    monkeypatch.setenv("NETMORPH_THREADS", "1")
    one = hop_plot(g).g
    monkeypatch.setenv("NETMORPH_THREADS", "4")
    four = hop_plot(g).g
    assert np.array_equal(one, four)

"""Subsampling: p-sampling, the coupled samplers, random labeling."""
import math

import numpy as np
import pytest
from oracles import (
    distributions_close,
    exact_p_sample_distribution,
    exact_two_stage_distribution,
    iso_key,
)

from graphex import (
    EmptyGraphError,
    OutOfRangeError,
    RngStream,
    UnlabeledGraph,
    coupled_sample,
    forget_labels,
    p_sample,
    random_label,
)
from graphex.sample import _count_coupling_tables


def ug(pairs):
    return UnlabeledGraph.from_pairs(np.array(pairs, dtype=np.int64).reshape(-1, 2))


TRIANGLE = ug([(1, 2), (2, 3), (1, 3)])


def test_p_one_returns_graph_itself():
    g = ug([(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])
    assert p_sample(g, 1.0, RngStream(0)) == g


def test_p_zero_returns_empty():
    assert p_sample(TRIANGLE, 0.0, RngStream(0)).n_edges == 0


def test_p_out_of_range():
    with pytest.raises(OutOfRangeError):
        p_sample(TRIANGLE, 1.5, RngStream(0))


def test_triangle_survival_frequency():
    # All three vertices kept with probability (1/2)^3 = 1/8.
    rng = RngStream(21)
    hits = sum(
        p_sample(TRIANGLE, 0.5, rng.child(i)).n_edges == 3 for i in range(10000)
    )
    se = math.sqrt(0.125 * 0.875 / 10000)
    assert abs(hits / 10000 - 0.125) <= 4.0 * se


def test_p_sample_matches_exact_distribution():
    # empirical class frequencies against the subset-enumeration oracle
    path4 = ug([(1, 2), (2, 3), (3, 4)])
    p = 0.6
    exact = exact_p_sample_distribution(path4, p)
    rng = RngStream(33)
    n = 20000
    freq = {}
    for i in range(n):
        key = iso_key(p_sample(path4, p, rng.child(i)))
        freq[key] = freq.get(key, 0) + 1
    for key, prob in exact.items():
        if prob < 0.02:
            continue
        se = math.sqrt(prob * (1 - prob) / n)
        assert abs(freq.get(key, 0) / n - prob) <= 4.5 * se


def test_composition_law_exact_small_graphs():
    graphs = [
        ug([(1, 2)]),
        ug([(1, 2), (2, 3)]),
        TRIANGLE,
        ug([(1, 2), (2, 3), (3, 4)]),
        ug([(1, 2), (1, 3), (1, 4)]),
        ug([(1, 2), (2, 3), (3, 4), (1, 4)]),
    ]
    for g in graphs:
        for p, q in [(0.5, 0.5), (0.7, 0.3), (0.9, 0.8)]:
            two = exact_two_stage_distribution(g, p, q)
            one = exact_p_sample_distribution(g, p * q)
            assert distributions_close(two, one), (g, p, q)


def test_coupled_sample_full_rate_returns_graph():
    g = ug([(1, 2), (2, 3), (1, 3), (3, 4)])
    out = coupled_sample(g, 5.0, 5.0, RngStream(2))
    assert out.without_replacement == g


def test_coupled_sample_validation():
    with pytest.raises(EmptyGraphError):
        coupled_sample(UnlabeledGraph.empty(), 1.0, 2.0, RngStream(0))
    with pytest.raises(OutOfRangeError):
        coupled_sample(TRIANGLE, 3.0, 2.0, RngStream(0))


def test_count_coupling_marginals():
    # The joint (K, J) draw preserves both marginals and meets the
    # total-variation disagreement bound r/s.
    v, p = 40, 0.15
    alpha, *_ = _count_coupling_tables(v, p)
    assert 1.0 - alpha <= p  # maximal coupling disagreement = TV <= p
    from graphex.sample import _coupled_counts

    rng = RngStream(8)
    ks = np.empty(20000, dtype=int)
    js = np.empty(20000, dtype=int)
    for i in range(20000):
        ks[i], js[i] = _coupled_counts(v, p, rng)
    assert abs(ks.mean() - v * p) <= 4 * ks.std(ddof=1) / math.sqrt(len(ks))
    assert abs(js.mean() - v * p) <= 4 * js.std(ddof=1) / math.sqrt(len(js))
    assert abs(ks.var(ddof=1) - v * p * (1 - p)) <= 0.4
    assert abs(js.var(ddof=1) - v * p) <= 0.4
    assert (ks != js).mean() <= p


def test_coupling_disagreement_bounds_quick():
    # scaled-down version of the full acceptance check
    from graphex import ExpProductGraphon, Graphex, SimConfig, simulate

    host = forget_labels(
        simulate(Graphex(graphon=ExpProductGraphon()), SimConfig(size=12.0, seed=3))
    )
    v, e = host.n_vertices, host.n_edges
    ratio = 0.1
    draws = 4000
    rng = RngStream(9)
    neq_hm = neq_xh = 0
    for i in range(draws):
        out = coupled_sample(host, ratio, 1.0, rng.child(i))
        neq_hm += not out.agree_with_poisson
        neq_xh += not out.agree_without_with
    se_hm = math.sqrt(ratio * (1 - ratio) / draws)
    assert neq_hm / draws <= ratio + 4 * se_hm
    bound = 2 * e * (ratio**3 + 2 * ratio**3 / v**2 + 3 * ratio**2 / v + ratio / v**2)
    se_xh = math.sqrt(min(bound, 1.0) * (1 - min(bound, 1.0)) / draws)
    assert neq_xh / draws <= bound + 4 * se_xh


def test_random_label_basics():
    empty = random_label(UnlabeledGraph.empty(), 7.0, RngStream(0))
    assert empty.size == 7.0 and empty.n_edges == 0
    g = ug([(1, 2), (2, 3), (1, 3), (3, 4)])
    lab = random_label(g, 5.0, RngStream(1))
    assert lab.n_edges == g.n_edges
    assert forget_labels(lab).n_vertices == g.n_vertices


def test_random_label_min_of_two_uniforms():
    # single edge: the smaller endpoint follows the min-of-two-uniforms law
    from graphex.verify import ks_test

    single = ug([(1, 2)])
    rng = RngStream(17)
    mins = np.array(
        [float(random_label(single, 3.0, rng.child(i)).theta[0]) for i in range(10000)]
    )

    def cdf(t):
        t = np.clip(t / 3.0, 0.0, 1.0)
        return 1.0 - (1.0 - t) ** 2

    report = ks_test(mins, cdf, alpha=0.01)
    assert report.passed, report.p_value

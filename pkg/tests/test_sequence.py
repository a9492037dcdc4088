"""Jump times, graph sequences, and dilation invariance."""
import numpy as np
import pytest

from graphex import (
    Component,
    ExpProductGraphon,
    Graphex,
    LabeledGraph,
    RngStream,
    SimConfig,
    dilate_graphex,
    dilate_measure,
    expected_edge_counts,
    graph_sequence,
    jump_times,
    restrict,
    simulate,
)
from graphex.sequence import GraphSequence
from graphex.verify import FULL_TRIPLE, random_graphex


def lg(size, edges):
    return LabeledGraph.build(
        size, [e[0] for e in edges], [e[1] for e in edges], [0] * len(edges)
    )


def test_jump_times_examples():
    assert jump_times(lg(1.0, [])).tolist() == []
    assert jump_times(lg(5.0, [(1.0, 3.0), (2.0, 2.5)])).tolist() == [2.5, 3.0]
    assert jump_times(lg(1.0, [(0.2, 0.9)])).tolist() == [0.9]


def test_jump_times_merge_simultaneous():
    # two edges sharing the larger endpoint enter at the same step
    g = lg(5.0, [(1.0, 4.0), (2.0, 4.0), (0.5, 1.5)])
    assert jump_times(g).tolist() == [1.5, 4.0]
    seq = graph_sequence(g)
    assert [x.n_edges for x in seq.graphs] == [1, 3]


def test_graph_sequence_examples():
    single = graph_sequence(lg(1.0, [(0.2, 0.9)]))
    assert len(single) == 1 and single.graphs[0].n_edges == 1

    two = graph_sequence(lg(5.0, [(1.0, 3.0), (2.0, 2.5)]))
    assert [x.n_edges for x in two.graphs] == [1, 2]
    # second element: two disjoint edges (all four labels distinct)
    assert two.graphs[1].n_vertices == 4


def test_graph_sequence_prefix_property():
    g = simulate(Graphex(graphon=ExpProductGraphon()), SimConfig(size=6.0, seed=11))
    seq = graph_sequence(g)
    k = min(4, len(seq))
    prefix = graph_sequence(restrict(g, float(seq.times[k - 1])))
    assert prefix.graphs == seq.graphs[:k]
    assert prefix.times == seq.times[:k]


def test_sequence_nesting_strict():
    g = simulate(FULL_TRIPLE, SimConfig(size=8.0, seed=13))
    seq = graph_sequence(g)
    counts = [x.n_edges for x in seq.graphs]
    assert all(b > a for a, b in zip(counts, counts[1:]))
    assert sum(seq.step_sizes()) == counts[-1]


def test_graph_sequence_validation():
    a = graph_sequence(lg(1.0, [(0.2, 0.9)])).graphs[0]
    with pytest.raises(ValueError):
        GraphSequence(graphs=(a, a))


def test_dilate_measure_identity_and_scaling():
    g = simulate(FULL_TRIPLE, SimConfig(size=7.0, seed=3))
    assert dilate_measure(g, 1.0) == g
    for c in (0.5, 2.0, 7.0):
        d = dilate_measure(g, c)
        assert d.size == pytest.approx(c * 7.0)
        np.testing.assert_array_equal(jump_times(d), jump_times(g) * c)
        assert graph_sequence(d).graphs == graph_sequence(g).graphs


def test_dilation_invariance_random_inputs():
    root = RngStream(31)
    for i in range(25):
        r = root.child(i)
        gx = random_graphex(r.child(0))
        g = simulate(gx, SimConfig(size=float(r.child(1).uniform(3, 8)), seed=r.child(2).spawn_seed()))
        base = graph_sequence(g).graphs
        for c in (0.5, 2.0, 7.0):
            assert graph_sequence(dilate_measure(g, c)).graphs == base


def test_strictly_monotone_map_preserves_sequence():
    # piecewise-linear increasing relabeling of a fixed input
    g = lg(10.0, [(0.5, 2.0), (1.5, 6.0), (3.0, 4.0), (2.0, 9.5)])

    def phi(x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x < 3.0, 0.5 * x, 1.5 + 2.0 * (x - 3.0))

    mapped = LabeledGraph.build(float(phi(g.size)), phi(g.theta), phi(g.theta_prime), g.component)
    assert graph_sequence(mapped).graphs == graph_sequence(g).graphs


def test_dilate_graphex_identity_and_norms():
    gx = Graphex(graphon=ExpProductGraphon())
    assert dilate_graphex(gx, 1.0).graphon == gx.graphon
    for c in (0.5, 2.0, 7.0):
        assert dilate_graphex(gx, c).graphon.l1() == pytest.approx(c * c)


def test_dilated_expected_edges_match_at_rescaled_size():
    gx = FULL_TRIPLE
    c = 2.0
    s = 12.0
    base = expected_edge_counts(gx, s)
    dil = expected_edge_counts(dilate_graphex(gx, c), s / c)
    assert dil == pytest.approx(base)


def test_sequence_without_times():
    seq = graph_sequence(lg(5.0, [(1.0, 3.0), (2.0, 2.5)]))
    stripped = seq.without_times()
    assert stripped.times is None
    assert stripped.graphs == seq.graphs

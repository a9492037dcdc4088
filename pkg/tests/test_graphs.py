"""Labeled/unlabeled graph types, restriction, label forgetting, canonical order."""
import numpy as np
import pytest

from graphex import (
    Component,
    LabeledGraph,
    OutOfRangeError,
    RngStream,
    UnlabeledGraph,
    canonical_order,
    forget_labels,
    restrict,
)


def lg(size, edges):
    theta = [e[0] for e in edges]
    theta_p = [e[1] for e in edges]
    comp = [Component[e[2]].value if len(e) > 2 else 0 for e in edges]
    return LabeledGraph.build(size, theta, theta_p, comp)


def ug(pairs):
    return UnlabeledGraph.from_pairs(np.array(pairs, dtype=np.int64).reshape(-1, 2))


def test_build_orders_endpoints_and_sorts():
    g = lg(5.0, [(3.0, 1.0), (0.5, 2.0)])
    assert g.as_tuples() == [(0.5, 2.0, "W"), (1.0, 3.0, "W")]


def test_build_rejects_out_of_range_labels():
    with pytest.raises(OutOfRangeError):
        lg(2.0, [(1.0, 3.0)])


def test_build_collapses_exact_duplicates():
    g = lg(5.0, [(1.0, 2.0), (2.0, 1.0)])
    assert g.n_edges == 1


def test_restrict_examples():
    g = lg(5.0, [(1.0, 2.0), (1.0, 4.0)])
    assert restrict(g, g.size) == g
    assert restrict(g, 0.0).n_edges == 0
    assert restrict(g, 3.0).as_tuples() == [(1.0, 2.0, "W")]
    with pytest.raises(OutOfRangeError):
        restrict(g, 6.0)


def test_restrict_idempotent_monotone():
    rng = RngStream(3)
    for i in range(20):
        r = rng.child(i)
        m = int(r.integers(0, 30))
        a = r.uniform(0, 10, m)
        b = r.uniform(0, 10, m)
        g = LabeledGraph.build(10.0, a, b, np.zeros(m, dtype=np.int8))
        s = float(r.uniform(0, 10))
        t = float(r.uniform(0, s)) if s > 0 else 0.0
        assert restrict(restrict(g, s), t) == restrict(g, t)


def test_forget_labels_examples():
    assert forget_labels(lg(1.0, [])).n_vertices == 0
    single = forget_labels(lg(1.0, [(0.3, 0.7)]))
    assert (single.n_vertices, single.n_edges) == (2, 1)
    path = forget_labels(lg(1.0, [(0.3, 0.7), (0.7, 0.9)]))
    assert (path.n_vertices, path.n_edges) == (3, 2)
    # shared label 0.7 becomes the degree-2 middle vertex
    assert sorted(path.degrees().tolist()) == [1, 1, 2]


def test_forget_labels_invariant_counts():
    rng = RngStream(5)
    for i in range(10):
        r = rng.child(i)
        m = int(r.integers(1, 40))
        g = LabeledGraph.build(
            8.0, r.uniform(0, 8, m), r.uniform(0, 8, m), np.zeros(m, dtype=np.int8)
        )
        u = forget_labels(g)
        assert u.n_edges == g.n_edges
        labels = set(g.theta.tolist()) | set(g.theta_prime.tolist())
        assert u.n_vertices == len(labels)


def test_forget_labels_after_full_restrict():
    rng = RngStream(6).child(0)
    m = 25
    g = LabeledGraph.build(8.0, rng.uniform(0, 8, m), rng.uniform(0, 8, m), np.zeros(m, dtype=np.int8))
    assert forget_labels(restrict(g, g.size)) == forget_labels(g)


def test_unlabeled_from_pairs_canonicalizes_ids():
    # ids {3, 7, 10} remap to {1, 2, 3}; the shared id 3 becomes vertex 1
    g = ug([(10, 3), (3, 7)])
    assert g.n_vertices == 3
    assert g.pairs.tolist() == [[1, 2], [1, 3]]


def test_unlabeled_dedupe_and_loops():
    g = ug([(1, 2), (2, 1), (3, 3)])
    assert g.n_edges == 2
    assert g.degrees().tolist() == [1, 1, 2]  # loop counts twice


def test_canonical_order_star_hub_first():
    star = ug([(1, 2), (1, 3), (1, 4)])
    assert canonical_order(star)[0] == 1
    relabeled = ug([(4, 2), (4, 3), (4, 1)])
    assert canonical_order(relabeled)[0] == 4


def test_canonical_order_triangle_identity():
    tri = ug([(1, 2), (2, 3), (1, 3)])
    assert canonical_order(tri).tolist() == [1, 2, 3]


def test_canonical_order_path_center_first():
    path = ug([(1, 2), (2, 3)])
    assert canonical_order(path).tolist() == [2, 1, 3]


def test_canonical_relabeling_invariance():
    # A graph whose degree/neighbor-degree signatures separate all vertices
    # maps to the same canonical edge set under any relabeling.
    rng = RngStream(42)
    base = None
    for attempt in range(50):
        r = rng.child(attempt)
        pairs = set()
        while len(pairs) < 28:
            u, v = sorted(r.integers(1, 21, 2).tolist())
            if u != v:
                pairs.add((u, v))
        g = ug(sorted(pairs))
        sig = set()
        ok = True
        deg = g.degrees()
        adj = g.neighbor_sets()
        for vid in range(1, g.n_vertices + 1):
            key = (int(deg[vid - 1]), tuple(sorted(int(deg[w - 1]) for w in adj[vid - 1])))
            if key in sig:
                ok = False
                break
            sig.add(key)
        if ok and g.n_vertices == 20:
            base = g
            break
    assert base is not None, "no signature-separated graph found"
    ref = base.canonical()
    for i in range(100):
        perm = RngStream(100 + i).permutation(base.n_vertices) + 1
        assert base.relabeled(perm).canonical() == ref


def test_equality_and_hash():
    a = ug([(1, 2), (2, 3)])
    b = ug([(2, 3), (1, 2)])
    assert a == b and hash(a) == hash(b)
    assert a != ug([(1, 2)])

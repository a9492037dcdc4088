"""Vertex subsampling schemes and random labeling.

``p_sample`` keeps each vertex independently with probability p and returns
the edge set of the induced subgraph; vertices left isolated by the draw
vanish, matching the convention that a graph's vertex set is deduced from
its edges.

``coupled_sample`` draws three subsamples of the same graph in one joint
experiment: a Bin(v, r/s) sample without replacement, the same count with
replacement (derived by the in-place substitution scheme), and a
Poisson(v r/s) with-replacement sample whose count is maximally coupled to
the binomial one.  The disagreement frequencies of these samples admit
analytic bounds which the verification suites check empirically.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import stats as sps

from .errors import EmptyGraphError, OutOfRangeError
from .graphs import Component, LabeledGraph, UnlabeledGraph
from .rng import RngStream

__all__ = ["CouplingOutcome", "p_sample", "coupled_sample", "random_label"]


def p_sample(g: UnlabeledGraph, p: float, rng: RngStream) -> UnlabeledGraph:
    """Induced edge set of an independent Bernoulli(p) vertex sample."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRangeError(f"sampling probability {p} outside [0, 1]")
    n = g.n_vertices
    if n == 0:
        return UnlabeledGraph.empty()
    keep = rng.random(n) < p
    mask = keep[g.pairs[:, 0] - 1] & keep[g.pairs[:, 1] - 1]
    return UnlabeledGraph.from_pairs(g.pairs[mask])


@dataclass(frozen=True)
class CouplingOutcome:
    """Joint draw of the three coupled subsamples and their agreement flags."""

    without_replacement: UnlabeledGraph  # Bin(v, r/s) vertices, no repeats
    with_replacement: UnlabeledGraph     # same count, with repeats
    poisson_count: UnlabeledGraph        # Poisson(v r/s) count, with repeats
    agree_without_with: bool
    agree_with_poisson: bool


@lru_cache(maxsize=64)
def _count_coupling_tables(v: int, p: float):
    """Cumulative tables for the maximal coupling of Bin(v, p) and Poi(v p)."""
    lam = v * p
    hi = max(v, int(sps.poisson.ppf(1.0 - 1e-14, lam)) + 2)
    support = np.arange(hi + 1)
    pmf_bin = sps.binom.pmf(support, v, p)
    pmf_poi = sps.poisson.pmf(support, lam)
    overlap = np.minimum(pmf_bin, pmf_poi)
    alpha = float(overlap.sum())
    cum_overlap = np.cumsum(overlap)
    resid = max(1.0 - alpha, 1e-300)
    cum_bin_resid = np.cumsum(pmf_bin - overlap) / resid
    cum_poi_resid = np.cumsum(pmf_poi - overlap) / resid
    return alpha, cum_overlap, cum_bin_resid, cum_poi_resid


def _coupled_counts(v: int, p: float, rng: RngStream) -> tuple[int, int]:
    """One draw (K, J) from the maximal coupling, via a shared uniform and
    inverse CDFs of the overlap and residual measures."""
    alpha, cum_overlap, cum_bin_resid, cum_poi_resid = _count_coupling_tables(v, p)
    u = rng.random()
    if u < alpha:
        k = int(np.searchsorted(cum_overlap, u, side="left"))
        return k, k
    u2 = (u - alpha) / (1.0 - alpha)
    k = int(np.searchsorted(cum_bin_resid, u2, side="left"))
    j = int(np.searchsorted(cum_poi_resid, u2, side="left"))
    return k, j


def _coupled_masks(pairs0: np.ndarray, v: int, r: float, s: float, rng: RngStream):
    """Vertex-membership masks of the three coupled samples (0-based ids).

    Edge sets are compared in the host graph's id space, so two samples
    agree exactly when their induced edge masks coincide.
    """
    p = r / s
    k, j = _coupled_counts(v, p, rng)
    perm = rng.permutation(v)
    chosen = perm[:k]
    tilde = chosen.copy()
    if k > 1:
        # Entry j is replaced by a uniform pick among the first j-1 entries
        # with probability (j-1)/v, turning the list into a with-replacement
        # sample of the same length.
        positions = np.arange(k)
        subs = rng.random(k) < positions / v
        repl = rng.integers(0, np.maximum(positions, 1))
        tilde = np.where(subs, chosen[repl], tilde)
    if j <= k:
        mlist = tilde[:j]
    else:
        extras = rng.integers(0, v, size=j - k)
        mlist = np.concatenate([tilde, extras])

    def member_mask(ids):
        m = np.zeros(v, dtype=bool)
        m[ids] = True
        return m

    kx = member_mask(chosen)
    kh = member_mask(tilde)
    km = member_mask(mlist)
    ex = kx[pairs0[:, 0]] & kx[pairs0[:, 1]]
    eh = kh[pairs0[:, 0]] & kh[pairs0[:, 1]]
    em = km[pairs0[:, 0]] & km[pairs0[:, 1]]
    return ex, eh, em


def coupled_sample(g: UnlabeledGraph, r: float, s: float, rng: RngStream) -> CouplingOutcome:
    """Draw the three coupled subsamples of ``g`` at rate r/s."""
    if not 0.0 < r <= s:
        raise OutOfRangeError(f"need 0 < r <= s, got r={r}, s={s}")
    if g.n_vertices == 0:
        raise EmptyGraphError("cannot subsample an empty graph")
    pairs0 = g.pairs - 1
    ex, eh, em = _coupled_masks(pairs0, g.n_vertices, r, s, rng)
    return CouplingOutcome(
        without_replacement=UnlabeledGraph.from_pairs(g.pairs[ex]),
        with_replacement=UnlabeledGraph.from_pairs(g.pairs[eh]),
        poisson_count=UnlabeledGraph.from_pairs(g.pairs[em]),
        agree_without_with=bool(np.array_equal(ex, eh)),
        agree_with_poisson=bool(np.array_equal(eh, em)),
    )


def random_label(g: UnlabeledGraph, s: float, rng: RngStream) -> LabeledGraph:
    """Give every vertex an independent Uniform[0, s] label.

    The provenance of the edges is unknown, so they are tagged as graphon
    edges.
    """
    if not s > 0:
        raise OutOfRangeError("label range must be positive")
    labels = rng.uniform(0.0, s, g.n_vertices)
    if g.n_edges == 0:
        return LabeledGraph.empty(s)
    a = labels[g.pairs[:, 0] - 1]
    b = labels[g.pairs[:, 1] - 1]
    comp = np.full(g.n_edges, Component.W.value, dtype=np.int8)
    return LabeledGraph.build(s, a, b, comp)

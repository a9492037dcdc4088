"""Generate size-s graph realizations from a graphex.

The construction follows the three-part generative mechanism: a latent
unit-rate Poisson process on ``[0, s] x R+`` whose point pairs connect
independently with probability ``W(height_i, height_j)`` (graphon edges),
per-point Poisson star rays with rate ``s * S(height)`` (star edges), and a
rate-``I`` Poisson process of isolated edges on ``[0, s]^2``.  The latent
process is infinite in the height direction, so a finite run truncates it;
``SimConfig.epsilon`` is the total expected number of edges the truncation
may lose, split evenly between the graphon and star parts (isolated edges
are exact).

For product-form graphons ``W(x, y) = f(x) f(y)`` the graphon part is drawn
by an exact decomposition instead of materializing every latent point below
the truncation height (for heavy-tailed families that would be millions of
points):

* points below a *head* height are materialized outright, and the edges
  among them are recovered from a Poissonized pair proposal process (an
  exact representation of independent pairwise Bernoulli draws, linear in
  the number of edges rather than quadratic in the number of points);
* points between the head and the truncation height are materialized only
  if they connect to an already-materialized point, via envelope thinning
  of the latent process, iterated until no new points appear;
* the only edges dropped are those of latent clusters living entirely above
  the head, whose expected count is budgeted inside ``epsilon`` alongside
  the hard truncation loss.

Both decisions are invisible in law up to the stated epsilon budget, and a
naive quadratic path (used for pixel graphons, whose support is compact) is
retained for cross-checking.

Randomness layout: child 0 of the seed drives the latent process and all
graphon edges, child 1 the star rays, child 2 the isolated edges.  A result
is a pure function of ``(graphex, config)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TrivialGraphexError, TruncationUnavailableError
from .graphs import Component, LabeledGraph, restrict
from .rng import RngStream

__all__ = ["SimConfig", "LatentPoints", "simulate", "simulate_projective", "expected_edge_counts"]

# Pair probabilities above this threshold are enumerated directly; the
# Poissonized proposal envelope -log(1-x)/x is only tight for small x.
_HIGH_PAIR_THRESHOLD = 0.5
_ENVELOPE = -math.log1p(-_HIGH_PAIR_THRESHOLD) / _HIGH_PAIR_THRESHOLD
_MAX_CASCADE_ROUNDS = 64


@dataclass(frozen=True)
class SimConfig:
    """Size, truncation budget, seed, and diagnostics switch for one run."""

    size: float
    epsilon: float = 1e-3
    seed: int = 0
    keep_latent: bool = False

    def __post_init__(self):
        if not self.size > 0:
            raise ValueError("size must be positive")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class LatentPoints:
    """Materialized latent points (positions, heights) and the head cut.

    Points with height below ``head_cut`` are the complete latent process on
    ``[0, size] x [0, head_cut]`` (count ~ Poisson(size * head_cut)); any
    points above it were materialized because they participate in an edge.
    """

    position: np.ndarray
    height: np.ndarray
    head_cut: float


def expected_edge_counts(gx, s: float) -> tuple[float, float, float]:
    """Expected (graphon, star, isolated) edge counts at size ``s``."""
    s = float(s)
    return (
        s * s / 2.0 * gx.graphon.l1(),
        s * s * gx.star.l1(),
        s * s * gx.isolated_rate,
    )


def simulate(gx, cfg: SimConfig):
    """Draw one labeled graph of size ``cfg.size`` from ``gx``.

    Returns the :class:`LabeledGraph`, or ``(graph, LatentPoints)`` when
    ``cfg.keep_latent`` is set.
    """
    if not gx.nontrivial():
        raise TrivialGraphexError("graphex has zero total intensity")
    if not hasattr(gx.star, "trunc") or not hasattr(gx.graphon, "trunc"):
        raise TruncationUnavailableError(
            "simulation needs a support truncation from both the star and graphon specs"
        )
    s = float(cfg.size)
    root = RngStream(cfg.seed)
    rng_w, rng_star, rng_iso = root.child(0), root.child(1), root.child(2)

    eps_w = cfg.epsilon / 2.0
    eps_s = cfg.epsilon / 2.0
    star_cut = gx.star.trunc(eps_s / (s * s))

    graphon = gx.graphon
    product_form = hasattr(graphon, "factor_tail")
    if product_form:
        # Half the graphon budget buys the hard cut, half the dropped
        # above-head clusters: (s^2/2) * tail(head)^2 <= eps_w / 2.
        hard_cut = graphon.trunc((eps_w / 2.0) / (s * s))
        tail_at_hard = graphon.factor_tail(hard_cut)
        target = tail_at_hard + math.sqrt(eps_w) / s
        head_cut = graphon.factor_tail_inverse(target) if target > 0 else hard_cut
        head_cut = min(head_cut, hard_cut)
    else:
        hard_cut = graphon.trunc((eps_w / 2.0) / (s * s))
        head_cut = hard_cut
    head_cut = max(head_cut, star_cut)

    n_head = int(rng_w.poisson(s * head_cut)) if head_cut > 0 else 0
    position = rng_w.uniform(0.0, s, n_head)
    height = rng_w.uniform(0.0, head_cut, n_head)

    if product_form:
        pair_idx, position, height = _product_graphon_edges(
            graphon, position, height, s, head_cut, hard_cut, rng_w
        )
    else:
        pair_idx = _naive_graphon_edges(graphon, height, hard_cut, rng_w)

    edges_a = [position[pair_idx[:, 0]]]
    edges_b = [position[pair_idx[:, 1]]]
    comps = [np.full(pair_idx.shape[0], Component.W.value, dtype=np.int8)]

    # Star rays: centers are the latent points below the star truncation.
    center_mask = height <= star_cut
    if center_mask.any():
        rates = s * np.asarray(gx.star.eval(height[center_mask]), dtype=np.float64)
        counts = rng_star.poisson(rates)
        total = int(counts.sum())
        if total:
            centers = np.repeat(position[center_mask], counts)
            tips = rng_star.uniform(0.0, s, total)
            edges_a.append(centers)
            edges_b.append(tips)
            comps.append(np.full(total, Component.S.value, dtype=np.int8))

    # Isolated edges: exact, no truncation involved.
    n_iso = int(rng_iso.poisson(s * s * gx.isolated_rate))
    if n_iso:
        edges_a.append(rng_iso.uniform(0.0, s, n_iso))
        edges_b.append(rng_iso.uniform(0.0, s, n_iso))
        comps.append(np.full(n_iso, Component.I.value, dtype=np.int8))

    graph = LabeledGraph.build(
        s,
        np.concatenate(edges_a),
        np.concatenate(edges_b),
        np.concatenate(comps),
    )
    if cfg.keep_latent:
        return graph, LatentPoints(position=position, height=height, head_cut=head_cut)
    return graph


def simulate_projective(gx, sizes, epsilon: float = 1e-3, seed: int = 0):
    """Simulate once at the largest size and return nested restrictions.

    The returned list satisfies ``restrict(out[j], sizes[i]) == out[i]``
    exactly for ``i <= j``.
    """
    sizes = [float(t) for t in sizes]
    if not sizes:
        raise ValueError("need at least one size")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly ascending")
    full = simulate(gx, SimConfig(size=sizes[-1], epsilon=epsilon, seed=seed))
    return [restrict(full, t) for t in sizes]


# ---------------------------------------------------------------------------
# Graphon edge samplers


def _naive_graphon_edges(graphon, height, support_cut, rng) -> np.ndarray:
    """Pairwise Bernoulli thinning over all materialized point pairs."""
    idx = np.flatnonzero(height <= support_cut)
    m = idx.size
    if m < 2:
        return np.empty((0, 2), dtype=np.int64)
    iu, ju = np.triu_indices(m, k=1)
    probs = np.asarray(graphon.eval(height[idx[iu]], height[idx[ju]]), dtype=np.float64)
    keep = rng.random(iu.size) < probs
    return np.column_stack([idx[iu[keep]], idx[ju[keep]]]).astype(np.int64)


def _weighted_pair_proposals(w_sorted, rng):
    """Accepted index pairs of the Poisson pair-proposal process.

    ``w_sorted`` is nonincreasing.  Returns unordered index pairs whose
    occurrence is exactly an independent Bernoulli(w_i * w_j) draw for every
    pair with w_i * w_j <= the high-pair threshold; higher pairs are the
    caller's responsibility.
    """
    total = float(w_sorted.sum())
    sq = float((w_sorted**2).sum())
    lam_pairs = max(total * total - sq, 0.0) / 2.0
    n_prop = int(rng.poisson(_ENVELOPE * lam_pairs)) if lam_pairs > 0 else 0
    if n_prop == 0:
        return np.empty((0, 2), dtype=np.int64)
    cum = np.cumsum(w_sorted)
    last = w_sorted.size - 1

    def draw(k):
        idx = np.searchsorted(cum, rng.random(k) * total, side="right")
        return np.minimum(idx, last)  # guard the measure-zero right edge

    a = draw(n_prop)
    b = draw(n_prop)
    # Condition the proposal on distinct endpoints.
    clash = a == b
    while clash.any():
        k = int(clash.sum())
        a[clash] = draw(k)
        b[clash] = draw(k)
        clash = a == b
    x = w_sorted[a] * w_sorted[b]
    ratio = np.zeros(n_prop)
    low = (x > 0.0) & (x <= _HIGH_PAIR_THRESHOLD)
    ratio[low] = -np.log1p(-x[low]) / x[low] / _ENVELOPE
    keep = rng.random(n_prop) < ratio
    lo = np.minimum(a[keep], b[keep])
    hi = np.maximum(a[keep], b[keep])
    if lo.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    return np.unique(np.column_stack([lo, hi]), axis=0)


def _high_pair_edges(w_sorted, rng):
    """Direct Bernoulli draws for pairs with probability above the threshold."""
    m = w_sorted.size
    if m < 2 or w_sorted[0] * w_sorted[1] <= _HIGH_PAIR_THRESHOLD:
        return np.empty((0, 2), dtype=np.int64)
    # Only the leading block can form high pairs.
    block = int(np.searchsorted(-w_sorted, -(_HIGH_PAIR_THRESHOLD / w_sorted[0]), side="left"))
    block = min(max(block, 2), m)
    iu, ju = np.triu_indices(block, k=1)
    x = w_sorted[iu] * w_sorted[ju]
    high = x > _HIGH_PAIR_THRESHOLD
    iu, ju, x = iu[high], ju[high], x[high]
    keep = rng.random(x.size) < x
    return np.column_stack([iu[keep], ju[keep]]).astype(np.int64)


def _conditioned_link_subset(probs, rng):
    """Indices of successes of independent Bernoullis conditioned on >= 1.

    Samples the first success from its exact conditional law, then the
    remaining slots independently.  Probabilities of exactly 1 give the
    intended -inf log survival (a sure link).
    """
    with np.errstate(divide="ignore"):
        logq = np.log1p(-probs)
    total_log = float(logq.sum())
    p_any = -math.expm1(total_log)
    prefix = np.exp(np.concatenate([[0.0], np.cumsum(logq[:-1])]))
    first_probs = prefix * probs / p_any
    u = rng.random()
    first = int(np.searchsorted(np.cumsum(first_probs), u))
    first = min(first, probs.size - 1)
    rest = np.flatnonzero(rng.random(probs.size - first - 1) < probs[first + 1 :])
    return np.concatenate([[first], rest + first + 1])


def _product_graphon_edges(graphon, position, height, s, head_cut, hard_cut, rng):
    """Exact graphon edges for product-form W; may append absorbed points.

    Returns ``(pairs, position, height)`` where pairs index into the possibly
    extended point arrays.
    """
    n0 = position.size
    weights = np.asarray(graphon.factor(height), dtype=np.float64)
    order = np.argsort(height, kind="stable")  # factor nonincreasing => weights descending
    w_sorted = weights[order]

    high = _high_pair_edges(w_sorted, rng)
    low = _weighted_pair_proposals(w_sorted, rng)
    head_pairs = np.vstack([high, low]) if (high.size or low.size) else np.empty((0, 2), dtype=np.int64)
    pairs = order[head_pairs] if head_pairs.size else np.empty((0, 2), dtype=np.int64)
    pair_list = [pairs.reshape(-1, 2)]

    # Absorb points from the cascade region (head, hard] that connect to the
    # materialized set; clusters entirely above the head are dropped within
    # the epsilon budget.
    tail_mass = graphon.factor_tail(head_cut) - graphon.factor_tail(hard_cut) if head_cut < hard_cut else 0.0
    if tail_mass > 0:
        extra_pos, extra_h = [], []
        prev_weights: list[np.ndarray] = []
        exposed_idx = np.arange(n0, dtype=np.int64)
        exposed_w = weights
        next_index = n0
        for _ in range(_MAX_CASCADE_ROUNDS):
            active = exposed_w > 0.0
            exposed_idx, exposed_w = exposed_idx[active], exposed_w[active]
            if exposed_idx.size == 0:
                break
            a_exp = float(exposed_w.sum())
            n_cand = int(rng.poisson(s * a_exp * tail_mass))
            new_idx, new_w = [], []
            for _c in range(n_cand):
                y = float(graphon.factor_quantile(head_cut, hard_cut, rng.random()))
                fy = float(graphon.factor(y))
                if fy <= 0.0:
                    continue
                link_probs = exposed_w * fy
                with np.errstate(divide="ignore"):
                    p_any = -math.expm1(float(np.log1p(-link_probs).sum()))
                    surv = math.exp(
                        sum(float(np.log1p(-pw * fy).sum()) for pw in prev_weights)
                    )
                accept = surv * p_any / (a_exp * fy)
                if rng.random() >= accept:
                    continue
                sel = _conditioned_link_subset(link_probs, rng)
                theta_new = rng.uniform(0.0, s)
                extra_pos.append(theta_new)
                extra_h.append(y)
                pair_list.append(
                    np.column_stack(
                        [exposed_idx[sel], np.full(sel.size, next_index, dtype=np.int64)]
                    )
                )
                new_idx.append(next_index)
                new_w.append(fy)
                next_index += 1
            new_idx = np.asarray(new_idx, dtype=np.int64)
            new_w = np.asarray(new_w, dtype=np.float64)
            if new_idx.size >= 2:
                iu, ju = np.triu_indices(new_idx.size, k=1)
                keep = rng.random(iu.size) < new_w[iu] * new_w[ju]
                if keep.any():
                    pair_list.append(np.column_stack([new_idx[iu[keep]], new_idx[ju[keep]]]))
            prev_weights.append(exposed_w)
            exposed_idx, exposed_w = new_idx, new_w
        if extra_pos:
            position = np.concatenate([position, np.asarray(extra_pos)])
            height = np.concatenate([height, np.asarray(extra_h)])

    all_pairs = np.vstack([p for p in pair_list if p.size]) if any(p.size for p in pair_list) else np.empty((0, 2), dtype=np.int64)
    return all_pairs, position, height

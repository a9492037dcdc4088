"""Deeper distributional oracles for the simulator.

Closed-form mean/variance identities for the edge counts (derived from the
factorial moments of the latent Poisson process), the exact law of the
first jump time for the isolated component, a goodness-of-fit check on the
materialized latent point count, and a cascade-heavy cross-check of the
fast product-form sampler against the reference quadratic path.
"""
import math

import numpy as np
import pytest

from graphex import (
    ExpStar,
    Graphex,
    InversePowerGraphon,
    ExpProductGraphon,
    SimConfig,
    jump_times,
    simulate,
)
from graphex.verify import StatVector, ks_test, poisson_gof_test, stats, two_sample_test
from graphex.graphs import forget_labels


def _sample_var_close(values, target, n_sigma=6.0):
    # SE of the sample variance under approximate normality ~ var*sqrt(2/n);
    # generous slack absorbs the extra kurtosis of mixed Poisson counts.
    values = np.asarray(values, dtype=float)
    se = target * math.sqrt(2.0 / len(values))
    return abs(values.var(ddof=1) - target) <= n_sigma * 2.0 * se


def test_graphon_count_variance_product_form():
    # For W(x,y) = f(x) f(y):  Var[e] = s^2 F^2 / 2 + s^3 F^2 * int(f^2)
    # with F = int f; here f = (x+1)^-2, F = 1, int f^2 = 1/3.
    s = 7.0
    gx = Graphex(graphon=InversePowerGraphon(power=2.0))
    es = np.array(
        [simulate(gx, SimConfig(size=s, seed=i)).n_edges for i in range(4000)], float
    )
    mean = s * s / 2.0
    var = s * s / 2.0 + s**3 / 3.0
    assert abs(es.mean() - mean) <= 4.0 * es.std(ddof=1) / math.sqrt(len(es))
    assert _sample_var_close(es, var)


def test_star_count_variance():
    # Rays are a Cox count:  Var[e] = s^2 |S|_1 + s^3 * int(S^2).
    s = 10.0
    star = ExpStar(amplitude=0.5, rate=1.0, shift=1.0)
    gx = Graphex(star=star)
    es = np.array(
        [simulate(gx, SimConfig(size=s, seed=i)).n_edges for i in range(4000)], float
    )
    int_s2 = star.amplitude**2 * math.exp(-2.0 * star.rate * star.shift) / (2.0 * star.rate)
    var = s * s * star.l1() + s**3 * int_s2
    assert abs(es.mean() - s * s * star.l1()) <= 4.0 * es.std(ddof=1) / math.sqrt(len(es))
    assert _sample_var_close(es, var)


def test_first_jump_time_law_isolated():
    # With only isolated edges, no edge lies in [0,t]^2 with probability
    # exp(-I t^2), so the first jump time has cdf 1 - exp(-I t^2).
    rate = 0.4
    gx = Graphex(isolated_rate=rate)
    firsts = []
    for i in range(3000):
        g = simulate(gx, SimConfig(size=12.0, seed=i))
        taus = jump_times(g)
        if taus.size:  # size 12 with rate 0.4 is a.s. nonempty in practice
            firsts.append(float(taus[0]))
    assert len(firsts) == 3000

    def cdf(t):
        t = np.asarray(t, dtype=float)
        return 1.0 - np.exp(-rate * np.clip(t, 0.0, None) ** 2)

    report = ks_test(np.array(firsts), cdf, alpha=0.01)
    assert report.passed, report.p_value


def test_latent_point_count_poisson():
    gx = Graphex(graphon=ExpProductGraphon())
    counts = []
    head = None
    for i in range(1500):
        _, latent = simulate(gx, SimConfig(size=6.0, seed=i, keep_latent=True))
        head = latent.head_cut
        counts.append(int((latent.height <= latent.head_cut).sum()))
    report = poisson_gof_test(counts, mu=6.0 * head, alpha=0.01)
    assert report.passed, (report.observed, report.threshold)


def test_cascade_heavy_path_matches_naive():
    # A loose budget shrinks the materialized head, forcing a large share of
    # the edges through the cascade; the reference quadratic sampler (same
    # hard cut, everything materialized) must agree in distribution.
    class OpaqueGraphon:
        def __init__(self, inner):
            self._inner = inner

        def eval(self, x, y):
            return self._inner.eval(x, y)

        def l1(self):
            return self._inner.l1()

        def trunc(self, eps):
            return self._inner.trunc(eps)

        def dilated(self, c):
            return OpaqueGraphon(self._inner.dilated(c))

    inner = InversePowerGraphon(power=2.0)
    fast_gx = Graphex(graphon=inner)
    slow_gx = Graphex(graphon=OpaqueGraphon(inner))
    s, eps, reps = 5.0, 0.8, 1200
    fast = [
        stats(forget_labels(simulate(fast_gx, SimConfig(size=s, epsilon=eps, seed=i))))
        for i in range(reps)
    ]
    slow = [
        stats(forget_labels(simulate(slow_gx, SimConfig(size=s, epsilon=eps, seed=10**6 + i))))
        for i in range(reps)
    ]
    for stat in ("e", "v", "triangles"):
        report = two_sample_test(fast, slow, stat, alpha=0.01)
        assert report.passed, (stat, report.observed, report.threshold)


def test_large_size_smoke():
    # Desk-scale upper end: s = 100 stays fast and keeps the mean on target.
    gx = Graphex(graphon=ExpProductGraphon())
    es = np.array(
        [simulate(gx, SimConfig(size=100.0, seed=i)).n_edges for i in range(60)], float
    )
    se = es.std(ddof=1) / math.sqrt(len(es))
    assert abs(es.mean() - 5000.0) <= 4.0 * se

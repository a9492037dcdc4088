"""Empirical graphon estimators and generation from pixel graphons.

The empirical graphon of a graph with n vertices is its adjacency matrix
rendered as a step function with cells of width 1/n; the dilated variant
uses cells of width 1/s for a known observation size s, so its L1 norm is
exactly 2 e(G) / s^2.  Vertices are placed in the deterministic canonical
order so that estimator output is reproducible.

``generate_from_pixel`` draws a size-r graph from a pixel graphon by the
with-replacement shortcut: Poisson(r * n * cell_width) row choices, one per
latent point, connected pairwise by the matrix entries.  It is equivalent
in law to running the generic simulator on the pixel graphon, which the
test suite checks.
"""
from __future__ import annotations

import numpy as np

from .errors import EmptyGraphError
from .graphs import UnlabeledGraph, canonical_order
from .model import PixelGraphon
from .rng import RngStream

__all__ = [
    "PixelGraphon",
    "empirical_graphon",
    "dilated_empirical_graphon",
    "canonical_order",
    "generate_from_pixel",
]


def _canonical_adjacency(g: UnlabeledGraph) -> np.ndarray:
    n = g.n_vertices
    order = canonical_order(g)
    rank = np.empty(n + 1, dtype=np.int64)
    rank[order] = np.arange(n)
    m = np.zeros((n, n), dtype=np.float64)
    i = rank[g.pairs[:, 0]]
    j = rank[g.pairs[:, 1]]
    m[i, j] = 1.0
    m[j, i] = 1.0
    return m


def empirical_graphon(g: UnlabeledGraph) -> PixelGraphon:
    """Step function on [0, 1)^2 with cells of width 1/v(g)."""
    if g.n_vertices == 0:
        raise EmptyGraphError("empirical graphon needs at least one vertex")
    return PixelGraphon(_canonical_adjacency(g), 1.0 / g.n_vertices)


def dilated_empirical_graphon(g: UnlabeledGraph, s: float) -> PixelGraphon:
    """Same matrix as the empirical graphon, cells of width 1/s."""
    if g.n_vertices == 0:
        raise EmptyGraphError("empirical graphon needs at least one vertex")
    if not s > 0:
        raise ValueError("dilation size must be positive")
    return PixelGraphon(_canonical_adjacency(g), 1.0 / s)


def generate_from_pixel(pg: PixelGraphon, r: float, rng: RngStream) -> UnlabeledGraph:
    """Draw a size-r graph from a pixel graphon.

    Each slot of the Poisson(r * n * cell_width) draw is its own latent
    point, hence its own potential vertex: two slots landing on the same row
    are distinct vertices and never connect to each other (latent pairs are
    distinct points and the estimator matrices carry no diagonal).  Slots
    that end up isolated vanish.
    """
    if not r > 0:
        raise ValueError("size must be positive")
    n = pg.n
    count = int(rng.poisson(r * n * pg.cell_width))
    if count < 2 or n == 0:
        return UnlabeledGraph.empty()
    rows = rng.integers(0, n, size=count)
    iu, ju = np.triu_indices(count, k=1)
    probs = pg.matrix[rows[iu], rows[ju]]
    keep = (rng.random(iu.size) < probs) & (rows[iu] != rows[ju])
    if not keep.any():
        return UnlabeledGraph.empty()
    return UnlabeledGraph.from_pairs(np.column_stack([iu[keep] + 1, ju[keep] + 1]))

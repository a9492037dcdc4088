"""Jump times, graph sequences, and dilations.

The running edge count of a labeled graph jumps exactly at the sizes where
a new edge's larger endpoint enters the observation window, so the jump
times are the sorted distinct values of the larger endpoint over all edges.
The graph sequence is the list of unlabeled graphs observed at those jumps;
it is the natural observable when sizes are unknown, and it is invariant
under dilations of the underlying labels.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import LabeledGraph, UnlabeledGraph, forget_labels, restrict
from .model import Graphex

__all__ = [
    "GraphSequence",
    "jump_times",
    "graph_sequence",
    "dilate_measure",
    "dilate_graphex",
]


@dataclass(frozen=True)
class GraphSequence:
    """Strictly growing sequence of unlabeled graphs, optionally with the
    sizes at which each step occurred."""

    graphs: tuple[UnlabeledGraph, ...]
    times: tuple[float, ...] | None = None

    def __post_init__(self):
        edge_counts = [g.n_edges for g in self.graphs]
        if any(b <= a for a, b in zip(edge_counts, edge_counts[1:])):
            raise ValueError("edge counts along a graph sequence must strictly increase")
        if self.times is not None and len(self.times) != len(self.graphs):
            raise ValueError("one jump time per sequence element required")

    def __len__(self):
        return len(self.graphs)

    def step_sizes(self) -> list[int]:
        """Edges added at each step."""
        counts = [g.n_edges for g in self.graphs]
        return [counts[0]] + [b - a for a, b in zip(counts, counts[1:])] if counts else []

    def without_times(self) -> "GraphSequence":
        return GraphSequence(graphs=self.graphs, times=None)


def jump_times(g: LabeledGraph) -> np.ndarray:
    """Sorted distinct values of the larger endpoint over all edges.

    Edges sharing their larger endpoint enter simultaneously and merge into
    a single jump; almost surely impossible under the generative model, but
    deterministic inputs may trigger it.
    """
    return np.unique(g.theta_prime)


def graph_sequence(g: LabeledGraph) -> GraphSequence:
    """The sequence of distinct unlabeled graphs as the size grows."""
    taus = jump_times(g)
    graphs = tuple(forget_labels(restrict(g, float(t))) for t in taus)
    return GraphSequence(graphs=graphs, times=tuple(float(t) for t in taus))


def dilate_measure(g: LabeledGraph, c: float) -> LabeledGraph:
    """Multiply every label (and the size) by c > 0."""
    if not c > 0:
        raise ValueError("dilation factor must be positive")
    return LabeledGraph.build(g.size * c, g.theta * c, g.theta_prime * c, g.component)


def dilate_graphex(gx: Graphex, c: float) -> Graphex:
    """The c-dilation (rate * c^2, rescaled star and graphon)."""
    return gx.dilated(c)

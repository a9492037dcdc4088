"""Labeled and unlabeled graphs.

A :class:`LabeledGraph` is a finite symmetric simple point pattern on
``[0, size]^2``: each undirected edge is stored once with its smaller label
first, tagged by the mechanism that produced it.  Edge identity is exact
float equality of the label pair; under the generative model labels are
almost surely distinct, and deterministic duplicates are collapsed at
construction.

An :class:`UnlabeledGraph` is an edge set over contiguous integer ids
``1..n``; the vertex set is always deduced from the edge set, so isolated
vertices cannot be represented.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import OutOfRangeError

__all__ = [
    "Component",
    "LabeledGraph",
    "UnlabeledGraph",
    "restrict",
    "forget_labels",
    "canonical_order",
]


class Component(enum.IntEnum):
    """Which part of the graphex produced an edge."""

    W = 0  # graphon (pairwise) edges
    S = 1  # star rays
    I = 2  # isolated edges

    @property
    def letter(self) -> str:
        return self.name


_LETTER_TO_COMPONENT = {c.name: c for c in Component}


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Symmetric simple edge pattern on [0, size]^2 with component tags."""

    size: float
    theta: np.ndarray        # (m,) float64, theta <= theta_prime per edge
    theta_prime: np.ndarray  # (m,) float64
    component: np.ndarray    # (m,) int8 Component values

    @classmethod
    def build(cls, size, theta, theta_prime, component) -> "LabeledGraph":
        """Construct in canonical form: endpoints ordered within each edge,
        edges sorted by (theta, theta_prime, component), exact duplicates
        collapsed, labels validated against [0, size]."""
        size = float(size)
        if size < 0:
            raise OutOfRangeError("size must be nonnegative")
        a = np.asarray(theta, dtype=np.float64)
        b = np.asarray(theta_prime, dtype=np.float64)
        comp = np.asarray(component, dtype=np.int8)
        if not (a.shape == b.shape == comp.shape):
            raise ValueError("edge arrays must have identical shapes")
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        if lo.size and (lo.min() < 0.0 or hi.max() > size):
            raise OutOfRangeError("edge labels must lie in [0, size]")
        order = np.lexsort((comp, hi, lo))
        lo, hi, comp = lo[order], hi[order], comp[order]
        if lo.size:
            fresh = np.ones(lo.size, dtype=bool)
            fresh[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
            lo, hi, comp = lo[fresh], hi[fresh], comp[fresh]
        for arr in (lo, hi, comp):
            arr.flags.writeable = False
        return cls(size=size, theta=lo, theta_prime=hi, component=comp)

    @classmethod
    def empty(cls, size: float) -> "LabeledGraph":
        return cls.build(size, [], [], [])

    @property
    def n_edges(self) -> int:
        return self.theta.shape[0]

    def component_counts(self) -> dict[str, int]:
        return {
            c.letter: int(np.count_nonzero(self.component == c.value))
            for c in Component
        }

    def as_tuples(self) -> list[tuple[float, float, str]]:
        return [
            (float(a), float(b), Component(int(c)).letter)
            for a, b, c in zip(self.theta, self.theta_prime, self.component)
        ]

    def __eq__(self, other):
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (
            self.size == other.size
            and np.array_equal(self.theta, other.theta)
            and np.array_equal(self.theta_prime, other.theta_prime)
            and np.array_equal(self.component, other.component)
        )

    def __repr__(self):
        return f"LabeledGraph(size={self.size!r}, edges={self.n_edges})"


def restrict(g: LabeledGraph, r: float) -> LabeledGraph:
    """Keep exactly the edges with both labels <= r; the result has size r."""
    r = float(r)
    if r < 0.0 or r > g.size:
        raise OutOfRangeError(f"restriction size {r} outside [0, {g.size}]")
    mask = g.theta_prime <= r  # theta <= theta_prime, so one test suffices
    return LabeledGraph.build(r, g.theta[mask], g.theta_prime[mask], g.component[mask])


@dataclass(frozen=True, eq=False)
class UnlabeledGraph:
    """Edge set over contiguous 1-based vertex ids, no isolated vertices."""

    pairs: np.ndarray  # (m, 2) int64, u <= v, lexicographically sorted, unique

    @classmethod
    def from_pairs(cls, pairs) -> "UnlabeledGraph":
        """Build from arbitrary integer id pairs; ids are made contiguous
        1..n preserving their sorted order, duplicates collapse."""
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if arr.shape[0] == 0:
            return cls._raw(np.empty((0, 2), dtype=np.int64))
        ids = np.unique(arr)
        remapped = np.searchsorted(ids, arr) + 1
        lo = remapped.min(axis=1)
        hi = remapped.max(axis=1)
        rows = np.unique(np.column_stack([lo, hi]), axis=0)
        return cls._raw(rows)

    @classmethod
    def empty(cls) -> "UnlabeledGraph":
        return cls._raw(np.empty((0, 2), dtype=np.int64))

    @classmethod
    def _raw(cls, rows: np.ndarray) -> "UnlabeledGraph":
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        rows.flags.writeable = False
        return cls(pairs=rows)

    @cached_property
    def n_vertices(self) -> int:
        if self.pairs.shape[0] == 0:
            return 0
        return int(self.pairs.max())

    @property
    def n_edges(self) -> int:
        return self.pairs.shape[0]

    def degrees(self) -> np.ndarray:
        """Degree of each vertex 1..n (index 0 = vertex 1); loops count 2."""
        return np.bincount(self.pairs.ravel(), minlength=self.n_vertices + 1)[1:]

    def neighbor_sets(self) -> list[set[int]]:
        """Adjacency as sets indexed by vertex-1; self-loops excluded."""
        adj: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for u, v in self.pairs:
            if u != v:
                adj[u - 1].add(int(v))
                adj[v - 1].add(int(u))
        return adj

    def relabeled(self, new_id_of: np.ndarray) -> "UnlabeledGraph":
        """Apply a permutation: ``new_id_of[old_id - 1]`` is the new 1-based id."""
        if self.n_edges == 0:
            return self
        mapped = np.asarray(new_id_of, dtype=np.int64)[self.pairs - 1]
        lo = mapped.min(axis=1)
        hi = mapped.max(axis=1)
        rows = np.unique(np.column_stack([lo, hi]), axis=0)
        return UnlabeledGraph._raw(rows)

    def canonical(self) -> "UnlabeledGraph":
        """Relabel by :func:`canonical_order`."""
        order = canonical_order(self)
        new_id_of = np.empty(self.n_vertices, dtype=np.int64)
        new_id_of[order - 1] = np.arange(1, self.n_vertices + 1)
        return self.relabeled(new_id_of)

    def __eq__(self, other):
        if not isinstance(other, UnlabeledGraph):
            return NotImplemented
        return np.array_equal(self.pairs, other.pairs)

    def __hash__(self):
        return hash(self.pairs.tobytes())

    def __repr__(self):
        return f"UnlabeledGraph(v={self.n_vertices}, e={self.n_edges})"


def canonical_order(g: UnlabeledGraph) -> np.ndarray:
    """Deterministic vertex order: degree descending, ties by smallest sorted
    neighbor-degree sequence, remaining ties by current id.  Returns the old
    1-based ids in canonical rank order."""
    n = g.n_vertices
    if n == 0:
        return np.empty(0, dtype=np.int64)
    deg = g.degrees()
    adj = g.neighbor_sets()
    keys = []
    for vid in range(1, n + 1):
        nd = tuple(sorted((int(deg[w - 1]) for w in adj[vid - 1]), reverse=True))
        keys.append((-int(deg[vid - 1]), nd, vid))
    keys.sort()
    return np.array([k[2] for k in keys], dtype=np.int64)


def forget_labels(g: LabeledGraph) -> UnlabeledGraph:
    """One vertex per distinct label, ids assigned by the canonical order."""
    if g.n_edges == 0:
        return UnlabeledGraph.empty()
    labels = np.unique(np.concatenate([g.theta, g.theta_prime]))
    u = np.searchsorted(labels, g.theta) + 1
    v = np.searchsorted(labels, g.theta_prime) + 1
    return UnlabeledGraph.from_pairs(np.column_stack([u, v])).canonical()


def label_to_id_map(g: LabeledGraph) -> dict[float, int]:
    """Map each distinct label of ``g`` to its canonical vertex id in
    ``forget_labels(g)``.  Used by serializers that must name vertices
    consistently across restrictions of the same labeled graph."""
    if g.n_edges == 0:
        return {}
    labels = np.unique(np.concatenate([g.theta, g.theta_prime]))
    u = np.searchsorted(labels, g.theta) + 1
    v = np.searchsorted(labels, g.theta_prime) + 1
    provisional = UnlabeledGraph.from_pairs(np.column_stack([u, v]))
    order = canonical_order(provisional)
    new_id_of = np.empty(provisional.n_vertices, dtype=np.int64)
    new_id_of[order - 1] = np.arange(1, provisional.n_vertices + 1)
    return {float(lab): int(new_id_of[i]) for i, lab in enumerate(labels)}

"""Deterministic random streams with documented child derivation.

Every randomized operation in the package takes an :class:`RngStream`.  A
stream is identified by a 64-bit root seed plus a tuple of child indices;
``child(i)`` appends ``i`` to that path.  The underlying generator is
PCG64 keyed by ``numpy.random.SeedSequence(seed, spawn_key=path)``, so two
streams with different paths are statistically independent, and the same
(seed, path) pair produces bit-identical output on every platform for a
fixed numpy version.
"""
from __future__ import annotations

import numpy as np

__all__ = ["RngStream"]

_MAX_SEED = 2**64


class RngStream:
    """A seeded PCG64 generator that can spawn reproducible children."""

    __slots__ = ("seed", "path", "generator")

    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        seed = int(seed)
        if not 0 <= seed < _MAX_SEED:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.path = tuple(int(i) for i in path)
        ss = np.random.SeedSequence(seed, spawn_key=self.path)
        self.generator = np.random.Generator(np.random.PCG64(ss))

    def child(self, index: int) -> "RngStream":
        """Derive the ``index``-th child stream, independent of this one."""
        return RngStream(self.seed, self.path + (int(index),))

    def spawn_seed(self) -> int:
        """Draw a fresh 63-bit integer usable as another root seed."""
        return int(self.generator.integers(0, 2**63))

    def __getattr__(self, name):
        # Delegate distribution methods (uniform, poisson, ...) to numpy.
        return getattr(self.generator, name)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, path={self.path})"

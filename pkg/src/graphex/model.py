"""Model parameters: graphon families, star intensities, and the graphex triple.

A graphex is a triple ``(isolated_rate, star, graphon)``: a nonnegative rate
of isolated edges, an integrable star intensity ``S: R+ -> R+``, and a
symmetric graphon ``W: R+^2 -> [0, 1]``.  Every shipped family publishes an
analytic L1 norm and a support truncation ``trunc(eps)`` returning a height
``V`` such that the expected edge mass lost by ignoring latent points above
``V`` is at most ``eps`` per unit of squared observation size.

The three builtin graphon families are product-form, ``W(x, y) = f(x) f(y)``
with a nonincreasing factor ``f``; the simulator exploits this structure, so
the product interface (``factor`` and the tail integrals of ``f``) is part of
their public surface.  Pixel graphons (step functions from a matrix) have
compact support and need no such structure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NonIntegrableError, NotDilatableError

__all__ = [
    "ZeroGraphon",
    "ExpProductGraphon",
    "InversePowerGraphon",
    "UniformBlockGraphon",
    "PixelGraphon",
    "ZeroStar",
    "ExpStar",
    "UniformStar",
    "Graphex",
    "graphon_from_family",
    "star_from_family",
    "GRAPHON_FAMILIES",
    "STAR_FAMILIES",
]


def _as_float_array(x):
    return np.asarray(x, dtype=np.float64)


class _ProductGraphon:
    """Mixin for graphons of the form W(x, y) = f(x) f(y), f nonincreasing.

    Subclasses implement ``factor``, ``factor_tail`` (the upper tail integral
    of f) and ``factor_tail_inverse``.  Everything else -- evaluation, the L1
    norm, marginals, truncation, quantile sampling of f-weighted heights --
    derives from those three.
    """

    def factor(self, x):
        raise NotImplementedError

    def factor_tail(self, lo: float) -> float:
        """Integral of the factor over [lo, infinity)."""
        raise NotImplementedError

    def factor_tail_inverse(self, mass: float) -> float:
        """Smallest x >= 0 whose factor tail is at most ``mass``."""
        raise NotImplementedError

    def factor_norm(self) -> float:
        return self.factor_tail(0.0)

    def eval(self, x, y):
        return self.factor(x) * self.factor(y)

    def l1(self) -> float:
        f = self.factor_norm()
        return f * f

    def marginal(self, x):
        return self.factor(x) * self.factor_norm()

    def trunc(self, eps: float) -> float:
        # Lost edge mass per unit s^2 when cutting at V:
        #   (F^2 - (F - t)^2) / 2 = F t - t^2 / 2   with t = tail(V).
        if eps <= 0:
            raise ValueError("truncation budget must be positive")
        f = self.factor_norm()
        if 2.0 * eps >= f * f:
            return 0.0
        # Stable form of the smaller root of t^2 - 2 f t + 2 eps = 0.
        t = 2.0 * eps / (f + math.sqrt(f * f - 2.0 * eps))
        return self.factor_tail_inverse(t)

    def factor_quantile(self, lo: float, hi: float, u):
        """Inverse CDF of the f-weighted height density restricted to [lo, hi]."""
        mass_lo = self.factor_tail(lo)
        mass_hi = self.factor_tail(hi)
        u = _as_float_array(u)
        target = mass_lo - u * (mass_lo - mass_hi)
        if target.ndim == 0:
            return self.factor_tail_inverse(float(target))
        return np.array([self.factor_tail_inverse(float(m)) for m in target])


@dataclass(frozen=True)
class ZeroGraphon(_ProductGraphon):
    """The identically-zero graphon."""

    def factor(self, x):
        return np.zeros_like(_as_float_array(x))

    def factor_tail(self, lo):
        return 0.0

    def factor_tail_inverse(self, mass):
        return 0.0

    def trunc(self, eps):
        return 0.0

    def dilated(self, c: float) -> "ZeroGraphon":
        return self


@dataclass(frozen=True)
class ExpProductGraphon(_ProductGraphon):
    """W(x, y) = exp(-rate * (x + y)); L1 norm 1/rate^2."""

    rate: float = 1.0

    def __post_init__(self):
        if not self.rate > 0:
            raise ConfigError("exp-product rate must be positive")

    def factor(self, x):
        return np.exp(-self.rate * _as_float_array(x))

    def factor_tail(self, lo):
        return math.exp(-self.rate * lo) / self.rate

    def factor_tail_inverse(self, mass):
        if mass * self.rate >= 1.0:
            return 0.0
        return -math.log(mass * self.rate) / self.rate

    def dilated(self, c: float) -> "ExpProductGraphon":
        return ExpProductGraphon(rate=self.rate / c)


@dataclass(frozen=True)
class InversePowerGraphon(_ProductGraphon):
    """W(x, y) = (x/scale + 1)^-power * (y/scale + 1)^-power.

    Integrable only for power > 1 (L1 norm (scale/(power-1))^2); the family
    may still be evaluated pointwise below that threshold, but norms and
    truncations raise :class:`NonIntegrableError`.
    """

    power: float
    scale: float = 1.0

    def __post_init__(self):
        if not self.power > 0:
            raise ConfigError("inverse-power exponent must be positive")
        if not self.scale > 0:
            raise ConfigError("inverse-power scale must be positive")

    def _require_integrable(self):
        if self.power <= 1.0:
            raise NonIntegrableError(
                f"inverse-power graphon with exponent {self.power} has no finite norm"
            )

    def factor(self, x):
        return (_as_float_array(x) / self.scale + 1.0) ** (-self.power)

    def factor_tail(self, lo):
        self._require_integrable()
        return self.scale * (lo / self.scale + 1.0) ** (1.0 - self.power) / (self.power - 1.0)

    def factor_tail_inverse(self, mass):
        self._require_integrable()
        if mass <= 0.0:
            raise ValueError("tail mass must be positive for an unbounded family")
        base = mass * (self.power - 1.0) / self.scale
        x = self.scale * (base ** (1.0 / (1.0 - self.power)) - 1.0)
        return max(x, 0.0)

    def dilated(self, c: float) -> "InversePowerGraphon":
        return InversePowerGraphon(power=self.power, scale=self.scale * c)


@dataclass(frozen=True)
class UniformBlockGraphon(_ProductGraphon):
    """W(x, y) = level * 1[x <= cutoff] * 1[y <= cutoff] (dense regime)."""

    level: float
    cutoff: float

    def __post_init__(self):
        if not 0.0 <= self.level <= 1.0:
            raise ConfigError("uniform block level must lie in [0, 1]")
        if not self.cutoff > 0:
            raise ConfigError("uniform block cutoff must be positive")

    def factor(self, x):
        x = _as_float_array(x)
        return math.sqrt(self.level) * (x <= self.cutoff)

    def factor_tail(self, lo):
        return math.sqrt(self.level) * max(self.cutoff - lo, 0.0)

    def factor_tail_inverse(self, mass):
        if self.level == 0.0:
            return 0.0
        x = self.cutoff - mass / math.sqrt(self.level)
        return min(max(x, 0.0), self.cutoff)

    def trunc(self, eps):
        # Compact support: the support edge loses nothing.
        return self.cutoff

    def dilated(self, c: float) -> "UniformBlockGraphon":
        return UniformBlockGraphon(level=self.level, cutoff=self.cutoff * c)


@dataclass(frozen=True, eq=False)
class PixelGraphon:
    """Step-function graphon: an n x n symmetric matrix of cell values.

    Cell (i, j) covers [i*w, (i+1)*w) x [j*w, (j+1)*w) for w = cell_width;
    the function is zero outside [0, n*w)^2.  This is both a model input
    (load a matrix, generate graphs from it) and the value of the empirical
    estimators.
    """

    matrix: np.ndarray
    cell_width: float

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ConfigError("pixel matrix must be square")
        if m.size and (m.min() < 0.0 or m.max() > 1.0):
            raise ConfigError("pixel matrix entries must lie in [0, 1]")
        if not np.array_equal(m, m.T):
            raise ConfigError("pixel matrix must be symmetric")
        if not self.cell_width > 0:
            raise ConfigError("pixel cell width must be positive")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "cell_width", float(self.cell_width))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def support_edge(self) -> float:
        return self.n * self.cell_width

    def eval(self, x, y):
        x = _as_float_array(x)
        y = _as_float_array(y)
        ix = np.floor(x / self.cell_width).astype(np.int64)
        iy = np.floor(y / self.cell_width).astype(np.int64)
        ok = (x >= 0) & (y >= 0) & (ix < self.n) & (iy < self.n)
        out = np.zeros(np.broadcast(x, y).shape)
        ixc = np.clip(ix, 0, max(self.n - 1, 0))
        iyc = np.clip(iy, 0, max(self.n - 1, 0))
        if self.n:
            vals = self.matrix[ixc, iyc]
            out = np.where(ok, vals, 0.0)
        if out.ndim == 0:
            return float(out)
        return out

    def l1(self) -> float:
        return self.cell_width**2 * float(self.matrix.sum())

    def marginal(self, x):
        x = _as_float_array(x)
        ix = np.floor(x / self.cell_width).astype(np.int64)
        ok = (x >= 0) & (ix < self.n)
        row = self.matrix.sum(axis=1) * self.cell_width
        out = np.where(ok, row[np.clip(ix, 0, max(self.n - 1, 0))], 0.0)
        if out.ndim == 0:
            return float(out)
        return out

    def trunc(self, eps):
        return self.support_edge

    def dilated(self, c: float) -> "PixelGraphon":
        return PixelGraphon(self.matrix, self.cell_width * c)

    def __eq__(self, other):
        if not isinstance(other, PixelGraphon):
            return NotImplemented
        return self.cell_width == other.cell_width and np.array_equal(
            self.matrix, other.matrix
        )

    def __repr__(self):
        return f"PixelGraphon(n={self.n}, cell_width={self.cell_width!r})"


# ---------------------------------------------------------------------------
# Star intensities


@dataclass(frozen=True)
class ZeroStar:
    """The identically-zero star intensity."""

    def eval(self, x):
        return np.zeros_like(_as_float_array(x))

    def l1(self) -> float:
        return 0.0

    def trunc(self, eps) -> float:
        return 0.0

    def dilated(self, c: float) -> "ZeroStar":
        return self


@dataclass(frozen=True)
class ExpStar:
    """S(x) = amplitude * exp(-rate * (x + shift))."""

    amplitude: float = 1.0
    rate: float = 1.0
    shift: float = 0.0

    def __post_init__(self):
        if not self.amplitude >= 0 or not self.rate > 0 or not self.shift >= 0:
            raise ConfigError("exp star requires amplitude, shift >= 0 and rate > 0")

    def eval(self, x):
        return self.amplitude * np.exp(-self.rate * (_as_float_array(x) + self.shift))

    def l1(self) -> float:
        return self.amplitude * math.exp(-self.rate * self.shift) / self.rate

    def trunc(self, eps) -> float:
        if eps <= 0:
            raise ValueError("truncation budget must be positive")
        norm = self.l1()
        if norm <= eps:
            return 0.0
        return math.log(norm / eps) / self.rate

    def dilated(self, c: float) -> "ExpStar":
        return ExpStar(
            amplitude=self.amplitude * c, rate=self.rate / c, shift=self.shift * c
        )


@dataclass(frozen=True)
class UniformStar:
    """S(x) = height * 1[x <= cutoff]."""

    height: float
    cutoff: float

    def __post_init__(self):
        if not self.height >= 0 or not self.cutoff > 0:
            raise ConfigError("uniform star requires height >= 0 and cutoff > 0")

    def eval(self, x):
        return self.height * (_as_float_array(x) <= self.cutoff)

    def l1(self) -> float:
        return self.height * self.cutoff

    def trunc(self, eps) -> float:
        return self.cutoff

    def dilated(self, c: float) -> "UniformStar":
        return UniformStar(height=self.height * c, cutoff=self.cutoff * c)


# ---------------------------------------------------------------------------
# The triple


@dataclass(frozen=True)
class Graphex:
    """Parameter triple (isolated-edge rate, star intensity, graphon)."""

    isolated_rate: float = 0.0
    star: object = field(default_factory=ZeroStar)
    graphon: object = field(default_factory=ZeroGraphon)

    def __post_init__(self):
        if not self.isolated_rate >= 0:
            raise ConfigError("isolated-edge rate must be nonnegative")

    def nontrivial(self) -> bool:
        return self.isolated_rate + self.star.l1() + self.graphon.l1() > 0.0

    def dilated(self, c: float) -> "Graphex":
        """The c-dilation: rate scales by c^2, star and graphon rescale by c."""
        if not c > 0:
            raise ValueError("dilation factor must be positive")
        try:
            star = self.star.dilated(c)
            graphon = self.graphon.dilated(c)
        except AttributeError as exc:
            raise NotDilatableError(f"component cannot represent its dilation: {exc}") from None
        return Graphex(
            isolated_rate=self.isolated_rate * c * c,
            star=star,
            graphon=graphon,
        )


# ---------------------------------------------------------------------------
# Family registries (used by the config loader and the CLI)


def _build_exp_product(params):
    if len(params) > 1:
        raise ConfigError("exp-product takes at most one parameter (rate)")
    return ExpProductGraphon(rate=params[0] if params else 1.0)


def _build_inverse_power(params):
    if not params or len(params) > 3:
        raise ConfigError("inverse-power-product takes 1-3 parameters (a, b, scale)")
    a = params[0]
    b = params[1] if len(params) > 1 else a
    if a != b:
        # W(x,y) = (x+1)^-a (y+1)^-b is asymmetric unless a == b.
        raise ConfigError("inverse-power-product requires equal exponents")
    scale = params[2] if len(params) > 2 else 1.0
    return InversePowerGraphon(power=a, scale=scale)


def _build_uniform_block(params):
    if len(params) != 2:
        raise ConfigError("compact-uniform takes two parameters (level, cutoff)")
    return UniformBlockGraphon(level=params[0], cutoff=params[1])


def _build_exp_star(params):
    if len(params) > 3:
        raise ConfigError("exp star takes at most three parameters (amplitude, rate, shift)")
    amp = params[0] if len(params) > 0 else 1.0
    rate = params[1] if len(params) > 1 else 1.0
    shift = params[2] if len(params) > 2 else 0.0
    return ExpStar(amplitude=amp, rate=rate, shift=shift)


def _build_uniform_star(params):
    if len(params) != 2:
        raise ConfigError("uniform star takes two parameters (height, cutoff)")
    return UniformStar(height=params[0], cutoff=params[1])


GRAPHON_FAMILIES = {
    "exp-product": _build_exp_product,
    "inverse-power-product": _build_inverse_power,
    "compact-uniform": _build_uniform_block,
}

STAR_FAMILIES = {
    "exp": _build_exp_star,
    "uniform": _build_uniform_star,
}


def graphon_from_family(name: str, params) -> object:
    try:
        builder = GRAPHON_FAMILIES[name]
    except KeyError:
        raise ConfigError(f"unknown graphon family {name!r}") from None
    return builder([float(p) for p in params])


def star_from_family(name: str, params) -> object:
    try:
        builder = STAR_FAMILIES[name]
    except KeyError:
        raise ConfigError(f"unknown star family {name!r}") from None
    return builder([float(p) for p in params])

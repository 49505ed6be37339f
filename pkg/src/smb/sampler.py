"""Random variates for the catalog laws and Kolmogorov-Smirnov testing.

Reproducibility: a request for ``n`` variates with integer ``seed`` is cut
into chunks of :data:`CHUNK` draws; chunk ``i`` uses a PCG64 generator
seeded by ``SeedSequence(entropy=seed, spawn_key=(i,))``.  The result
depends only on ``(seed, n)`` and the chunks may be generated in any order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.stats import kstwo

from .errors import DomainError, UnsupportedParameter
from .measures import Measure, TransformDefined

CHUNK = 65536
PI = np.pi


def chunk_rng(seed: int, i: int) -> np.random.Generator:
    """Generator for chunk ``i`` of a request seeded by ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=int(seed), spawn_key=(i,))))


def chunked(draw: Callable[[int, np.random.Generator], np.ndarray], n: int, seed: int) -> np.ndarray:
    """Concatenate ``draw(k, rng)`` over the chunks of an ``n``-sample request."""
    n = int(n)
    if n < 1:
        raise DomainError("sample size must be at least 1")
    if seed is None:
        raise DomainError("a seed is required")
    out = []
    for i, start in enumerate(range(0, n, CHUNK)):
        k = min(CHUNK, n - start)
        out.append(np.asarray(draw(k, chunk_rng(seed, i)), dtype=float))
    return np.concatenate(out)


@dataclass(frozen=True)
class SampleBatch:
    values: np.ndarray
    source: str
    seed: int
    size: int

    def __post_init__(self):
        if self.size < 1 or self.values.size != self.size:
            raise DomainError("sample batch size mismatch")
        if np.any(np.diff(self.values) < 0):
            raise DomainError("sample batch values must be sorted")

    @classmethod
    def build(cls, values, source, seed):
        v = np.sort(np.asarray(values, dtype=float))
        return cls(v, source, int(seed), int(v.size))


# ---------------------------------------------------------------------------
# variate generators taking an explicit Generator


def positive_stable_variates(alpha: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Positive stable variates with Laplace transform ``exp(-s**alpha)`` (Kanter)."""
    if not 0 < alpha < 1:
        raise DomainError("positive stable laws need alpha in (0, 1)")
    u = rng.uniform(0.0, PI, n)
    e = rng.standard_exponential(n)
    a = alpha
    return (np.sin(a * u) / np.sin(u) ** (1 / a)) * (np.sin((1 - a) * u) / e) ** ((1 - a) / a)


def cauchy_variates(rho: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Variates of the Cauchy law with location ``-cos(rho pi)`` and scale ``sin(rho pi)``."""
    if not 0 <= rho <= 1:
        raise DomainError("rho outside [0, 1]")
    if rho in (0.0, 1.0):
        return np.full(n, -np.cos(rho * PI))
    return -np.cos(rho * PI) + np.sin(rho * PI) * rng.standard_cauchy(n)


def boolean_stable_variates(alpha: float, rho: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Ratio of two independent positive stables, times a Cauchy variate when ``rho != 1``."""
    if not (0 < alpha <= 1 and 0 <= rho <= 1):
        raise DomainError("the ratio construction needs alpha in (0, 1] and rho in [0, 1]")
    if alpha == 1:
        r = np.ones(n)
    else:
        r = positive_stable_variates(alpha, n, rng) / positive_stable_variates(alpha, n, rng)
    if rho == 1:
        return r
    return r * cauchy_variates(rho, n, rng)


def classical_stable_variates(alpha: float, rho: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Strictly stable variates as a positive stable scale times a Cauchy variate."""
    if not 0 < alpha <= 1:
        raise UnsupportedParameter("classical stable sampling is available for alpha <= 1")
    if alpha == 1:
        return cauchy_variates(rho, n, rng)
    s = positive_stable_variates(alpha, n, rng)
    return s if rho == 1 else s * cauchy_variates(rho, n, rng)


# ---------------------------------------------------------------------------
# seeded front ends


def sample_positive_stable(alpha: float, n: int, seed: int) -> SampleBatch:
    v = chunked(lambda k, g: positive_stable_variates(alpha, k, g), n, seed)
    return SampleBatch.build(v, f"positive_stable({alpha})", seed)


def sample_boolean_stable(pair, n: int, seed: int) -> SampleBatch:
    a, r = (pair.alpha, pair.rho) if hasattr(pair, "alpha") else pair
    v = chunked(lambda k, g: boolean_stable_variates(a, r, k, g), n, seed)
    return SampleBatch.build(v, f"boolean_stable({a}, {r})", seed)


def sample_measure(m: Measure, n: int, seed: int) -> SampleBatch:
    """Seeded draws from any measure with a sampler or a tabulated density."""
    if isinstance(m, TransformDefined) and m._grid is None:
        raise UnsupportedParameter("recover a grid before sampling a transform-defined measure")
    try:
        v = chunked(lambda k, g: m.sample(k, g), n, seed)
    except UnsupportedParameter:
        table = InverseCDFTable.from_measure(m)
        v = chunked(lambda k, g: table.sample(k, g), n, seed)
    return SampleBatch.build(v, repr(m), seed)


@dataclass
class InverseCDFTable:
    """Piecewise-linear inverse CDF built from atoms and density quadrature."""

    xs: np.ndarray
    cdf: np.ndarray

    @classmethod
    def from_measure(cls, m: Measure, nodes: int = 4000, q=None):
        pts = []
        for seg in m.segments():
            lo = seg.lo if np.isfinite(seg.lo) else -1e8
            hi = seg.hi if np.isfinite(seg.hi) else 1e8
            if lo >= 0:
                pts.append(np.geomspace(max(lo, 1e-10), hi, nodes))
            elif hi <= 0:
                pts.append(-np.geomspace(max(-hi, 1e-10), -lo, nodes))
            else:
                pts.append(np.linspace(lo, hi, nodes))
        pts.extend(np.array([x, x]) for x, _ in m.atoms)
        xs = np.unique(np.concatenate(pts)) if pts else np.array([])
        if xs.size < 2:
            raise UnsupportedParameter(f"{m!r} has nothing to tabulate")
        dens = m.density(xs)
        inc = 0.5 * (dens[1:] + dens[:-1]) * np.diff(xs)
        F = np.concatenate([[0.0], np.cumsum(inc)])
        for x, w in m.atoms:
            F[xs >= x] += w
        F /= F[-1]
        return cls(xs, F)

    def sample(self, n, rng):
        return np.interp(rng.random(n), self.cdf, self.xs)


# ---------------------------------------------------------------------------
# KS


@dataclass(frozen=True)
class KSResult:
    D: float
    p_value: float
    n: int


def ks_stat(batch, cdf: Callable) -> KSResult:
    """One-sample KS distance of a sorted batch (or array) from ``cdf``."""
    v = batch.values if isinstance(batch, SampleBatch) else np.sort(np.asarray(batch, dtype=float))
    n = v.size
    F = np.asarray(cdf(v), dtype=float)
    i = np.arange(1, n + 1)
    D = float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))
    return KSResult(D, float(kstwo.sf(D, n)), n)


def ks_threshold(n: int, level: float = 1e-3) -> float:
    """KS distance exceeded with probability ``level`` under the null."""
    return float(kstwo.isf(level, n))


def ks_two_sample(a, b) -> float:
    a, b = np.sort(np.asarray(a, float)), np.sort(np.asarray(b, float))
    grid = np.concatenate([a, b])
    Fa = np.searchsorted(a, grid, side="right") / a.size
    Fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(Fa - Fb)))


__all__ = [
    "CHUNK", "chunk_rng", "chunked", "SampleBatch", "positive_stable_variates", "cauchy_variates",
    "boolean_stable_variates", "classical_stable_variates", "sample_positive_stable",
    "sample_boolean_stable", "sample_measure", "InverseCDFTable", "KSResult", "ks_stat",
    "ks_threshold", "ks_two_sample",
]

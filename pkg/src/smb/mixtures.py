"""Scale mixtures of Boolean stable laws and the convolutions acting on them.

A scale mixture is the law of ``X Y`` with ``X ~ mu**(1/alpha)`` on
``[0, inf)`` independent of ``Y ~ b_{alpha,rho}``.  Its eta transform is
``eta_mu(-(e^{i rho pi} z)**alpha)``, which makes Boolean convolution and
monotone multiplicative convolution act on the mixing measure alone.

S-transforms of the form ``c (-z)**a (1+z)**b`` cover every catalog family
that enters free multiplicative convolution here, so products of such
families reduce to exponent arithmetic (:class:`SForm`).
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import DomainError, UnsupportedParameter
from .measures import (
    Atomic, Measure, ScaleMixture, Segment, TransformDefined, delta, dilate,
    integrate_segment, pushforward_power,
)
from .sectors import ppow
from .stable_laws import (
    AdmissiblePair, BooleanStable, FreeStable, MarchenkoPastur, StableFamily,
    boolean_stable, free_stable,
)
from .transforms import eta as eta_of, eta_probe

PI = np.pi


# ---------------------------------------------------------------------------
# scale mixtures


@dataclass(frozen=True)
class MixtureSpec:
    """Mixing measure ``mu`` on ``[0, inf)`` and Boolean stable index.

    The mixture is ``mu**(1/alpha) (.) b_{alpha,rho}``; with ``raw=True`` the
    mixing measure is used as given, i.e. ``mu`` is already the law of the
    scale factor.
    """

    mixing: Measure
    pair: AdmissiblePair
    raw: bool = False

    def __post_init__(self):
        if self.mixing.support_sign != "pos":
            raise DomainError("mixing measure must live on [0, inf)")
        if not isinstance(self.pair, AdmissiblePair):
            raise DomainError("pair must be an AdmissiblePair")

    @classmethod
    def of(cls, mixing, alpha, rho, raw=False):
        return cls(mixing, AdmissiblePair(float(alpha), float(rho)), raw)

    @property
    def scale_law(self) -> Measure:
        """Law of the scale factor ``X``."""
        if self.raw:
            return self.mixing
        return pushforward_power(self.mixing, 1.0 / self.pair.alpha)

    @property
    def eta_mixing(self) -> Measure:
        """Measure whose eta is composed with the stable eta."""
        if self.raw:
            return pushforward_power(self.mixing, self.pair.alpha)
        return self.mixing


def _support_sign(pair: AdmissiblePair) -> str:
    if pair.alpha <= 1 and pair.rho == 1:
        return "pos"
    if pair.alpha <= 1 and pair.rho == 0:
        return "neg"
    return "both"


def mixture_density(spec: MixtureSpec, x, q=None):
    """Density of the absolutely continuous part of the mixture at ``x != 0``.

    The atom of the mixing measure at 0 carries no density, so the result
    integrates to ``1 - mu({0})``.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x == 0):
        raise DomainError("mixture density is evaluated away from 0")
    law = spec.scale_law
    base = boolean_stable(spec.pair.alpha, spec.pair.rho)
    if isinstance(law, Atomic):
        return ScaleMixture(law, base).density(x)

    def f(s):
        if s <= 0:
            return np.zeros_like(x)
        return base.density(x / s) / s

    # |x| is where the integrand in s changes regime
    pts = tuple(float(abs(v)) for v in x if abs(v) > 0)[:50]
    return np.asarray(law.integrate(f, q, points=pts), dtype=float)


def mixture_eta(spec: MixtureSpec, z, q=None, closed: bool = True):
    """Eta transform of the mixture at ``z`` in the lower half-plane.

    Real ``z`` is allowed on the half-line where ``e^{i rho pi} z > 0``
    (``z < 0`` for ``rho = 1``, ``z > 0`` for ``rho = 0``).
    """
    z = np.asarray(z, dtype=complex)
    a, r = spec.pair.alpha, spec.pair.rho
    real_ok = (z.imag == 0) & (((r == 1) & (z.real < 0)) | ((r == 0) & (z.real > 0)))
    if np.any((z.imag > 0) | ((z.imag == 0) & ~real_ok)):
        raise DomainError("mixture eta is evaluated on the open lower half-plane")
    u = np.where(real_ok, np.abs(z) + 0j, np.exp(1j * r * PI) * z)
    w = -ppow(u, a)
    return eta_of(spec.eta_mixing, w, q, closed)


class BooleanStableMixture(Measure):
    """Scale mixture with a non-atomic mixing measure.

    The eta transform is the composition formula; the density is a
    quadrature over the mixing measure.
    """

    def __init__(self, spec: MixtureSpec, q=None):
        self.spec, self.q = spec, q
        self.support_sign = _support_sign(spec.pair)
        self.symmetric = spec.pair.rho == 0.5
        self._base = boolean_stable(spec.pair.alpha, spec.pair.rho)

    def __repr__(self):
        return f"BooleanStableMixture({self.spec.mixing!r}, {self.spec.pair})"

    @property
    def atoms(self):
        z = self.spec.mixing.zero_mass
        return ((0.0, z),) if z else ()

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        nz = x != 0
        if np.any(nz):
            out[nz] = mixture_density(self.spec, x[nz], self.q)
        return out

    def integrate(self, f, q=None, points=()):
        law, base = self.spec.scale_law, self._base
        return law.integrate(
            lambda s: np.asarray(base.integrate(lambda y: f(s * y), q)) if s > 0 else np.asarray(f(0.0)),
            q)

    def moment_range(self):
        lo, hi = self._base.moment_range()
        mlo, mhi = self.spec.scale_law.moment_range()
        lo, hi = max(lo, mlo), min(hi, mhi)
        if self.spec.mixing.zero_mass:
            lo = max(lo, 0.0)
        return (lo, hi)

    def eta_closed(self, z):
        z = np.asarray(z, dtype=complex)
        up = z.imag > 0
        out = np.empty(z.shape, dtype=complex)
        if np.any(~up):
            out[~up] = mixture_eta(self.spec, z[~up], self.q)
        if np.any(up):
            out[up] = np.conj(mixture_eta(self.spec, np.conj(z[up]), self.q))
        return out

    def cauchy_closed(self, z):
        z = np.asarray(z, dtype=complex)
        return 1.0 / (z * (1.0 - self.eta_closed(1.0 / z)))

    def sample(self, n, rng):
        return self.spec.scale_law.sample(n, rng) * self._base.sample(n, rng)


def mixture_measure(spec: MixtureSpec, q=None) -> Measure:
    """The mixture as a measure; exact weighted dilations for atomic mixing."""
    law = spec.scale_law
    base = boolean_stable(spec.pair.alpha, spec.pair.rho)
    if isinstance(law, Atomic):
        if law.atoms == ((0.0, 1.0),):
            return delta(0.0)
        if len(law.atoms) == 1:
            return dilate(base, law.atoms[0][0])
        return ScaleMixture(law, base)
    return BooleanStableMixture(spec, q)


# ---------------------------------------------------------------------------
# Boolean convolution and monotone multiplicative convolution


def _eta_fn(m: Measure):
    return lambda z: eta_of(m, z)


def _combined_sign(m1, m2):
    if m1.support_sign == m2.support_sign:
        return m1.support_sign
    return "both"


def boolean_convolve(m1: Measure, m2: Measure) -> Measure:
    """Boolean convolution: eta transforms add."""
    e1, e2 = _eta_fn(m1), _eta_fn(m2)
    return TransformDefined("eta", lambda z: e1(z) + e2(z), _combined_sign(m1, m2),
                            m1.symmetric and m2.symmetric, "boolean convolution")


def boolean_power(m: Measure, t: float) -> Measure:
    """Boolean convolution power: eta is multiplied by ``t >= 0``."""
    t = float(t)
    if not (np.isfinite(t) and t >= 0):
        raise DomainError("Boolean power needs t >= 0")
    if t == 0:
        return delta(0.0)
    if t == 1:
        return m
    e = _eta_fn(m)
    return TransformDefined("eta", lambda z: t * e(z), m.support_sign, m.symmetric,
                            f"boolean power {t}")


def _probe_points():
    r = np.geomspace(1e-3, 1e3, 25)
    th = np.linspace(-PI + 0.05, -0.05, 9)
    return (r[:, None] * np.exp(1j * th[None, :])).ravel()


def monotone_mult_convolve(m1: Measure, m2: Measure) -> Measure:
    """Multiplicative monotone convolution: ``eta = eta_1 o eta_2``.

    ``m1`` must live on ``[0, inf)`` and differ from ``delta_0``.
    """
    if m1.support_sign != "pos":
        raise DomainError("left factor of the monotone product must live on [0, inf)")
    if m1.atoms == ((0.0, 1.0),):
        raise DomainError("left factor of the monotone product must differ from delta_0")
    e1, e2 = _eta_fn(m1), _eta_fn(m2)
    inner = e2(_probe_points())
    if np.any((np.abs(inner.imag) <= 1e-14 * np.abs(inner)) & (inner.real > 0)):
        raise DomainError("eta of the right factor meets the positive half-line")

    def comp(z):
        return e1(e2(z))

    eta_probe(lambda z: _lower(comp, z))
    sign = m2.support_sign
    return TransformDefined("eta", comp, sign, m2.symmetric, "monotone product")


def _lower(fn, z):
    z = np.asarray(z, dtype=complex)
    up = z.imag > 0
    out = np.empty(z.shape, dtype=complex)
    if np.any(~up):
        out[~up] = fn(z[~up])
    if np.any(up):
        out[up] = np.conj(fn(np.conj(z[up])))
    return out


# ---------------------------------------------------------------------------
# S-transform algebra for free multiplicative convolution


def _clean(c: complex) -> complex:
    re, im = c.real, c.imag
    if abs(re) < 1e-15 * max(1.0, abs(c)):
        re = 0.0
    if abs(im) < 1e-15 * max(1.0, abs(c)):
        im = 0.0
    return complex(re, im)


@dataclass(frozen=True)
class SForm:
    """S-transform ``c (-z)**a (1+z)**b`` on ``(-1, 0)``."""

    c: complex
    a: float
    b: float

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        return self.c * (-z) ** self.a * (1.0 + z) ** self.b

    def __mul__(self, other: "SForm") -> "SForm":
        return SForm(_clean(self.c * other.c), self.a + other.a, self.b + other.b)

    def power(self, t: float) -> "SForm":
        """S-transform of the ``t``-th free multiplicative power (``c`` real positive)."""
        if not (abs(self.c.imag) == 0 and self.c.real > 0):
            raise UnsupportedParameter("free powers need a measure on [0, inf)")
        return SForm(complex(self.c.real ** t), t * self.a, t * self.b)

    def inverse(self) -> "SForm":
        """S-transform of the law of ``1/X``."""
        return SForm(_clean(1.0 / self.c), -self.b, -self.a)

    def sym_sqrt(self) -> "SForm":
        """S-transform of the symmetric law whose square has this S-transform."""
        # adding 0.0 clears a signed zero, which would select the lower branch
        c = -self.c
        return SForm(_clean(cmath.sqrt(complex(c.real + 0.0, c.imag + 0.0))), (self.a - 1) / 2, (self.b + 1) / 2)

    def square(self) -> "SForm":
        """S-transform of ``X**2`` for a symmetric ``X`` with this S-transform."""
        return SForm(_clean(-self.c * self.c), 2 * self.a + 1, 2 * self.b - 1)

    @property
    def positive(self) -> bool:
        return self.c.imag == 0 and self.c.real > 0

    def close(self, other: "SForm", tol: float = 1e-12) -> bool:
        return (abs(self.c - other.c) <= tol * max(1, abs(self.c)) and abs(self.a - other.a) <= tol
                and abs(self.b - other.b) <= tol)


_RHO_OF_C = ((1 + 0j, 1.0), (1j, 0.5), (-1 + 0j, 0.0))


@dataclass(frozen=True)
class CatalogMatch:
    """A catalog law identified from its S-transform."""

    family: str
    params: dict = field(default_factory=dict)
    sform: SForm = None

    def measure(self) -> Measure:
        p = self.params
        if self.family == "delta":
            return delta(p["at"])
        if self.family == "boolean_stable":
            return boolean_stable(p["alpha"], p["rho"])
        if self.family == "free_stable":
            return free_stable(p["alpha"], p["rho"])
        if self.family == "mp_power" and p["s"] == 1:
            return MarchenkoPastur()
        raise UnsupportedParameter(f"no measure representation for {self.family} {p}")


@dataclass(frozen=True)
class SProduct:
    """Product of S-transforms not matching a catalog family; evaluation only."""

    sform: SForm

    def __call__(self, z):
        return self.sform(z)


def mp_power(s: float) -> SForm:
    """S-transform of the ``s``-th free power of the free Poisson law."""
    if s < 0:
        raise DomainError("free Poisson powers need s >= 0")
    return SForm(1 + 0j, 0.0, -float(s))


def stable_sform(kind: str, alpha: float, rho: float) -> SForm:
    """S-transform of a Boolean or free stable law with ``rho`` in ``{0, 1/2, 1}``."""
    if rho not in (0.0, 0.5, 1.0):
        raise UnsupportedParameter("S-transforms in closed form need rho in {0, 1/2, 1}")
    AdmissiblePair(float(alpha), float(rho))
    c = _clean(-cmath.exp(-1j * rho * PI))
    e = (1 - alpha) / alpha
    if kind == "boolean":
        return SForm(c, e, -e)
    if kind == "free":
        return SForm(c, e, 0.0)
    raise UnsupportedParameter(f"no S-form for {kind} stable laws")


def sform_of(obj) -> SForm:
    """S-form of a catalog object: SForm, StableFamily, or catalog measure."""
    if isinstance(obj, SForm):
        return obj
    if isinstance(obj, CatalogMatch):
        return obj.sform
    if isinstance(obj, StableFamily):
        return stable_sform(obj.kind, obj.pair.alpha, obj.pair.rho)
    if isinstance(obj, BooleanStable):
        return stable_sform("boolean", obj.alpha, obj.rho)
    if isinstance(obj, FreeStable):
        return stable_sform("free", obj.alpha, obj.rho)
    if isinstance(obj, MarchenkoPastur):
        return mp_power(1.0)
    if isinstance(obj, Atomic) and len(obj.atoms) == 1 and obj.atoms[0][0] > 0:
        return SForm(1.0 / obj.atoms[0][0] + 0j, 0.0, 0.0)
    raise UnsupportedParameter(f"{obj!r} has no closed S-transform in the catalog")


def match_sform(s: SForm, tol: float = 1e-12):
    """Identify a catalog law from its S-form, or return None."""
    rho = next((r for c, r in _RHO_OF_C if abs(s.c - c) <= tol), None)
    if abs(s.a) <= tol and abs(s.b) <= tol and s.positive:
        return CatalogMatch("delta", {"at": 1.0 / s.c.real}, s)
    if abs(s.a) <= tol and s.b < 0 and abs(s.c - 1) <= tol:
        return CatalogMatch("mp_power", {"s": -s.b}, s)
    if rho is None:
        return None
    alpha = 1.0 / (1.0 + s.a) if s.a > -1 else None
    if alpha is None:
        return None
    try:
        AdmissiblePair(alpha, rho)
    except DomainError:
        return None
    if abs(s.a + s.b) <= tol:
        return CatalogMatch("boolean_stable", {"alpha": alpha, "rho": rho}, s)
    if abs(s.b) <= tol:
        return CatalogMatch("free_stable", {"alpha": alpha, "rho": rho}, s)
    return None


def free_mult_families(f1, f2):
    """Free multiplicative convolution of two catalog objects.

    At least one factor must live on ``[0, inf)``.  Returns a
    :class:`CatalogMatch` when the S-product is a catalog family and an
    :class:`SProduct` otherwise.
    """
    s1, s2 = sform_of(f1), sform_of(f2)
    if not (s1.positive or s2.positive):
        raise UnsupportedParameter("free multiplicative convolution needs a factor on [0, inf)")
    prod = s1 * s2
    return match_sform(prod) or SProduct(prod)


# ---------------------------------------------------------------------------
# continuous Boolean convolution


@dataclass(frozen=True)
class BooleanSigma:
    """Finite atomic measure on ``(0, 1]`` indexing a continuum of Boolean stable laws."""

    atoms: tuple

    def __post_init__(self):
        pts = tuple((float(a), float(w)) for a, w in self.atoms)
        if not pts:
            raise DomainError("sigma must have at least one atom")
        for a, w in pts:
            if not (0 < a <= 1) or not (w >= 0) or not np.isfinite(w):
                raise DomainError("sigma atoms need locations in (0, 1] and weights >= 0")
        if sum(w for _, w in pts) == 0:
            raise DomainError("sigma must be nonzero")
        object.__setattr__(self, "atoms", pts)

    def dilate(self, k: float) -> "BooleanSigma":
        """Push the locations forward by ``alpha -> k alpha``."""
        return BooleanSigma(tuple((k * a, w) for a, w in self.atoms))


def continuous_boolean_eta(sigma: BooleanSigma, z):
    """``-sum_k w_k (-z)**alpha_k``, principal powers, ``z`` off ``[0, inf)``."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape, dtype=complex)
    for a, w in sigma.atoms:
        out = out - w * ppow(-z, a)
    return out


def continuous_boolean_density(sigma: BooleanSigma, x):
    """Density of ``b(sigma)`` at ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("the density of b(sigma) is evaluated at x > 0")
    A = np.zeros_like(x)
    C = np.zeros_like(x)
    for a, w in sigma.atoms:
        A += w * np.sin(a * PI) * x ** (1 - a)
        C += w * np.cos(a * PI) * x ** (1 - a)
    return A / ((x + C) ** 2 + A ** 2) / PI


class ContinuousBoolean(Measure):
    """The law ``b(sigma)`` on ``[0, inf)``."""

    support_sign = "pos"

    def __init__(self, sigma: BooleanSigma):
        self.sigma = sigma
        alphas = [a for a, w in sigma.atoms if w > 0]
        self._amin, self._amax = min(alphas), max(alphas)

    def __repr__(self):
        return f"ContinuousBoolean({self.sigma.atoms})"

    @property
    def atoms(self):
        if all(a == 1 for a, w in self.sigma.atoms if w > 0):
            return ((float(sum(w for _, w in self.sigma.atoms)), 1.0),)
        return ()

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        m = x > 0
        if self.atoms:
            return out
        out[m] = continuous_boolean_density(self.sigma, x[m])
        return out

    def segments(self):
        if self.atoms:
            return []
        e0 = self._amax - 1 if self._amax < 1 else 0.0
        pts = tuple(float(w) for a, w in self.sigma.atoms if a == 1 and w > 0)
        return [Segment(0.0, np.inf, e0, -1.0 - self._amin, pts)]

    def moment_range(self):
        return (-self._amax if self._amax < 1 else -1.0, self._amin)

    def eta_closed(self, z):
        return continuous_boolean_eta(self.sigma, z)

    def cauchy_closed(self, z):
        z = np.asarray(z, dtype=complex)
        return 1.0 / (z * (1.0 - continuous_boolean_eta(self.sigma, 1.0 / z)))


def binomial_sigma(n: int, alpha: float) -> BooleanSigma:
    """``sum_{k=1}^n C(n,k) delta_{k alpha / n}``."""
    return BooleanSigma(tuple((k * alpha / n, float(comb(n, k))) for k in range(1, n + 1)))


__all__ = [
    "MixtureSpec", "mixture_density", "mixture_eta", "mixture_measure", "BooleanStableMixture",
    "boolean_convolve", "boolean_power", "monotone_mult_convolve", "SForm", "CatalogMatch",
    "SProduct", "mp_power", "stable_sform", "sform_of", "match_sform", "free_mult_families",
    "BooleanSigma", "continuous_boolean_eta", "continuous_boolean_density", "ContinuousBoolean",
    "binomial_sigma", "integrate_segment",
]

"""Stable families and the other closed-form catalog laws.

Conventions: ``alpha`` is the stability index and ``rho`` the asymmetry
parameter, so that the Boolean stable law has eta transform
``-(exp(i rho pi) z)**alpha`` on the lower half-plane, the free stable law
has that function as free cumulant transform, the classical one as
classical cumulant transform, and the monotone one has reciprocal Cauchy
transform ``(z**alpha + exp(i rho alpha pi))**(1/alpha)`` on the
``(0, 2 pi)`` branch.  All four coincide with the Cauchy law ``c_rho`` at
``alpha = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec
from scipy.optimize import brentq

from .errors import DomainError, NumericalFailure, UnsupportedParameter
from .measures import (
    Atomic, FamilyDensity, Measure, QuadratureSpec, Segment, register_family,
)
from .sectors import UPPER_CUT, ppow, sector_pow_array

PI = np.pi
KINDS = ("classical", "free", "boolean", "monotone")


@dataclass(frozen=True)
class AdmissiblePair:
    alpha: float
    rho: float

    def __post_init__(self):
        a, r = self.alpha, self.rho
        if not (np.isfinite(a) and np.isfinite(r)):
            raise DomainError("alpha and rho must be finite")
        if 0 < a <= 1:
            if not 0 <= r <= 1:
                raise DomainError(f"rho={r} outside [0, 1]")
        elif 1 < a <= 2:
            if not (1 - 1 / a - 1e-15 <= r <= 1 / a + 1e-15):
                raise DomainError(f"rho={r} outside [1 - 1/alpha, 1/alpha] for alpha={a}")
        else:
            raise DomainError(f"alpha={a} outside (0, 2]")

    @property
    def beta(self) -> float:
        """``alpha / (1 - alpha)``."""
        if self.alpha >= 1:
            raise DomainError("beta needs alpha < 1")
        return self.alpha / (1 - self.alpha)

    @property
    def boundary_rho(self) -> bool:
        a, r = self.alpha, self.rho
        return a > 1 and (abs(r - 1 / a) < 1e-15 or abs(r - (1 - 1 / a)) < 1e-15)


@dataclass(frozen=True)
class StableFamily:
    kind: str
    pair: AdmissiblePair

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"stable kind must be one of {KINDS}")

    def measure(self) -> Measure:
        a, r = self.pair.alpha, self.pair.rho
        return {"boolean": boolean_stable, "free": free_stable,
                "monotone": monotone_stable, "classical": classical_stable}[self.kind](a, r)


def _pair(alpha, rho) -> AdmissiblePair:
    return alpha if isinstance(alpha, AdmissiblePair) else AdmissiblePair(float(alpha), float(rho))


def _eta_stable(z, alpha, rho):
    """``-(e^{i rho pi} z)**alpha`` on the closed lower half-plane, principal branch."""
    return -ppow(np.exp(1j * rho * PI) * np.asarray(z, dtype=complex), alpha)


def _conj_eval(fn, z):
    """Evaluate a lower-half-plane formula and extend by conjugate symmetry."""
    z = np.asarray(z, dtype=complex)
    up = z.imag > 0
    out = np.empty(z.shape, dtype=complex)
    out[~up] = fn(z[~up])
    out[up] = np.conj(fn(np.conj(z[up])))
    return out


# ---------------------------------------------------------------------------
# Cauchy


@register_family
class CauchyRho(FamilyDensity):
    family_name = "cauchy"

    def __init__(self, rho: float):
        rho = float(rho)
        if not 0 < rho < 1:
            raise DomainError("c_rho density needs rho in (0, 1); use cauchy_rho() for the atoms")
        super().__init__(rho=rho)
        self.rho = rho
        self.loc, self.scale = -np.cos(PI * rho), np.sin(PI * rho)
        self.symmetric = abs(rho - 0.5) < 1e-15

    def density(self, x):
        return cauchy_rho_density(self.rho, x)

    def segments(self):
        return [Segment(-np.inf, 0.0, -2.0, 0.0, (self.loc,)), Segment(0.0, np.inf, 0.0, -2.0, (self.loc,))]

    def moment_range(self):
        return (-1.0, 1.0)

    def cauchy_closed(self, z):
        # 1/(z + e^{i rho pi}) holds on the upper half-plane; below use the conjugate
        z = np.asarray(z, dtype=complex)
        e = np.exp(1j * PI * self.rho)
        return 1.0 / (z + np.where(z.imag >= 0, e, np.conj(e)))

    def eta_closed(self, z):
        return _conj_eval(lambda w: -np.exp(1j * PI * self.rho) * w, z)

    def cdf(self, x):
        return 0.5 + np.arctan((np.asarray(x, dtype=float) - self.loc) / self.scale) / PI

    def sample(self, n, rng):
        return self.loc + self.scale * rng.standard_cauchy(n)


def cauchy_rho(rho: float) -> Measure:
    """``c_rho``; the endpoints are the atoms ``delta_{-1}`` and ``delta_1``."""
    if rho == 0:
        return Atomic([(-1.0, 1.0)])
    if rho == 1:
        return Atomic([(1.0, 1.0)])
    return CauchyRho(rho)


def cauchy_rho_density(rho: float, x):
    if not 0 < rho < 1:
        raise DomainError("c_rho density needs rho in (0, 1)")
    x = np.asarray(x, dtype=float)
    s, c = np.sin(PI * rho), np.cos(PI * rho)
    return s / (PI * ((x + c) ** 2 + s ** 2))


# ---------------------------------------------------------------------------
# Boolean stable


@register_family
class BooleanStable(FamilyDensity):
    family_name = "boolean_stable"

    def __init__(self, alpha: float, rho: float):
        pair = _pair(alpha, rho)
        if pair.boundary_rho:
            raise UnsupportedParameter("Boolean stable law at boundary rho for alpha > 1 carries atoms")
        if pair.alpha == 1 and pair.rho in (0.0, 1.0):
            raise DomainError("b_{1,0} and b_{1,1} are point masses; use boolean_stable()")
        super().__init__(alpha=pair.alpha, rho=pair.rho)
        self.pair = pair
        self.alpha, self.rho = pair.alpha, pair.rho
        self.support_sign = "pos" if self.rho == 1 else ("neg" if self.rho == 0 else "both")
        self.symmetric = abs(self.rho - 0.5) < 1e-15

    def density(self, x):
        return boolean_density(self.pair, x)

    def segments(self):
        a = self.alpha
        e0 = a - 1.0
        pts = (-np.cos(PI * self.rho),) if a == 1 else ()
        segs = []
        if self.rho > 0:
            segs.append(Segment(0.0, np.inf, e0, -a - 1.0, tuple(p for p in pts if p > 0)))
        if self.rho < 1:
            segs.append(Segment(-np.inf, 0.0, -a - 1.0, e0, tuple(p for p in pts if p < 0)))
        return segs

    def moment_range(self):
        return (-self.alpha, self.alpha)

    def eta_closed(self, z):
        return _conj_eval(lambda w: _eta_stable(w, self.alpha, self.rho), z)

    def cauchy_closed(self, z):
        z = np.asarray(z, dtype=complex)
        return 1.0 / (z * (1.0 - self.eta_closed(1.0 / z)))

    def cdf(self, x):
        return boolean_cdf(self.pair, x)

    def sample(self, n, rng):
        from .sampler import boolean_stable_variates

        return boolean_stable_variates(self.alpha, self.rho, n, rng)


def boolean_stable(alpha: float, rho: float) -> Measure:
    """``b_{alpha, rho}`` as a measure (point masses at ``alpha = 1``, ``rho`` in {0, 1})."""
    pair = _pair(alpha, rho)
    if pair.alpha == 1 and pair.rho == 1:
        return Atomic([(1.0, 1.0)])
    if pair.alpha == 1 and pair.rho == 0:
        return Atomic([(-1.0, 1.0)])
    return BooleanStable(pair.alpha, pair.rho)


def boolean_density(pair, x, rho=None):
    """Density of ``b_{alpha, rho}`` at ``x != 0`` (array input allowed)."""
    pair = _pair(pair, rho) if rho is not None or not isinstance(pair, AdmissiblePair) else pair
    if pair.boundary_rho:
        raise UnsupportedParameter("Boolean stable law at boundary rho for alpha > 1 carries atoms")
    a, r = pair.alpha, pair.rho
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos, neg = x > 0, x < 0
    out[pos] = _half_density(x[pos], a, PI * r * a)
    out[neg] = _half_density(-x[neg], a, PI * (1 - r) * a)
    zero = x == 0
    if np.any(zero):
        if a == 1 and 0 < r < 1:
            out[zero] = cauchy_rho_density(r, 0.0)
        elif a < 1 and 0 < r < 1:
            out[zero] = np.inf
        elif a < 1:
            out[zero] = np.inf
    return out


def _half_density(u, a, theta):
    if np.sin(theta) == 0 or u.size == 0:
        return np.zeros_like(u)
    ua = u ** a
    return np.sin(theta) / PI * u ** (a - 1) / (ua * ua + 2 * ua * np.cos(theta) + 1)


def _half_mass_below(U, a, theta):
    """Mass of one half of the Boolean stable law on ``(0, U**(1/a)]``."""
    if np.sin(theta) <= 0:
        return np.zeros_like(U)
    return (np.arctan((U + np.cos(theta)) / np.sin(theta)) - (PI / 2 - theta)) / (PI * a)


def boolean_cdf(pair, x, rho=None):
    """Closed-form distribution function of ``b_{alpha, rho}``."""
    pair = _pair(pair, rho) if rho is not None or not isinstance(pair, AdmissiblePair) else pair
    a, r = pair.alpha, pair.rho
    x = np.asarray(x, dtype=float)
    th_p, th_n = PI * r * a, PI * (1 - r) * a
    neg_mass = _half_mass_below(np.array(np.inf), a, th_n) if np.sin(th_n) > 0 else 0.0
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = neg_mass + _half_mass_below(x[pos] ** a, a, th_p)
    out[~pos] = neg_mass - _half_mass_below((-x[~pos]) ** a, a, th_n)
    return np.clip(out, 0.0, 1.0)


# ---------------------------------------------------------------------------
# monotone stable


def _monotone_F(z, alpha, rho):
    """``(z**alpha + e^{i rho alpha pi})**(1/alpha)`` on the (0, 2 pi) branch, Im z >= 0."""
    z = np.asarray(z, dtype=complex)
    w = ppow(z, alpha) + np.exp(1j * rho * alpha * PI)
    return sector_pow_array(w, 1.0 / alpha, UPPER_CUT)


@register_family
class MonotoneStable(FamilyDensity):
    family_name = "monotone_stable"

    def __init__(self, alpha: float, rho: float):
        pair = _pair(alpha, rho)
        if pair.boundary_rho:
            raise UnsupportedParameter("monotone stable law at boundary rho for alpha > 1")
        if pair.alpha == 1 and pair.rho in (0.0, 1.0):
            raise DomainError("m_{1,0} and m_{1,1} are point masses")
        super().__init__(alpha=pair.alpha, rho=pair.rho)
        self.pair, self.alpha, self.rho = pair, pair.alpha, pair.rho
        self.support_sign = "pos" if self.rho == 1 else ("neg" if self.rho == 0 else "both")
        self.symmetric = abs(self.rho - 0.5) < 1e-15

    def F(self, z):
        """Reciprocal Cauchy transform on the closed upper half-plane."""
        z = np.asarray(z, dtype=complex)
        if self.rho == 0:
            # reflection of the rho = 1 law: F(z) = -F_1(-conj z) conjugated
            return -np.conj(_monotone_F(-np.conj(z), self.alpha, 1.0))
        return _monotone_F(z, self.alpha, self.rho)

    def density(self, x):
        return monotone_density(self.pair, x)

    def segments(self):
        a = self.alpha
        e0 = a if self.rho in (0.0, 1.0) else 0.0
        segs = []
        if self.rho > 0:
            segs.append(Segment(0.0, np.inf, e0, -a - 1.0))
        if self.rho < 1:
            segs.append(Segment(-np.inf, 0.0, -a - 1.0, e0))
        return segs

    def moment_range(self):
        return (-1.0, self.alpha)

    def cauchy_closed(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.empty(z.shape, dtype=complex)
        up = z.imag >= 0
        out[up] = 1.0 / self.F(z[up])
        out[~up] = np.conj(1.0 / self.F(np.conj(z[~up])))
        return out

    def eta_closed(self, z):
        z = np.asarray(z, dtype=complex)
        return 1.0 - z / self.cauchy_closed(1.0 / z)


def monotone_stable(alpha: float, rho: float) -> Measure:
    pair = _pair(alpha, rho)
    if pair.alpha == 1:
        return cauchy_rho(pair.rho)
    return MonotoneStable(pair.alpha, pair.rho)


def monotone_density(pair, x, rho=None):
    """``-Im(1/F(x + i0))/pi`` for the monotone stable law."""
    pair = _pair(pair, rho) if rho is not None or not isinstance(pair, AdmissiblePair) else pair
    a, r = pair.alpha, pair.rho
    x = np.asarray(x, dtype=float)
    if a == 1:
        return cauchy_rho_density(r, x)
    if r == 0:
        return monotone_density(AdmissiblePair(a, 1.0), -x)
    z = x.astype(complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        F = _monotone_F(np.where(x == 0, 1e-300, z), a, r)
        val = -np.imag(1.0 / F) / PI
    if not np.all(np.isfinite(val)):
        raise NumericalFailure("monotone density branch evaluation failed")
    return np.maximum(val, 0.0)


# ---------------------------------------------------------------------------
# free stable


def _free_param(th, a, rho):
    """Boundary parametrization: abscissa and density at angle ``th``."""
    s = np.sin((1 - a) * th + a * rho * PI)
    r = (s / np.sin(th)) ** (1 / a)
    x = r * np.sin(a * (rho * PI - th)) / s
    return x, np.sin(th) / (PI * r)


def _free_dx(th, a, rho, h=1e-30):
    # complex-step derivative; every function in the parametrization is analytic
    x, _ = _free_param(th + 1j * h, a, rho)
    return np.imag(x) / h


@register_family
class FreeStable(FamilyDensity):
    """Free stable law; density from an explicit parametrization of its boundary values.

    For ``theta`` in ``(0, pi)`` the points ``F^{-1}``-preimages of the real
    line are traced by ``r(theta) e^{i theta}`` with
    ``r = (sin((1-a) theta + a rho pi) / sin theta)**(1/a)``; the abscissa
    and density follow from the closed inverse of ``F``.
    """

    family_name = "free_stable"
    TH_EPS = 1e-12

    def __init__(self, alpha: float, rho: float):
        pair = _pair(alpha, rho)
        if pair.boundary_rho:
            raise UnsupportedParameter("free stable law at boundary rho for alpha > 1")
        if pair.alpha == 1:
            raise DomainError("f_{1,rho} is the Cauchy law; use free_stable()")
        super().__init__(alpha=pair.alpha, rho=pair.rho)
        self.pair, self.alpha, self.rho = pair, pair.alpha, pair.rho
        self.support_sign = "pos" if self.rho == 1 else ("neg" if self.rho == 0 else "both")
        self.symmetric = abs(self.rho - 0.5) < 1e-15
        lo_x, _ = _free_param(PI - self.TH_EPS, self.alpha, self.rho)
        self.left_edge = lo_x if self.rho == 1 else -np.inf
        hi_x, _ = _free_param(self.TH_EPS, self.alpha, self.rho)
        self.right_edge = hi_x if self.rho == 0 else np.inf
        self._table = None

    def theta_of(self, x):
        x = float(x)
        f = lambda t: _free_param(t, self.alpha, self.rho)[0] - x
        lo, hi = self.TH_EPS, PI - self.TH_EPS
        if f(lo) < 0 or f(hi) > 0:
            return None
        return brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)

    def density(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(x)
        for i, v in enumerate(x.ravel()):
            th = self.theta_of(v)
            if th is not None:
                out.flat[i] = _free_param(th, self.alpha, self.rho)[1]
        return out

    def integrate(self, f, q=None, points=()):
        q = QuadratureSpec.default() if q is None else q
        a, r = self.alpha, self.rho
        pts = sorted({t for t in (self.theta_of(p) for p in points) if t is not None})

        def g(th):
            x, p = _free_param(th, a, r)
            v = np.asarray(f(x)) * (p * abs(_free_dx(th, a, r)))
            return np.concatenate([v.real.ravel(), v.imag.ravel()]) if np.iscomplexobj(v) else v.ravel()

        probe = np.asarray(f(_free_param(1.0, a, r)[0]))
        res, err, info = quad_vec(g, 0.0, PI, epsabs=q.epsabs, epsrel=q.epsrel, limit=q.limit,
                                  points=pts or None, full_output=True)
        if info.status != 0:
            raise NumericalFailure("free stable quadrature did not converge", estimate=res,
                                   error=float(np.max(err)))
        if np.iscomplexobj(probe):
            n = res.size // 2
            res = res[:n] + 1j * res[n:]
        return res.reshape(probe.shape)

    def moment_range(self):
        return (-1.0, self.alpha)

    def cdf(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty_like(x)
        for i, v in enumerate(x.ravel()):
            if v <= self.left_edge:
                out.flat[i] = 0.0
                continue
            if v >= self.right_edge:
                out.flat[i] = 1.0
                continue
            th = self.theta_of(v)
            a, r = self.alpha, self.rho
            val, _ = quad_vec(lambda t: _free_param(t, a, r)[1] * abs(_free_dx(t, a, r)),
                              th, PI, epsabs=1e-13, epsrel=1e-11)
            out.flat[i] = val
        return out

    def sample(self, n, rng):
        # inverse CDF tabulated in the boundary angle, where the law is smooth
        if self._table is None:
            a, r = self.alpha, self.rho
            th = np.linspace(self.TH_EPS, PI - self.TH_EPS, 20001)
            w = _free_param(th, a, r)[1] * np.abs(_free_dx(th, a, r))
            mass = np.concatenate([[0.0], np.cumsum(0.5 * (w[1:] + w[:-1]) * np.diff(th))])
            self._table = (mass / mass[-1], th)
        mass, th = self._table
        t = np.interp(rng.random(n), mass, th)
        return _free_param(t, self.alpha, self.rho)[0]

    def phi_closed(self, z):
        """Voiculescu transform ``-z (e^{i rho pi}/z)**alpha`` on the upper half-plane."""
        z = np.asarray(z, dtype=complex)
        return -z * ppow(np.exp(1j * self.rho * PI) / z, self.alpha)


def free_stable(alpha: float, rho: float) -> Measure:
    pair = _pair(alpha, rho)
    if pair.alpha == 1:
        return cauchy_rho(pair.rho)
    return FreeStable(pair.alpha, pair.rho)


def free_stable_density(pair, x, rho=None):
    pair = _pair(pair, rho) if rho is not None or not isinstance(pair, AdmissiblePair) else pair
    if pair.alpha == 1:
        return cauchy_rho_density(pair.rho, x)
    return FreeStable(pair.alpha, pair.rho).density(x)


# ---------------------------------------------------------------------------
# classical stable: cumulant and sampler only


@register_family
class ClassicalStable(FamilyDensity):
    """Classical strictly stable law; no density, only cumulant and sampler."""

    family_name = "classical_stable"

    def __init__(self, alpha: float, rho: float):
        pair = _pair(alpha, rho)
        super().__init__(alpha=pair.alpha, rho=pair.rho)
        self.pair, self.alpha, self.rho = pair, pair.alpha, pair.rho
        self.support_sign = "pos" if (self.rho == 1 and self.alpha < 1) else (
            "neg" if (self.rho == 0 and self.alpha < 1) else "both")

    def density(self, x):
        raise UnsupportedParameter("classical stable laws are represented without a density")

    def integrate(self, f, q=None, points=()):
        raise UnsupportedParameter("classical stable laws are represented without a density")

    def cumulant(self, z):
        return classical_stable_cumulant(self.pair, z)

    def sample(self, n, rng):
        from .sampler import classical_stable_variates

        return classical_stable_variates(self.alpha, self.rho, n, rng)


def classical_stable(alpha: float, rho: float) -> Measure:
    pair = _pair(alpha, rho)
    if pair.alpha == 1:
        return cauchy_rho(pair.rho)
    return ClassicalStable(pair.alpha, pair.rho)


def classical_stable_cumulant(pair, z, rho=None):
    """``-(e^{i rho pi} z)**alpha`` for ``z`` on the negative imaginary axis."""
    pair = _pair(pair, rho) if rho is not None or not isinstance(pair, AdmissiblePair) else pair
    z = np.asarray(z, dtype=complex)
    if np.any(z.real != 0) or np.any(z.imag >= 0):
        raise DomainError("classical cumulant is evaluated on i(-inf, 0)")
    return -ppow(np.exp(1j * pair.rho * PI) * z, pair.alpha)


# ---------------------------------------------------------------------------
# free Poisson and Pareto


@register_family
class MarchenkoPastur(FamilyDensity):
    family_name = "mp"
    support_sign = "pos"

    def __init__(self):
        super().__init__()

    def density(self, x):
        return mp_density(x)

    def segments(self):
        return [Segment(0.0, 4.0, -0.5, 0.5)]

    def moment_range(self):
        return (-0.5, np.inf)

    def cauchy_closed(self, z):
        z = np.asarray(z, dtype=complex)
        root = np.sqrt(z) * np.sqrt(z - 4.0)
        # rationalized form of (z - root) / (2 z); no cancellation for large z
        return 2.0 / (z + root)

    def eta_closed(self, z):
        # g = G(1/z) solves g**2 - g + z = 0, which gives eta = g
        z = np.asarray(z, dtype=complex)
        return self.cauchy_closed(1.0 / z)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 4.0)
        return (np.sqrt(x * (4 - x)) + 4 * np.arcsin(np.sqrt(x) / 2)) / (2 * PI)

    def sample(self, n, rng):
        # x = 4 sin^2(phi) turns the CDF into (2 phi + sin 2 phi) / pi
        u = rng.random(n) * PI
        lo, hi = np.zeros(n), np.full(n, PI / 2)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            below = 2 * mid + np.sin(2 * mid) < u
            lo, hi = np.where(below, mid, lo), np.where(below, hi, mid)
        return 4 * np.sin(0.5 * (lo + hi)) ** 2


def mp_density(x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = (x > 0) & (x < 4)
    out[m] = np.sqrt((4 - x[m]) / x[m]) / (2 * PI)
    return out


@register_family
class Pareto(FamilyDensity):
    family_name = "pareto"
    support_sign = "pos"

    def __init__(self, r: float):
        r = float(r)
        if not (np.isfinite(r) and r > 0):
            raise DomainError("Pareto index must be positive")
        super().__init__(r=r)
        self.r = r

    def density(self, x):
        return pareto_density(self.r, x)

    def segments(self):
        return [Segment(0.0, np.inf, 0.0, -self.r - 1.0)]

    def moment_range(self):
        return (-1.0, self.r)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, 1.0 - (1.0 + np.maximum(x, 0.0)) ** (-self.r), 0.0)

    def sample(self, n, rng):
        u = rng.random(n)
        return (1.0 - u) ** (-1.0 / self.r) - 1.0


def pareto_density(r: float, x):
    if not r > 0:
        raise DomainError("Pareto index must be positive")
    x = np.asarray(x, dtype=float)
    return np.where(x > 0, r * (1.0 + np.abs(x)) ** (-r - 1.0), 0.0)


# ---------------------------------------------------------------------------
# closed transform table


def family_transform(family, kind: str, z):
    """Closed-form transform of a catalog family.

    ``family`` is a :class:`StableFamily` or one of the strings ``"mp"``;
    ``kind`` is one of ``G, F, eta, sigma, S, phi, free_cumulant,
    classical_cumulant``.
    """
    z = np.asarray(z, dtype=complex)
    if isinstance(family, str):
        if family != "mp":
            raise UnsupportedParameter(f"no closed transforms for {family!r}")
        m = MarchenkoPastur()
        table = {
            "G": lambda: m.cauchy_closed(z),
            "F": lambda: 1.0 / m.cauchy_closed(z),
            "eta": lambda: m.eta_closed(z),
            "sigma": lambda: 1.0 - z,
            "S": lambda: 1.0 / (1.0 + z),
        }
        if kind not in table:
            raise UnsupportedParameter(f"{kind} of the free Poisson law is not tabulated")
        return table[kind]()
    a, r = family.pair.alpha, family.pair.rho
    c = -np.exp(-1j * r * PI)
    sym_ok = r in (0.0, 0.5, 1.0)
    k = family.kind
    if kind in ("sigma", "S"):
        if not sym_ok:
            raise UnsupportedParameter("Sigma/S transforms need rho in {0, 1/2, 1}")
        e = (1 - a) / a
        if k == "boolean":
            base = -z if kind == "sigma" else -z / (1 + z)
            return c * ppow(base, e)
        if k == "free":
            base = -z / (1 - z) if kind == "sigma" else -z
            return c * ppow(base, e)
        if k == "monotone":
            w = z if kind == "sigma" else z / (1 + z)
            return c * ppow(ppow(1 - w, a) - 1, 1 / a) / (-w)
        raise UnsupportedParameter("no Sigma/S transform for the classical family")
    if k == "boolean":
        m = boolean_stable(a, r)
        if kind == "eta":
            return m.eta_closed(z)
        if kind == "G":
            return m.cauchy(z)
        if kind == "F":
            return 1.0 / m.cauchy(z)
    if k == "monotone":
        m = monotone_stable(a, r)
        if kind == "eta":
            return m.eta_closed(z)
        if kind == "G":
            return m.cauchy_closed(z)
        if kind == "F":
            return 1.0 / m.cauchy_closed(z)
    if k == "free":
        if kind == "free_cumulant":
            return _conj_eval(lambda w: _eta_stable(w, a, r), z)
        if kind == "phi":
            return -z * ppow(np.exp(1j * r * PI) / z, a)
    if k == "classical" and kind == "classical_cumulant":
        return classical_stable_cumulant(family.pair, z)
    raise UnsupportedParameter(f"transform {kind!r} not available in closed form for {k} stable laws")

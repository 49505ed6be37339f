"""Free multiplicative law of large numbers and explicit mixture densities.

``Phi(mu)`` is the weak limit of ``(mu^{boxtimes n})^{1/n}``; its
distribution function is read off the S-transform:
``Phi(mu)([0, 1/S_mu(x - 1)]) = x`` for ``x`` in ``(mu({0}), 1)``.

The second half collects densities of mixtures with ``b_{1/2,1}``:
for a mixing law ``mu`` on ``(0, inf)`` the mixture density is
``(x^{-1/2}/pi) int sqrt(y)/(x+y) mu(dy)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import beta as beta_fn, expit, log_expit

from .errors import DomainError, NumericalFailure, UnsupportedParameter
from .measures import Atomic, FamilyDensity, Measure, Segment, register_family
from .mixtures import MixtureSpec, SForm, mixture_density, sform_of
from .sampler import chunked, ks_stat, ks_threshold
from .stable_laws import AdmissiblePair

PI = np.pi


# ---------------------------------------------------------------------------
# law of large numbers


@dataclass(frozen=True)
class LLNResult:
    source: str
    cdf: Callable
    density: Callable | None
    provenance: str


def _log_inv_s(obj) -> tuple[Callable, float, float]:
    """``t -> log(1/S_mu(x - 1))`` with ``x = expit(t)``, the zero mass ``p0``
    and the half-width of the usable ``t`` range.

    Working in the logit of ``x`` keeps both ends of ``(-1, 0)`` resolved.
    """
    if isinstance(obj, SForm) or not isinstance(obj, Measure):
        sf = sform_of(obj)
    else:
        try:
            sf = sform_of(obj)
        except UnsupportedParameter:
            from .transforms import s_transform

            p0 = obj.zero_mass
            one = lambda t: -np.log(np.real(s_transform(obj, -float(expit(-t)))))
            return np.vectorize(one, otypes=[float]), p0, 30.0
    if not sf.positive:
        raise DomainError("the law of large numbers needs a measure on [0, inf)")
    lc = np.log(sf.c.real)
    # S = c (1-x)^a x^b
    return (lambda t: -lc - sf.a * log_expit(-t) - sf.b * log_expit(t)), 0.0, 700.0


def lln_cdf(obj, y) -> np.ndarray:
    """Distribution function of ``Phi(mu)`` at ``y``.

    Solves ``1/S_mu(x - 1) = y`` for ``x`` in ``(mu({0}), 1)``; ``obj`` is a
    catalog measure or an :class:`SForm`.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if isinstance(obj, Atomic) and len(obj.atoms) == 1:
        return (y >= obj.atoms[0][0]).astype(float)
    g, p0, span = _log_inv_s(obj)
    lo = np.log(p0 / (1 - p0)) + 1e-9 if p0 > 0 else -span
    hi = span
    out = np.where(y < 0, 0.0, p0)
    pos = y > 0
    ly = np.log(y[pos])
    # g is increasing in t: vectorized bisection to double precision in t
    a = np.full(ly.shape, lo)
    b = np.full(ly.shape, hi)
    if not (np.isfinite(g(lo)) and np.isfinite(g(hi))):
        raise NumericalFailure("S transform not finite near the ends of (-1, 0)")
    for _ in range(200):
        m = 0.5 * (a + b)
        up = g(m) < ly
        a = np.where(up, m, a)
        b = np.where(up, b, m)
        if np.all(b - a <= 1e-13 * np.maximum(1.0, np.abs(a))):
            break
    t = 0.5 * (a + b)
    res = expit(t)
    res[t <= lo + 1e-12] = p0
    out[pos] = res
    return out


def lln_density_boolean(alpha: float, x):
    """Density ``beta x^(beta-1) / (x^beta + 1)^2`` of ``Phi(b_{alpha,1})``, ``beta = alpha/(1-alpha)``."""
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1)")
    b = alpha / (1 - alpha)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("density evaluated at x > 0")
    return b * x ** (b - 1) / (x ** b + 1) ** 2


def lln_cdf_boolean(alpha: float, x):
    b = alpha / (1 - alpha)
    x = np.asarray(x, dtype=float)
    return x ** b / (1 + x ** b)


def lln_boolean(alpha: float) -> LLNResult:
    from .stable_laws import boolean_stable

    m = boolean_stable(alpha, 1.0)
    return LLNResult(f"b_{{{alpha},1}}", lambda y: lln_cdf(m, y),
                     lambda x: lln_density_boolean(alpha, x), "S-transform inversion")


def phi_boolean_quantile(alpha: float):
    """Quantile ``(v/(1-v))^(1/beta)`` of ``Phi(b_{alpha,1})`` as a function of ``(v, 1-v)``."""
    b = alpha / (1 - alpha)
    return lambda v, omv: (v / omv) ** (1 / b)


def phi_boolean_pick_scan(alpha: float, **kw):
    """Pick scan of ``Phi(b_{alpha,1}) = b_{beta,1} (.) Pa(1)`` for ``alpha <= 1/2``.

    The mixing law ``Pa(1)^beta`` enters through its quantile
    ``(v/(1-v))^beta``.
    """
    from .fid import quantile_eta, scan_mixture

    if not 0 < alpha <= 0.5:
        raise DomainError("the mixture representation needs alpha in (0, 1/2]")
    b = alpha / (1 - alpha)
    return scan_mixture(quantile_eta(lambda v, omv: (v / omv) ** b), AdmissiblePair(b, 1.0), **kw)


@dataclass
class LLNReport:
    D: float
    threshold: float
    n: int
    seed: int

    @property
    def passed(self) -> bool:
        return self.D <= self.threshold

    def to_json(self):
        return {"ks": self.D, "threshold": self.threshold, "n": self.n, "seed": self.seed,
                "pass": self.passed}


def lln_identity_mc(mu: Measure, n: int, seed: int, threshold: float | None = None) -> LLNReport:
    """KS distance between samples of ``mu (.) Pa(1)`` and the CDF of ``Phi(mu boxtimes b_{1/2,1})``."""
    s_mu = sform_of(mu)
    target = s_mu * sform_of(_b_half())

    def draw(k, g):
        u = g.random(k)
        return mu.sample(k, g) * (u / (1.0 - u))

    x = chunked(draw, n, seed)
    res = ks_stat(x, lambda y: lln_cdf(target, y))
    return LLNReport(res.D, ks_threshold(n) if threshold is None else threshold, n, seed)


def _b_half():
    from .stable_laws import boolean_stable

    return boolean_stable(0.5, 1.0)


# ---------------------------------------------------------------------------
# generalized beta of the second kind


def _check_gb2(alpha, beta):
    if not (0.5 < alpha <= 1 and beta > 0 and alpha * beta <= 1):
        raise DomainError("GB2 example needs alpha in (1/2, 1] and 0 < alpha beta <= 1")


def gb2_tau_density(alpha: float, beta: float, x):
    """Density of ``tau`` with ``-G_tau(-x) = x^(alpha-1) / (x^(alpha beta) + 1)^(1/beta)``.

    From the boundary value of ``G`` on ``(0, inf)``: with ``R`` and
    ``phi`` the modulus and argument of ``x^(alpha beta) e^{-i alpha beta pi} + 1``
    the density is ``x^(alpha-1) R^(-1/beta) sin(alpha pi + phi/beta) / pi``.
    """
    _check_gb2(alpha, beta)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("tau density evaluated at x > 0")
    ab = alpha * beta
    w = x ** ab * np.exp(-1j * ab * PI) + 1.0
    R, ph = np.abs(w), np.angle(w)
    return x ** (alpha - 1) * R ** (-1 / beta) * np.sin(alpha * PI + ph / beta) / PI


def gb2_target_unnormalized(alpha, beta, x):
    x = np.asarray(x, dtype=float)
    return x ** (alpha - 1.5) / (x ** (alpha * beta) + 1) ** (1 / beta)


def gb2_constant(alpha: float, beta: float) -> float:
    """Normalizing constant of the GB2 density, by quadrature."""
    _check_gb2(alpha, beta)
    f = lambda x: float(gb2_target_unnormalized(alpha, beta, x))
    v = quad(f, 0, 1, epsabs=0, epsrel=1e-12, limit=500)[0] + quad(f, 1, np.inf, epsabs=0, epsrel=1e-12, limit=500)[0]
    return 1.0 / v


def gb2_density(alpha: float, beta: float, x):
    return gb2_constant(alpha, beta) * gb2_target_unnormalized(alpha, beta, x)


@register_family
class GB2Mixing(FamilyDensity):
    """Mixing law ``c y^{-1/2} tau(dy)`` whose mixture with ``b_{1/2,1}`` is the GB2 law."""

    family_name = "gb2_mixing"
    support_sign = "pos"

    def __init__(self, alpha: float, beta: float):
        _check_gb2(alpha, beta)
        super().__init__(alpha=float(alpha), beta=float(beta))
        self.alpha, self.beta = float(alpha), float(beta)
        self._c = None

    def _raw(self, x):
        return x ** -0.5 * gb2_tau_density(self.alpha, self.beta, x)

    @property
    def constant(self) -> float:
        if self._c is None:
            seg = self._segments()
            from .measures import integrate_segment

            self._c = 1.0 / float(sum(integrate_segment(lambda x: self._raw(np.array([x]))[0], s.lo, s.hi,
                                                        s.e_lo, s.e_hi) for s in seg))
        return self._c

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        m = x > 0
        out[m] = self.constant * self._raw(x[m])
        return out

    def _segments(self):
        a, ab = self.alpha, self.alpha * self.beta
        return [Segment(0.0, 1.0, a - 1.5, 0.0), Segment(1.0, np.inf, 0.0, -1.5 - ab)]

    def segments(self):
        return self._segments()

    def moment_range(self):
        return (0.5 - self.alpha, 0.5 + self.alpha * self.beta)


@dataclass
class DensityCheck:
    max_rel_err: float
    threshold: float
    grid: np.ndarray
    worst_x: float

    @property
    def passed(self) -> bool:
        return self.max_rel_err <= self.threshold

    def to_json(self):
        return {"max_rel_err": self.max_rel_err, "threshold": self.threshold,
                "worst_x": self.worst_x, "pass": self.passed, "grid_size": int(self.grid.size)}


def _compare(numeric, target, grid, threshold):
    rel = np.abs(numeric / target - 1)
    k = int(np.argmax(rel))
    return DensityCheck(float(rel[k]), threshold, grid, float(grid[k]))


def gb2_mixture_check(alpha: float, beta: float, grid=None, threshold: float = 1e-4, q=None) -> DensityCheck:
    """Mixture of ``b_{1/2,1}`` by the GB2 mixing law against the normalized GB2 density."""
    grid = np.geomspace(1e-3, 1e3, 25) if grid is None else np.asarray(grid, dtype=float)
    if abs(alpha * beta - 1) < 1e-12:
        grid = grid[np.abs(grid - 1) > 1e-3]
    spec = MixtureSpec(GB2Mixing(alpha, beta), AdmissiblePair(0.5, 1.0), raw=True)
    return _compare(mixture_density(spec, grid, q), gb2_density(alpha, beta, grid), grid, threshold)


# ---------------------------------------------------------------------------
# shifted beta and beta examples


def shifted_beta_integral_quad(a: float, x: float) -> float:
    """``int_1^inf (t-1)^a / (t (x+t)) dt`` by quadrature."""
    f = lambda t: (t - 1) ** a / (t * (x + t))
    # the endpoint factor (t-1)^a is carried by the algebraic weight rule
    near = quad(lambda t: 1.0 / (t * (x + t)), 1, 2, weight="alg", wvar=(a, 0.0), epsabs=0, epsrel=1e-13,
                limit=500)[0]
    return near + quad(f, 2, np.inf, epsabs=0, epsrel=1e-13, limit=500)[0]


def shifted_beta_integral_closed(a: float, x: float) -> float:
    """``(pi a / sin(pi a)) ((1+x)^a - 1) / (a x)``; the ``a = 0`` limit is ``log(1+x)/x``."""
    if a == 0:
        return np.log1p(x) / x
    return PI * a / np.sin(PI * a) * ((1 + x) ** a - 1) / (a * x)


def shifted_beta_residual(a: float, x: float) -> float:
    if not -1 < a < 1:
        raise DomainError("a must lie in (-1, 1)")
    return abs(shifted_beta_integral_quad(a, x) - shifted_beta_integral_closed(a, x))


def shifted_beta_constant(a: float) -> float:
    """``c_a = a / (sin(pi a) B(1+a, 1/2-a))``, with the limit ``1/(2 pi)`` at ``a = 0``."""
    if not -1 < a < 0.5:
        raise DomainError("a must lie in (-1, 1/2)")
    if a == 0:
        return 1.0 / (2 * PI)
    return a / (np.sin(PI * a) * beta_fn(1 + a, 0.5 - a))


def shifted_beta_mixture_density(a: float, x):
    """``c_a ((1+x)^a - 1) / (a x^{3/2})`` (log form at ``a = 0``)."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("density evaluated at x > 0")
    c = shifted_beta_constant(a)
    if a == 0:
        return c * np.log1p(x) / x ** 1.5
    return c * np.expm1(a * np.log1p(x)) / (a * x ** 1.5)


@register_family
class ShiftedBetaMixing(FamilyDensity):
    """``(t-1)^a t^{-3/2} / B(1+a, 1/2-a)`` on ``(1, inf)``."""

    family_name = "shifted_beta"
    support_sign = "pos"

    def __init__(self, a: float):
        if not -1 < a < 0.5:
            raise DomainError("a must lie in (-1, 1/2)")
        super().__init__(a=float(a))
        self.a = float(a)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        m = x > 1
        out[m] = (x[m] - 1) ** self.a * x[m] ** -1.5 / beta_fn(1 + self.a, 0.5 - self.a)
        return out

    def segments(self):
        return [Segment(1.0, 2.0, self.a, 0.0), Segment(2.0, np.inf, 0.0, self.a - 1.5)]

    def moment_range(self):
        return (-np.inf, 0.5 - self.a)


def shifted_beta_check(a: float, grid=None, threshold: float = 1e-4, q=None) -> DensityCheck:
    grid = np.geomspace(1e-3, 1e3, 25) if grid is None else np.asarray(grid, dtype=float)
    spec = MixtureSpec(ShiftedBetaMixing(a), AdmissiblePair(0.5, 1.0), raw=True)
    return _compare(mixture_density(spec, grid, q), shifted_beta_mixture_density(a, grid), grid, threshold)


@register_family
class BetaHalf(FamilyDensity):
    """Density ``1/(2 sqrt(t))`` on ``(0, 1)``."""

    family_name = "beta_half"
    support_sign = "pos"

    def __init__(self):
        super().__init__()

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        m = (x > 0) & (x < 1)
        out[m] = 0.5 / np.sqrt(x[m])
        return out

    def segments(self):
        return [Segment(0.0, 1.0, -0.5, 0.0)]

    def moment_range(self):
        return (-0.5, np.inf)

    def cdf(self, x):
        return np.sqrt(np.clip(np.asarray(x, dtype=float), 0.0, 1.0))

    def sample(self, n, rng):
        return rng.random(n) ** 2


def beta_log_mixture_density(x):
    """``log(1 + 1/x) / (2 pi sqrt(x))``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("density evaluated at x > 0")
    return np.log1p(1 / x) / (2 * PI * np.sqrt(x))


def beta_log_check(grid=None, threshold: float = 1e-4, q=None) -> DensityCheck:
    grid = np.geomspace(1e-3, 1e3, 25) if grid is None else np.asarray(grid, dtype=float)
    spec = MixtureSpec(BetaHalf(), AdmissiblePair(0.5, 1.0), raw=True)
    return _compare(mixture_density(spec, grid, q), beta_log_mixture_density(grid), grid, threshold)


__all__ = [
    "LLNResult", "lln_cdf", "lln_density_boolean", "lln_cdf_boolean", "lln_boolean",
    "phi_boolean_quantile", "phi_boolean_pick_scan", "LLNReport", "lln_identity_mc", "gb2_tau_density", "gb2_constant",
    "gb2_density", "GB2Mixing", "DensityCheck", "gb2_mixture_check", "shifted_beta_integral_quad",
    "shifted_beta_integral_closed", "shifted_beta_residual", "shifted_beta_constant",
    "shifted_beta_mixture_density", "ShiftedBetaMixing", "shifted_beta_check", "BetaHalf",
    "beta_log_mixture_density", "beta_log_check",
]

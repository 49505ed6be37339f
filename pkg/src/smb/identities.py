"""Catalog of convolution identities and a verification engine.

Each identity is checked by one of five methods:

``eta-grid``
    eta transforms of both sides on a fixed grid in the lower half-plane,
    where at least one side goes through quadrature or composition.
``s-symbolic``
    S-transform algebra on one side against a numerical S-transform
    (root finding on the eta transform) on the other, at 32 Chebyshev
    points of ``(-0.95, -0.05)``.
``density-L1``
    L1 distance of two densities.
``mc-ks``
    one-sample Kolmogorov-Smirnov distance of seeded variates from a
    closed distribution function, at the 1e-3 significance quantile.
``exact-rational``
    equality in rational arithmetic.
``quadrature``
    residual of an integral identity evaluated by quadrature.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, UsageError
from .measures import Atomic, pushforward_power
from .mixtures import (BooleanSigma, ContinuousBoolean, MixtureSpec, SForm, continuous_boolean_eta,
                       mixture_eta, mixture_measure, monotone_mult_convolve, mp_power, sform_of,
                       stable_sform)
from .moments import fuss_narayana, tilde_moment
from .sampler import (boolean_stable_variates, cauchy_variates, chunked, ks_stat, ks_threshold,
                      positive_stable_variates)
from .stable_laws import (AdmissiblePair, ClassicalStable, MarchenkoPastur, Pareto, boolean_cdf,
                          boolean_density, boolean_stable)
from .transforms import eta, eta_inverse

PI = np.pi
METHODS = ("eta-grid", "s-symbolic", "density-L1", "mc-ks", "exact-rational", "quadrature")
DEFAULT_SAMPLES = 100_000


# ---------------------------------------------------------------------------
# reports and cases


@dataclass
class VerificationReport:
    id: str
    params: dict
    method: str
    discrepancy: float
    threshold: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.discrepancy <= self.threshold)

    def to_json(self):
        return {"id": self.id, "params": {k: _jsonable(v) for k, v in self.params.items()},
                "method": self.method, "discrepancy": float(self.discrepancy),
                "threshold": float(self.threshold), "pass": self.passed,
                "diagnostics": {k: _jsonable(v) for k, v in self.diagnostics.items()}}


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_jsonable(u) for u in v]
    if isinstance(v, dict):
        return {k: _jsonable(u) for k, u in v.items()}
    return v


@dataclass
class IdentityCase:
    id: str
    params: dict
    method: str | None = None
    tolerance: float | None = None
    samples: int = DEFAULT_SAMPLES
    seed: int = 0


# ---------------------------------------------------------------------------
# shared machinery


def lower_grid() -> np.ndarray:
    """20 points in the lower half-plane: 5 moduli by 4 arguments."""
    r = np.geomspace(0.2, 5.0, 5)
    th = -PI * np.array([0.15, 0.4, 0.6, 0.85])
    return (r[:, None] * np.exp(1j * th[None, :])).ravel()


def chebyshev_points(n: int = 32, lo: float = -0.95, hi: float = -0.05) -> np.ndarray:
    k = np.arange(n)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos((2 * k + 1) * PI / (2 * n))


def _rel_max(lhs, rhs):
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    rel = np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-300)
    k = int(np.argmax(rel))
    return float(rel[k]), k


def numeric_s(m, z: float) -> complex:
    """S-transform from root finding on the eta transform of ``m``."""
    w = z / (1.0 + z)
    return complex(eta_inverse(m, w)) / w


def mixture_eta_by_dilation(spec: MixtureSpec, z, q=None):
    """eta of a scale mixture from the Cauchy transforms of dilated Boolean stable laws.

    ``G(u) = int G_b(u/s)/s law(ds)``; independent of the composition
    formula for eta.
    """
    z = np.asarray(z, dtype=complex)
    u = 1.0 / z
    base = boolean_stable(spec.pair.alpha, spec.pair.rho)
    law = spec.scale_law

    def g(s):
        if s <= 0:
            return 1.0 / u
        return base.cauchy(u / s) / s

    G = np.asarray(law.integrate(g, q), dtype=complex)
    return 1.0 - z / G


def _s_compare(lhs: Callable, rhs: Callable, tol: float):
    zs = chebyshev_points()
    a = np.array([lhs(z) for z in zs])
    b = np.array([rhs(z) for z in zs])
    err, k = _rel_max(a, b)
    return err, tol, {"worst_z": float(zs[k]), "points": len(zs)}


def _eta_compare(lhs, rhs, tol):
    zs = lower_grid()
    a, b = np.asarray(lhs(zs)), np.asarray(rhs(zs))
    err, k = _rel_max(a, b)
    return err, tol, {"worst_z": complex(zs[k]), "points": len(zs)}


def _ks(draw: Callable, cdf: Callable, n: int, seed: int, level: float = 1e-3):
    x = chunked(draw, n, seed)
    r = ks_stat(x, cdf)
    return r.D, ks_threshold(n, level), {"ks": r.D, "p_value": r.p_value, "n": n, "seed": seed}


def _mixing(kind: str, p: dict):
    if kind == "boolean":
        return boolean_stable(p["beta"], 1.0)
    if kind == "mp":
        return MarchenkoPastur()
    if kind == "delta":
        return Atomic([(p["c"], 1.0)])
    if kind == "pareto":
        return Pareto(p["r"])
    raise DomainError(f"unknown mixing family {kind!r}")


# ---------------------------------------------------------------------------
# individual checks; each returns (discrepancy, threshold, diagnostics)


def _i1_mc(p, case):
    a, b, r = p["alpha"], p["beta"], p["rho"]
    target = p.get("target", a * b)

    def draw(k, g):
        x = boolean_stable_variates(b, 1.0, k, g) if b < 1 else np.ones(k)
        return x ** (1 / a) * boolean_stable_variates(a, r, k, g)

    return _ks(draw, lambda x: boolean_cdf(AdmissiblePair(target, r), x), case.samples, case.seed)


def _i1_eta(p, case):
    a, b, r = p["alpha"], p["beta"], p["rho"]
    spec = MixtureSpec.of(boolean_stable(b, 1.0), a, r)
    return _eta_compare(lambda z: mixture_eta_by_dilation(spec, z),
                        lambda z: eta(boolean_stable(a * b, r), z), case.tolerance or 1e-6)


def _i2(p, case):
    a, r = p["alpha"], p["rho"]
    mu = _mixing(p["mixing"], p)
    m = mixture_measure(MixtureSpec.of(mu, a, r))
    rhs = sform_of(mu).power(1 / a) * stable_sform("boolean", a, r)
    return _s_compare(lambda z: numeric_s(m, z), rhs, case.tolerance or 1e-10)


def _i3(p, case):
    a, r = p["alpha"], p["rho"]
    mu = _mixing(p["mixing"], p)
    spec = MixtureSpec.of(mu, a, r)
    mono = monotone_mult_convolve(mu, boolean_stable(a, r))
    return _eta_compare(lambda z: mixture_eta_by_dilation(spec, z), lambda z: mono.fn(z),
                        case.tolerance or 1e-6)


def _l1_positive(f, g):
    """``int_0^inf |f - g|`` in logarithmic coordinates."""
    h = lambda u: abs(float(f(np.exp(u)) - g(np.exp(u)))) * np.exp(u)
    return sum(quad(h, lo, hi, epsabs=1e-12, epsrel=1e-10, limit=400)[0]
               for lo, hi in ((-60, -5), (-5, 0), (0, 5), (5, 60)))


def _i4(p, case):
    a = p["alpha"]
    sq = pushforward_power(boolean_stable(a, 0.5), 2)
    pair = AdmissiblePair(a / 2, 1.0)
    l1 = _l1_positive(lambda x: sq.density(np.array([x]))[0],
                      lambda x: boolean_density(pair, np.array([x]))[0])
    return l1, case.tolerance or 1e-5, {"l1": l1}


def _i5(p, case):
    a = p["alpha"]
    rhs = mp_power((1 - a) / a) * stable_sform("free", a, 1.0)
    m = boolean_stable(a, 1.0)
    return _s_compare(lambda z: numeric_s(m, z), rhs, case.tolerance or 1e-10)


def _i6(p, case):
    a = p["alpha"]
    rhs = mp_power((2 - a) / (2 * a)) * stable_sform("free", a / 2, 1.0).sym_sqrt()
    m = boolean_stable(a, 0.5)
    return _s_compare(lambda z: numeric_s(m, z), rhs, case.tolerance or 1e-10)


def _i7(p, case):
    a, t = p["alpha"], p["t"]
    lhs = stable_sform("boolean", a, 1.0).power(t)
    m = boolean_stable(a / (t * (1 - a) + a), 1.0)
    return _s_compare(lhs, lambda z: numeric_s(m, z), case.tolerance or 1e-10)


def _i8(p, case):
    a, t = p["alpha"], int(p["t"])
    b = boolean_stable(a, 1.0)
    m = b
    for _ in range(t - 1):
        m = monotone_mult_convolve(b, m)
    return _eta_compare(lambda z: m.fn(z), lambda z: eta(boolean_stable(a ** t, 1.0), z),
                        case.tolerance or 1e-10)


def _i9(p, case):
    a = p["alpha"]
    n1 = ClassicalStable(a, 1.0)
    return _ks(lambda k, g: n1.sample(k, g) / n1.sample(k, g),
               lambda x: boolean_cdf(AdmissiblePair(a, 1.0), x), case.samples, case.seed)


def _i10(p, case):
    a, r = p["alpha"], p["rho"]
    cdf = lambda x: boolean_cdf(AdmissiblePair(a, r), x)
    na, n1 = ClassicalStable(a, r), ClassicalStable(a, 1.0)
    d1, thr, diag1 = _ks(lambda k, g: na.sample(k, g) / n1.sample(k, g), cdf, case.samples, case.seed)
    d2, _, diag2 = _ks(lambda k, g: (positive_stable_variates(a, k, g) / positive_stable_variates(a, k, g)
                                      * cauchy_variates(r, k, g)),
                       cdf, case.samples, case.seed + 1)
    return max(d1, d2), thr, {"ratio": diag1, "cauchy_product": diag2}


def _two_atom(p, key):
    (x1, x2), w = p[key], p[key + "_w"]
    return Atomic([(x1, w), (x2, 1 - w)])


def _i11(p, case):
    a, r = p["alpha"], p["rho"]
    mu, nu = _two_atom(p, "mu"), _two_atom(p, "nu")
    s_mu, s_nu = MixtureSpec.of(mu, a, r), MixtureSpec.of(nu, a, r)

    def lhs(z):
        return mixture_eta_by_dilation(s_mu, z) + mixture_eta_by_dilation(s_nu, z)

    def rhs(z):
        w = -(np.exp(1j * r * PI) * z) ** a
        return eta(mu, w) + eta(nu, w)

    return _eta_compare(lhs, rhs, case.tolerance or 1e-10)


def _i12(p, case):
    s, t, r = p["s"], p["t"], p["rho"]
    lhs = stable_sform("boolean", 1 / (1 + t), 1.0) * stable_sform("boolean", 1 / (1 + s), r)
    m = boolean_stable(1 / (1 + s + t), r)
    return _s_compare(lhs, lambda z: numeric_s(m, z), case.tolerance or 1e-10)


def _i13(p, case):
    sigma = BooleanSigma(tuple(p["sigma"]))
    spec = MixtureSpec.of(ContinuousBoolean(sigma.dilate(2.0)), 0.5, 1.0)
    return _eta_compare(lambda z: continuous_boolean_eta(sigma, z),
                        lambda z: mixture_eta_by_dilation(spec, z), case.tolerance or 1e-6)


def _i14(p, case):
    a, r = p["alpha"], p["rho"]
    spec = MixtureSpec.of(_mixing(p["mixing"], p), a, r)
    return _eta_compare(lambda z: mixture_eta_by_dilation(spec, z), lambda z: mixture_eta(spec, z),
                        case.tolerance or 1e-6)


def _i15(p, case):
    s, t, N = Fraction(p["s"]), Fraction(p["t"]), int(p.get("n_max", 10))
    bad = [n for n in range(1, N + 1) if tilde_moment(n, s, t) != t ** (n + 1) * fuss_narayana(n, s, 1 / t)]
    return float(len(bad)), 0.0, {"mismatched_orders": bad, "n_max": N}


def _i16(p, case):
    from .lln import shifted_beta_residual

    res = shifted_beta_residual(p["a"], p["x"])
    return res, case.tolerance or 1e-8, {"residual": res}


def _i17(p, case):
    from .lln import lln_identity_mc

    rep = lln_identity_mc(_mixing(p["mixing"], p), case.samples, case.seed)
    return rep.D, rep.threshold, {"ks": rep.D, "n": rep.n, "seed": rep.seed}


# ---------------------------------------------------------------------------
# parameter draws


def _u(g, lo, hi):
    return float(g.uniform(lo, hi))


def _draw_mix(g, k, kinds=("boolean", "mp", "delta")):
    kind = kinds[k % len(kinds)]
    p = {"mixing": kind}
    if kind == "boolean":
        p["beta"] = _u(g, 0.2, 0.9)
    elif kind == "delta":
        p["c"] = _u(g, 0.3, 3.0)
    elif kind == "pareto":
        p["r"] = _u(g, 0.5, 3.0)
    return p


RHO3 = (1.0, 0.5, 0.0)


def _draw_i1(g, k):
    return {"alpha": _u(g, 0.2, 1.0), "beta": _u(g, 0.2, 0.95), "rho": _u(g, 0.0, 1.0)}


def _draw_i2(g, k):
    return {"alpha": _u(g, 0.25, 1.0), "rho": RHO3[k % 3], **_draw_mix(g, k)}


def _draw_i3(g, k):
    return {"alpha": _u(g, 0.25, 1.0), "rho": _u(g, 0.05, 0.95), **_draw_mix(g, k, ("boolean", "mp", "pareto"))}


def _draw_i11(g, k):
    p = {"alpha": _u(g, 0.25, 1.0), "rho": _u(g, 0.05, 0.95)}
    for key in ("mu", "nu"):
        p[key] = [_u(g, 0.2, 3.0), _u(g, 0.2, 3.0)]
        p[key + "_w"] = _u(g, 0.1, 0.9)
    return p


def _draw_i13(g, k):
    m = 1 + k % 3
    return {"sigma": [(_u(g, 0.05, 0.5), _u(g, 0.2, 2.0)) for _ in range(m)]}


def _draw_i15(g, k):
    return {"s": str(Fraction(int(g.integers(1, 10)), int(g.integers(1, 10)))),
            "t": str(Fraction(int(g.integers(1, 10)), int(g.integers(1, 10)))), "n_max": 10}


def _draw_i16(g, k):
    a = _u(g, -0.9, 0.9)
    return {"a": a if abs(a) > 1e-3 else 0.3, "x": float(np.exp(g.uniform(np.log(0.1), np.log(10.0))))}


@dataclass(frozen=True)
class IdentityInfo:
    id: str
    statement: str
    domain: dict
    methods: dict
    draw: Callable
    note: str = ""

    @property
    def default_method(self) -> str:
        return next(iter(self.methods))

    def describe(self):
        return {"id": self.id, "statement": self.statement, "domain": self.domain,
                "methods": list(self.methods), "default_method": self.default_method,
                "note": self.note}


_CATALOG = [
    IdentityInfo("I1", "(b_{beta,1})^{1/alpha} (.) b_{alpha,rho} = b_{alpha beta,rho}",
                 {"alpha": "(0,1]", "beta": "(0,1]", "rho": "[0,1]"},
                 {"mc-ks": _i1_mc, "eta-grid": _i1_eta}, _draw_i1),
    IdentityInfo("I2", "mu^{1/alpha} (.) b_{alpha,rho} = mu^{boxtimes 1/alpha} boxtimes b_{alpha,rho}",
                 {"alpha": "(0,1]", "rho": "{0,1/2,1}", "mixing": "boolean|mp|delta"},
                 {"s-symbolic": _i2}, _draw_i2,
                 "the alpha > 1, rho = 1/2 branch is not checked: existence of the free power is undecided"),
    IdentityInfo("I3", "mu^{1/alpha} (.) b_{alpha,rho} = mu monotone-times b_{alpha,rho}",
                 {"alpha": "(0,1]", "rho": "[0,1]", "mixing": "boolean|mp|pareto"},
                 {"eta-grid": _i3}, _draw_i3),
    IdentityInfo("I4", "(b_{alpha,1/2})^2 = b_{alpha/2,1}", {"alpha": "(0,1]"},
                 {"density-L1": _i4}, lambda g, k: {"alpha": _u(g, 0.2, 1.0)}),
    IdentityInfo("I5", "b_{alpha,1} = MP^{boxtimes (1-alpha)/alpha} boxtimes f_{alpha,1}", {"alpha": "(0,1)"},
                 {"s-symbolic": _i5}, lambda g, k: {"alpha": _u(g, 0.2, 0.95)}),
    IdentityInfo("I6", "b_{alpha,1/2} = MP^{boxtimes (2-alpha)/(2 alpha)} boxtimes sym-sqrt f_{alpha/2,1}",
                 {"alpha": "(0,1)"}, {"s-symbolic": _i6}, lambda g, k: {"alpha": _u(g, 0.2, 0.95)}),
    IdentityInfo("I7", "(b_{alpha,1})^{boxtimes t} = b_{alpha/(t(1-alpha)+alpha),1}",
                 {"alpha": "(0,1)", "t": "(0,inf)"}, {"s-symbolic": _i7},
                 lambda g, k: {"alpha": _u(g, 0.2, 0.95), "t": _u(g, 0.2, 3.0)}),
    IdentityInfo("I8", "(b_{alpha,1})^{monotone t} = b_{alpha^t,1}", {"alpha": "(0,1)", "t": "{2,3,4}"},
                 {"eta-grid": _i8}, lambda g, k: {"alpha": _u(g, 0.2, 0.95), "t": 2 + k % 3},
                 "integer t: the monotone power is an iterated eta composition"),
    IdentityInfo("I9", "b_{alpha,1} = n_{alpha,1} (.) (n_{alpha,1})^{-1}", {"alpha": "(0,1)"},
                 {"mc-ks": _i9}, lambda g, k: {"alpha": _u(g, 0.2, 0.95)}),
    IdentityInfo("I10", "b_{alpha,rho} = n_{alpha,rho} (.) (n_{alpha,1})^{-1} = b_{alpha,1} (.) c_rho",
                 {"alpha": "(0,1)", "rho": "[0,1]"}, {"mc-ks": _i10},
                 lambda g, k: {"alpha": _u(g, 0.2, 0.95), "rho": _u(g, 0.0, 1.0)}),
    IdentityInfo("I11", "(mu^{1/alpha} (.) b) boolean-plus (nu^{1/alpha} (.) b) = (mu boolean-plus nu)^{1/alpha} (.) b",
                 {"alpha": "(0,1]", "rho": "[0,1]", "mu": "two atoms", "nu": "two atoms"},
                 {"eta-grid": _i11}, _draw_i11),
    IdentityInfo("I12", "b_{1/(1+t),1} boxtimes b_{1/(1+s),rho} = b_{1/(1+s+t),rho}",
                 {"s": "[0,inf)", "t": "[0,inf)", "rho": "{0,1/2,1}"}, {"s-symbolic": _i12},
                 lambda g, k: {"s": _u(g, 0.05, 3.0), "t": _u(g, 0.05, 3.0), "rho": RHO3[k % 3]}),
    IdentityInfo("I13", "b(sigma) = b(D_2 sigma)^2 (.) b_{1/2,1}", {"sigma": "finite, atoms in (0,1/2]"},
                 {"eta-grid": _i13}, _draw_i13),
    IdentityInfo("I14", "eta_{mu^{1/alpha} (.) b_{alpha,rho}}(z) = eta_mu(-(e^{i rho pi} z)^alpha)",
                 {"alpha": "(0,1]", "rho": "[0,1]", "mixing": "boolean|mp|pareto"},
                 {"eta-grid": _i14}, _draw_i3),
    IdentityInfo("I15", "tilde m_n(s,t) = t^{n+1} m_n(s,1/t)", {"s": "rational", "t": "rational, nonzero"},
                 {"exact-rational": _i15}, _draw_i15),
    IdentityInfo("I16", "int_1^inf (t-1)^a/(t(x+t)) dt = (pi a/sin pi a)((1+x)^a-1)/(a x)",
                 {"a": "(-1,1)", "x": "(0,inf)"}, {"quadrature": _i16}, _draw_i16),
    IdentityInfo("I17", "Phi(mu boxtimes b_{1/2,1}) = mu (.) Pa(1)", {"mixing": "boolean|mp|delta"},
                 {"mc-ks": _i17}, lambda g, k: _draw_mix(g, k)),
]
_BY_ID = {c.id: c for c in _CATALOG}

#: statements recorded for reference but without a mechanical check
UNVERIFIED = {
    "product-of-mixtures": "(mu^{1/alpha} (.) b) boxtimes (nu^{1/alpha} (.) b): stated, not mechanically "
                           "verified; it needs boxtimes of two non-catalog measures",
}


def catalog() -> list:
    return [c.describe() for c in _CATALOG]


def _check_domain(cid: str, p: dict):
    a, r = p.get("alpha"), p.get("rho")
    if a is not None and not 0 < a <= 1:
        raise DomainError(f"{cid}: alpha must lie in (0, 1]")
    if r is not None and not 0 <= r <= 1:
        raise DomainError(f"{cid}: rho must lie in [0, 1]")
    if cid in ("I2", "I12") and r not in RHO3:
        raise DomainError(f"{cid}: rho must be 0, 1/2 or 1")
    if cid in ("I5", "I6", "I7", "I8", "I9") and not 0 < a < 1:
        raise DomainError(f"{cid}: alpha must lie in (0, 1)")
    if cid in ("I7",) and not p["t"] > 0:
        raise DomainError("I7: t must be positive")
    if cid == "I8" and (int(p["t"]) != p["t"] or p["t"] < 1):
        raise DomainError("I8: t must be a positive integer")
    if cid == "I12" and not (p["s"] >= 0 and p["t"] >= 0):
        raise DomainError("I12: s, t must be nonnegative")
    if cid == "I13" and any(not 0 < x <= 0.5 for x, _ in p["sigma"]):
        raise DomainError("I13: sigma atoms must lie in (0, 1/2]")
    if cid == "I15" and Fraction(p["t"]) == 0:
        raise DomainError("I15: t must be nonzero")
    if cid == "I16" and not -1 < p["a"] < 1:
        raise DomainError("I16: a must lie in (-1, 1)")
    if cid == "I1" and not 0 < p["beta"] <= 1:
        raise DomainError("I1: beta must lie in (0, 1]")


def verify(case: IdentityCase) -> VerificationReport:
    info = _BY_ID.get(case.id)
    if info is None:
        raise UsageError(f"unknown identity {case.id!r}")
    method = case.method or info.default_method
    if method not in info.methods:
        raise UsageError(f"{case.id} supports methods {list(info.methods)}, not {method!r}")
    _check_domain(case.id, case.params)
    d, thr, diag = info.methods[method](case.params, case)
    return VerificationReport(case.id, dict(case.params), method, float(d), float(thr), diag)


def draw_params(cid: str, seed: int, draws: int = 5) -> list:
    info = _BY_ID[cid]
    g = np.random.default_rng(np.random.SeedSequence([int(seed), int(cid[1:])]))
    return [info.draw(g, k) for k in range(draws)]


def _case_seed(seed: int, cid: str, k: int) -> int:
    return int(np.random.SeedSequence([int(seed), int(cid[1:]), k]).generate_state(1)[0])


def suite_cases(seed: int, draws: int = 5, samples: int = DEFAULT_SAMPLES, ids=None) -> list:
    ids = ids or [c.id for c in _CATALOG]
    return [IdentityCase(cid, p, samples=samples, seed=_case_seed(seed, cid, k))
            for cid in ids for k, p in enumerate(draw_params(cid, seed, draws))]


def verify_all(seed: int, draws: int = 5, samples: int = DEFAULT_SAMPLES, workers: int = 1, ids=None) -> list:
    """Every identity at ``draws`` random in-domain parameter points."""
    cases = suite_cases(seed, draws, samples, ids)
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(verify, cases))
    return [verify(c) for c in cases]


def negative_control(seed: int, samples: int = DEFAULT_SAMPLES, shift: float = 0.05,
                     params: dict | None = None) -> VerificationReport:
    """I1 against a deliberately wrong target index ``alpha beta + shift``; expected to fail."""
    p = dict(params or {"alpha": 0.5, "beta": 0.4, "rho": 1.0})
    p["target"] = p["alpha"] * p["beta"] + shift
    return verify(IdentityCase("I1", p, "mc-ks", samples=samples, seed=seed))


__all__ = [
    "METHODS", "VerificationReport", "IdentityCase", "IdentityInfo", "lower_grid", "chebyshev_points",
    "numeric_s", "mixture_eta_by_dilation", "catalog", "verify", "draw_params", "suite_cases",
    "verify_all", "negative_control", "UNVERIFIED",
]

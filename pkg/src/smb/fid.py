"""Free and classical infinite divisibility of Boolean stable mixtures.

The Pick scan inverts ``F`` numerically in logarithmic coordinates
``w = exp(zeta)`` along rays from a large radius, then continues each
solution along arcs to the neighbouring ray.  A law is freely infinitely
divisible exactly when ``F^{-1}`` extends to a single-valued map on the
upper half-plane with ``Im phi <= 0``; the scan therefore reports two kinds
of violation: positive imaginary parts of ``phi`` and arc continuations
that do not land on the ray solution (a branch point of ``F^{-1}`` inside
the scanned annulus).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError
from .measures import ConvexCombination, Measure, delta
from .stable_laws import AdmissiblePair, boolean_stable, cauchy_rho, free_stable

PI = np.pi


# ---------------------------------------------------------------------------
# regions


def fid_region_boolean(pair: AdmissiblePair) -> str:
    """``FID``, ``notFID`` or ``cauchy`` for the class of mixtures of ``b_{alpha,rho}``.

    ``cauchy`` (alpha = 1) means the law itself is freely infinitely
    divisible while its scale mixtures in general are not.
    """
    a, r = pair.alpha, pair.rho
    if a == 1:
        return "cauchy"
    if a <= 0.5:
        return "FID"
    if a <= 2 / 3 and 2 - 1 / a - 1e-15 <= r <= 1 / a - 1 + 1e-15:
        return "FID"
    return "notFID"


# ---------------------------------------------------------------------------
# Pick scans


@dataclass
class PickScanReport:
    points: np.ndarray
    phi: np.ndarray
    max_im_phi: float
    violations: list
    adjacent_violations: int
    monodromy_mismatches: int
    failed_points: list = field(default_factory=list)
    tol: float = 1e-8

    @property
    def verdict(self) -> str:
        return "fail" if (self.adjacent_violations > 0 or self.monodromy_mismatches > 0) else "pass"

    def to_json(self):
        return {"verdict": self.verdict, "max_im_phi": self.max_im_phi,
                "violations": [[p.real, p.imag, v] for p, v in self.violations],
                "adjacent_violations": self.adjacent_violations,
                "monodromy_mismatches": self.monodromy_mismatches,
                "failed_points": [[p.real, p.imag] for p in self.failed_points],
                "grid_size": int(self.points.size), "tol": self.tol}


def default_grid(n_args: int = 20, moduli=None):
    """Arguments ``linspace(0, pi, n_args)`` (both edges included) times moduli."""
    moduli = np.logspace(-1, 2, 10) if moduli is None else np.asarray(moduli, dtype=float)
    return np.linspace(0.0, PI, n_args), np.sort(moduli)


def _count_adjacent(mask: np.ndarray) -> int:
    """Violating grid points that have a violating neighbour (angle or modulus)."""
    nb = np.zeros_like(mask)
    nb[1:, :] |= mask[:-1, :]
    nb[:-1, :] |= mask[1:, :]
    nb[:, 1:] |= mask[:, :-1]
    nb[:, :-1] |= mask[:, 1:]
    return int(np.sum(mask & nb))


def _collect(points, phi, tol, failed, mono):
    im = np.where(np.isfinite(phi.imag), phi.imag, -np.inf)
    mask = im > tol
    viol = [(points[i, j], float(im[i, j])) for i, j in zip(*np.nonzero(mask))]
    return PickScanReport(points, phi, float(np.max(im)), viol, _count_adjacent(mask), mono, failed, tol)


def pick_scan(phi: Callable, n_args: int = 20, moduli=None, tol: float = 1e-8) -> PickScanReport:
    """Scan ``Im phi`` of a single-valued evaluator on the polar grid in the upper half-plane.

    Edge arguments are nudged inside by ``1e-9`` so the grid stays off the
    real line.
    """
    th, r = default_grid(n_args, moduli)
    th = np.clip(th, 1e-9, PI - 1e-9)
    points = r[None, :] * np.exp(1j * th[:, None])
    out = np.full(points.shape, np.nan + 0j)
    failed = []
    for idx, z in np.ndenumerate(points):
        try:
            out[idx] = complex(phi(z))
        except Exception:  # noqa: BLE001 - per-point failures are part of the report
            failed.append(z)
    return _collect(points, out, tol, failed, 0)


def _newton(F, dF, z, zeta, iters=80):
    for _ in range(iters):
        res = F(zeta) - z
        if abs(res) < 1e-13 * max(1.0, abs(z)):
            return zeta, True
        step = res / dF(zeta)
        lam = 1.0
        while True:
            cand = zeta - lam * step
            if abs(F(cand) - z) < abs(res) or lam < 1e-8:
                break
            lam *= 0.5
        zeta = cand
    return zeta, abs(F(zeta) - z) < 1e-9 * max(1.0, abs(z))


def pick_scan_inverse(Fz: Callable, dFz: Callable, n_args: int = 20, moduli=None,
                      tol: float = 1e-8, start_radius: float = 1e4, shrink: float = 0.9,
                      arc_steps: int = 16) -> PickScanReport:
    """Pick scan of ``phi = F^{-1}(z) - z`` from ``F`` in logarithmic coordinates.

    ``Fz(zeta) = F(exp(zeta))`` must be the analytic continuation of ``F``
    (not a conjugate-symmetric extension) and ``dFz`` its derivative in
    ``zeta``.  Rays start at ``start_radius`` where ``F(w) ~ w``.
    """
    th, r = default_grid(n_args, moduli)
    points = r[None, :] * np.exp(1j * th[:, None])
    zeta = np.full(points.shape, np.nan + 0j)
    failed = []
    for i, t in enumerate(th):
        e = np.exp(1j * t)
        cur = np.log(start_radius) + 1j * t
        rad = start_radius
        for j in range(r.size - 1, -1, -1):
            ok = True
            while rad > r[j]:
                rad = max(r[j], rad * shrink)
                cur, ok = _newton(Fz, dFz, rad * e, cur)
            if not ok:
                failed.append(points[i, j])
            zeta[i, j] = cur
    phi = np.exp(zeta) - points
    mono = 0
    for i in range(th.size - 1):
        for j in range(r.size):
            cur = zeta[i, j]
            if not np.isfinite(cur):
                continue
            for s in np.linspace(th[i], th[i + 1], arc_steps + 1)[1:]:
                cur, _ = _newton(Fz, dFz, r[j] * np.exp(1j * s), cur)
            if abs(np.exp(cur) - np.exp(zeta[i + 1, j])) > 1e-7 * (1 + r[j]):
                mono += 1
    return _collect(points, phi, tol, failed, mono)


def boolean_F_log(pair: AdmissiblePair):
    """``F(exp(zeta)) = exp(zeta) + e^{i alpha rho pi} exp((1-alpha) zeta)`` and its derivative."""
    a, r = pair.alpha, pair.rho
    c = np.exp(1j * a * r * PI)
    return (lambda z: np.exp(z) + c * np.exp((1 - a) * z),
            lambda z: np.exp(z) + c * (1 - a) * np.exp((1 - a) * z))


def scan_boolean(pair: AdmissiblePair, **kw) -> PickScanReport:
    F, dF = boolean_F_log(pair)
    return pick_scan_inverse(F, dF, **kw)


def rational_F_log(G: Callable, dG: Callable):
    """Log-coordinate ``F`` for a Cauchy transform given by a rational function."""
    F = lambda z: 1.0 / G(np.exp(z))
    dF = lambda z: -dG(np.exp(z)) * np.exp(z) / G(np.exp(z)) ** 2
    return F, dF


def tanh_sinh_nodes(h: float = 1 / 32, span: float = 6.0):
    """Nodes ``v``, ``1 - v`` and weights of tanh-sinh quadrature on ``(0, 1)``."""
    k = np.arange(-int(span / h), int(span / h) + 1) * h
    u = 0.5 * PI * np.sinh(k)
    v = 0.5 * (1 + np.tanh(u))
    one_minus = 0.5 * np.exp(-u) / np.cosh(u)
    w = 0.25 * h * PI * np.cosh(k) / np.cosh(u) ** 2
    keep = (v > 0) & (one_minus > 0) & (w > 1e-300)
    return v[keep], one_minus[keep], w[keep]


def quantile_eta(quantile: Callable):
    """Eta transform of the law with quantile function ``Q(v, 1 - v)``.

    The Cauchy transform ``int_0^1 dv / (z - Q(v))`` is computed with fixed
    tanh-sinh nodes, which keeps every evaluation analytic in ``z``.
    """
    v, omv, w = tanh_sinh_nodes()
    Q = quantile(v, omv)

    def eta(u):
        g = np.sum(w / (1.0 / u - Q))
        return 1.0 - u / g

    return eta


def mixture_F_log(eta_mixing: Callable, pair: AdmissiblePair, h: float = 1e-6):
    """``F(exp(zeta))`` of a scale mixture with mixing eta ``eta_mixing``, continued in ``zeta``."""
    a, r = pair.alpha, pair.rho
    F = lambda z: np.exp(z) * (1.0 - eta_mixing(-np.exp(a * (1j * r * PI - z))))
    dF = lambda z: (F(z + h) - F(z - h)) / (2 * h)
    return F, dF


def scan_mixture(eta_mixing: Callable, pair: AdmissiblePair, **kw) -> PickScanReport:
    return pick_scan_inverse(*mixture_F_log(eta_mixing, pair), **kw)


# ---------------------------------------------------------------------------
# lambda family: t delta_0 + (1 - t) c_rho


@dataclass(frozen=True)
class LambdaParams:
    t: float
    rho: float

    def __post_init__(self):
        if not (0 <= self.t <= 1 and 0 <= self.rho <= 1):
            raise DomainError("lambda family needs t, rho in [0, 1]")


def lambda_measure(p: LambdaParams) -> Measure:
    if p.t == 1:
        return delta(0.0)
    if p.t == 0:
        return cauchy_rho(p.rho)
    return ConvexCombination([(p.t, delta(0.0)), (1 - p.t, cauchy_rho(p.rho))])


def lambda_cauchy(p: LambdaParams, c: float = 1.0):
    """Cauchy transform of ``D_c lambda_{t,rho}`` and its derivative, as rational functions."""
    e = np.exp(1j * p.rho * PI)
    t = p.t
    G = lambda w: (t / (w / c) + (1 - t) / (w / c + e)) / c
    dG = lambda w: (-t / (w / c) ** 2 - (1 - t) / (w / c + e) ** 2) / c ** 2
    return G, dG


def _sqrt_upper_cut(x):
    """Square root with arguments taken in ``(0, 2 pi)``."""
    x = np.asarray(x, dtype=complex)
    ang = np.mod(np.angle(x), 2 * PI)
    return np.sqrt(np.abs(x)) * np.exp(0.5j * ang)


def lambda_phi(p: LambdaParams, z):
    """Closed Voiculescu transform of ``lambda_{t,rho}`` on the upper half-plane."""
    if not (0 < p.t < 1 and 0 < p.rho < 1):
        raise DomainError("closed phi needs t, rho in (0, 1)")
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise DomainError("phi is evaluated on the upper half-plane")
    e = np.exp(1j * p.rho * PI)
    disc = z * z + 2 * (2 * p.t - 1) * e * z + e * e
    if np.any(np.abs(disc) < 1e-14 * (1 + np.abs(z) ** 2)):
        raise DomainError("z is a branch point of phi")
    return 0.5 * (-z - e + _sqrt_upper_cut(disc))


def lambda_fid(p: LambdaParams) -> bool:
    return p.t == 0 or (p.t >= 0.5 and abs(np.cos(p.rho * PI)) <= 2 * p.t - 1 + 1e-15)


def _exact_cos_pi(rho):
    """``cos(rho pi)`` as a Fraction when it is rational, else None."""
    r = Fraction(rho).limit_denominator(1000) if not isinstance(rho, Fraction) else rho
    if abs(float(r) - float(rho)) > 1e-15:
        return None
    r = r % 2
    table = {Fraction(0): 1, Fraction(1, 3): Fraction(1, 2), Fraction(1, 2): 0,
             Fraction(2, 3): Fraction(-1, 2), Fraction(1): -1, Fraction(4, 3): Fraction(-1, 2),
             Fraction(3, 2): 0, Fraction(5, 3): Fraction(1, 2)}
    return Fraction(table[r]) if r in table else None


def lambda_indicator(p: LambdaParams):
    """Free divisibility indicator ``t/(1-t) tan^2(rho' pi / 2)``, ``rho' = min(rho, 1-rho)``.

    Returned as a Fraction when the value is rational, ``inf`` for
    ``t in {0, 1}``.
    """
    t, rho = p.t, p.rho
    if t in (0, 1):
        return float("inf")
    rr = rho if rho <= 0.5 else 1 - rho
    c = _exact_cos_pi(rr)
    tf = Fraction(t).limit_denominator(10 ** 6)
    if c is not None and abs(float(tf) - t) < 1e-15:
        # tan^2(x/2) = (1 - cos x) / (1 + cos x)
        return tf / (1 - tf) * (1 - c) / (1 + c)
    return t / (1 - t) * np.tan(rr * PI / 2) ** 2


def lambda_boolean_power(p: LambdaParams, u: float):
    """``lambda^{(+)u} = D_c lambda_{t/c, rho}`` with ``c = (1-t) u + t``: returns ``(c, params)``."""
    if u <= 0:
        raise DomainError("Boolean power needs u > 0")
    c = (1 - p.t) * u + p.t
    return c, LambdaParams(p.t / c, p.rho)


def lambda_eta(p: LambdaParams, z, c: float = 1.0):
    """Eta transform of ``D_c lambda_{t,rho}`` from its rational Cauchy transform."""
    G, _ = lambda_cauchy(p, c)
    z = np.asarray(z, dtype=complex)
    return 1.0 - 1.0 / G(1.0 / z) * z


def scan_lambda_power(p: LambdaParams, u: float, **kw) -> PickScanReport:
    c, q = lambda_boolean_power(p, u)
    F, dF = rational_F_log(*lambda_cauchy(q, c))
    return pick_scan_inverse(F, dF, **kw)


# ---------------------------------------------------------------------------
# classical infinite divisibility counterexample


@dataclass(frozen=True)
class CharZero:
    rho: float
    p: float
    z0: float
    modulus: float

    def to_json(self):
        return {"rho": self.rho, "p": self.p, "z0": self.z0, "abs_char_fn": self.modulus}


def char_fn_atom_cauchy(p: float, rho: float, z):
    """Characteristic function ``E e^{izX}`` of ``p delta_0 + (1-p) c_rho``."""
    z = np.asarray(z, dtype=float)
    return p + (1 - p) * np.exp(-1j * np.cos(rho * PI) * z - np.sin(rho * PI) * np.abs(z))


def char_zero_counterexample(rho: float) -> CharZero:
    """Zero of the characteristic function of ``p delta_0 + (1-p) c_rho`` at ``pi / cos(rho pi)``.

    With ``p = 1 / (1 + exp(pi |tan rho pi|))`` the two terms cancel, so the
    law is not classically infinitely divisible.
    """
    if not 0 < rho < 1:
        raise DomainError("rho must lie in (0, 1)")
    if abs(rho - 0.5) < 1e-9:
        raise DomainError("rho = 1/2 has no zero (tan pole)")
    tn = abs(np.tan(rho * PI))
    p = 1.0 / (1.0 + np.exp(PI * tn))
    z0 = PI / np.cos(rho * PI)
    return CharZero(rho, float(p), float(z0), float(abs(char_fn_atom_cauchy(p, rho, z0))))


def char_zero_measure(rho: float) -> Measure:
    ce = char_zero_counterexample(rho)
    return ConvexCombination([(ce.p, delta(0.0)), (1 - ce.p, cauchy_rho(rho))])


# ---------------------------------------------------------------------------
# constants, unimodality, complete monotonicity


def alpha0() -> float:
    """Root of ``sin(pi x) = x`` in ``(0, 1)``."""
    return brentq(lambda x: np.sin(PI * x) - x, 0.5, 0.99, xtol=1e-15)


def alpha1() -> float:
    a = alpha0()
    return a / (1 + a)


def _default_axis():
    return np.geomspace(1e-6, 1e6, 400)


def unimodal_mode0_check(density: Callable, grid=None, two_sided: bool = True,
                         slack: float = 1e-9) -> bool:
    """True when the density is non-increasing on ``x > 0`` and non-decreasing on ``x < 0``."""
    g = _default_axis() if grid is None else np.sort(np.asarray(grid, dtype=float))
    g = g[g > 0]
    for sgn in ((1.0, -1.0) if two_sided else (1.0,)):
        v = np.asarray(density(sgn * g), dtype=float)
        if np.any(np.diff(v) > slack * np.maximum(1.0, np.abs(v[:-1]))):
            return False
    return True


@dataclass
class CMReport:
    consistent: bool
    violated_at: list
    label: str = "heuristic: necessary condition only"


def complete_monotone_heuristic(density: Callable, order: int = 6, grid=None,
                                step: float = 0.25) -> CMReport:
    """Sign test of forward differences ``(-1)^k Delta_h^k f(x) >= 0``, ``k <= order``.

    Completely monotone functions satisfy the inequality for every ``h > 0``
    exactly, so a violation refutes complete monotonicity; passing certifies
    nothing.
    """
    if not 1 <= order <= 6:
        raise DomainError("order must be between 1 and 6")
    g = np.geomspace(1e-4, 1e4, 200) if grid is None else np.asarray(grid, dtype=float)
    bad = []
    for x in g:
        h = step * x
        vals = np.asarray(density(x + h * np.arange(order + 1)), dtype=float)
        scale = np.max(np.abs(vals))
        d = vals.copy()
        for k in range(1, order + 1):
            d = d[1:] - d[:-1]
            if (-1) ** k * d[0] < -1e-12 * scale:
                bad.append((float(x), k))
                break
    return CMReport(not bad, bad)


# ---------------------------------------------------------------------------
# free Jurek class spot check


def jurek_levy_samples(alpha: float, n: int, seed: int) -> np.ndarray:
    """Samples of the Levy measure ``(f_{1-alpha,1})^{1/beta} (.) b_{beta,1}``, ``beta = alpha/(1-alpha)``."""
    from .sampler import boolean_stable_variates, chunked

    if not 0 < alpha < 0.5:
        raise DomainError("the Levy measure representation needs alpha < 1/2")
    beta = alpha / (1 - alpha)
    f = free_stable(1 - alpha, 1.0)

    def draw(k, g):
        return f.sample(k, g) ** (1 / beta) * boolean_stable_variates(beta, 1.0, k, g)

    return chunked(draw, n, seed)


def histogram_mode0_check(samples, bins: int = 40, lo_q: float = 0.001, hi_q: float = 0.95,
                          z: float = 3.0) -> bool:
    """Mode-0 unimodality of positive samples from a log-binned histogram.

    Adjacent bin densities may increase only within ``z`` standard errors.
    """
    x = np.asarray(samples, dtype=float)
    x = x[x > 0]
    edges = np.geomspace(np.quantile(x, lo_q), np.quantile(x, hi_q), bins + 1)
    counts, _ = np.histogram(x, edges)
    width = np.diff(edges)
    dens = counts / (x.size * width)
    err = np.sqrt(np.maximum(counts, 1)) / (x.size * width)
    rise = dens[1:] - dens[:-1]
    return bool(np.all(rise <= z * np.hypot(err[1:], err[:-1])))


def jurek_check(alpha: float, n: int = 100_000, seed: int = 0) -> dict:
    """Mode-0 unimodality evidence for the free Jurek class at ``rho = 1``."""
    beta = alpha / (1 - alpha)
    b = boolean_stable(beta, 1.0) if beta < 1 else None
    out = {"alpha": alpha, "beta": beta, "alpha1": alpha1()}
    if b is not None:
        out["b_beta_mode0"] = unimodal_mode0_check(b.density, two_sided=False)
    if alpha < 0.5:
        out["levy_mode0"] = histogram_mode0_check(jurek_levy_samples(alpha, n, seed))
    return out


__all__ = [
    "fid_region_boolean", "PickScanReport", "default_grid", "pick_scan", "pick_scan_inverse",
    "boolean_F_log", "scan_boolean", "tanh_sinh_nodes", "quantile_eta", "mixture_F_log",
    "scan_mixture", "rational_F_log", "LambdaParams", "lambda_measure",
    "lambda_cauchy", "lambda_phi", "lambda_fid", "lambda_indicator", "lambda_boolean_power",
    "lambda_eta", "scan_lambda_power", "CharZero", "char_fn_atom_cauchy",
    "char_zero_counterexample", "char_zero_measure", "alpha0", "alpha1", "unimodal_mode0_check",
    "CMReport", "complete_monotone_heuristic", "jurek_levy_samples", "histogram_mode0_check",
    "jurek_check",
]

"""Analytic transforms of measures and recovery of measures from transforms.

For a probability measure ``mu``:

    G(z)   = int mu(dx) / (z - x)              Cauchy transform
    F(z)   = 1 / G(z)
    eta(z) = 1 - z F(1/z)                      Boolean cumulant transform
    Sigma(w) = eta^{-1}(w) / w,  S(z) = Sigma(z / (1 + z))
    phi(z) = F^{-1}(z) - z                     Voiculescu transform

Closed forms are used whenever the measure provides them; every transform
also has a quadrature path so that the two can be compared.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NumericalFailure, UnsupportedParameter
from .measures import Atomic, GridDensity, Measure, TransformDefined, _richardson
from .stable_laws import (
    AdmissiblePair, BooleanStable, FreeStable, MarchenkoPastur, MonotoneStable,
    StableFamily, classical_stable_cumulant, family_transform,
)

TRANSFORM_KINDS = ("CauchyG", "FTrans", "Eta", "Sigma", "STrans", "VoiculescuPhi",
                   "ClassicalCumulant")


@dataclass(frozen=True)
class TransformEvaluator:
    """A complex function attached to a measure, with a declared domain.

    ``domain`` is one of ``upper`` (open upper half-plane), ``lower``,
    ``off_real`` (both open half-planes), ``neg_real`` (open negative
    half-line), ``interval`` (real interval ``bounds``) or ``cone``
    (``|Re z| < a Im z``, ``Im z > b`` with ``bounds = (a, b)``).
    """

    kind: str
    fn: Callable
    source: object = None
    domain: str = "off_real"
    bounds: tuple = ()

    def __post_init__(self):
        if self.kind not in TRANSFORM_KINDS:
            raise DomainError(f"unknown transform kind {self.kind!r}")

    def check(self, z):
        z = np.asarray(z, dtype=complex)
        d = self.domain
        if d == "upper":
            ok = z.imag > 0
        elif d == "lower":
            ok = z.imag < 0
        elif d == "off_real":
            ok = z.imag != 0
        elif d == "neg_real":
            ok = (z.imag == 0) & (z.real < 0)
        elif d == "interval":
            lo, hi = self.bounds
            ok = (z.imag == 0) & (z.real > lo) & (z.real < hi)
        elif d == "cone":
            a, b = self.bounds
            ok = (np.abs(z.real) < a * z.imag) & (z.imag > b)
        else:
            ok = np.ones(z.shape, bool)
        if not np.all(ok):
            raise DomainError(f"{self.kind} evaluated outside its domain ({d})")
        return z

    def __call__(self, z):
        return self.fn(self.check(z))


# ---------------------------------------------------------------------------
# G, F, eta


def _check_eta_point(m: Measure, z):
    z = np.asarray(z, dtype=complex)
    real = z.imag == 0
    if np.any(real):
        zr = z.real[real]
        ok = ((m.support_sign == "pos") & (zr < 0)) | ((m.support_sign == "neg") & (zr > 0))
        if not np.all(ok):
            raise DomainError("eta on the real axis needs a one-sided measure and the opposite half-line")
    return z


def cauchy(m: Measure, z, q=None, closed: bool = True):
    """Cauchy transform ``G_m(z)``; off the real line or off the support."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag == 0):
        zr = z.real[z.imag == 0]
        ok = ((m.support_sign == "pos") & (zr < 0)) | ((m.support_sign == "neg") & (zr > 0))
        if not np.all(ok):
            raise DomainError("Cauchy transform on the real axis only off a one-sided support")
    if closed:
        return m.cauchy(z, q)
    return m.cauchy_quad(z, q)


def f_transform(m: Measure, z, q=None, closed: bool = True):
    g = cauchy(m, z, q, closed)
    if np.any(g == 0):
        raise NumericalFailure("Cauchy transform vanished", estimate=g)
    return 1.0 / g


def eta(m: Measure, z, q=None, closed: bool = True):
    """Boolean cumulant transform ``1 - z F(1/z)``."""
    z = _check_eta_point(m, z)
    if np.any(z == 0):
        raise DomainError("eta is evaluated away from 0")
    if closed:
        e = m.eta_closed(z)
        if e is not None:
            return e
    return 1.0 - z * f_transform(m, 1.0 / z, q, closed)


# ---------------------------------------------------------------------------
# eta inverse, Sigma, S


def _closed_sigma(m):
    """Closed Sigma transform of a catalog measure, or None."""
    if isinstance(m, MarchenkoPastur):
        return lambda w: family_transform("mp", "sigma", w)
    for cls, kind in ((BooleanStable, "boolean"), (FreeStable, "free"), (MonotoneStable, "monotone")):
        if isinstance(m, cls) and m.rho in (0.0, 0.5, 1.0):
            fam = StableFamily(kind, m.pair)
            return lambda w, fam=fam: family_transform(fam, "sigma", w)
    if isinstance(m, Atomic) and len(m.atoms) == 1 and m.atoms[0][0] > 0:
        a = m.atoms[0][0]
        return lambda w, a=a: np.full(np.shape(w), 1.0 / a, dtype=complex)
    return None


def _axis(m: Measure):
    """Axis on which eta is inverted: (direction, sign of eta values)."""
    if m.support_sign == "pos":
        return -1.0 + 0j
    if m.support_sign == "neg":
        return 1.0 + 0j
    if m.symmetric:
        return -1j
    raise UnsupportedParameter("eta inverse needs a measure on a half-line or a symmetric measure")


def eta_inverse(m: Measure, w: float, q=None, closed: bool = True):
    """Unique point ``z`` on the inversion axis with ``eta_m(z) = w``.

    The axis is ``(-inf, 0)`` for measures on ``[0, inf)``, ``(0, inf)`` for
    measures on ``(-inf, 0]`` and ``i(-inf, 0)`` for symmetric measures; in
    all three cases eta takes real values in ``(1 - 1/m({0}), 0)`` there.
    """
    w = float(w)
    if m.atoms == ((0.0, 1.0),):
        raise DomainError("eta inverse of delta_0 is undefined")
    p0 = m.zero_mass
    lower = 1.0 - 1.0 / p0 if p0 > 0 else -np.inf
    if not (lower < w < 0):
        raise DomainError(f"w={w} outside ({lower}, 0)")
    d = _axis(m)

    def h(t):
        val = eta(m, np.array([d * t]), q, closed)[0]
        return float(val.real)

    lo, hi = 1.0, 1.0
    for _ in range(400):
        if h(hi) > w:
            break
        hi *= 0.5
    else:
        raise DomainError("could not bracket eta inverse near 0")
    for _ in range(400):
        if h(lo) < w:
            break
        lo *= 2.0
    else:
        raise DomainError("could not bracket eta inverse at infinity")
    if not h(lo) < h(hi):
        raise NumericalFailure("eta is not monotone on the inversion axis")
    t = brentq(lambda s: h(s) - w, hi, lo, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    return d * t if d.imag else float((d * t).real)


def sigma(m: Measure, w: float, q=None, closed: bool = True):
    """``Sigma_m(w) = eta^{-1}(w) / w``."""
    if closed:
        s = _closed_sigma(m)
        if s is not None:
            return complex(np.asarray(s(np.array([w], dtype=complex)))[0])
    return complex(eta_inverse(m, w, q, closed)) / w


def s_transform(m: Measure, z: float, q=None, closed: bool = True):
    """``S_m(z) = Sigma_m(z / (1 + z))`` for ``z`` in ``(-1 + m({0}), 0)``."""
    z = float(z)
    if not (-1.0 + m.zero_mass < z < 0):
        raise DomainError(f"S transform evaluated at {z} outside (-1 + m({{0}}), 0)")
    return sigma(m, z / (1.0 + z), q, closed)


# ---------------------------------------------------------------------------
# Voiculescu transform


def scale_estimate(m: Measure, q=None) -> float:
    """Typical magnitude ``(E|X|^k)^(1/k)`` with ``k`` inside the moment range."""
    lo, hi = m.moment_range()
    k = min(1.0, 0.5 * hi) if hi > 0 else 0.5
    if np.isfinite(hi) and hi <= 0:
        return 1.0
    val = float(np.real(m.integrate(lambda x: np.abs(x) ** k, q)))
    return val ** (1.0 / k) if val > 0 else 1.0


@dataclass
class PhiResult:
    value: complex
    w: complex
    residual: float
    continued: bool


def invert_F(F: Callable, z: complex, start_radius: float | None = None, shrink: float = 0.9,
             tol: float = 1e-12, max_iter: int = 50):
    """Solve ``F(w) = z`` by damped Newton continued along the ray through ``z``.

    Starts at ``w = z R/|z|`` with ``R = start_radius`` (where ``F(w) ~ w``)
    and moves the target inward by the factor ``shrink``.
    """
    z = complex(z)
    R = max(abs(z), start_radius or abs(z))
    direction = z / abs(z)
    target = direction * R
    w = target
    continued = R > abs(z)

    def dF(v):
        h = 1e-6 * max(abs(v), 1e-8)
        return (F(v + h) - F(v - h)) / (2 * h)

    while True:
        w = _newton(F, dF, target, w, tol, max_iter)
        if abs(target) <= abs(z) * (1 + 1e-15):
            break
        nxt = max(abs(target) * shrink, abs(z))
        new_target = direction * nxt
        w = w + (new_target - target)
        target = new_target
    res = abs(F(w) - z)
    if res > 1e-8 * max(1.0, abs(z)):
        raise NumericalFailure(f"F inversion residual {res:.3g} at z={z}", estimate=w, error=res)
    return w, res, continued


def _newton(F, dF, z, w, tol, max_iter):
    r = F(w) - z
    for _ in range(max_iter):
        if abs(r) <= tol * max(1.0, abs(z)):
            return w
        step = r / dF(w)
        lam = 1.0
        while True:
            cand = w - lam * step
            rc = F(cand) - z
            if abs(rc) < abs(r) or lam < 1e-10:
                break
            lam *= 0.5
        w, r = cand, rc
    return w


def voiculescu_phi(m: Measure, z, cone=(1.0, None), q=None, closed: bool = True,
                   report: bool = False):
    """``phi_m(z) = F_m^{-1}(z) - z`` on a truncated cone.

    ``cone = (a, b)`` means ``|Re z| < a Im z`` and ``Im z > b``.  The default
    ``b`` is four times :func:`scale_estimate`.  Closed forms are used for
    free stable laws and atoms; otherwise Newton inversion of ``F``.
    """
    z = complex(z)
    a, b = cone
    if b is None:
        b = 4.0 * scale_estimate(m, q) if not (closed and _closed_phi(m)) else 0.0
    if not (abs(z.real) < a * z.imag and z.imag > b):
        raise DomainError(f"z={z} outside the cone |Re z| < {a} Im z, Im z > {b}")
    if closed:
        ph = _closed_phi(m)
        if ph is not None:
            val = complex(np.asarray(ph(np.array([z])))[0])
            return PhiResult(val, val + z, 0.0, False) if report else val
    F = lambda w: complex(f_transform(m, np.array([w]), q, closed)[0])
    w, res, cont = invert_F(F, z, start_radius=max(abs(z), 1e3 * max(b, 1.0)))
    out = PhiResult(w - z, w, res, cont)
    return out if report else out.value


def _closed_phi(m):
    if isinstance(m, FreeStable):
        return m.phi_closed
    if isinstance(m, Atomic) and len(m.atoms) == 1:
        a = m.atoms[0][0]
        return lambda z, a=a: np.full(np.shape(z), a, dtype=complex)
    return None


# ---------------------------------------------------------------------------
# recovery


def eta_probe(fn: Callable, n: int = 24, tol: float = 1e-9) -> None:
    """Check that ``fn`` behaves as the eta transform of a probability measure.

    With ``F(w) = w (1 - fn(1/w))`` we need ``Im F(w) >= Im w`` on the upper
    half-plane and ``F(iy)/(iy) -> 1``.
    """
    r = np.geomspace(1e-3, 1e3, n)
    th = np.linspace(0.05, np.pi - 0.05, 7)
    w = (r[:, None] * np.exp(1j * th[None, :])).ravel()
    F = w * (1.0 - fn(np.conj(1.0 / w)).conj())
    if np.any(~np.isfinite(F)):
        raise DomainError("not an eta transform: non-finite values on the probe grid")
    if np.any(F.imag < w.imag - tol * np.maximum(1.0, np.abs(w))):
        raise DomainError("not an eta transform: Im F(w) < Im w somewhere in the upper half-plane")
    # eta(-i/y) must decay to 0; slowly varying cases are accepted when the
    # modulus keeps decreasing over many decades
    ys = 10.0 ** np.array([4.0, 16.0, 64.0, 200.0])
    vals = np.abs(fn(np.conj(1.0 / (1j * ys))))
    if not np.all(np.isfinite(vals)):
        raise DomainError("not an eta transform: non-finite values near 0")
    decaying = np.all(np.diff(vals) < 0) and vals[-1] < 0.999 * vals[0]
    if not (vals[-1] <= 1e-3 or decaying):
        raise DomainError("not an eta transform: F(iy)/(iy) does not tend to 1")


def recover_from_eta(e, nodes: int = 400, span=(1e-4, 1e4), support: str = "auto",
                     eps0: float = 1e-2, levels: int = 4) -> GridDensity:
    """Recover a measure from its eta transform.

    ``e`` is a callable (or :class:`TransformEvaluator` of kind ``Eta``)
    valid on the lower half-plane.  Atoms are located as real zeros of
    ``F``; the remaining density is obtained by Stieltjes inversion on
    ``nodes`` log-spaced abscissae per half-line.
    """
    fn = e.fn if isinstance(e, TransformEvaluator) else e
    from .measures import _conj_sym

    eta_fn = lambda z: _conj_sym(fn, z, upper=False)
    eta_probe(eta_fn)

    def F(w):
        w = np.asarray(w, dtype=complex)
        return w * (1.0 - eta_fn(1.0 / w))

    xs = np.geomspace(span[0], span[1], nodes)
    atoms = _find_atoms(F, xs)

    def G_ac(z):
        z = np.asarray(z, dtype=complex)
        g = 1.0 / F(z)
        for a, wgt in atoms:
            g = g - wgt / (z - a)
        return g

    sides = {}
    for key, sgn in (("pos", 1.0), ("neg", -1.0)):
        if support not in ("auto", "both", key):
            continue
        x = sgn * xs
        eps = eps0 * np.abs(x)[:, None] * 2.0 ** (-np.arange(levels))[None, :]
        vals = -np.imag(G_ac(x[:, None] + 1j * eps)) / np.pi
        dens = np.array([_richardson(eps[i], vals[i], strict=False) for i in range(x.size)])
        dens = np.maximum(dens, 0.0)
        if np.max(dens * xs) < 1e-12:
            continue
        sides[key] = dens
    kw = {}
    for key, dens in sides.items():
        p = np.maximum(dens, 1e-300)
        lx, lp = np.log(xs), np.log(p)
        e0 = float(np.polyfit(lx[:10], lp[:10], 1)[0])
        einf = float(np.polyfit(lx[-10:], lp[-10:], 1)[0])
        kw[key] = (xs, dens)
        kw["exponents_" + key] = (max(e0, -1.0 + 1e-6), min(einf, -1.0 - 1e-6))
    return GridDensity(atoms=atoms, **kw)


def _find_atoms(F, xs):
    grid = np.concatenate([-xs[::-1], [0.0], xs])
    delta = 1e-9 * (1.0 + np.abs(grid))
    vals = F(grid + 1j * delta)
    atoms = []
    for i in range(grid.size - 1):
        a, b = vals[i], vals[i + 1]
        if np.sign(a.real) == np.sign(b.real) and a.real != 0:
            continue
        if max(abs(a.imag), abs(b.imag)) > 1e-6 * (1 + abs(grid[i])):
            continue
        f = lambda x: float(F(np.array([x + 1j * 1e-12 * (1 + abs(x))]))[0].real)
        if a.real == 0:
            root = grid[i]
        else:
            root = brentq(f, grid[i], grid[i + 1], xtol=1e-15)
        h = 1e-7 * (1 + abs(root))
        dF = float(F(np.array([root + 1j * h]))[0].imag) / h
        if dF > 0:
            wgt = 1.0 / dF
            if wgt > 1e-10 and not any(abs(root - r) < 1e-9 for r, _ in atoms):
                atoms.append((float(root), float(wgt)))
    return atoms


def recover_measure(m: TransformDefined, **kw) -> GridDensity:
    """Grid recovery for a :class:`TransformDefined` measure."""
    support = kw.pop("support", "auto" if m.support_sign == "both" else m.support_sign)
    return recover_from_eta(lambda z: m.eta_closed(z), support=support, **kw)


def eta_evaluator(m: Measure, closed: bool = True, q=None) -> TransformEvaluator:
    return TransformEvaluator("Eta", lambda z: eta(m, z, q, closed), m, "off_real")


def cauchy_evaluator(m: Measure, closed: bool = True, q=None) -> TransformEvaluator:
    return TransformEvaluator("CauchyG", lambda z: cauchy(m, z, q, closed), m, "upper")


__all__ = [
    "TransformEvaluator", "cauchy", "f_transform", "eta", "eta_inverse", "sigma", "s_transform",
    "voiculescu_phi", "invert_F", "classical_stable_cumulant", "recover_from_eta", "eta_probe",
    "scale_estimate", "eta_evaluator", "cauchy_evaluator", "AdmissiblePair",
]

"""Probability measures on the real line and their elementary calculus.

Four concrete kinds of measure are provided:

* :class:`Atomic` -- finitely many point masses;
* :class:`FamilyDensity` -- a named closed-form family (subclassed in
  :mod:`smb.stable_laws` and :mod:`smb.lln`);
* :class:`GridDensity` -- tabulated density with power-law tails (optionally
  carrying atoms, e.g. after recovery from a transform);
* :class:`TransformDefined` -- a measure known only through its Cauchy
  transform or its eta transform.

Derived measures (dilation, powers, symmetrization, scale mixtures) pull
integrals back to their base measure, so no accuracy is lost by composing
them.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad_vec
from scipy.interpolate import PchipInterpolator
from scipy.signal import fftconvolve

from .errors import DomainError, NumericalFailure, UnsupportedParameter

ATOM_SUM_TOL = 1e-12


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for adaptive quadrature.

    ``tail_scale`` is the split point between the near-zero and the
    far-tail parts of a half-line.
    """

    epsabs: float = 1e-13
    epsrel: float = 1e-11
    limit: int = 2000
    tail_scale: float = 1.0

    def __post_init__(self):
        if not (self.epsabs > 0 and self.epsrel > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.limit < 1 or not self.tail_scale > 0:
            raise DomainError("invalid quadrature limits")

    @classmethod
    def default(cls) -> "QuadratureSpec":
        env = os.environ.get("SMB_QUAD_TOL")
        if env:
            tol = float(env)
            if not (np.isfinite(tol) and tol > 0):
                raise DomainError("SMB_QUAD_TOL must be a positive number")
            return cls(epsabs=tol * 1e-2, epsrel=tol)
        return cls()


def _q(q):
    return QuadratureSpec.default() if q is None else q


# ---------------------------------------------------------------------------
# quadrature kernels


def _as_real_vector(f):
    """Wrap ``f`` so it returns a flat real vector; remember the shape."""
    meta = {}

    def g(x):
        v = np.asarray(f(x))
        if "shape" not in meta:
            meta["shape"] = v.shape
            meta["complex"] = np.iscomplexobj(v)
        v = v.ravel()
        if meta["complex"]:
            return np.concatenate([v.real, v.imag])
        return v.astype(float)

    def unpack(r):
        if meta["complex"]:
            n = r.size // 2
            r = r[:n] + 1j * r[n:]
        return r.reshape(meta["shape"])

    return g, unpack


def _quad(g, a, b, q, points=None):
    res, err, info = quad_vec(
        g, a, b, epsabs=q.epsabs, epsrel=q.epsrel, limit=q.limit, points=points,
        full_output=True,
    )
    if info.status != 0:
        raise NumericalFailure(
            f"quadrature on [{a}, {b}] stopped: {info.message}", estimate=res,
            error=float(np.max(np.abs(err))),
        )
    return res


def integrate_segment(h, a, b, e_a=0.0, e_b=0.0, q=None, points=()):
    """Integrate ``h`` (vector valued) over ``[a, b]``.

    ``e_a`` and ``e_b`` describe the integrand's power behaviour at each end:
    ``|x - a|**e_a`` at a finite end, ``|x|**e_b`` (a decay exponent below
    -1) at an infinite end.  Power substitutions flatten these ends so the
    Gauss-Kronrod rule sees a smooth integrand.
    """
    q = _q(q)
    g, unpack = _as_real_vector(h)
    if a >= b:
        return unpack(np.zeros_like(g(a if np.isfinite(a) else b)))
    inner = sorted(p for p in points if a < p < b)
    if inner:
        cuts = [a] + inner + [b]
        exps = [e_a] + [0.0] * len(inner) + [e_b]
        total = 0
        for lo, hi, el, eh in zip(cuts[:-1], cuts[1:], exps[:-1], exps[1:]):
            total = total + integrate_segment(h, lo, hi, el, eh, q)
        return total
    if np.isinf(a) and np.isinf(b):
        return integrate_segment(h, a, 0.0, e_a, 0.0, q) + integrate_segment(h, 0.0, b, 0.0, e_b, q)
    if np.isinf(a):
        # reflect onto [-b, inf)
        return integrate_segment(lambda x: h(-x), -b, np.inf, e_b, e_a, q)
    if np.isinf(b):
        c = a + q.tail_scale
        acc = _near_end(g, a, c, e_a, q)
        m = 1.0 / (-e_b - 1.0) if e_b < -1.0 else 1.0
        s = c - a

        def far(v):
            if v <= 0:
                return np.zeros_like(g(c))
            x = a + s * v ** (-m)
            return g(x) * (s * m * v ** (-m - 1.0))

        acc = acc + _quad(far, 0.0, 1.0, q)
        return unpack(acc)
    c = np.sqrt(a * b) if a > 0 and b / a > 10 else 0.5 * (a + b)
    acc = _near_end(g, a, c, e_a, q) + _near_end(lambda x: g(x), b, c, e_b, q)
    return unpack(acc)


def _near_end(g, end, other, e, q):
    """Integral of ``g`` between ``end`` and ``other`` (oriented from low to high)."""
    sign = 1.0 if other > end else -1.0
    s = abs(other - end)
    m = 1.0 / (1.0 + e) if (e != 0 and e > -1) else 1.0

    def mapped(v):
        if v <= 0 and m != 1.0:
            return np.zeros_like(g(end + sign * s * 0.5))
        x = end + sign * s * v ** m
        return g(x) * (s * m * v ** (m - 1.0)) if m != 1.0 else g(x) * s

    return _quad(mapped, 0.0, 1.0, q)


# ---------------------------------------------------------------------------
# measure model


@dataclass(frozen=True)
class Segment:
    """Support interval of a density with end exponents (see integrate_segment)."""

    lo: float
    hi: float
    e_lo: float = 0.0
    e_hi: float = 0.0
    points: tuple = ()


class Measure:
    """Base class.  Subclasses supply atoms, a density and its segments."""

    #: sign of the support: "pos", "neg" or "both"
    support_sign = "both"
    #: True when the measure is invariant under x -> -x
    symmetric = False

    # -- structure ------------------------------------------------------
    @property
    def atoms(self) -> tuple:
        return ()

    @property
    def atom_mass(self) -> float:
        return float(sum(w for _, w in self.atoms))

    @property
    def zero_mass(self) -> float:
        return float(sum(w for x, w in self.atoms if x == 0))

    def density(self, x):
        """Density of the absolutely continuous part (0 when absent)."""
        return np.zeros_like(np.asarray(x, dtype=float))

    def segments(self) -> list:
        return []

    def moment_range(self) -> tuple:
        """Open interval (lo, hi) of exponents k with finite E|X|^k."""
        return (-np.inf, np.inf)

    # -- integration ----------------------------------------------------
    def integrate(self, f, q=None, points=()):
        """Integral of ``f`` against the measure; ``f`` may be vector valued."""
        total = 0
        for x, w in self.atoms:
            total = total + np.asarray(f(x)) * w
        for seg in self.segments():
            pts = tuple(seg.points) + tuple(points)
            total = total + integrate_segment(
                lambda x: np.asarray(f(x)) * self._density_scalar(x),
                seg.lo, seg.hi, seg.e_lo, seg.e_hi, q, pts,
            )
        return total

    def _density_scalar(self, x):
        return float(self.density(np.array([x]))[0])

    # -- transforms -----------------------------------------------------
    def cauchy_closed(self, z):
        """Closed-form Cauchy transform, or None when unavailable."""
        return None

    def eta_closed(self, z):
        """Closed-form eta transform, or None when unavailable."""
        return None

    def cauchy(self, z, q=None):
        z = np.asarray(z, dtype=complex)
        closed = self.cauchy_closed(z)
        if closed is not None:
            return closed
        return self.cauchy_quad(z, q)

    def cauchy_quad(self, z, q=None):
        """Cauchy transform by quadrature of atoms plus density."""
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        pts = tuple(float(v.real) for v in flat if abs(v.imag) < 0.5 * abs(v.real) + 1e-300)
        val = self.integrate(lambda x: 1.0 / (flat - x), q, points=pts)
        return np.asarray(val).reshape(z.shape)

    # -- sampling / distribution --------------------------------------
    def cdf(self, x):
        raise UnsupportedParameter(f"{type(self).__name__} has no closed CDF")

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        raise UnsupportedParameter(f"{type(self).__name__} has no sampler")

    def to_json(self) -> dict:
        raise UnsupportedParameter(f"{type(self).__name__} has no JSON form")

    # -- convenience ----------------------------------------------------
    def total_mass(self, q=None) -> float:
        return float(self.integrate(lambda x: 1.0, q))


def total_mass(m: Measure, q=None) -> float:
    return m.total_mass(q)


def integrate(f, m: Measure, q=None):
    """Integral of ``f`` with respect to ``m`` within the tolerances of ``q``."""
    return m.integrate(f, q)


class Atomic(Measure):
    """Finite sum of weighted point masses."""

    def __init__(self, atoms: Sequence):
        pts = [(float(x), float(w)) for x, w in atoms]
        if not pts:
            raise DomainError("atomic measure needs at least one atom")
        if any(not (np.isfinite(x) and np.isfinite(w)) for x, w in pts):
            raise DomainError("atom locations and weights must be finite")
        if any(w <= 0 for _, w in pts):
            raise DomainError("atom weights must be positive")
        s = sum(w for _, w in pts)
        if abs(s - 1.0) > ATOM_SUM_TOL:
            raise DomainError(f"atom weights sum to {s}, not 1")
        merged = {}
        for x, w in pts:
            merged[x] = merged.get(x, 0.0) + w
        self._atoms = tuple(sorted(merged.items()))
        xs = [x for x, _ in self._atoms]
        self.support_sign = "pos" if min(xs) >= 0 else ("neg" if max(xs) <= 0 else "both")
        self.symmetric = all(abs(merged.get(-x, 0.0) - w) < 1e-15 for x, w in self._atoms)

    def __repr__(self):
        return f"Atomic({list(self._atoms)})"

    @property
    def atoms(self):
        return self._atoms

    def moment_range(self):
        return (-np.inf if self.zero_mass == 0 else 0.0, np.inf)

    def cauchy_closed(self, z):
        z = np.asarray(z, dtype=complex)
        return sum(w / (z - x) for x, w in self._atoms)

    def eta_closed(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            return 1.0 - z / self.cauchy_closed(1.0 / z)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return sum(w * (x >= a) for a, w in self._atoms)

    def sample(self, n, rng):
        xs = np.array([x for x, _ in self._atoms])
        ws = np.array([w for _, w in self._atoms])
        return xs[rng.choice(len(xs), size=n, p=ws / ws.sum())]

    def to_json(self):
        return {"type": "atomic", "atoms": [{"x": x, "w": w} for x, w in self._atoms]}


def delta(a: float) -> Atomic:
    return Atomic([(a, 1.0)])


#: name -> FamilyDensity subclass, filled by the modules defining families
FAMILY_REGISTRY: dict = {}


def register_family(cls):
    FAMILY_REGISTRY[cls.family_name] = cls
    return cls


class FamilyDensity(Measure):
    """A named parametric family with a closed-form density."""

    family_name = "family"

    def __init__(self, **params):
        self.params = dict(params)

    def __repr__(self):
        inner = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{type(self).__name__}({inner})"

    def to_json(self):
        return {"type": "family", "name": self.family_name, "params": dict(self.params)}


class GridDensity(Measure):
    """Tabulated density with power-law extrapolation beyond the nodes.

    Each side of the origin is stored separately as increasing node
    abscissae of ``|x|`` with density values.  Inside the node range the
    density is interpolated monotonically (PCHIP) in log-log coordinates;
    outside it follows ``|x|**e0`` towards 0 and ``|x|**einf`` towards
    infinity.
    """

    def __init__(self, pos=None, neg=None, exponents_pos=(0.0, -2.0),
                 exponents_neg=(0.0, -2.0), atoms=(), bounded=None):
        self._atoms = tuple((float(x), float(w)) for x, w in atoms)
        self._sides = {}
        for key, data, ex in (("pos", pos, exponents_pos), ("neg", neg, exponents_neg)):
            if data is None:
                continue
            ax, p = (np.asarray(v, dtype=float) for v in data)
            if ax.ndim != 1 or ax.shape != p.shape or ax.size < 2:
                raise DomainError("grid arrays must be one-dimensional and equal length")
            if np.any(ax <= 0) or np.any(np.diff(ax) <= 0):
                raise DomainError("grid abscissae must be positive and increasing")
            if np.any(p < 0) or not np.all(np.isfinite(p)):
                raise DomainError("grid densities must be finite and nonnegative")
            self._sides[key] = _GridSide(ax, p, float(ex[0]), float(ex[1]),
                                         None if bounded is None else bounded.get(key))
        if not self._sides and not self._atoms:
            raise DomainError("empty grid density")
        self.support_sign = "both" if len(self._sides) == 2 else next(iter(self._sides), "both")
        if not self._sides:
            xs = [x for x, _ in self._atoms]
            self.support_sign = ("pos" if min(xs) >= 0 else "neg" if max(xs) <= 0 else "both")

    @property
    def atoms(self):
        return self._atoms

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        if "pos" in self._sides:
            m = x > 0
            out[m] = self._sides["pos"](x[m])
        if "neg" in self._sides:
            m = x < 0
            out[m] = self._sides["neg"](-x[m])
        return out

    def segments(self):
        segs = []
        for key, side in self._sides.items():
            for lo, hi, el, eh in side.pieces():
                if key == "pos":
                    segs.append(Segment(lo, hi, el, eh))
                else:
                    segs.append(Segment(-hi, -lo, eh, el))
        return segs

    def moment_range(self):
        lo, hi = -np.inf, np.inf
        for side in self._sides.values():
            lo = max(lo, -(side.e0 + 1.0))
            if side.bound is None:
                hi = min(hi, -side.einf - 1.0)
        if self.zero_mass > 0:
            lo = max(lo, 0.0)
        return (lo, hi)

    def to_json(self):
        out = {"type": "grid", "atoms": [{"x": x, "w": w} for x, w in self._atoms]}
        for key, side in self._sides.items():
            out[key] = {"x": side.x.tolist(), "density": side.p.tolist(),
                        "exponents": [side.e0, side.einf]}
        return out

    def export_csv_rows(self):
        rows = []
        if "neg" in self._sides:
            s = self._sides["neg"]
            rows += list(zip((-s.x)[::-1], s.p[::-1]))
        if "pos" in self._sides:
            s = self._sides["pos"]
            rows += list(zip(s.x, s.p))
        return rows


class _GridSide:
    def __init__(self, x, p, e0, einf, bound):
        self.x, self.p, self.e0, self.einf, self.bound = x, p, e0, einf, bound
        self.loglog = bool(np.all(p > 0))
        if self.loglog:
            self._f = PchipInterpolator(np.log(x), np.log(p), extrapolate=False)
        else:
            self._f = PchipInterpolator(x, p, extrapolate=False)

    def __call__(self, ax):
        ax = np.asarray(ax, dtype=float)
        out = np.zeros_like(ax)
        x0, x1 = self.x[0], self.x[-1]
        body = (ax >= x0) & (ax <= x1)
        if self.loglog:
            out[body] = np.exp(self._f(np.log(ax[body])))
        else:
            out[body] = np.clip(self._f(ax[body]), 0.0, None)
        lo = ax < x0
        out[lo] = self.p[0] * (ax[lo] / x0) ** self.e0
        hi = ax > x1
        if self.bound is None:
            out[hi] = self.p[-1] * (ax[hi] / x1) ** self.einf
        return out

    def pieces(self):
        x0, x1 = self.x[0], self.x[-1]
        yield (0.0, x0, self.e0, 0.0)
        # body, split into decades to keep the adaptive rule local
        cuts = np.unique(np.concatenate([[x0, x1], np.geomspace(x0, x1, max(2, int(np.log10(x1 / x0)) + 1))]))
        for a, b in zip(cuts[:-1], cuts[1:]):
            yield (a, b, 0.0, 0.0)
        if self.bound is None:
            yield (x1, np.inf, 0.0, self.einf)


class TransformDefined(Measure):
    """A measure specified through its Cauchy transform or eta transform.

    ``kind`` is ``"cauchy"`` or ``"eta"``; ``fn`` is a vectorized complex
    function valid on the open lower half-plane (for ``eta``) or upper
    half-plane (for ``cauchy``), extended by conjugate symmetry.
    """

    def __init__(self, kind: str, fn: Callable, support_sign: str = "both",
                 symmetric: bool = False, label: str = "transform"):
        if kind not in ("cauchy", "eta"):
            raise DomainError("TransformDefined kind must be 'cauchy' or 'eta'")
        self.kind, self.fn, self.label = kind, fn, label
        self.support_sign, self.symmetric = support_sign, symmetric
        self._grid = None

    def __repr__(self):
        return f"TransformDefined({self.kind}, {self.label})"

    def cauchy_closed(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == "cauchy":
            return _conj_sym(self.fn, z, upper=True)
        w = 1.0 / z
        eta = _conj_sym(self.fn, w, upper=False)
        return 1.0 / (z * (1.0 - eta))

    def eta_closed(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == "eta":
            return _conj_sym(self.fn, z, upper=False)
        return 1.0 - z / self.cauchy_closed(1.0 / z)

    def grid(self, **kw) -> GridDensity:
        """Recover a tabulated density (cached for default arguments)."""
        from .transforms import recover_measure

        if kw:
            return recover_measure(self, **kw)
        if self._grid is None:
            self._grid = recover_measure(self)
        return self._grid

    @property
    def atoms(self):
        return self.grid().atoms

    def density(self, x):
        return self.grid().density(x)

    def segments(self):
        return self.grid().segments()


def _conj_sym(fn, z, upper):
    """Evaluate ``fn`` on its native half-plane and reflect the rest."""
    z = np.asarray(z, dtype=complex)
    native = (z.imag > 0) if upper else (z.imag < 0)
    out = np.empty(z.shape, dtype=complex)
    if np.any(native):
        out[native] = fn(z[native])
    other = ~native
    if np.any(other):
        out[other] = np.conj(fn(np.conj(z[other])))
    return out


# ---------------------------------------------------------------------------
# derived measures


class Dilated(Measure):
    """Law of ``a X``."""

    def __init__(self, base: Measure, a: float):
        if not np.isfinite(a) or a == 0:
            raise DomainError("dilation factor must be finite and nonzero")
        self.base, self.a = base, float(a)
        flip = {"pos": "neg", "neg": "pos", "both": "both"}
        self.support_sign = base.support_sign if a > 0 else flip[base.support_sign]
        self.symmetric = base.symmetric

    def __repr__(self):
        return f"Dilated({self.base!r}, {self.a})"

    @property
    def atoms(self):
        return tuple(sorted((self.a * x, w) for x, w in self.base.atoms))

    def density(self, x):
        x = np.asarray(x, dtype=float)
        return self.base.density(x / self.a) / abs(self.a)

    def integrate(self, f, q=None, points=()):
        return self.base.integrate(lambda x: f(self.a * x), q, tuple(p / self.a for p in points))

    def moment_range(self):
        return self.base.moment_range()

    def cauchy_closed(self, z):
        g = self.base.cauchy_closed(np.asarray(z, dtype=complex) / self.a)
        return None if g is None else g / self.a

    def eta_closed(self, z):
        e = self.base.eta_closed(self.a * np.asarray(z, dtype=complex))
        return e

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        if self.a > 0:
            return self.base.cdf(x / self.a)
        # P(aX <= x) = P(X >= x/a)
        y = x / self.a
        at = sum(w for t, w in self.base.atoms if np.any(t == y)) if self.base.atoms else 0.0
        return 1.0 - self.base.cdf(y) + at

    def sample(self, n, rng):
        return self.a * self.base.sample(n, rng)


def dilate(m: Measure, a: float) -> Measure:
    """Law of ``aX``; exact for atomic inputs."""
    if isinstance(m, Atomic):
        return Atomic([(a * x, w) for x, w in m.atoms])
    if a == 1:
        return m
    return Dilated(m, a)


class PowerPushforward(Measure):
    """Law of ``X**p`` for ``X`` on the positive half-line (or ``|X|**p`` when folding)."""

    def __init__(self, base: Measure, p: float, fold: bool = False):
        self.base, self.p, self.fold = base, float(p), fold
        self.support_sign = "pos"

    def __repr__(self):
        return f"PowerPushforward({self.base!r}, {self.p}{', fold' if self.fold else ''})"

    def _t(self, x):
        return np.abs(x) ** self.p if self.fold else x ** self.p

    @property
    def atoms(self):
        acc = {}
        for x, w in self.base.atoms:
            y = float(self._t(x))
            acc[y] = acc.get(y, 0.0) + w
        return tuple(sorted(acc.items()))

    def density(self, y):
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        m = y > 0
        x = y[m] ** (1.0 / self.p)
        jac = np.abs(1.0 / self.p) * y[m] ** (1.0 / self.p - 1.0)
        val = self.base.density(x)
        if self.fold:
            val = val + self.base.density(-x)
        out[m] = val * jac
        return out

    def integrate(self, f, q=None, points=()):
        pts = tuple(abs(t) ** (1.0 / self.p) for t in points if t > 0)
        if self.fold:
            pts = pts + tuple(-t for t in pts)
        return self.base.integrate(lambda x: f(self._t(x)), q, pts)

    def moment_range(self):
        lo, hi = self.base.moment_range()
        return (lo / self.p, hi / self.p) if self.p > 0 else (hi / self.p, lo / self.p)

    def cdf(self, y):
        y = np.asarray(y, dtype=float)
        if self.fold:
            raise UnsupportedParameter("no closed CDF for folded powers")
        with np.errstate(divide="ignore", invalid="ignore"):
            x = np.where(y > 0, np.abs(y) ** (1.0 / self.p), 0.0)
        if self.p > 0:
            return np.where(y > 0, self.base.cdf(x), 0.0)
        return np.where(y > 0, 1.0 - self.base.cdf(x), 0.0)

    def sample(self, n, rng):
        return self._t(self.base.sample(n, rng))


def pushforward_power(m: Measure, p: float) -> Measure:
    """Law of ``X**p``.

    Non-integer powers need ``m`` on the positive half-line; nonpositive
    powers need ``m({0}) = 0``.  Even integer powers of signed measures fold
    the negative half-line onto the positive one.
    """
    if not np.isfinite(p) or p == 0:
        raise DomainError("power must be finite and nonzero")
    if p == 1:
        return m
    if p < 0 and m.zero_mass > 0:
        raise DomainError("negative power of a measure with an atom at 0")
    is_int = float(p).is_integer()
    if m.support_sign != "pos" and not is_int:
        raise DomainError("non-integer power of a measure not supported on [0, inf)")
    if isinstance(m, Atomic):
        return Atomic([(np.sign(x) ** int(p) * abs(x) ** p if is_int else x ** p, w)
                       for x, w in m.atoms])
    if m.support_sign == "pos":
        return PowerPushforward(m, p)
    if is_int and int(p) % 2 == 0:
        return PowerPushforward(m, p, fold=True)
    if p == -1:
        return Inverted(m)
    raise UnsupportedParameter("odd powers other than -1 of signed measures")


class Inverted(Measure):
    """Law of ``1/X`` for a signed measure without atom at 0."""

    def __init__(self, base: Measure):
        self.base = base
        self.support_sign = base.support_sign
        self.symmetric = base.symmetric

    @property
    def atoms(self):
        return tuple(sorted((1.0 / x, w) for x, w in self.base.atoms))

    def density(self, y):
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        m = y != 0
        out[m] = self.base.density(1.0 / y[m]) / y[m] ** 2
        return out

    def integrate(self, f, q=None, points=()):
        return self.base.integrate(lambda x: f(1.0 / x), q, tuple(1.0 / t for t in points if t))

    def moment_range(self):
        lo, hi = self.base.moment_range()
        return (-hi, -lo)

    def sample(self, n, rng):
        return 1.0 / self.base.sample(n, rng)


def invert_measure(m: Measure) -> Measure:
    """Law of ``1/X``; requires ``m({0}) = 0``."""
    if m.zero_mass > 0:
        raise DomainError("cannot invert a measure with an atom at 0")
    if isinstance(m, Atomic):
        return Atomic([(1.0 / x, w) for x, w in m.atoms])
    if m.support_sign == "pos":
        return PowerPushforward(m, -1.0)
    return Inverted(m)


class Symmetrized(Measure):
    """``(mu(dx) + mu(-dx)) / 2`` for ``mu`` on the positive half-line."""

    symmetric = True

    def __init__(self, base: Measure):
        self.base = base

    @property
    def atoms(self):
        acc = {}
        for x, w in self.base.atoms:
            for y in (x, -x):
                acc[y] = acc.get(y, 0.0) + 0.5 * w
        return tuple(sorted(acc.items()))

    def density(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * self.base.density(np.abs(x))

    def integrate(self, f, q=None, points=()):
        pts = tuple(abs(t) for t in points)
        return self.base.integrate(lambda x: 0.5 * (np.asarray(f(x)) + np.asarray(f(-x))), q, pts)

    def moment_range(self):
        return self.base.moment_range()

    def cauchy_closed(self, z):
        z = np.asarray(z, dtype=complex)
        g1 = self.base.cauchy_closed(z)
        if g1 is None:
            return None
        return 0.5 * (g1 - self.base.cauchy_closed(-z))

    def sample(self, n, rng):
        x = self.base.sample(n, rng)
        return np.where(rng.random(n) < 0.5, -x, x)


def symmetrize(m: Measure) -> Measure:
    if m.support_sign != "pos":
        raise DomainError("symmetrization needs a measure on [0, inf)")
    if isinstance(m, Atomic):
        acc = {}
        for x, w in m.atoms:
            for y in (x, -x):
                acc[y] = acc.get(y, 0.0) + 0.5 * w
        return Atomic(list(acc.items()))
    return Symmetrized(m)


class ScaleMixture(Measure):
    """Law of ``X Y`` with ``X`` atomic and ``Y`` arbitrary, independent.

    Every transform is the weighted sum of the dilated base transforms, so
    this representation is exact.
    """

    def __init__(self, mixing: Atomic, base: Measure):
        self.mixing, self.base = mixing, base
        signs = {base.support_sign if a > 0 else {"pos": "neg", "neg": "pos", "both": "both"}[base.support_sign]
                 for a, _ in mixing.atoms if a != 0}
        self.support_sign = signs.pop() if len(signs) == 1 else "both"
        self.symmetric = base.symmetric

    def __repr__(self):
        return f"ScaleMixture({self.mixing!r}, {self.base!r})"

    def _parts(self):
        return [(a, w) for a, w in self.mixing.atoms if a != 0]

    @property
    def atoms(self):
        acc = {}
        z = self.mixing.zero_mass
        if z:
            acc[0.0] = z
        for a, w in self._parts():
            for x, v in self.base.atoms:
                acc[a * x] = acc.get(a * x, 0.0) + w * v
        return tuple(sorted(acc.items()))

    def density(self, x):
        x = np.asarray(x, dtype=float)
        return sum(w * self.base.density(x / a) / abs(a) for a, w in self._parts())

    def integrate(self, f, q=None, points=()):
        total = 0
        z = self.mixing.zero_mass
        if z:
            total = np.asarray(f(0.0)) * z
        for a, w in self._parts():
            total = total + w * np.asarray(
                self.base.integrate(lambda x, a=a: f(a * x), q, tuple(p / a for p in points)))
        return total

    def moment_range(self):
        lo, hi = self.base.moment_range()
        if self.mixing.zero_mass:
            lo = max(lo, 0.0)
        return (lo, hi)

    def cauchy_closed(self, z):
        z = np.asarray(z, dtype=complex)
        total = self.mixing.zero_mass / z if self.mixing.zero_mass else 0.0
        for a, w in self._parts():
            g = self.base.cauchy_closed(z / a)
            if g is None:
                return None
            total = total + w * g / a
        return total

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        total = self.mixing.zero_mass * (x >= 0)
        for a, w in self._parts():
            total = total + w * Dilated(self.base, a).cdf(x)
        return total

    def sample(self, n, rng):
        return self.mixing.sample(n, rng) * self.base.sample(n, rng)


class ConvexCombination(Measure):
    """``sum_k w_k m_k`` for probability measures ``m_k`` and weights summing to 1."""

    def __init__(self, parts: Sequence):
        parts = [(float(w), m) for w, m in parts if w != 0]
        if not parts or any(w < 0 for w, _ in parts):
            raise DomainError("convex combination needs positive weights")
        if abs(sum(w for w, _ in parts) - 1.0) > ATOM_SUM_TOL:
            raise DomainError("convex combination weights must sum to 1")
        self.parts = parts
        signs = {m.support_sign for _, m in parts if m.atoms != ((0.0, 1.0),)}
        self.support_sign = signs.pop() if len(signs) == 1 else ("pos" if not signs else "both")
        self.symmetric = all(m.symmetric or m.atoms == ((0.0, 1.0),) for _, m in parts)

    def __repr__(self):
        return "ConvexCombination(" + ", ".join(f"{w}*{m!r}" for w, m in self.parts) + ")"

    @property
    def atoms(self):
        acc = {}
        for w, m in self.parts:
            for x, v in m.atoms:
                acc[x] = acc.get(x, 0.0) + w * v
        return tuple(sorted(acc.items()))

    def density(self, x):
        x = np.asarray(x, dtype=float)
        return sum(w * m.density(x) for w, m in self.parts)

    def integrate(self, f, q=None, points=()):
        return sum(w * np.asarray(m.integrate(f, q, points)) for w, m in self.parts)

    def moment_range(self):
        rng = [m.moment_range() for _, m in self.parts]
        return (max(r[0] for r in rng), min(r[1] for r in rng))

    def cauchy_closed(self, z):
        total = 0
        for w, m in self.parts:
            g = m.cauchy_closed(z)
            if g is None:
                return None
            total = total + w * g
        return total

    def cdf(self, x):
        return sum(w * m.cdf(x) for w, m in self.parts)

    def sample(self, n, rng):
        k = rng.choice(len(self.parts), size=n, p=[w for w, _ in self.parts])
        out = np.empty(n)
        for i, (_, m) in enumerate(self.parts):
            sel = k == i
            out[sel] = m.sample(int(sel.sum()), rng)
        return out


def classical_mult(m1: Measure, m2: Measure, q=None, log_step: float = 0.01,
                   log_range: float = 60.0) -> Measure:
    """Law of ``XY`` for independent ``X ~ m1`` and ``Y ~ m2``.

    Atomic factors are handled exactly (weighted dilations).  Two measures
    with densities are combined by FFT convolution of the densities of
    ``log|X|`` and ``log|Y|``, giving a :class:`GridDensity`.
    """
    if isinstance(m1, Atomic) and isinstance(m2, Atomic):
        acc = {}
        for x, w in m1.atoms:
            for y, v in m2.atoms:
                acc[x * y] = acc.get(x * y, 0.0) + w * v
        return Atomic(list(acc.items()))
    if isinstance(m1, Atomic):
        if len(m1.atoms) == 1 and m1.atoms[0][0] != 0:
            return dilate(m2, m1.atoms[0][0])
        return ScaleMixture(m1, m2)
    if isinstance(m2, Atomic):
        return classical_mult(m2, m1, q)
    if m1.atoms or m2.atoms:
        raise UnsupportedParameter("products of mixed atomic/continuous measures")
    return _log_convolution(m1, m2, log_step, log_range)


def _log_convolution(m1, m2, h, L):
    u = np.arange(-L, L + h / 2, h)
    sides = {}
    for sgn in (1.0, -1.0):
        sides[sgn] = []
        for m in (m1, m2):
            g = m.density(sgn * np.exp(u)) * np.exp(u)
            sides[sgn].append(np.nan_to_num(g))
    out = {1.0: 0.0, -1.0: 0.0}
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            c = fftconvolve(sides[s1][0], sides[s2][1]) * h
            out[s1 * s2] = out[s1 * s2] + np.clip(c, 0.0, None)
    uu = -2 * L + h * np.arange(out[1.0].size)
    kwargs = {}
    for sgn, key in ((1.0, "pos"), (-1.0, "neg")):
        c = out[sgn]
        if np.max(c) <= 1e-14:
            continue
        keep = c > 1e-300
        idx = np.nonzero(keep)[0]
        sl = slice(idx[0], idx[-1] + 1)
        x = np.exp(uu[sl])
        p = np.maximum(c[sl] / x, 1e-300)
        e0 = _edge_slope(np.log(x[:20]), np.log(p[:20]))
        einf = _edge_slope(np.log(x[-20:]), np.log(p[-20:]))
        kwargs[key] = (x, p)
        kwargs["exponents_" + key] = (e0, min(einf, -1.0 - 1e-6))
    return GridDensity(**kwargs)


def _edge_slope(lx, lp):
    return float(np.polyfit(lx, lp, 1)[0])


# ---------------------------------------------------------------------------
# Stieltjes inversion


def stieltjes_density(g: Callable, x: float, eps_sequence=None, eps0: float = 1e-2,
                      levels: int = 4) -> float:
    """Density at ``x`` from boundary values of a Cauchy transform ``g``.

    The values ``-Im g(x + i eps_k) / pi`` for ``eps_k = eps0 2**-k`` are
    combined by Richardson extrapolation (errors in powers of ``eps``).
    """
    if eps_sequence is None:
        eps_sequence = [eps0 * 2.0 ** (-k) for k in range(levels)]
    eps = np.asarray(eps_sequence, dtype=float)
    if eps.size < 2 or np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
        raise DomainError("eps_sequence must be positive and decreasing")
    vals = -np.imag(np.asarray(g(x + 1j * eps), dtype=complex)) / np.pi
    return float(_richardson(eps, vals))


def _richardson(eps, vals, strict=True):
    """Neville-type extrapolation to eps = 0 of a polynomial in eps."""
    n = eps.size
    T = [np.asarray(vals, dtype=float)]
    for j in range(1, n):
        prev = T[-1]
        e_hi, e_lo = eps[: n - j], eps[j:]
        cur = (e_hi * prev[1:] - e_lo * prev[:-1]) / (e_hi - e_lo)
        T.append(cur)
    diag = np.array([t[-1] for t in T])
    steps = np.abs(np.diff(diag))
    scale = max(np.max(np.abs(diag)), 1e-300)
    if strict and steps.size >= 2 and steps[-1] > steps[0] and steps[-1] > 1e-7 * scale + 1e-12:
        raise NumericalFailure("Richardson extrapolation residuals are not decreasing",
                               estimate=float(diag[-1]), error=float(steps[-1]))
    return diag[-1]


def stieltjes_density_grid(g: Callable, xs, eps0: float = 1e-2, levels: int = 4,
                           relative: bool = True, strict: bool = True) -> np.ndarray:
    """Vectorized :func:`stieltjes_density`; ``eps`` scales with ``|x|`` when ``relative``."""
    xs = np.asarray(xs, dtype=float)
    scale = np.where(relative, np.minimum(np.maximum(np.abs(xs), 1e-300), 1.0), 1.0)
    ks = 2.0 ** (-np.arange(levels))
    eps = eps0 * scale[:, None] * ks[None, :]
    vals = -np.imag(np.asarray(g(xs[:, None] + 1j * eps), dtype=complex)) / np.pi
    out = np.empty(xs.size)
    for i in range(xs.size):
        out[i] = _richardson(eps[i], vals[i], strict=strict)
    return np.maximum(out, 0.0)


# ---------------------------------------------------------------------------
# JSON


def measure_from_json(obj: dict) -> Measure:
    """Build a measure from its JSON description."""
    kind = obj.get("type")
    if kind == "atomic":
        return Atomic([(a["x"], a["w"]) for a in obj["atoms"]])
    if kind == "family":
        from . import lln, stable_laws  # noqa: F401  (populate the registry)

        name = obj.get("name")
        if name not in FAMILY_REGISTRY:
            raise DomainError(f"unknown family {name!r}; known: {sorted(FAMILY_REGISTRY)}")
        return FAMILY_REGISTRY[name](**obj.get("params", {}))
    if kind == "grid":
        kw = {}
        for key in ("pos", "neg"):
            if key in obj:
                kw[key] = (obj[key]["x"], obj[key]["density"])
                kw["exponents_" + key] = tuple(obj[key].get("exponents", (0.0, -2.0)))
        atoms = [(a["x"], a["w"]) for a in obj.get("atoms", [])]
        return GridDensity(atoms=atoms, **kw)
    raise DomainError(f"unknown measure type {kind!r}")

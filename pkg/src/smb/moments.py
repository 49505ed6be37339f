"""Fuss-Narayana moment polynomials and Hankel positivity scans.

Exact paths use :class:`fractions.Fraction` throughout.  Hankel
determinants are computed by fraction-free (Bareiss) elimination, whose
pivots are the leading principal minors, so a single elimination yields
every order of the scan.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from .errors import DomainError

Number = Fraction | int


def as_fraction(x) -> Fraction:
    """Exact rational from an int, Fraction or a ``"P/Q"`` / decimal string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise DomainError(f"not a rational: {x!r}") from e
    raise DomainError(f"exact paths need rational input, got {type(x).__name__}")


def gen_binomial(x, k: int) -> Fraction:
    """``x (x-1) ... (x-k+1) / k!`` for rational ``x``."""
    if k < 0:
        raise DomainError("k must be >= 0")
    x = as_fraction(x)
    num = Fraction(1)
    for j in range(k):
        num *= x - j
    return num / factorial(k)


def fuss_narayana(n: int, s, t) -> Fraction:
    """``m_n(s,t) = sum_k t^k/k C(n-1,k-1) C(ns,k-1)``, the free Bessel moments."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    s, t = as_fraction(s), as_fraction(t)
    return sum((t ** k / k * gen_binomial(n - 1, k - 1) * gen_binomial(n * s, k - 1)
                for k in range(1, n + 1)), Fraction(0))


def tilde_moment(n: int, s, t) -> Fraction:
    """``m~_n(s,t) = sum_k t^k/n C(n,k-1) C(ns,n-k)`` with ``m~_0 = 1``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    s, t = as_fraction(s), as_fraction(t)
    return sum((t ** k / n * gen_binomial(n, k - 1) * gen_binomial(n * s, n - k)
                for k in range(1, n + 1)), Fraction(0))


@dataclass
class MomentSeq:
    kind: str
    params: dict
    values: list = field(default_factory=list)

    def __post_init__(self):
        if not self.values or self.values[0] != 1:
            raise DomainError("moment sequences start with m_0 = 1")

    @classmethod
    def exact(cls, kind: str, s, t, N: int) -> "MomentSeq":
        fn = {"bessel": fuss_narayana, "tilde": tilde_moment}.get(kind)
        if fn is None:
            raise DomainError("kind must be 'bessel' or 'tilde'")
        s, t = as_fraction(s), as_fraction(t)
        return cls(kind, {"s": s, "t": t}, [fn(n, s, t) for n in range(N + 1)])


# ---------------------------------------------------------------------------
# determinants


def bareiss_leading_minors(M) -> list:
    """Leading principal minors ``D_1 .. D_n`` by fraction-free elimination.

    When a pivot vanishes the remaining minors are computed one by one with
    row pivoting.
    """
    A = [[as_fraction(v) if not isinstance(v, Fraction) else v for v in row] for row in M]
    n = len(A)
    minors = []
    prev = Fraction(1)
    for k in range(n):
        piv = A[k][k]
        minors.append(piv)
        if piv == 0:
            minors.extend(det_exact([row[:j] for row in M[:j]]) for j in range(k + 2, n + 1))
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * piv - A[i][k] * A[k][j]) / prev
        prev = piv
    return minors


def det_exact(M) -> Fraction:
    """Determinant by Bareiss elimination with row pivoting."""
    A = [[as_fraction(v) if not isinstance(v, Fraction) else v for v in row] for row in M]
    n = len(A)
    if n == 0:
        return Fraction(1)
    sign, prev = 1, Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def det_cofactor(M) -> Fraction:
    """Laplace expansion; only for small matrices and cross-checks."""
    n = len(M)
    if n == 1:
        return as_fraction(M[0][0]) if not isinstance(M[0][0], Fraction) else M[0][0]
    total = Fraction(0)
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * M[0][j] * det_cofactor(minor)
    return total


def hankel(values, k: int):
    """``[m_{i+j}]_{0 <= i, j <= k}``."""
    if len(values) < 2 * k + 1:
        raise DomainError(f"order {k} needs {2 * k + 1} moments")
    return [[values[i + j] for j in range(k + 1)] for i in range(k + 1)]


@dataclass
class ScanResult:
    status: str                    # "pass", "fail" or "inconclusive"
    first_failing_order: int | None
    max_order: int
    dets: list

    def to_json(self):
        return {"status": self.status, "first_failing_order": self.first_failing_order,
                "max_order": self.max_order, "dets": [str(d) for d in self.dets]}


def hamburger_scan(seq: MomentSeq, max_order: int, expect_positive: bool | None = None) -> ScanResult:
    """Hankel determinants of orders ``0..max_order``.

    The status is ``fail`` at the first negative determinant.  Without a
    negative determinant the status is ``pass`` unless ``expect_positive``
    is False (for the Fuss-Narayana sequences: ``max(s, t) < 1``), in which
    case the scan is ``inconclusive`` rather than a pass.
    """
    if len(seq.values) < 2 * max_order + 1:
        raise DomainError(f"scan to order {max_order} needs {2 * max_order + 1} moments")
    if expect_positive is None and {"s", "t"} <= set(seq.params):
        expect_positive = max(seq.params["s"], seq.params["t"]) >= 1
    dets = bareiss_leading_minors(hankel(seq.values, max_order))
    for k, d in enumerate(dets):
        if d < 0:
            return ScanResult("fail", k, max_order, dets[:k + 1])
    status = "pass" if expect_positive in (None, True) else "inconclusive"
    return ScanResult(status, None, max_order, dets)


def scan_fuss_narayana(s, t, max_order: int = 50, kind: str = "tilde") -> ScanResult:
    return hamburger_scan(MomentSeq.exact(kind, s, t, 2 * max_order), max_order)


# ---------------------------------------------------------------------------
# floating path


def float_moments(kind: str, s: float, t: float, N: int) -> np.ndarray:
    """Moments in floating point, for irrational ``(s, t)``."""
    from scipy.special import binom

    out = np.empty(N + 1)
    out[0] = 1.0
    for n in range(1, N + 1):
        k = np.arange(1, n + 1)
        if kind == "tilde":
            out[n] = np.sum(t ** k / n * binom(n, k - 1) * binom(n * s, n - k))
        elif kind == "bessel":
            out[n] = np.sum(t ** k / k * binom(n - 1, k - 1) * binom(n * s, k - 1))
        else:
            raise DomainError("kind must be 'bessel' or 'tilde'")
    return out


def float_hankel_scan(values, max_order: int, cond_limit: float = 1e12) -> ScanResult:
    """Signs of floating Hankel determinants; warns when conditioning is poor."""
    values = np.asarray(values, dtype=float)
    dets = []
    for k in range(max_order + 1):
        H = np.array(hankel(values, k), dtype=float)
        c = np.linalg.cond(H)
        if c > cond_limit:
            warnings.warn(f"Hankel order {k} condition number {c:.2e}; stopping the float scan",
                          RuntimeWarning, stacklevel=2)
            return ScanResult("inconclusive", None, k - 1, dets)
        sign, logdet = np.linalg.slogdet(H)
        dets.append(sign * np.exp(logdet))
        if sign < 0:
            return ScanResult("fail", k, max_order, dets)
    return ScanResult("pass", None, max_order, dets)


def phase_grid(lo: float, hi: float, n: int, max_order: int = 20):
    """Rows ``(s, t, status, first_failing_order)`` over an ``n x n`` grid.

    Grid values are converted to exact rationals before scanning.
    """
    vals = np.linspace(lo, hi, n)
    fr = [Fraction(repr(float(v))).limit_denominator(10 ** 6) for v in vals]
    rows = []
    for s in fr:
        for t in fr:
            r = scan_fuss_narayana(s, t, max_order)
            rows.append((float(s), float(t), r.status, r.first_failing_order))
    return rows


# ---------------------------------------------------------------------------
# moments of measures


def moments_from_density(m, n: int, q=None) -> list:
    """``E X^k`` for ``k = 0..n`` by quadrature; diverging moments raise."""
    lo, hi = m.moment_range()
    if n >= hi:
        raise DomainError(f"moment of order {n} diverges (finite only below {hi})")
    return [float(np.real(m.integrate(lambda x, k=k: x ** k if k else 1.0, q))) for k in range(n + 1)]


__all__ = [
    "as_fraction", "gen_binomial", "fuss_narayana", "tilde_moment", "MomentSeq",
    "bareiss_leading_minors", "det_exact", "det_cofactor", "hankel", "ScanResult",
    "hamburger_scan", "scan_fuss_narayana", "float_moments", "float_hankel_scan", "phase_grid",
    "moments_from_density",
]

"""Complex arguments and powers on explicit branch sectors.

A sector ``(theta1, theta2)`` is the open set of nonzero complex numbers
having an argument strictly between the two angles.  Powers are taken in
log-polar form so the branch used is exactly the one named by the sector.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

ANGLE_SLACK = 1e-12
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Sector:
    theta1: float
    theta2: float

    def __post_init__(self):
        if not (np.isfinite(self.theta1) and np.isfinite(self.theta2)):
            raise DomainError("sector angles must be finite")
        if not self.theta1 < self.theta2:
            raise DomainError("sector requires theta1 < theta2")
        if self.theta2 - self.theta1 > TWO_PI + 1e-15:
            raise DomainError("sector wider than 2*pi")


PRINCIPAL = Sector(-np.pi, np.pi)
UPPER_CUT = Sector(0.0, TWO_PI)


def _as_sector(s) -> Sector:
    return s if isinstance(s, Sector) else Sector(*s)


def arg_in_array(z, s, slack: float = ANGLE_SLACK):
    """Vectorized argument in sector ``s``; NaN where ``z`` is not inside."""
    s = _as_sector(s)
    z = np.asarray(z, dtype=complex)
    a = np.angle(z)
    # shift the principal angle into [theta1, theta1 + 2 pi) by whole turns, so
    # an angle already in that window is returned bit-for-bit
    a = a - TWO_PI * np.floor((a - s.theta1) / TWO_PI)
    inside = (a > s.theta1 + slack) & (a < s.theta2 - slack) & (z != 0)
    return np.where(inside, a, np.nan)


def arg_in(z, s) -> float:
    """Argument of ``z`` lying in the open sector ``s``."""
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise DomainError("non-finite complex point")
    if z == 0:
        raise DomainError("argument of 0 is undefined")
    a = float(arg_in_array(z, s))
    if np.isnan(a):
        raise DomainError(f"{z} is not inside sector {tuple(_as_sector(s).__dict__.values())}")
    return a


def sector_pow_array(z, p: float, s):
    """Vectorized sector power; raises if any point lies outside the sector."""
    z = np.asarray(z, dtype=complex)
    a = arg_in_array(z, s)
    if np.any(np.isnan(a)):
        raise DomainError("point outside sector or at 0 in sector power")
    return np.exp(p * np.log(np.abs(z))) * np.exp(1j * p * a)


def sector_pow(z, p: float, s) -> complex:
    """``|z|**p * exp(i p arg)`` with the argument taken in ``s``."""
    a = arg_in(z, s)
    return complex(np.exp(p * np.log(abs(complex(z)))) * np.exp(1j * p * a))


def principal_pow(z, p: float) -> complex:
    """Principal power; the cut ``(-inf, 0]`` is rejected."""
    z = complex(z)
    if z.imag == 0 and z.real <= 0:
        raise DomainError("principal power undefined on (-inf, 0]")
    return complex(np.exp(p * np.log(abs(z))) * np.exp(1j * p * np.angle(z)))


def ppow(z, p: float):
    """Unchecked vectorized principal power used inside closed-form formulas.

    Arguments on the negative real axis take the angle ``+pi``; callers use
    this only where the formula is analytic across the input set.
    """
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.exp(p * np.log(np.abs(z)) + 1j * p * np.angle(z))
    return np.where(z == 0, 0.0 if p > 0 else np.nan, out)

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smb.errors import DomainError
from smb.sectors import Sector, arg_in, principal_pow, sector_pow, sector_pow_array

PI = np.pi


def test_arg_in_upper_cut_sector():
    assert arg_in(-1 + 0j, (0, 2 * PI)) == pytest.approx(PI)
    assert arg_in(-1j, (0, 2 * PI)) == pytest.approx(1.5 * PI)


def test_arg_in_lower_sector():
    assert arg_in(1j, (-2 * PI, 0)) == pytest.approx(-1.5 * PI)


def test_arg_in_rejects_boundary_and_zero():
    with pytest.raises(DomainError):
        arg_in(1.0, (0, 2 * PI))
    with pytest.raises(DomainError):
        arg_in(0, (-PI, PI))
    with pytest.raises(DomainError):
        arg_in(complex(np.nan, 1), (-PI, PI))


def test_sector_validation():
    with pytest.raises(DomainError):
        Sector(1.0, 0.0)
    with pytest.raises(DomainError):
        Sector(0.0, 7.0)


def test_sector_pow_examples():
    assert sector_pow(-1, 0.5, (0, 2 * PI)) == pytest.approx(1j, abs=1e-15)
    assert sector_pow(1j, 0.5, (-2 * PI, 0)) == pytest.approx(np.exp(-0.75j * PI), abs=1e-15)


def test_principal_pow_examples():
    assert principal_pow(1j, 0.5) == pytest.approx(np.exp(0.25j * PI), abs=1e-15)
    assert principal_pow(4, 0.5) == pytest.approx(2.0, abs=1e-15)
    with pytest.raises(DomainError):
        principal_pow(-1 + 0j, 0.5)


angles = st.floats(min_value=-PI + 1e-6, max_value=PI - 1e-6)
radii = st.floats(min_value=1e-3, max_value=1e3)
powers = st.floats(min_value=-3, max_value=3)


@settings(max_examples=200, deadline=None)
@given(radii, angles, powers, powers)
def test_sector_pow_exponent_additivity(r, th, p, q):
    z = r * np.exp(1j * th)
    s = (-PI, PI)
    lhs = sector_pow(z, p, s) * sector_pow(z, q, s)
    rhs = sector_pow(z, p + q, s)
    assert abs(lhs - rhs) <= 1e-13 * abs(rhs)


@settings(max_examples=200, deadline=None)
@given(radii, angles, powers)
def test_principal_agrees_with_sector(r, th, p):
    z = r * np.exp(1j * th)
    assert abs(principal_pow(z, p) - sector_pow(z, p, (-PI, PI))) <= 1e-15 * max(1.0, abs(z) ** p)


@settings(max_examples=50, deadline=None)
@given(radii, angles)
def test_identity_exponent(r, th):
    z = r * np.exp(1j * th)
    assert sector_pow(z, 1, (-PI, PI)) == pytest.approx(z, rel=1e-14)


def test_sector_pow_continuous_along_arc():
    s = (0.0, 2 * PI)
    th = np.linspace(1e-6, 2 * PI - 1e-6, 20001)
    w = sector_pow_array(np.exp(1j * th), 0.37, s)
    assert np.max(np.abs(np.diff(w))) < 1e-3

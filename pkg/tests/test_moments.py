import warnings
from fractions import Fraction as F
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smb.errors import DomainError
from smb.measures import delta
from smb.moments import (MomentSeq, as_fraction, bareiss_leading_minors, det_cofactor, det_exact,
                         float_hankel_scan, float_moments, fuss_narayana, gen_binomial, hamburger_scan,
                         hankel, moments_from_density, phase_grid, tilde_moment)
from smb.stable_laws import MarchenkoPastur, boolean_stable


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def test_as_fraction():
    assert as_fraction("3/4") == F(3, 4)
    assert as_fraction(2) == F(2)
    with pytest.raises(DomainError):
        as_fraction(0.5)
    with pytest.raises(DomainError):
        as_fraction("x/2")


def test_gen_binomial_examples():
    assert gen_binomial(F(3, 2), 2) == F(3, 8)
    assert gen_binomial(F(7, 3), 0) == 1
    assert gen_binomial(5, 2) == 10
    assert gen_binomial(-1, 3) == -1


def test_fuss_narayana_examples():
    s, t = F(2, 7), F(5, 3)
    assert fuss_narayana(1, s, t) == t
    assert fuss_narayana(3, 1, 1) == 5
    assert fuss_narayana(2, s, t) == t + s * t * t


def test_tilde_moment_examples():
    s, t = F(1, 2), F(1, 2)
    assert tilde_moment(1, F(3, 5), F(2, 9)) == F(2, 9)
    assert tilde_moment(2, s, t) == s * t + t * t == F(1, 2)
    assert [tilde_moment(n, 1, 1) for n in range(1, 9)] == [catalan(n) for n in range(1, 9)]


def test_bessel_catalan():
    assert [fuss_narayana(n, 1, 1) for n in range(1, 9)] == [catalan(n) for n in range(1, 9)]


rationals = st.fractions(min_value=F(-3), max_value=F(3), max_denominator=12)


@settings(max_examples=20, deadline=None)
@given(rationals, rationals.filter(lambda t: t != 0))
def test_tilde_bessel_relation(s, t):
    for n in range(1, 11):
        assert tilde_moment(n, s, t) == t ** (n + 1) * fuss_narayana(n, s, 1 / t)


def test_catalan_hankel_all_one():
    seq = MomentSeq.exact("tilde", 1, 1, 20)
    r = hamburger_scan(seq, 10)
    assert r.status == "pass"
    assert r.dets == [1] * 11


def test_order_one_determinant():
    r = hamburger_scan(MomentSeq.exact("tilde", F(1, 2), F(1, 2), 2), 1)
    assert r.dets[1] == F(1, 4)


@pytest.mark.parametrize("s,t", [(1, 1), (2, F(1, 2)), (F(1, 2), 2), (F(3, 2), F(3, 2))])
def test_positive_region_passes(hankel_scans, s, t):
    r = hankel_scans(s, t, 10)
    assert r.status == "pass" and r.first_failing_order is None


@pytest.mark.parametrize("s,t,order", [(F(1, 2), F(1, 2), 5), (F(3, 10), F(4, 5), 9)])
def test_negative_region_fails_at_frozen_order(hankel_scans, s, t, order):
    r = hankel_scans(s, t, 50)
    assert r.status == "fail" and r.first_failing_order == order
    assert r.dets[-1] < 0 and all(d >= 0 for d in r.dets[:-1])


@pytest.mark.slow
def test_near_boundary_is_never_a_silent_pass(hankel_scans):
    r = hankel_scans(F(9, 10), F(9, 10), 50)
    assert r.status in ("fail", "inconclusive")


def test_bareiss_agrees_with_cofactor():
    rng = np.random.default_rng(4)
    for k in range(1, 6):
        M = [[F(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(k)] for _ in range(k)]
        assert det_exact(M) == det_cofactor(M)
    for s, t in [(F(1, 2), F(1, 2)), (F(3, 10), F(4, 5)), (F(2), F(1, 3))]:
        vals = MomentSeq.exact("tilde", s, t, 10).values
        H = hankel(vals, 5)
        minors = bareiss_leading_minors(H)
        assert minors == [det_cofactor([row[:j] for row in H[:j]]) for j in range(1, 7)]


def test_bareiss_zero_pivot():
    M = [[F(0), F(1)], [F(1), F(0)]]
    assert bareiss_leading_minors(M) == [0, -1]


def test_moment_sequence_validation():
    with pytest.raises(DomainError):
        MomentSeq("tilde", {}, [F(2)])
    with pytest.raises(DomainError):
        hamburger_scan(MomentSeq.exact("tilde", 1, 1, 4), 5)


def test_float_path_flags_conditioning():
    vals = float_moments("tilde", 1.0, 1.0, 40)
    assert np.allclose(vals[:9], [1] + [catalan(n) for n in range(1, 9)])
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        r = float_hankel_scan(vals, 20)
    assert r.status == "inconclusive" and any(issubclass(x.category, RuntimeWarning) for x in w)


def test_phase_grid_rows():
    rows = phase_grid(0.5, 1.5, 3, max_order=6)
    assert len(rows) == 9
    assert {r[2] for r in rows} <= {"pass", "fail", "inconclusive"}
    assert dict(((r[0], r[1]), r[2]) for r in rows)[(1.0, 1.0)] == "pass"


def test_moments_from_density():
    m = moments_from_density(MarchenkoPastur(), 4)
    assert np.allclose(m, [1, 1, 2, 5, 14], atol=1e-6)
    assert moments_from_density(delta(3.0), 3) == [1.0, 3.0, 9.0, 27.0]
    with pytest.raises(DomainError):
        moments_from_density(boolean_stable(0.5, 1.0), 1)

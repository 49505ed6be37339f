import time

import numpy as np
import pytest
from scipy.integrate import quad

from smb.errors import DomainError
from smb.identities import lower_grid
from smb.measures import Atomic, delta
from smb.stable_laws import (AdmissiblePair, MarchenkoPastur, boolean_stable, cauchy_rho,
                             classical_stable_cumulant, free_stable)
from smb.transforms import (cauchy, eta, eta_inverse, f_transform, recover_from_eta, s_transform,
                            sigma, voiculescu_phi)

PI = np.pi


def closed_boolean_eta(alpha, rho, z):
    return -(np.exp(1j * rho * PI) * z) ** alpha


@pytest.mark.parametrize("alpha,rho", [(0.3, 1.0), (0.5, 0.5), (0.7, 0.5), (1.0, 0.25)])
def test_numeric_eta_matches_closed_form(alpha, rho):
    b = boolean_stable(alpha, rho)
    z = lower_grid()
    assert z.size == 20 and np.all(z.imag < 0)
    t0 = time.perf_counter()
    num = eta(b, z, closed=False)
    assert time.perf_counter() - t0 < 30
    ref = closed_boolean_eta(alpha, rho, z)
    assert np.max(np.abs(num / ref - 1)) <= 1e-6


def test_cauchy_examples():
    z = np.array([0.3 + 1j, -2 - 0.5j])
    assert np.allclose(cauchy(delta(1.0), z), 1 / (z - 1), rtol=1e-15)
    assert cauchy(cauchy_rho(0.5), 1j) == pytest.approx(-0.5j, abs=1e-14)
    b = boolean_stable(0.5, 1.0)
    z = -1.0
    ref = (-z) ** (0.5 - 1) / (-(-z) ** 0.5 - 1)
    assert complex(cauchy(b, np.array([z + 0j]))[0]) == pytest.approx(ref, rel=1e-12)
    with pytest.raises(DomainError):
        cauchy(cauchy_rho(0.5), np.array([1.0 + 0j]))


def test_conjugate_symmetry():
    z = lower_grid()
    for m in (boolean_stable(0.6, 0.3), MarchenkoPastur(), cauchy_rho(0.2)):
        g, gc = cauchy(m, z), cauchy(m, np.conj(z))
        assert np.max(np.abs(gc - np.conj(g))) <= 1e-13 * np.max(np.abs(g))
        e, ec = eta(m, z), eta(m, np.conj(z))
        assert np.max(np.abs(ec - np.conj(e))) <= 1e-13 * np.max(np.abs(e))


def test_f_transform_nevanlinna():
    w = np.array([0.5 + 0.1j, -3 + 2j, 10 + 0.01j])
    F = f_transform(boolean_stable(0.7, 0.4), w)
    assert np.all(F.imag >= w.imag - 1e-14)


def test_eta_examples():
    z = np.array([-0.3 - 1j, 2 - 0.1j])
    assert np.allclose(eta(delta(2.5), z), 2.5 * z, rtol=1e-15)
    b = boolean_stable(0.5, 1.0)
    assert complex(eta(b, np.array([-1j]))[0]) == pytest.approx(-np.exp(0.25j * PI), abs=1e-14)
    num = complex(eta(boolean_stable(0.5, 0.7), np.array([-1j]), closed=False)[0])
    assert num == pytest.approx(closed_boolean_eta(0.5, 0.7, -1j), rel=1e-6)


def test_eta_small_z_limit():
    # z F(1/z) cancels against 1, so stop where double precision still resolves 1e-10
    y = np.geomspace(1e-2, 1e-5, 4)
    z = -1j * y
    assert np.allclose(eta(delta(3.0), z, closed=False) / z, 3.0, rtol=1e-10)


def test_eta_inverse_examples():
    assert eta_inverse(delta(2.0), -0.4) == pytest.approx(-0.2, rel=1e-12)
    for w in (-0.1, -0.5, -2.0):
        assert eta_inverse(MarchenkoPastur(), w) == pytest.approx(w * (1 - w), rel=1e-10)
    assert eta_inverse(boolean_stable(0.5, 1.0), -0.25) == pytest.approx(-1 / 16, rel=1e-10)
    with pytest.raises(DomainError):
        eta_inverse(delta(1.0), 0.5)


def test_sigma_and_s_examples():
    assert sigma(delta(1.0), -0.3) == pytest.approx(1.0)
    for z in (-0.2, -0.5, -0.9):
        assert s_transform(MarchenkoPastur(), z) == pytest.approx(1 / (1 + z), rel=1e-10)
    assert s_transform(boolean_stable(0.5, 1.0), -0.5) == pytest.approx(1.0, rel=1e-10)


def test_s_transform_numeric_matches_closed():
    b = boolean_stable(0.4, 1.0)
    for z in (-0.2, -0.6):
        ref = ((-z) / (1 + z)) ** 1.5
        assert s_transform(b, z, closed=False) == pytest.approx(ref, rel=1e-8)


def test_voiculescu_phi_examples():
    assert voiculescu_phi(delta(2.0), 3j) == pytest.approx(2.0)
    f = free_stable(0.5, 1.0)
    assert voiculescu_phi(f, 2j) == pytest.approx(1 - 1j, abs=1e-12)
    ref = 10 * np.exp(-0.25j * PI)
    assert voiculescu_phi(f, 100j, closed=False) == pytest.approx(ref, abs=1e-8)
    assert voiculescu_phi(boolean_stable(0.5, 1.0), 40j).imag <= 1e-8
    with pytest.raises(DomainError):
        voiculescu_phi(boolean_stable(0.5, 1.0), 1.0 + 0.1j)


def test_pick_property_for_fid_law():
    b = boolean_stable(0.4, 0.7)
    pts = [50j, 30 + 60j, -40 + 80j, 200j]
    assert all(voiculescu_phi(b, z).imag <= 1e-8 for z in pts)


def test_classical_cumulant_examples():
    assert classical_stable_cumulant(AdmissiblePair(1.0, 1.0), -1j) == pytest.approx(-1j)
    ref = -np.exp(0.25j * PI)
    assert classical_stable_cumulant(AdmissiblePair(0.5, 1.0), -1j) == pytest.approx(ref)
    with pytest.raises(DomainError):
        classical_stable_cumulant(AdmissiblePair(0.5, 1.0), 1j)


def test_classical_cumulant_matches_sampled_law():
    from smb.sampler import classical_stable_variates

    x = classical_stable_variates(0.7, 1.0, 100_000, np.random.default_rng(3))
    s = 0.5
    # E exp(-i s X) = exp(C(-i s)); compare the complex mean within 3 sigma
    emp = np.exp(-1j * s * x)
    ref = np.exp(classical_stable_cumulant(AdmissiblePair(0.7, 1.0), -1j * s))
    se = np.std(emp) / np.sqrt(x.size)
    assert abs(emp.mean() - ref) <= 3 * se * np.sqrt(2)


def _l1(grid_measure, m):
    f = lambda x: abs(grid_measure.density(x) - m.density(x))
    return sum(quad(f, a, b, limit=500)[0] for a, b in ((0, 1e-3), (1e-3, 1), (1, 1e3), (1e3, np.inf)))


def test_recover_boolean_density():
    b = boolean_stable(0.5, 1.0)
    rec = recover_from_eta(lambda z: b.eta_closed(z), support="pos")
    assert _l1(rec, b) <= 1e-5


def test_recover_atom():
    rec = recover_from_eta(lambda z: 2.0 * z)
    assert len(rec.atoms) == 1
    assert rec.atoms[0][0] == pytest.approx(2.0, rel=1e-8)
    assert rec.atoms[0][1] == pytest.approx(1.0, rel=1e-6)


@pytest.mark.parametrize("m", [cauchy_rho(0.3), boolean_stable(0.7, 0.4)])
def test_recover_round_trip_smooth_family(m):
    rec = recover_from_eta(lambda z: eta(m, z))
    f = lambda x: abs(rec.density(x) - m.density(x))
    pieces = ((-np.inf, -1), (-1, 0), (0, 1), (1, np.inf))
    assert sum(quad(f, a, b, limit=500)[0] for a, b in pieces) <= 1e-4


def test_recover_rejects_non_eta():
    with pytest.raises(DomainError):
        # F(w) = w - i has Im F < Im w
        recover_from_eta(lambda z: 1j * z)

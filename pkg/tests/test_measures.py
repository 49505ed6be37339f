import json

import numpy as np
import pytest
from scipy.integrate import quad

from smb.errors import DomainError
from smb.measures import (Atomic, QuadratureSpec, classical_mult, delta, dilate, integrate,
                          invert_measure, measure_from_json, pushforward_power, stieltjes_density,
                          stieltjes_density_grid,
                          symmetrize, total_mass)
from smb.stable_laws import MarchenkoPastur, Pareto, boolean_stable, cauchy_rho


def test_atomic_validation():
    with pytest.raises(DomainError):
        Atomic([(1.0, 0.4), (2.0, 0.4)])
    with pytest.raises(DomainError):
        Atomic([(1.0, -0.5), (2.0, 1.5)])
    with pytest.raises(DomainError):
        Atomic([])


def test_quadrature_spec_validation(monkeypatch):
    with pytest.raises(DomainError):
        QuadratureSpec(epsabs=0.0)
    monkeypatch.setenv("SMB_QUAD_TOL", "1e-6")
    assert QuadratureSpec.default().epsrel == 1e-6
    monkeypatch.setenv("SMB_QUAD_TOL", "nan")
    with pytest.raises(DomainError):
        QuadratureSpec.default()


def test_integrate_examples():
    assert integrate(lambda x: x, Atomic([(1, 0.5), (3, 0.5)])) == pytest.approx(2.0)
    oracle = quad(lambda x: 2 * x * (1 + x) ** -3, 0, np.inf)[0]
    assert oracle == pytest.approx(1.0, abs=1e-10)
    assert integrate(lambda x: x, Pareto(2.0)) == pytest.approx(oracle, abs=1e-8)


@pytest.mark.parametrize("m", [boolean_stable(0.5, 1.0), boolean_stable(0.7, 0.3), cauchy_rho(0.4),
                               MarchenkoPastur(), Pareto(1.5)])
def test_total_mass(m):
    assert total_mass(m) == pytest.approx(1.0, abs=1e-8)


def test_pushforward_power():
    m = pushforward_power(delta(4.0), 0.5)
    assert m.atoms == ((2.0, 1.0),)
    p = Pareto(2.0)
    assert pushforward_power(p, 1) is p or np.allclose(pushforward_power(p, 1).density([0.5, 2]), p.density([0.5, 2]))
    inv = pushforward_power(Pareto(1.0), -1)
    x = np.geomspace(1e-3, 1e3, 50)
    assert np.max(np.abs(inv.density(x) - (1 + x) ** -2)) <= 1e-12
    with pytest.raises(DomainError):
        pushforward_power(Atomic([(-1, 0.5), (1, 0.5)]), 0.5)
    with pytest.raises(DomainError):
        pushforward_power(Atomic([(0, 0.5), (1, 0.5)]), -1)


def test_pushforward_mass_preserved():
    assert total_mass(pushforward_power(boolean_stable(0.6, 1.0), 1.7)) == pytest.approx(1.0, abs=1e-7)


def test_dilate_symmetrize_invert():
    assert dilate(delta(1.0), -3).atoms == ((-3.0, 1.0),)
    assert symmetrize(delta(2.0)).atoms == ((-2.0, 0.5), (2.0, 0.5))
    b = boolean_stable(0.4, 1.0)
    inv = invert_measure(b)
    x = np.geomspace(1e-4, 1e4, 200)
    assert np.max(np.abs(inv.density(x) - b.density(x))) <= 1e-10
    with pytest.raises(DomainError):
        invert_measure(Atomic([(0.0, 0.5), (1.0, 0.5)]))
    with pytest.raises(DomainError):
        symmetrize(cauchy_rho(0.5))


def test_classical_mult_atom_dilates():
    m = boolean_stable(0.5, 1.0)
    prod = classical_mult(delta(2.0), m)
    x = np.geomspace(1e-2, 1e2, 30)
    assert np.allclose(prod.density(x), dilate(m, 2.0).density(x), rtol=1e-12)


def test_classical_mult_atomic_mixture():
    c = cauchy_rho(0.5)
    prod = classical_mult(Atomic([(1, 0.5), (4, 0.5)]), c)
    x = np.linspace(-5, 5, 21)
    expect = 0.5 * c.density(x) + 0.5 * c.density(x / 4) / 4
    assert np.allclose(prod.density(x), expect, rtol=1e-12)
    assert np.isfinite(prod.density(0.0))
    assert total_mass(prod) == pytest.approx(1.0, abs=1e-7)


def test_classical_mult_atomic_commutative_associative():
    a = Atomic([(1, 0.3), (2, 0.7)])
    b = Atomic([(0.5, 0.5), (3, 0.5)])
    c = Atomic([(1.5, 1.0)])
    assert classical_mult(a, b).atoms == classical_mult(b, a).atoms
    left = classical_mult(classical_mult(a, b), c).atoms
    right = classical_mult(a, classical_mult(b, c)).atoms
    assert np.allclose(left, right, rtol=1e-15)


def test_classical_mult_density_association():
    a = Atomic([(1, 0.5), (2, 0.5)])
    p, b = Pareto(2.0), boolean_stable(0.6, 1.0)
    left = classical_mult(classical_mult(a, p), b)
    right = classical_mult(a, classical_mult(p, b))
    f = lambda x: abs(left.density(x) - right.density(x))
    l1 = quad(f, 0, 1, limit=400)[0] + quad(f, 1, np.inf, limit=400)[0]
    assert l1 <= 1e-6


def test_stieltjes_examples():
    assert stieltjes_density(lambda z: 1 / (z + 1j), 0.0) == pytest.approx(1 / np.pi, rel=1e-8)
    assert stieltjes_density(lambda z: 1 / (z - 1), 0.5) == pytest.approx(0.0, abs=1e-8)
    g = MarchenkoPastur().cauchy
    assert stieltjes_density(g, 1.0) == pytest.approx(np.sqrt(3) / (2 * np.pi), rel=1e-8)


def test_stieltjes_reproduces_family_density():
    b = boolean_stable(0.6, 0.7)
    xs = np.concatenate([-np.geomspace(0.05, 20, 25), np.geomspace(0.05, 20, 25)])
    vals = stieltjes_density_grid(b.cauchy, xs)
    assert np.max(np.abs(vals / b.density(xs) - 1)) <= 1e-6


def test_json_round_trip():
    for m in (Atomic([(1.0, 0.5), (2.0, 0.5)]), boolean_stable(0.5, 1.0)):
        back = measure_from_json(json.loads(json.dumps(m.to_json())))
        assert back.to_json() == m.to_json()
    m = measure_from_json({"type": "family", "name": "boolean_stable", "params": {"alpha": 0.5, "rho": 1.0}})
    assert m.density(1.0) == pytest.approx(1 / (2 * np.pi))

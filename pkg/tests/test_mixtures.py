import numpy as np
import pytest
from scipy.integrate import quad

from smb.errors import DomainError, UnsupportedParameter
from smb.identities import lower_grid
from smb.measures import Atomic, delta, dilate, pushforward_power, total_mass
from smb.mixtures import (BooleanSigma, CatalogMatch, ContinuousBoolean, MixtureSpec, SProduct,
                          binomial_sigma, boolean_convolve, boolean_power, continuous_boolean_density,
                          continuous_boolean_eta, free_mult_families, mixture_density, mixture_eta,
                          mixture_measure, monotone_mult_convolve, mp_power, stable_sform)
from smb.stable_laws import (MarchenkoPastur, Pareto, boolean_stable, free_stable, monotone_stable)
from smb.transforms import eta, recover_from_eta

PI = np.pi


def b_eta(alpha, rho, z):
    return -(np.exp(1j * rho * PI) * z) ** alpha


def test_pure_law_density():
    x = np.array([-3.0, -0.2, 0.4, 5.0])
    spec = MixtureSpec.of(delta(1.0), 0.7, 0.3)
    assert np.allclose(mixture_density(spec, x), boolean_stable(0.7, 0.3).density(x), rtol=1e-14)


def test_two_atom_density_example():
    spec = MixtureSpec.of(Atomic([(1, 0.5), (4, 0.5)]), 0.5, 1.0, raw=True)
    assert float(mixture_density(spec, 1.0)[0]) == pytest.approx(0.45 / PI, rel=1e-13)


def test_exponent_convention():
    mu = Atomic([(1, 0.5), (2, 0.5)])
    x = np.array([0.3, 3.0])
    converted = MixtureSpec.of(pushforward_power(mu, 1 / 0.5), 0.5, 1.0, raw=True)
    assert np.allclose(mixture_density(MixtureSpec.of(mu, 0.5, 1.0), x), mixture_density(converted, x))


def test_mixture_mass_with_continuous_mixing():
    spec = MixtureSpec.of(Pareto(2.0), 0.6, 0.8)
    # in u = log|x| the integrand decays exponentially, so the trapezoid rule converges spectrally
    h = 0.1
    x = np.exp(np.arange(-60.0, 60.0 + h / 2, h))
    mass = sum(h * np.sum(mixture_density(spec, sg * x) * x) for sg in (1.0, -1.0))
    assert mass == pytest.approx(1.0, abs=1e-7)


def test_zero_atom_mass_excluded():
    spec = MixtureSpec.of(Atomic([(0.0, 0.25), (1.0, 0.75)]), 0.5, 1.0)
    f = lambda x: float(mixture_density(spec, x)[0])
    mass = quad(f, 0, 1, limit=200)[0] + quad(f, 1, np.inf, limit=200)[0]
    assert mass == pytest.approx(0.75, abs=1e-7)


def test_mixture_eta_examples():
    z = lower_grid()
    assert np.allclose(mixture_eta(MixtureSpec.of(delta(1.0), 0.6, 0.4), z), b_eta(0.6, 0.4, z), rtol=1e-13)
    spec = MixtureSpec.of(boolean_stable(0.5, 1.0), 0.7, 0.5)
    assert np.allclose(mixture_eta(spec, z), b_eta(0.35, 0.5, z), rtol=1e-12)
    with pytest.raises(DomainError):
        mixture_eta(spec, np.array([1j]))


def test_mixture_eta_against_quadrature():
    spec = MixtureSpec.of(Atomic([(1, 0.5), (2, 0.5)]), 0.5, 0.5)
    m = mixture_measure(spec)
    z = np.array([-1 - 1j])
    assert complex(eta(m, z, closed=False)[0]) == pytest.approx(complex(mixture_eta(spec, z)[0]), rel=1e-5)


@pytest.mark.parametrize("alpha,rho", [(0.3, 1.0), (0.5, 0.5), (0.7, 0.2), (0.9, 0.0)])
def test_mixture_eta_formula_random_mixings(alpha, rho):
    rng = np.random.default_rng(int(alpha * 100 + rho * 10))
    z = lower_grid()[::2]
    for _ in range(5):
        k = rng.integers(1, 4)
        locs, w = rng.uniform(0.2, 3.0, k), rng.dirichlet(np.ones(k))
        spec = MixtureSpec.of(Atomic(list(zip(locs, w))), alpha, rho)
        num = eta(mixture_measure(spec), z, closed=False)
        ref = mixture_eta(spec, z)
        assert np.max(np.abs(num - ref) / np.abs(ref)) <= 1e-5


@pytest.mark.parametrize("alpha,rho", [(0.4, 1.0), (0.7, 0.5)])
def test_density_power_law_at_zero(alpha, rho):
    spec = MixtureSpec.of(Atomic([(0.5, 0.3), (2.0, 0.7)]), alpha, rho)
    x = np.geomspace(1e-12, 1e-9, 6)
    d = mixture_density(spec, x)
    assert np.all(d > 0)
    slope = np.polyfit(np.log(x), np.log(d), 1)[0]
    assert slope == pytest.approx(alpha - 1, rel=0.02)


def test_boolean_power_identity_and_dilation():
    b = boolean_stable(0.6, 0.7)
    assert boolean_power(b, 1) is b
    assert boolean_power(b, 0).atoms == ((0.0, 1.0),)
    t = 2.5
    z = lower_grid()
    p = boolean_power(b, t)
    assert np.allclose(p.eta_closed(z), dilate(b, t ** (1 / 0.6)).eta_closed(z), rtol=1e-12)
    with pytest.raises(DomainError):
        boolean_power(b, -1)


def test_boolean_power_recovery_round_trip():
    b = boolean_stable(0.5, 1.0)
    rec = recover_from_eta(boolean_power(b, 2.0).eta_closed, support="pos")
    target = dilate(b, 4.0)
    f = lambda x: abs(rec.density(x) - target.density(x))
    l1 = sum(quad(f, a, c, limit=500)[0] for a, c in ((0, 1e-3), (1e-3, 1), (1, 1e3), (1e3, np.inf)))
    assert l1 <= 1e-5


def test_boolean_convolve_stays_in_class():
    alpha, rho = 0.6, 1.0
    mu1, mu2 = delta(1.0), Atomic([(1.0, 0.5), (2.0, 0.5)])
    m1 = mixture_measure(MixtureSpec.of(mu1, alpha, rho))
    m2 = mixture_measure(MixtureSpec.of(mu2, alpha, rho))
    conv = boolean_convolve(m1, m2)
    z = lower_grid()
    w = b_eta(alpha, rho, z)
    nu_eta = eta(mu1, w) + eta(mu2, w)
    assert np.allclose(conv.eta_closed(z), nu_eta, rtol=1e-12)
    # the recovered measure carries the same eta up to recovery error
    rec = conv.grid()
    zz = np.array([-1 - 1j, -0.3 - 2j, 2 - 1j])
    num = eta(rec, zz, closed=False)
    ref = eta(mu1, b_eta(alpha, rho, zz)) + eta(mu2, b_eta(alpha, rho, zz))
    assert np.max(np.abs(num - ref) / np.abs(ref)) <= 1e-5


def test_monotone_product_examples():
    z = lower_grid()
    m2 = boolean_stable(0.7, 0.3)
    assert np.allclose(monotone_mult_convolve(delta(1.0), m2).eta_closed(z), m2.eta_closed(z), rtol=1e-14)
    prod = monotone_mult_convolve(boolean_stable(0.6, 1.0), boolean_stable(0.5, 0.4))
    assert np.max(np.abs(prod.eta_closed(z) - b_eta(0.3, 0.4, z))) <= 1e-10
    b = boolean_stable(0.8, 1.0)
    sq = monotone_mult_convolve(b, b)
    assert np.max(np.abs(sq.eta_closed(z) - b_eta(0.64, 1.0, z))) <= 1e-10
    with pytest.raises(DomainError):
        monotone_mult_convolve(boolean_stable(0.5, 0.5), b)
    with pytest.raises(DomainError):
        monotone_mult_convolve(delta(0.0), b)


def test_free_mult_catalog():
    alpha = 0.6
    r = free_mult_families(mp_power((1 - alpha) / alpha), free_stable(alpha, 1.0))
    assert isinstance(r, CatalogMatch) and r.family == "boolean_stable"
    assert r.params["alpha"] == pytest.approx(alpha) and r.params["rho"] == 1.0
    t = 1.5
    r = free_mult_families(stable_sform("boolean", 0.5, 1.0).power(t), delta(1.0))
    assert r.family == "boolean_stable" and r.params["alpha"] == pytest.approx(1 / (1 + t))
    r = free_mult_families(MarchenkoPastur(), mp_power(1.0).inverse())
    assert r.family == "boolean_stable" and r.params["alpha"] == pytest.approx(0.5)
    z = np.linspace(-0.9, -0.1, 5)
    assert np.allclose(r.sform(z), -z / (1 + z), rtol=1e-14)


def test_free_mult_non_catalog():
    r = free_mult_families(mp_power(0.3), free_stable(0.6, 0.5))
    assert isinstance(r, SProduct)
    z = np.array([-0.5])
    assert np.allclose(r(z), mp_power(0.3)(z) * stable_sform("free", 0.6, 0.5)(z))
    with pytest.raises(UnsupportedParameter):
        free_mult_families(free_stable(0.6, 0.5), boolean_stable(0.5, 0.5))
    with pytest.raises(UnsupportedParameter):
        free_mult_families(Pareto(1.0), delta(1.0))


def test_continuous_boolean_single_atom():
    x = np.geomspace(1e-3, 1e3, 30)
    s = BooleanSigma(((0.4, 1.0),))
    assert np.allclose(continuous_boolean_density(s, x), boolean_stable(0.4, 1.0).density(x), rtol=1e-13)
    with pytest.raises(DomainError):
        BooleanSigma(())
    with pytest.raises(DomainError):
        BooleanSigma(((1.5, 1.0),))


def test_continuous_boolean_binomial_example():
    n, alpha = 3, 0.8
    z = lower_grid()
    lhs = continuous_boolean_eta(binomial_sigma(n, alpha), z)
    spec = MixtureSpec.of(monotone_stable(1 / n, 1.0), alpha, 1.0)
    rhs = mixture_eta(spec, z)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_continuous_boolean_square_relation():
    sigma = BooleanSigma(((0.2, 0.5), (0.45, 1.5)))
    z = lower_grid()
    lhs = continuous_boolean_eta(sigma, z)
    # mixing b(D2 sigma) with index 1/2 puts its square in front of b_{1/2,1}
    inner = ContinuousBoolean(sigma.dilate(2.0))
    rhs = mixture_eta(MixtureSpec.of(inner, 0.5, 1.0), z)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_continuous_boolean_mass():
    m = ContinuousBoolean(BooleanSigma(((0.3, 0.7), (0.8, 1.2))))
    assert total_mass(m) == pytest.approx(1.0, abs=1e-7)

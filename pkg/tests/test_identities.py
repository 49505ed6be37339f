import json
from fractions import Fraction as F

import numpy as np
import pytest

from smb.errors import DomainError, UsageError
from smb.identities import (UNVERIFIED, IdentityCase, catalog, chebyshev_points, draw_params, lower_grid,
                            mixture_eta_by_dilation, negative_control, numeric_s, verify, verify_all)
from smb.measures import QuadratureSpec
from smb.mixtures import MixtureSpec, mixture_eta
from smb.stable_laws import MarchenkoPastur, Pareto, boolean_stable


def test_catalog_entries():
    cat = catalog()
    assert [c["id"] for c in cat] == [f"I{k}" for k in range(1, 18)]
    by_id = {c["id"]: c for c in cat}
    assert by_id["I2"]["domain"]["rho"] == "{0,1/2,1}"
    assert by_id["I12"]["domain"]["rho"] == "{0,1/2,1}"
    assert by_id["I12"]["domain"]["s"] == "[0,inf)" and by_id["I12"]["domain"]["t"] == "[0,inf)"
    assert "product-of-mixtures" in UNVERIFIED
    json.dumps(cat)


def test_grids():
    z = lower_grid()
    assert z.size == 20 and np.all(z.imag < 0)
    c = chebyshev_points()
    assert c.size == 32 and np.all((c > -0.95) & (c < -0.05))


def test_numeric_s_matches_closed():
    b = boolean_stable(0.6, 1.0)
    for z in (-0.3, -0.8):
        assert numeric_s(b, z) == pytest.approx((-z / (1 + z)) ** (0.4 / 0.6), rel=1e-10)


def test_i1_example():
    rep = verify(IdentityCase("I1", {"alpha": 0.5, "beta": 0.8, "rho": 1.0}, "mc-ks", samples=100_000, seed=1))
    assert rep.passed and rep.discrepancy <= 0.02


def test_i4_example():
    rep = verify(IdentityCase("I4", {"alpha": 0.9}, "density-L1"))
    assert rep.passed and rep.discrepancy <= 1e-5


def test_i15_example():
    rep = verify(IdentityCase("I15", {"s": "1/2", "t": "1/3", "n_max": 10}, "exact-rational"))
    assert rep.passed and rep.discrepancy == 0


def test_eta_alternative_for_i1():
    rep = verify(IdentityCase("I1", {"alpha": 0.7, "beta": 0.5, "rho": 0.3}, "eta-grid"))
    assert rep.passed


def test_method_mismatch_and_unknown_id():
    with pytest.raises(UsageError):
        verify(IdentityCase("I4", {"alpha": 0.5}, "mc-ks"))
    with pytest.raises(UsageError):
        verify(IdentityCase("I99", {}))


def test_domain_errors():
    with pytest.raises(DomainError):
        verify(IdentityCase("I2", {"alpha": 0.5, "rho": 0.3, "mixing": "mp"}))
    with pytest.raises(DomainError):
        verify(IdentityCase("I8", {"alpha": 0.5, "t": 2.5}))
    with pytest.raises(DomainError):
        verify(IdentityCase("I15", {"s": "1", "t": "0"}))


def test_draws_are_reproducible():
    assert draw_params("I3", 7) == draw_params("I3", 7)
    assert draw_params("I3", 7) != draw_params("I3", 8)


def test_suite_five_draws():
    reports = verify_all(seed=7, draws=5)
    assert len(reports) == 85
    failed = [r.to_json() for r in reports if not r.passed]
    assert not failed, failed


def test_suite_reports_deterministic():
    a = [r.to_json() for r in verify_all(seed=3, draws=1, samples=20_000, ids=["I1", "I9", "I17"])]
    b = [r.to_json() for r in verify_all(seed=3, draws=1, samples=20_000, ids=["I1", "I9", "I17"])]
    assert a == b


def test_negative_control_fails():
    rep = negative_control(seed=7, samples=100_000)
    assert not rep.passed and rep.discrepancy > 0.05


def _i14_errors(mixing, ks):
    spec = MixtureSpec.of(mixing, 0.6, 0.4)
    z = lower_grid()
    ref = mixture_eta(spec, z)
    out = []
    for k in ks:
        tol = 1e-3 * 2.0 ** -k
        num = mixture_eta_by_dilation(spec, z, QuadratureSpec(epsabs=tol, epsrel=tol))
        out.append((tol, float(np.max(np.abs(num / ref - 1)))))
    return out


@pytest.mark.parametrize("mixing", [Pareto(1.5), MarchenkoPastur()], ids=["pareto", "mp"])
def test_i14_error_within_tolerance(mixing):
    for tol, err in _i14_errors(mixing, range(7)):
        assert err <= tol


@pytest.mark.parametrize("mixing", [Pareto(1.5), MarchenkoPastur()], ids=["pareto", "mp"])
def test_i14_halving_tolerance_halves_error(mixing):
    errs = _i14_errors(mixing, range(5))
    for (_, e0), (_, e1) in zip(errs[:-1], errs[1:]):
        assert e1 <= e0 / 2, errs

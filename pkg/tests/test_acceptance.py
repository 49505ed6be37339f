"""Acceptance criteria 1-10, one test each; every test records a PASS/FAIL line."""
import time
from math import comb
from fractions import Fraction as F

import numpy as np

from smb.fid import (AdmissiblePair, LambdaParams, alpha0, alpha1, char_zero_counterexample,
                     fid_region_boolean, lambda_boolean_power, lambda_eta, lambda_indicator,
                     scan_boolean, scan_lambda_power, unimodal_mode0_check)
from smb.identities import lower_grid, negative_control, verify_all
from smb.lln import (beta_log_check, gb2_mixture_check, lln_cdf, lln_identity_mc,
                     shifted_beta_residual)
from smb.measures import delta
from smb.moments import fuss_narayana, tilde_moment
from smb.sampler import ks_stat, sample_boolean_stable
from smb.stable_laws import boolean_stable
from smb.transforms import eta

from test_sampler import quadrature_cdf

PI = np.pi


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def test_criterion_1_closed_form_eta(report_criterion):
    z = lower_grid()
    t0 = time.perf_counter()
    errs = {}
    for a, r in [(0.3, 1.0), (0.5, 0.5), (0.7, 0.5), (1.0, 0.25)]:
        ref = -(np.exp(1j * r * PI) * z) ** a
        errs[(a, r)] = float(np.max(np.abs(eta(boolean_stable(a, r), z, closed=False) / ref - 1)))
    dt = time.perf_counter() - t0
    worst = max(errs.values())
    report_criterion(1, worst <= 1e-6 and dt <= 30 * len(errs),
                     f"max rel err {worst:.2e} (<= 1e-6), {dt:.1f} s for {len(errs)} laws")


def test_criterion_2_identity_suite(report_criterion):
    t0 = time.perf_counter()
    reps = verify_all(seed=7, draws=5, samples=100_000)
    ids = {r.id for r in reps}
    failed = [f"{r.id}{r.params}" for r in reps if not r.passed]
    neg = negative_control(seed=7, samples=100_000)
    dt = time.perf_counter() - t0
    ok = len(ids) == 17 and len(reps) == 85 and not failed and not neg.passed and dt <= 600
    report_criterion(2, ok, f"{len(reps) - len(failed)}/{len(reps)} checks pass over {len(ids)} identities; "
                            f"negative control D={neg.discrepancy:.3f} > {neg.threshold:.3f}: "
                            f"{not neg.passed}; {dt:.0f} s; failed={failed}")


def test_criterion_3_hankel_boundary(hankel_scans, report_criterion):
    pos = {st: hankel_scans(*st, 10).status for st in [(1, 1), (2, F(1, 2)), (F(1, 2), 2), (F(3, 2), F(3, 2))]}
    neg = {st: hankel_scans(*st, 50) for st in [(F(1, 2), F(1, 2)), (F(9, 10), F(9, 10)), (F(3, 10), F(4, 5))]}
    neg_ok = all(r.status == "inconclusive" or (r.status == "fail" and r.dets[-1] < 0) for r in neg.values())
    catalan_ok = [tilde_moment(n, 1, 1) for n in range(1, 9)] == [catalan(n) for n in range(1, 9)]
    pairs = [(F(1, 2), F(1, 3)), (F(3, 2), F(2, 5)), (F(-1, 3), F(7, 4)), (F(2), F(-1, 2))]
    i15_ok = all(tilde_moment(n, s, t) == t ** (n + 1) * fuss_narayana(n, s, 1 / t)
                 for s, t in pairs for n in range(1, 11))
    ok = all(v == "pass" for v in pos.values()) and neg_ok and catalan_ok and i15_ok
    neg_txt = ", ".join(f"({s},{t}): {r.status}@{r.first_failing_order}" for (s, t), r in neg.items())
    report_criterion(3, ok, f"positive region {sorted(set(pos.values()))}; {neg_txt}; "
                            f"Catalan n<=8 {catalan_ok}; I15 n<=10 {i15_ok}")


def test_criterion_4_fid_concordance(report_criterion):
    points = [(0.3, 1.0), (0.5, 0.5), (0.6, 0.5), (0.65, 0.5), (0.6, 1.0), (0.8, 1.0)]
    rows = []
    for a, r in points:
        pair = AdmissiblePair(a, r)
        rep = scan_boolean(pair)
        region = fid_region_boolean(pair)
        rows.append(((rep.verdict == "pass") == (region == "FID"), a, r, region, rep.verdict))
    ok = all(row[0] for row in rows)
    report_criterion(4, ok, "; ".join(f"({a},{r}) {reg}->{v}" for _, a, r, reg, v in rows))


def test_criterion_5_lambda_family(report_criterion):
    i1, i2 = lambda_indicator(LambdaParams(0.5, 0.5)), lambda_indicator(LambdaParams(2 / 3, 0.5))
    exact = i1 == F(1) and i2 == F(2) and isinstance(i1, F) and isinstance(i2, F)
    rng = np.random.default_rng(11)
    z = lower_grid()
    dil = 0.0
    for _ in range(5):
        p = LambdaParams(rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95))
        u = rng.uniform(0.2, 3.0)
        c, q = lambda_boolean_power(p, u)
        dil = max(dil, float(np.max(np.abs(u * lambda_eta(p, z) - lambda_eta(q, z, c)))))
    p = LambdaParams(0.6, 0.45)
    ind = float(lambda_indicator(p))
    below, above = scan_lambda_power(p, 0.95 * ind).verdict, scan_lambda_power(p, 1.05 * ind).verdict
    ok = exact and dil <= 1e-10 and below == "pass" and above == "fail"
    report_criterion(5, ok, f"indicators {i1}, {i2}; dilation err {dil:.1e}; "
                            f"0.95x {below}, 1.05x {above}")


def test_criterion_6_lln_closed_forms(report_criterion):
    x = np.geomspace(1e-3, 1e3, 20)
    err = 0.0
    for a in (1 / 3, 0.5, 0.6):
        b = a / (1 - a)
        err = max(err, float(np.max(np.abs(lln_cdf(boolean_stable(a, 1.0), x) - x ** b / (1 + x ** b)))))
    mc = lln_identity_mc(delta(1.0), 100_000, seed=5)
    report_criterion(6, err <= 1e-8 and mc.D <= 0.01, f"CDF max err {err:.1e}; Pareto MC KS {mc.D:.4f}")


def test_criterion_7_explicit_densities(report_criterion):
    t0 = time.perf_counter()
    gb2 = gb2_mixture_check(0.8, 1.0)
    t1 = time.perf_counter()
    res = max(shifted_beta_residual(a, x) for a in (0.3, -0.3, 0.45, -0.9) for x in (0.1, 2.0, 30.0))
    t2 = time.perf_counter()
    blog = beta_log_check()
    t3 = time.perf_counter()
    times = (t1 - t0, t2 - t1, t3 - t2)
    ok = gb2.max_rel_err <= 1e-4 and res <= 1e-8 and blog.max_rel_err <= 1e-4 and max(times) <= 60
    report_criterion(7, ok, f"GB2 {gb2.max_rel_err:.1e}; shifted-beta residual {res:.1e}; "
                            f"beta-log {blog.max_rel_err:.1e}; slowest {max(times):.1f} s")


def test_criterion_8_constants(report_criterion):
    a0, a1 = alpha0(), alpha1()
    uni = [unimodal_mode0_check(boolean_stable(a, r).density) for a, r in [(0.5, 1.0), (0.9, 1.0), (0.95, 0.5)]]
    ok = abs(a0 - 0.7364) <= 1e-3 and abs(a1 - 0.4241) <= 1e-3 and uni == [True, False, True]
    report_criterion(8, ok, f"alpha0={a0:.6f}, alpha1={a1:.6f}, unimodal mode 0 {uni}")


def test_criterion_9_sampler(report_criterion):
    pair = AdmissiblePair(0.5, 1.0)
    batch = sample_boolean_stable(pair, 100_000, seed=3)
    again = sample_boolean_stable(pair, 100_000, seed=3)
    D = ks_stat(batch, quadrature_cdf(boolean_stable(0.5, 1.0).density)).D
    same = np.array_equal(batch.values, again.values)
    report_criterion(9, D <= 0.01 and same, f"KS {D:.4f}; seed-deterministic {same}")


def test_criterion_10_char_zero(report_criterion):
    ce = char_zero_counterexample(0.25)
    ok = (ce.modulus <= 1e-12 and abs(ce.z0 - PI / np.cos(PI / 4)) <= 1e-12
          and abs(ce.p - 1 / (1 + np.exp(PI * np.tan(PI / 4)))) <= 1e-15)
    report_criterion(10, ok, f"|char fn| {ce.modulus:.1e} at z0={ce.z0:.6f}, p={ce.p:.6f}")

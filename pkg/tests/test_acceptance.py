"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line through ``record_acceptance``
(collected again in the terminal summary) and then asserts the criterion.
Run on its own with ``pytest tests/test_acceptance.py -s``.
"""

import math

import numpy as np
import pytest

from caputo_ostrowski import cli
from caputo_ostrowski.functions import (
    FractionalSetup,
    Interval,
    PowerTerm,
    from_terms,
    make_constant,
    make_power_at_b,
    sample_corpus,
)
from caputo_ostrowski.inequalities import (
    SOUND_THEOREMS,
    TheoremId,
    a2_correction_factor,
    eval_classical_ostrowski,
    eval_product_theorem,
    eval_z_bound,
    run_campaign,
)
from caputo_ostrowski.operators import caputo_oracle_power, caputo_right_values, taylor_reconstruct
from caputo_ostrowski.special import gamma

CORPUS = 200
ALPHAS = (0.5, 1.5, 2.5)
PS = (2.0, 3.0)


def test_oracle_equivalence(record_acceptance):
    rng = np.random.default_rng(20240501)
    iv = Interval(0.0, 1.0)
    worst = 0.0
    failures = 0
    for _ in range(50):
        alpha = rng.uniform(0.05, 3.0)
        while abs(alpha - round(alpha)) < 0.05:
            alpha = rng.uniform(0.05, 3.0)
        setup = FractionalSetup(alpha)
        m = setup.m
        # beta >= m keeps f^(m) in the analytic derivative stack
        beta = rng.uniform(m, m + 3)
        c = rng.uniform(-2.0, 2.0)
        f = make_power_at_b(c, beta, iv)
        xs = rng.uniform(iv.a, iv.b, size=10)
        values, errs, tag = caputo_right_values(f, setup, xs, method="quadrature")
        assert tag == "quadrature"
        exact = np.array([caputo_oracle_power(c, beta, alpha, iv, x) for x in xs])
        tol = np.maximum(1e-6, 3 * errs)
        dev = np.abs(values - exact)
        failures += int(np.sum(dev > tol))
        worst = max(worst, float(np.max(dev / tol)))
    ok = failures == 0
    record_acceptance(
        "1 oracle equivalence", ok, f"500 points, {failures} outside tolerance, worst |dev|/tol = {worst:.3g}"
    )
    assert ok


def test_taylor_residual(record_acceptance):
    iv = Interval(0.0, 1.0)
    rng = np.random.default_rng(7)
    worst = 0.0
    failures = 0
    count = 0
    for alpha in ALPHAS:
        setup = FractionalSetup(alpha)
        for f in sample_corpus(setup, iv, CORPUS, seed=1):
            for x in rng.uniform(iv.a, iv.b, size=16):
                r = taylor_reconstruct(f, setup, float(x))
                tol = max(1e-5, 5 * r.err_estimate)
                dev = abs(r.value - float(f(x)))
                failures += dev > tol
                worst = max(worst, dev / tol)
                count += 1
    ok = failures == 0
    record_acceptance(
        "2 Taylor residual", ok, f"{count} points, {failures} outside tolerance, worst |dev|/tol = {worst:.3g}"
    )
    assert ok


def test_inequality_soundness(record_acceptance):
    campaign = run_campaign(ALPHAS, SOUND_THEOREMS, CORPUS, seed=1, ps=PS)
    per = campaign.summary["theorems"]
    errors = sum(v["errors"] for v in per.values())
    ok = campaign.sound_violations == 0 and errors == 0
    ratios = ", ".join(
        f"{t.value} {per[t.value]['max_ratio']:.3f}" for t in TheoremId if t.value in per and per[t.value]["count"]
    )
    record_acceptance(
        "3 inequality soundness",
        ok,
        f"{len(campaign.reports)} reports, {campaign.sound_violations} violated, {errors} errors; max ratios: {ratios}",
    )
    assert ok


def test_unit_g_reductions(record_acceptance):
    iv = Interval(0.0, 1.0)
    one = make_constant(1.0, iv)
    L = iv.length
    worst = {"A/Z1": 0.0, "A1/Z2": 0.0, "A2_CORRECTED/Z3": 0.0}
    for alpha in ALPHAS:
        for p in PS:
            setup = FractionalSetup(alpha, p) if alpha > 1 - 1 / p else FractionalSetup(alpha)
            pairs = [("A", "Z1", "A/Z1")]
            if alpha >= 1:
                pairs.append(("A1", "Z2", "A1/Z2"))
            if setup.p is not None:
                pairs.append(("A2_CORRECTED", "Z3", "A2_CORRECTED/Z3"))
            for f in sample_corpus(setup, iv, 20, seed=3):
                for prod, z, key in pairs:
                    rp = eval_product_theorem(f, one, setup, prod)
                    rz = eval_z_bound(f, setup, z)
                    rel = abs(rp.rhs - L * rz.rhs) / abs(L * rz.rhs)
                    worst[key] = max(worst[key], rel)
    ok = all(v <= 1e-8 for v in worst.values())
    detail = ", ".join(f"{k} worst rel {v:.2e}" for k, v in worst.items())
    record_acceptance("4 reductions with g = 1", ok, detail)
    assert ok


def test_worked_instance(record_acceptance):
    iv = Interval(0.0, 1.0)
    f = make_power_at_b(1.0, 1.0, iv)
    r = eval_product_theorem(f, f, FractionalSetup(0.5), TheoremId.A)
    rhs_exact = 2 * (2 / math.sqrt(math.pi)) * (0.4 / gamma(1.5))
    lhs_rel = abs(r.lhs - 2 / 3) / (2 / 3)
    rhs_rel = abs(r.rhs - rhs_exact) / rhs_exact
    ok = lhs_rel <= 1e-6 and rhs_rel <= 1e-6 and abs(rhs_exact - 1.0185916358) <= 1e-10
    record_acceptance(
        "5 worked instance", ok, f"lhs {r.lhs:.12g} (rel {lhs_rel:.1e}), rhs {r.rhs:.12g} (rel {rhs_rel:.1e})"
    )
    assert ok


def test_classical_sharpness(record_acceptance):
    iv = Interval(0.0, 1.0)
    f = from_terms(iv, [PowerTerm(1.0, 0.0), PowerTerm(-1.0, 1.0)])  # f(t) = t
    r = eval_classical_ostrowski(f, 1.0)
    ok = r.ratio >= 0.999
    record_acceptance("6 classical sharpness", ok, f"ratio {r.ratio:.15g}")
    assert ok


def test_quadrature_convergence(record_acceptance, capsys):
    code = cli.main(["converge", "caputo-right", "--f", "powb:c=1,beta=2.5", "--alpha", "0.5"])
    out = capsys.readouterr().out
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    table = {int(r[0]): float(r[3]) for r in rows if r[3]}
    orders = [table[512], table[1024]]
    ok = code == 0 and min(orders) >= 1.8
    record_acceptance(
        "7 quadrature convergence", ok, f"empirical order {orders[0]:.3f} (512), {orders[1]:.3f} (1024)"
    )
    assert ok


def test_a2_discrepancy(record_acceptance):
    campaign = run_campaign([0.6], ["A2_STATED", "A2_CORRECTED"], CORPUS, seed=1, ps=[2.0])
    block = campaign.summary["a2_discrepancy"]
    expected = math.gamma(0.6) * 0.2**0.5
    assert a2_correction_factor(FractionalSetup(0.6, 2.0)) == pytest.approx(expected, rel=1e-14)
    devs = [abs(p["stated_over_corrected"] / expected - 1) for p in block["pairs"]]
    ok = len(devs) == CORPUS and max(devs) <= 1e-10 and campaign.sound_violations == 0
    record_acceptance(
        "8 A2 discrepancy",
        ok,
        f"{len(devs)} pairs, ratio {expected:.12g}, worst rel dev {max(devs):.1e}, "
        f"stated-form violations flagged: {block['stated_violations']}",
    )
    assert ok

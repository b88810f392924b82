"""Acceptance suite: one test per criterion, each printing a verdict line.

The corpus-level criteria share seeded fixtures; every tolerance is fixed
here, not tuned at runtime.  Criterion 1 runs its quadratures at
tol = 1e-8 (violation slack is three times that); the empirical worst
margin sits four to six orders of magnitude above the slack, so the check
is insensitive to the tolerance choice.  Criterion 2 runs at 1e-6, which
resolves O(1..50) ratio estimates to six digits.
"""

import time

import numpy as np
import pytest

from diskalg import (
    CoefficientRule,
    PointIdeal,
    SpaceParams,
    TruncatedSeries,
    Verdict,
    check_functional_axioms,
    check_seminorm_domination,
    classify,
    coeff_seminorm,
    envelope_metric,
    estimate_equivalence_constant,
    generate_corpus,
    hurwitz_closure_suite,
    mean_modulus_p,
    privalov_metric,
    quotient_seminorm_bounds,
    synthetic_divide,
)
from diskalg.verify import Corpus

SEED = 20250810
P_GRID = (1.5, 2.0, 3.0)
C_GRID = (0.5, 1.0, 2.0)
DOMOPT = {"tol": 1e-8, "slack_factor": 3.0}
CONSTOPT = {"tol": 1e-6}


def note(name, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


@pytest.fixture(scope="module")
def corpus_20k():
    return generate_corpus(SEED, 20000)


@pytest.fixture(scope="module")
def corpus_10k(corpus_20k):
    # prefix of the doubled corpus (generation is prefix-stable)
    return Corpus(seed=SEED, entries=corpus_20k.entries[:10000],
                  generator_spec=corpus_20k.generator_spec)


@pytest.fixture(scope="module")
def domination_run(corpus_10k):
    t0 = time.perf_counter()
    report = check_seminorm_domination(corpus_10k, P_GRID, C_GRID, **DOMOPT)
    return report, time.perf_counter() - t0


def test_criterion_01_first_inequality_zero_violations(domination_run):
    report, elapsed = domination_run
    ok = (report.failed == 0 and report.quadrature_failures == 0
          and report.checked == 10000 * 9)
    runtime_ok = elapsed < 120.0
    note("criterion 1 (integral <= coefficient seminorm at c1)",
         ok and runtime_ok,
         f"checked={report.checked} violations={report.failed} "
         f"worst_margin={report.worst_margin['margin']:.4g} "
         f"runtime={elapsed:.1f}s (target <120s)")
    assert ok
    assert report.worst_margin["margin"] > 0
    assert runtime_ok


def test_criterion_02_equivalence_constant_stable(corpus_20k):
    report = estimate_equivalence_constant(corpus_20k, P_GRID, C_GRID,
                                           **CONSTOPT)
    worst_change = 0.0
    ok = report.quadrature_failures == 0
    for cell in report.per_cell:
        ok = ok and np.isfinite(cell["a_hat"]) and cell["used"] == 20000
        change = abs(cell["relative_change_on_doubling"])
        worst_change = max(worst_change, change)
        ok = ok and change <= 0.05
    note("criterion 2 (empirical constant finite, stable under doubling)",
         ok, f"cells={len(report.per_cell)} worst_change={worst_change:.3%} "
             f"(limit 5%)")
    assert ok


def test_criterion_03_synthetic_division_reconstruction():
    rng = np.random.default_rng(SEED + 3)
    worst = 0.0
    for _ in range(1000):
        deg = int(rng.integers(1, 513))
        f = TruncatedSeries(rng.standard_normal(deg + 1)
                            + 1j * rng.standard_normal(deg + 1))
        lam = 0.9 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        quotient = synthetic_divide(f, lam)
        rebuilt = quotient.mul(TruncatedSeries([-lam, 1.0])) + f(lam)
        err = float(np.max(np.abs(rebuilt.coeffs[: len(f)] - f.coeffs)))
        worst = max(worst, err)
    ok = worst <= 1e-12
    note("criterion 3 (deflation multiply-back, 1000 x deg<=512)",
         ok, f"max coeff error={worst:.3g} (limit 1e-12)")
    assert ok


def test_criterion_04_functional_axioms(corpus_10k):
    rng = np.random.default_rng(SEED + 4)
    small = Corpus(seed=SEED, entries=corpus_10k.entries[:400],
                   generator_spec=corpus_10k.generator_spec)
    worst = 0.0
    failures = 0
    for batch in range(5):
        lam = 0.9 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        report = check_functional_axioms(small, lam, sp=2.0,
                                         pair_seed=SEED + batch, pairs=200)
        failures += report.failed
        for axiom in ("additivity", "homogeneity", "multiplicativity"):
            worst = max(worst, report.empirical["worst_errors"][axiom])
    ok = failures == 0 and worst <= 1e-12
    note("criterion 4 (point-functional axioms, 1000 pairs)",
         ok, f"failures={failures} worst_rel_error={worst:.3g}")
    assert ok


def test_criterion_05_quotient_two_regime_law():
    rng = np.random.default_rng(SEED + 5)
    worst_gap = 0.0
    worst_upper = 0.0
    for i in range(200):
        deg = int(rng.integers(0, 64))
        f = TruncatedSeries(rng.standard_normal(deg + 1)
                            + 1j * rng.standard_normal(deg + 1))
        lam = (0.2 + 0.7 * rng.random()) * np.exp(2j * np.pi * rng.random())
        ideal = PointIdeal(lam)
        if i % 2 == 0:
            r = abs(lam) + (0.99 - abs(lam)) * rng.random()
            lower, upper = quotient_seminorm_bounds(f, ideal, r)
            worst_gap = max(worst_gap, upper - lower)
            assert upper == pytest.approx(abs(f(lam)), rel=1e-12)
        else:
            # the 1e-8 target presumes a unit representative: both bounds
            # scale linearly in |f(lambda)|
            f = f.scale(1.0 / abs(f(lam)))
            r = 0.75 * abs(lam) * rng.random()
            lower, upper = quotient_seminorm_bounds(f, ideal, r, k_budget=64)
            assert lower == 0.0
            worst_upper = max(worst_upper, upper)
    ok = worst_gap <= 1e-10 and worst_upper <= 1e-8
    note("criterion 5 (quotient seminorm bracket, 200 triples)",
         ok, f"outer gap={worst_gap:.3g} (limit 1e-10), "
             f"inner upper={worst_upper:.3g} (limit 1e-8)")
    assert ok


def test_criterion_06_membership_classifier():
    ok = True
    for p in P_GRID:
        sp = SpaceParams(p)
        cases = (
            (CoefficientRule.geometric(1.0), Verdict.MEMBER),
            (CoefficientRule.stretched_exp(0.1, sp.alpha), Verdict.NON_MEMBER),
            (CoefficientRule.stretched_exp_damped(sp.alpha), Verdict.MEMBER),
        )
        for rule, expected in cases:
            v14 = classify(rule, sp, n_max=2**14)
            v15 = classify(rule, sp, n_max=2**15)
            ok = ok and v14.verdict is expected and v15.verdict is expected
    note("criterion 6 (canonical family verdicts at 2^14 and 2^15)", ok,
         f"p grid {P_GRID}")
    assert ok


def test_criterion_07_parseval_oracle():
    rng = np.random.default_rng(SEED + 7)
    worst = 0.0
    for _ in range(1000):
        deg = int(rng.integers(0, 257))
        f = TruncatedSeries(rng.standard_normal(deg + 1)
                            + 1j * rng.standard_normal(deg + 1))
        r = float(rng.uniform(0.0, 0.99))
        n = np.arange(deg + 1)
        oracle = float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2 * r ** (2 * n))))
        got = mean_modulus_p(f, r, 2.0)
        worst = max(worst, abs(got - oracle))
    ok = worst <= 1e-10
    note("criterion 7 (quadrature vs coefficient formula, p=2, 1000 cases)",
         ok, f"worst abs diff={worst:.3g} (limit 1e-10)")
    assert ok


def test_criterion_08_unit_normalization():
    one = TruncatedSeries.one()
    ok = all(coeff_seminorm(one, p, c) == 1.0
             for p in P_GRID for c in C_GRID)
    note("criterion 8 (coefficient seminorm of 1 equals 1 exactly)", ok,
         f"grid {len(P_GRID) * len(C_GRID)} cells")
    assert ok


def test_criterion_09_metric_axioms():
    rng = np.random.default_rng(SEED + 9)
    sym_exact = True
    worst_triangle = -np.inf
    positive = True
    for _ in range(100):
        p = float(rng.choice(P_GRID))
        degs = rng.integers(0, 48, size=3)
        f, g, h = (TruncatedSeries(rng.standard_normal(d + 1)
                                   + 1j * rng.standard_normal(d + 1))
                   for d in degs)
        for metric in (privalov_metric, envelope_metric):
            dfg = metric(f, g, p)
            sym_exact = sym_exact and dfg == metric(g, f, p)
            slack = dfg - (metric(f, h, p) + metric(h, g, p))
            worst_triangle = max(worst_triangle, slack)
            positive = positive and dfg > 0.0
    ok = sym_exact and worst_triangle <= 1e-12 and positive
    note("criterion 9 (metric axioms on 100 triples + log 2 value)", ok,
         f"triangle slack={worst_triangle:.3g}")
    assert ok


def test_criterion_09b_constant_difference_log2():
    rng = np.random.default_rng(SEED + 10)
    f = TruncatedSeries(rng.standard_normal(12) + 1j * rng.standard_normal(12))
    worst = 0.0
    for p in P_GRID + (5.0, 11.0):
        worst = max(worst, abs(privalov_metric(f, f - 1, p) - np.log(2.0)))
    ok = worst <= 1e-10
    note("criterion 9 (d_p of constant-1 difference equals log 2)", ok,
         f"worst abs err={worst:.3g}")
    assert ok


def test_criterion_10_hurwitz_closure():
    total_failed = 0
    total_checked = 0
    for lam, r, seed in ((0.3, 0.8, 1), (0.5j, 0.75, 2), (-0.4 + 0.2j, 0.9, 3)):
        report = hurwitz_closure_suite(lam, r, seed=seed, sequences=8,
                                       terms=24)
        total_failed += report.failed
        total_checked += report.checked
        assert report.empirical["invalid_sequences"] == 0
    ok = total_failed == 0 and total_checked == 3 * 8 * 24
    note("criterion 10 (closure bound at every k)", ok,
         f"checked={total_checked} failures={total_failed}")
    assert ok


def test_criterion_11_reproducibility():
    runs = []
    for _ in range(2):
        corpus = generate_corpus(SEED + 11, 300)
        dom = check_seminorm_domination(corpus, [1.5, 2.0], [0.5, 1.0],
                                        tol=1e-7)
        fun = check_functional_axioms(corpus, 0.3 + 0.2j, pair_seed=SEED)
        hur = hurwitz_closure_suite(0.2, 0.7, seed=SEED)
        runs.append((dom.to_json(), fun.to_json(), hur.to_json()))
    ok = runs[0] == runs[1]
    note("criterion 11 (byte-identical reports for identical seeds)", ok,
         f"{len(runs[0][0])}+{len(runs[0][1])}+{len(runs[0][2])} bytes compared")
    assert ok

"""Verification harnesses: determinism, reports, and the theorem sweeps."""

import json

import numpy as np
import pytest

from diskalg import (
    TruncatedSeries,
    VerificationReport,
    check_functional_axioms,
    check_seminorm_domination,
    estimate_equivalence_constant,
    generate_corpus,
    hurwitz_closure_suite,
)
from diskalg.verify import corpus_to_json


class TestCorpus:
    def test_regeneration_is_identical(self):
        a = generate_corpus(123, 50)
        b = generate_corpus(123, 50)
        for fa, fb in zip(a, b):
            assert fa == fb

    def test_prefix_property_under_doubling(self):
        small = generate_corpus(9, 40)
        big = generate_corpus(9, 80)
        for fa, fb in zip(small, big):
            assert fa == fb

    def test_degree_bounds(self):
        corpus = generate_corpus(5, 200)
        degs = [f.degree for f in corpus]
        assert min(degs) >= 4 and max(degs) <= 256

    def test_json_deterministic(self):
        a = corpus_to_json(generate_corpus(2, 10))
        b = corpus_to_json(generate_corpus(2, 10))
        assert a == b


class TestReportType:
    def test_counts_must_balance(self):
        with pytest.raises(ValueError):
            VerificationReport(check="x", parameters={}, checked=3,
                               passed=1, failed=1)

    def test_json_has_no_numpy_leakage(self):
        rep = check_functional_axioms(generate_corpus(1, 20), 0.2, pairs=10)
        payload = rep.to_json()
        parsed = json.loads(payload)
        assert parsed["checked"] == parsed["passed"] + parsed["failed"]


class TestDomination:
    def test_zero_violations_small_corpus(self):
        corpus = generate_corpus(77, 60)
        rep = check_seminorm_domination(corpus, [1.5, 2.0, 3.0],
                                        [0.5, 1.0, 2.0], tol=1e-8)
        assert rep.failed == 0
        assert rep.quadrature_failures == 0
        assert rep.checked == 60 * 9
        assert rep.worst_margin["margin"] > 0

    def test_report_determinism(self):
        corpus = generate_corpus(8, 25)
        a = check_seminorm_domination(corpus, [2.0], [1.0]).to_json()
        b = check_seminorm_domination(generate_corpus(8, 25), [2.0], [1.0]).to_json()
        assert a == b

    def test_worst_margin_is_reproducible(self):
        corpus = generate_corpus(13, 30)
        rep = check_seminorm_domination(corpus, [2.0], [1.0])
        idx = rep.worst_margin["entry"]
        assert corpus[idx].degree == rep.worst_margin["degree"]

    def test_margins_csv(self):
        corpus = generate_corpus(3, 10)
        rep = check_seminorm_domination(corpus, [2.0], [1.0], keep_margins=True)
        lines = rep.margins_csv().splitlines()
        assert lines[0] == "p,c,entry,degree,margin"
        assert len(lines) == 11


class TestEquivalenceConstant:
    def test_single_constant_entry(self):
        corpus_like = generate_corpus(0, 1)
        one = TruncatedSeries.one()
        corpus_like = type(corpus_like)(seed=0, entries=(one,),
                                        generator_spec={})
        rep = estimate_equivalence_constant(corpus_like, [2.0], [1.0])
        cell = rep.per_cell[0]
        # for f = 1 the ratio is 1 / integral of the weight at c2
        from diskalg import integral_seminorm, equivalence_constants
        c2 = equivalence_constants(2.0, 1.0)[1]
        expect = 1.0 / integral_seminorm(one, 2.0, c2)
        assert cell["a_hat"] == pytest.approx(expect, rel=1e-8)

    def test_scaling_invariance_of_ratio(self):
        corpus = generate_corpus(21, 8)
        scaled = type(corpus)(
            seed=corpus.seed,
            entries=tuple(f.scale(2.0) for f in corpus),
            generator_spec=corpus.generator_spec)
        a = estimate_equivalence_constant(corpus, [2.0], [1.0]).per_cell[0]
        b = estimate_equivalence_constant(scaled, [2.0], [1.0]).per_cell[0]
        assert a["a_hat"] == pytest.approx(b["a_hat"], rel=1e-10)

    def test_finite_and_attained(self):
        corpus = generate_corpus(4, 60)
        rep = estimate_equivalence_constant(corpus, [1.5, 3.0], [0.5, 2.0],
                                            tol=1e-6)
        for cell in rep.per_cell:
            assert np.isfinite(cell["a_hat"])
            assert 0 <= cell["attained_at"] < 60


class TestFunctionalAxioms:
    def test_all_pass(self):
        corpus = generate_corpus(6, 40)
        rep = check_functional_axioms(corpus, 0.4 + 0.3j, pairs=60)
        assert rep.failed == 0
        assert rep.empirical["worst_errors"]["multiplicativity"] <= 1e-12

    def test_unit_functional(self):
        corpus = generate_corpus(6, 5)
        rep = check_functional_axioms(corpus, 0.0, pairs=5)
        assert rep.failed == 0


class TestHurwitzSuite:
    def test_generated_sequences_all_pass(self):
        rep = hurwitz_closure_suite(0.3, 0.8, seed=5, sequences=6, terms=16)
        assert rep.failed == 0
        assert rep.checked == 6 * 16
        assert rep.empirical["invalid_sequences"] == 0
        assert rep.worst_margin["margin"] >= -1e-15

    def test_constant_sequence_is_trivially_closed(self):
        lam = 0.25
        linear = TruncatedSeries([-lam, 1.0])
        member = linear.mul(TruncatedSeries([0.0, 1.0]))
        rep = hurwitz_closure_suite(
            lam, 0.7, explicit=[([member, member, member], member)])
        assert rep.failed == 0
        assert rep.empirical["invalid_sequences"] == 0

    def test_non_convergent_sequence_flagged_invalid(self):
        lam = 0.2
        linear = TruncatedSeries([-lam, 1.0])
        members = [linear.mul(TruncatedSeries([1.0, float(k)]))
                   for k in range(1, 6)]  # distances grow with k
        rep = hurwitz_closure_suite(lam, 0.6,
                                    explicit=[(members, linear)])
        assert rep.empirical["invalid_sequences"] == 1
        assert rep.checked == 0

    def test_limit_outside_ideal_forces_distance_floor(self):
        # members vanish at lam but the proposed limit does not; the
        # closure bound then caps how close the sequence can get
        lam = 0.3
        linear = TruncatedSeries([-lam, 1.0])
        members = [linear.mul(TruncatedSeries([1.0, 1.0 / k]))
                   for k in range(1, 9)]
        target = linear + 0.5  # value 0.5 at lam
        rep = hurwitz_closure_suite(lam, 0.75, explicit=[(members, target)])
        rec = rep.empirical["records"][0]
        assert min(rec["distances"]) >= 0.5 - 1e-12
        assert rep.failed == 0

    def test_requires_radius_beyond_point(self):
        with pytest.raises(ValueError):
            hurwitz_closure_suite(0.5, 0.4)

    def test_bound_margins_recorded(self):
        rep = hurwitz_closure_suite(0.1j, 0.5, seed=1, sequences=2, terms=8)
        rec = rep.empirical["records"][0]
        assert len(rec["distances"]) == 8
        assert all(dv <= 1e-9 for dv in rec["member_values"])

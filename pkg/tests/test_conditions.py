"""Tests for conditions.py — witness searches, certificates and finite-group audits."""

import random

import pytest

from graded_goldie.conditions import (
    SearchKind,
    case_analysis_check,
    center_triviality_probe,
    cond2_witness,
    cond2prime_witness,
    conjugate_power_obstruction,
    degree_alignment,
    finite_group_analysis,
    klyachko_exponent,
    klyachko_survey,
    klyachko_verify,
    mn_conclusion_audit,
    remark1_bound_audit,
    star_induction_check,
)
from graded_goldie.exceptions import FamilyMismatch, PremiseViolated
from graded_goldie.group_tables import builtin_table
from graded_goldie.groups import BaumslagSolitarGroup, FreeAbelianGroup, IntegerGroup, RestrictedDihedralGroup

BS12 = BaumslagSolitarGroup()
KLYACHKO = RestrictedDihedralGroup()


class TestCond2Witness:
    def test_abelian_pair(self):
        group = FreeAbelianGroup(2)
        outcome = cond2_witness(group, (1, 0), (0, 1), 10)
        assert outcome.found
        assert outcome.witness.n == 1

    def test_single_flip_needs_multiple_of_three(self):
        g = KLYACHKO.symbol("s1")
        outcome = cond2_witness(KLYACHKO, g, KLYACHKO.symbol("r"), 100)
        assert outcome.found
        assert outcome.witness.n == 3
        assert outcome.witness.verify(KLYACHKO)

    def test_dihedral_exhausts_with_certificate(self, d_infty):
        outcome = cond2_witness(d_infty, d_infty.symbol("s"), d_infty.symbol("r"), 1000)
        assert outcome.kind is SearchKind.EXHAUSTED_BOUND
        assert outcome.bound == 1000
        assert outcome.certificate is not None
        assert outcome.conclusive

    def test_finite_family_exhaustion_is_inconclusive(self, s3_group):
        outcome = cond2_witness(s3_group, s3_group.symbol("t12"), s3_group.symbol("c123"), 2)
        assert outcome.exhausted
        assert not outcome.conclusive

    def test_foreign_element(self, d_infty):
        with pytest.raises(FamilyMismatch):
            cond2_witness(d_infty, 1, d_infty.symbol("r"))


class TestCond2PrimeWitness:
    def test_bs12(self):
        outcome = cond2prime_witness(BS12, BS12.symbol("a"), BS12.symbol("b"), 10, 10)
        assert (outcome.witness.m, outcome.witness.n) == (1, 2)
        assert outcome.witness.verify(BS12)

    def test_dihedral_exhausts(self, d_infty):
        outcome = cond2prime_witness(d_infty, d_infty.symbol("s"), d_infty.symbol("r"), 100, 100)
        assert outcome.exhausted
        assert outcome.to_dict(d_infty)["bound"] == [100, 100]
        assert outcome.certificate is not None

    def test_abelian(self):
        outcome = cond2prime_witness(IntegerGroup(), 1, 1, 5, 5)
        assert (outcome.witness.m, outcome.witness.n) == (1, 1)


class TestConjugatePowerObstruction:
    def test_dihedral_holds(self, d_infty):
        outcome = conjugate_power_obstruction(d_infty, d_infty.symbol("s"), d_infty.symbol("r"), 50, 50)
        assert outcome.exhausted
        assert "h^-l" in outcome.certificate

    def test_bs12_translation_conjugating_dilation(self):
        outcome = conjugate_power_obstruction(BS12, BS12.symbol("b"), BS12.symbol("a"), 30, 30)
        assert outcome.exhausted
        assert outcome.certificate is not None

    def test_integers_violate(self):
        outcome = conjugate_power_obstruction(IntegerGroup(), 1, 1, 5, 5)
        assert outcome.kind is SearchKind.VIOLATION_FOUND
        assert (outcome.witness.k, outcome.witness.l) == (1, 1)


class TestKlyachko:
    def test_single_flip_exponent(self):
        assert klyachko_exponent(KLYACHKO, KLYACHKO.symbol("s1")) == 6

    def test_no_flips(self):
        g = KLYACHKO.element({2: (1, 0)}, tail=3)
        assert klyachko_exponent(KLYACHKO, g) == 2
        rng = random.Random(1)
        for _ in range(20):
            assert klyachko_verify(KLYACHKO, g, KLYACHKO.random_element(rng))

    def test_two_flips_commute_with_power(self):
        g = KLYACHKO.element({1: (0, 1), 2: (0, 1)})
        assert klyachko_exponent(KLYACHKO, g) == 30
        rng = random.Random(7)
        for _ in range(30):
            h = KLYACHKO.random_element(rng, radius=5, max_flips=5)
            assert klyachko_verify(KLYACHKO, g, h)

    def test_other_family(self, d_infty):
        with pytest.raises(FamilyMismatch):
            klyachko_exponent(d_infty, d_infty.symbol("s"))

    def test_center_probe(self):
        for g in (KLYACHKO.symbol("s2"), KLYACHKO.symbol("r"), KLYACHKO.symbol("r3")):
            h = center_triviality_probe(KLYACHKO, g)
            assert not KLYACHKO.commutes(g, h)
        assert center_triviality_probe(KLYACHKO, KLYACHKO.identity) is None

    def test_survey(self):
        survey = klyachko_survey(KLYACHKO, samples=25, center_samples=10)
        assert survey.passed
        assert survey.to_dict()["tail_order"]["kind"] == "infinite"


class TestStarInduction:
    def test_bs12(self):
        report = star_induction_check(BS12, BS12.symbol("a"), BS12.symbol("b"), 1, 2, 5)
        assert report.passed
        assert [s["d"] for s in report.steps] == [1, 2, 3, 4, 5]

    def test_commuting_pair(self):
        report = star_induction_check(IntegerGroup(), 1, 2, 1, 1, 4)
        assert report.passed

    def test_s3(self, s3_group):
        report = star_induction_check(s3_group, s3_group.symbol("t12"), s3_group.symbol("c123"), 1, 2, 3)
        assert report.passed

    def test_premise_violated(self):
        with pytest.raises(PremiseViolated):
            star_induction_check(BS12, BS12.symbol("a"), BS12.symbol("b"), 1, 3, 2)


class TestFiniteGroupAnalysis:
    def test_s3(self, s3_group):
        analysis = finite_group_analysis(s3_group)
        assert analysis.k == 3
        assert sorted(s3_group.format(x) for x in analysis.commutator_subgroup) == ["c123", "c132", "e"]
        assert analysis.index_cent_gprime == 2
        assert analysis.bound == 9
        assert analysis.bound_holds
        assert analysis.exponent == 6

    def test_q8(self):
        q8 = builtin_table("Q8")
        analysis = finite_group_analysis(q8)
        assert analysis.k == 2
        assert {q8.format(x) for x in analysis.center} == {"e", "m"}
        assert analysis.commutator_subgroup == analysis.center

    def test_z2(self, z2):
        analysis = finite_group_analysis(z2)
        assert analysis.k == 1
        assert analysis.commutator_subgroup == frozenset({z2.identity})

    def test_infinite_group(self, d_infty):
        with pytest.raises(FamilyMismatch):
            finite_group_analysis(d_infty)


class TestRemark1BoundAudit:
    def test_q8_holds(self):
        audit = remark1_bound_audit(builtin_table("Q8"))
        assert (audit.k, audit.n_claimed) == (2, 4)
        assert audit.holds_uniformly
        assert audit.minimal_uniform_n == 2
        assert audit.pairs_checked == 64

    def test_s3_fails_with_witness(self, s3_group):
        audit = remark1_bound_audit(s3_group)
        assert (audit.k, audit.n_claimed) == (3, 27)
        assert not audit.holds_uniformly
        assert audit.to_dict(s3_group)["counterexample_pair"] == {"g": "c123", "h": "t12"}
        assert audit.minimal_uniform_n == 6

    def test_z2(self, z2):
        audit = remark1_bound_audit(z2)
        assert (audit.k, audit.n_claimed, audit.holds_uniformly) == (1, 1, True)


class TestDegreeAlignment:
    def test_equal_degrees(self, d_infty):
        r = d_infty.symbol("r")
        outcome = degree_alignment(d_infty, [r, r, r])
        assert outcome.witness.k == 1

    def test_s3_cycles(self, s3_group):
        outcome = degree_alignment(s3_group, [s3_group.symbol("c123"), s3_group.symbol("c132")])
        assert outcome.witness.k_steps == (3,)
        assert outcome.witness.k == 3
        assert outcome.witness.common_power(s3_group) == s3_group.identity

    def test_dihedral_rotations_never_align(self, d_infty):
        r = d_infty.symbol("r")
        outcome = degree_alignment(d_infty, [r, d_infty.conjugate(d_infty.symbol("s"), r)], 50)
        assert outcome.exhausted
        assert outcome.witness["step"] == 1
        assert outcome.certificate is not None

    def test_empty(self, d_infty):
        with pytest.raises(ValueError):
            degree_alignment(d_infty, [])


class TestCaseAnalysis:
    def test_s3_equal_exponents(self, s3_group):
        result = case_analysis_check(s3_group, s3_group.symbol("t12"), s3_group.symbol("c123"), 2, 2, 1, 2)
        assert result.case == "k=l"
        assert not result.violations
        assert result.conclusion == {"modulus": 3, "congruence_holds": True, "m_equals_n": False}

    def test_infinite_order_forces_equal_exponents(self):
        result = case_analysis_check(IntegerGroup(), 1, 1, 1, 1, 1, 1)
        assert result.conclusion == {"m_equals_n": True}

    def test_premise_violated(self, s3_group):
        with pytest.raises(PremiseViolated):
            case_analysis_check(s3_group, s3_group.symbol("t12"), s3_group.symbol("c123"), 1, 1, 1, 2)

    def test_all_pairs_of_s3(self, s3_group):
        audit = mn_conclusion_audit(s3_group)
        assert audit.pairs_checked == 36
        assert audit.missing_premises == 0
        assert audit.violations == []

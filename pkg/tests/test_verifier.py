import pytest

from braid_bkl.core import (
    DELTA,
    DELTA_INV,
    BandLetter,
    BraidContext,
    BudgetExceededError,
    deglex_compare,
)
from braid_bkl.oracle import FreeGroupOracle
from braid_bkl.rules import RuleId, RuleMatch, lhs_of, rhs_of
from braid_bkl.verifier import (
    EXPECTED_FAMILIES,
    Ambiguity,
    AmbiguityKind,
    ConfluenceReport,
    ConfluenceVerifier,
    LemmaFixture,
    RuleInstance,
    VerifierConfig,
    family_name,
)

B = BandLetter


def instance(ctx, rule, params, **wildcards):
    m = RuleMatch(rule, 0, 0, params, wildcards)
    return RuleInstance(rule, lhs_of(ctx, m), rhs_of(ctx, m), params)


class TestEnumerateInstances:
    """Test cases for rule instantiation"""

    def test_two_strands(self):
        """Test that B_2 only has the delta rules"""
        verifier = ConfluenceVerifier(BraidContext(2))
        instances = verifier.enumerate_instances()
        assert [x.rule for x in instances] == [
            RuleId.E7,
            RuleId.E8_PLUS,
            RuleId.E8_MINUS,
            RuleId.E9_PLUS,
            RuleId.E9_MINUS,
        ]
        assert instances[0].lhs == (B(2, 1),)
        assert instances[0].rhs == (DELTA,)

    def test_three_strands(self):
        """Test instance counts in B_3"""
        verifier = ConfluenceVerifier(BraidContext(3))
        assert len(verifier.enumerate_instances(0)) == 12
        assert len(verifier.enumerate_instances(1)) == 14

    @pytest.mark.parametrize("n", [3, 4])
    def test_instances_descend_and_hold(self, n):
        """Test that every instance decreases in deg-lex and is a braid identity"""
        ctx = BraidContext(n)
        oracle = FreeGroupOracle(ctx)
        for x in ConfluenceVerifier(ctx).enumerate_instances(1):
            assert deglex_compare(x.rhs, x.lhs) < 0
            assert oracle.braid_eq(x.lhs, x.rhs)

    def test_budget(self):
        """Test that the instance cap raises with the capped list attached"""
        verifier = ConfluenceVerifier(BraidContext(3), VerifierConfig(max_instances=5))
        with pytest.raises(BudgetExceededError) as exc_info:
            verifier.enumerate_instances()
        assert len(exc_info.value.partial) == 5


class TestAmbiguities:
    """Test cases for compositions and joinability"""

    def setup_method(self):
        """Setup test fixtures"""
        self.ctx = BraidContext(3)
        self.verifier = ConfluenceVerifier(self.ctx)
        self.e8 = RuleInstance(RuleId.E8_PLUS, (B(2, 1), DELTA), (DELTA, B(3, 2)))
        self.e9 = RuleInstance(RuleId.E9_PLUS, (DELTA, DELTA_INV), ())

    def test_intersection(self):
        """Test the composition of (2,1) delta with delta delta^-1"""
        found = self.verifier.find_ambiguities([self.e8, self.e9])
        assert len(found) == 1
        amb = found[0]
        assert amb.kind is AmbiguityKind.INTERSECTION
        assert amb.w == (B(2, 1), DELTA, DELTA_INV)
        assert amb.u == (DELTA, B(3, 2), DELTA_INV)
        assert amb.v == (B(2, 1),)
        assert family_name(amb.family) == "E8^E9"
        assert self.verifier.check_joinable(amb)

    def test_inclusion(self):
        """Test an E3 left-hand side inside an E5 left-hand side"""
        ctx = BraidContext(5)
        params = {"t": 5, "s": 2, "t3": 4, "t2": 3, "t1": 1}
        f = instance(ctx, RuleId.E5, params, V=(B(2, 1),), W=())
        g = instance(ctx, RuleId.E3, {"t3": 5, "t2": 2, "t1": 1})
        verifier = ConfluenceVerifier(ctx)
        found = verifier.find_ambiguities([f, g])
        assert len(found) == 1
        amb = found[0]
        assert amb.kind is AmbiguityKind.INCLUSION
        assert amb.family in EXPECTED_FAMILIES
        assert family_name(amb.family) == "E5vE3"
        assert amb.v == (B(2, 1), B(5, 1), B(3, 1), B(4, 1))
        assert verifier.check_joinable(amb)

    def test_disjoint_rules(self):
        """Test that rules without overlaps give no ambiguity"""
        e3 = instance(self.ctx, RuleId.E3, {"t3": 3, "t2": 2, "t1": 1})
        assert self.verifier.find_ambiguities([e3, self.e9]) == []

    def test_unjoinable(self):
        """Test reducts that do not meet, and reducts above the ambiguity word"""
        w = (B(3, 2), B(2, 1))
        kind = AmbiguityKind.INTERSECTION
        apart = Ambiguity(kind, self.e8, self.e9, w, (B(2, 1),), (B(3, 2),))
        assert not self.verifier.check_joinable(apart)
        above = Ambiguity(kind, self.e8, self.e9, w, w, (DELTA,))
        assert not self.verifier.check_joinable(above)

    def test_identical_reducts(self):
        """Test that a composition with u = v below w is joinable"""
        w = (B(3, 2), B(2, 1))
        kind = AmbiguityKind.INCLUSION
        amb = Ambiguity(kind, self.e8, self.e8, w, (DELTA,), (DELTA,))
        assert self.verifier.check_joinable(amb)


class TestVerifyConfluence:
    """Test cases for the bounded confluence check"""

    @pytest.mark.parametrize("n,max_wildcard", [(2, 2), (3, 1), (4, 0)])
    def test_no_failures(self, n, max_wildcard):
        """Test that every composition is joinable"""
        report = ConfluenceVerifier(BraidContext(n)).verify_confluence(max_wildcard)
        assert report.ok
        assert report.complete
        assert report.ambiguity_count > 0
        covered = set(report.families_hit) | set(report.families_unreachable)
        assert covered == EXPECTED_FAMILIES

    def test_family_coverage(self):
        """Test families reached in B_4"""
        report = ConfluenceVerifier(BraidContext(4)).verify_confluence(0)
        hit = {family_name(k) for k in report.families_hit}
        assert {"E3^E3", "E1^E8", "E7^E8", "E3^E7"} <= hit
        assert report.max_degree == 3

    def test_partial_report(self):
        """Test the report attached when the instance cap is hit"""
        verifier = ConfluenceVerifier(BraidContext(3), VerifierConfig(max_instances=5))
        with pytest.raises(BudgetExceededError) as exc_info:
            verifier.verify_confluence()
        report = exc_info.value.partial
        assert isinstance(report, ConfluenceReport)
        assert not report.complete
        assert report.instance_count == 5


class TestFixturesAndSweep:
    """Test cases for identity fixtures and the policy sweep"""

    def test_fixture_contents(self):
        """Test fixture families and a known member"""
        fixtures = ConfluenceVerifier(BraidContext(4)).lemma_fixtures()
        assert {x.name for x in fixtures} == {
            "rotation",
            "triple",
            "two-anchor",
            "commute",
            "delta-shift",
            "delta-factor",
            "delta-prefix",
            "prime",
            "prime-star",
            "star",
        }
        three = ConfluenceVerifier(BraidContext(3)).lemma_fixtures()
        assert LemmaFixture("delta-factor", (B(3, 2), B(2, 1)), (DELTA,)) in three

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_fixtures_hold(self, n):
        """Test that both sides of every fixture normalize alike"""
        verifier = ConfluenceVerifier(BraidContext(n))
        assert verifier.check_fixtures() == []

    def test_fixtures_hold_in_oracle(self):
        """Test the fixtures against the free-group oracle"""
        ctx = BraidContext(4)
        oracle = FreeGroupOracle(ctx)
        for x in ConfluenceVerifier(ctx).lemma_fixtures():
            assert oracle.braid_eq(x.lhs, x.rhs), x.name

    def test_check_fixtures_reports_bad_pairs(self):
        """Test that a false identity is reported"""
        verifier = ConfluenceVerifier(BraidContext(3))
        bad = LemmaFixture("bogus", (B(2, 1),), (B(3, 2),))
        assert verifier.check_fixtures([bad]) == [bad]

    def test_strategy_sweep(self):
        """Test that every policy reaches the same normal form"""
        report = ConfluenceVerifier(BraidContext(4)).strategy_sweep(trials=25, seed=1)
        assert report.ok
        assert report.trials == 25
        assert len(report.policies) == 5

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_strategy_sweep_at_scale(self, n):
        """Test 600 random words over n <= 4 under all five policies"""
        verifier = ConfluenceVerifier(BraidContext(n))
        report = verifier.strategy_sweep(trials=200, seed=10 + n, max_length=10)
        assert report.trials == 200
        assert report.ok, report.discrepancies[:3]

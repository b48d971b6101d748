import itertools
import random
from unittest.mock import patch

import pytest

from braid_bkl.core import (
    DELTA,
    DELTA_INV,
    ArtinLetter,
    BandLetter,
    BraidContext,
    BraidError,
    InvalidGeneratorError,
    InverseBand,
    commutes,
    deglex_compare,
)
from braid_bkl.engine import (
    POLICIES,
    NormalForm,
    RewriteEngine,
    RewriteInvariantError,
    policy_by_name,
)

B = BandLetter


class TestNormalForm:
    """Test cases for NormalForm"""

    def test_to_word(self):
        """Test writing the delta power out"""
        assert NormalForm(2, (B(3, 2),)).to_word() == (DELTA, DELTA, B(3, 2))
        assert NormalForm(-1, ()).to_word() == (DELTA_INV,)
        assert NormalForm(0, ()).is_identity
        assert not NormalForm(0, (B(2, 1),)).is_identity

    def test_policy_by_name(self):
        """Test policy lookup"""
        assert policy_by_name("rightmost-longest").rightmost
        assert len({p.name for p in POLICIES}) == len(POLICIES)
        with pytest.raises(KeyError):
            policy_by_name("middle-out")


class TestRewriteEngine:
    """Test cases for RewriteEngine"""

    def setup_method(self):
        """Setup test fixtures"""
        self.ctx = BraidContext(3)
        self.engine = RewriteEngine(self.ctx)

    def test_normalize_examples(self):
        """Test normal forms worked out by hand in B_3"""
        assert self.engine.normalize((B(3, 2), B(2, 1))) == NormalForm(1, ())
        word = (B(2, 1), B(2, 1), B(3, 1))
        assert self.engine.normalize(word) == NormalForm(1, (B(3, 2),))
        assert self.engine.normalize((DELTA, DELTA_INV)) == NormalForm(0, ())
        assert self.engine.normalize(()) == NormalForm(0, ())

    def test_normalize_mixed_examples(self):
        """Test words with inverses"""
        inverse = InverseBand(B(2, 1))
        assert self.engine.normalize_mixed([inverse]) == NormalForm(-1, (B(3, 2),))
        assert self.engine.normalize_mixed([B(2, 1), inverse]).is_identity
        nf = self.engine.normalize_mixed([DELTA, inverse])
        assert nf == NormalForm(0, (B(3, 2),))

    def test_two_strands(self):
        """Test B_2, where (2,1) is delta itself"""
        engine = RewriteEngine(BraidContext(2))
        assert engine.normalize((B(2, 1), B(2, 1))) == NormalForm(2, ())
        assert engine.normalize_mixed([InverseBand(B(2, 1)), B(2, 1)]).is_identity

    def test_reduction_path(self):
        """Test the rewrite chain starts at the input and descends"""
        path = list(self.engine.reduction_path((B(3, 2), B(2, 1))))
        assert path == [(B(3, 2), B(2, 1)), (B(2, 1), B(3, 1)), (DELTA,)]
        for u, v in zip(path, path[1:]):
            assert deglex_compare(v, u) < 0

    def test_rewrite_step_and_irreducibility(self):
        """Test single steps"""
        assert self.engine.rewrite_step((DELTA, B(3, 2))) is None
        assert self.engine.is_irreducible((DELTA, B(3, 2)))
        assert not self.engine.is_irreducible((B(2, 1), DELTA))
        assert self.engine.rewrite_step((B(2, 1), DELTA)) == (DELTA, B(3, 2))

    def test_equal(self):
        """Test the word problem on Artin words"""
        s1, s2 = ArtinLetter(1), ArtinLetter(2)
        assert self.engine.equal([s1, s2, s1], [s2, s1, s2])
        assert not self.engine.equal([s1], [s2])
        assert self.engine.equal([s1, s1.inverse()], [])

    def test_out_of_range_letters(self):
        """Test that letters outside B_n are rejected"""
        with pytest.raises(InvalidGeneratorError):
            self.engine.normalize((B(4, 1),))
        with pytest.raises(BraidError):
            self.engine.normalize((InverseBand(B(2, 1)),))  # type: ignore[arg-type]

    def test_non_descending_rewrite_is_reported(self):
        """Test that a rewrite which does not descend raises"""
        with patch.object(RewriteEngine, "rhs_of", lambda self, m: self.lhs_of(m)):
            with pytest.raises(RewriteInvariantError):
                self.engine.normalize((B(2, 1), DELTA))
            with pytest.raises(RewriteInvariantError):
                self.engine.rewrite_step((B(3, 2), B(2, 1)))


class TestNormalFormProperties:
    """Properties of normal forms across strand counts"""

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_defining_relations_collapse(self, n):
        """Test that both sides of every defining relation normalize alike"""
        ctx = BraidContext(n)
        engine = RewriteEngine(ctx)
        for t3, t2, t1 in itertools.combinations(range(n, 0, -1), 3):
            forms = {
                engine.normalize((B(t3, t2), B(t2, t1))),
                engine.normalize((B(t2, t1), B(t3, t1))),
                engine.normalize((B(t3, t1), B(t3, t2))),
            }
            assert len(forms) == 1
        for a, b in itertools.combinations(ctx.band_letters, 2):
            if commutes(a, b):
                assert engine.normalize((a, b)) == engine.normalize((b, a))

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_inverses_cancel(self, n):
        """Test g g^-1 and g^-1 g for every band letter"""
        ctx = BraidContext(n)
        engine = RewriteEngine(ctx)
        for g in ctx.band_letters:
            assert engine.normalize((g,) + ctx.invert_band(g)).is_identity
            assert engine.normalize(ctx.invert_band(g) + (g,)).is_identity

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_artin_round_trip(self, n):
        """Test that a band letter and its Artin spelling are the same braid"""
        ctx = BraidContext(n)
        engine = RewriteEngine(ctx)
        for g in ctx.band_letters:
            spelled = ctx.band_to_artin(g)
            assert engine.normalize_mixed(spelled) == engine.normalize((g,))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_delta_conjugation(self, n):
        """Test g delta = delta g' for every band letter"""
        ctx = BraidContext(n)
        engine = RewriteEngine(ctx)
        for g in ctx.band_letters:
            shifted = (DELTA, ctx.delta_conjugate(g, 1))
            assert engine.normalize((g, DELTA)) == engine.normalize(shifted)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_random_words(self, n):
        """Test idempotence, tail purity, delta shifts and policy independence"""
        ctx = BraidContext(n)
        engines = [RewriteEngine(ctx, p) for p in POLICIES]
        default = engines[0]
        rng = random.Random(100 + n)
        for _ in range(60):
            word = ctx.expand_mixed(ctx.random_word(rng, rng.randint(0, 10)))
            nf = default.normalize(word)
            assert all(isinstance(x, BandLetter) for x in nf.tail)
            assert default.normalize(nf.to_word()) == nf
            assert default.is_irreducible(nf.to_word())
            shifted = default.normalize((DELTA,) + word)
            assert shifted == NormalForm(nf.delta_exp + 1, nf.tail)
            for engine in engines[1:]:
                assert engine.normalize(word) == nf

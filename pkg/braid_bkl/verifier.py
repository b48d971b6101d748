"""
Bounded confluence checking for the rewriting system.

Every schema is instantiated with wildcards up to a configured length, the
overlaps between left-hand sides are collected as ambiguities and each
ambiguity is checked to be joinable with all intermediate words below the
ambiguity word. The known identities behind the rules are generated as
fixtures, and random words are normalized under every match policy.
"""

import itertools
import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .core import (
    DELTA,
    DELTA_INV,
    BandLetter,
    BraidContext,
    BudgetExceededError,
    Letter,
    RangeConstraint,
    Word,
    commutes,
    prime_transform,
    star_transform,
    word_key,
)
from .engine import POLICIES, NormalForm, RewriteEngine
from .rules import RuleId, RuleMatch, lhs_of, rhs_of

logger = logging.getLogger(__name__)


@dataclass
class VerifierConfig:
    """Bounds for instance enumeration, fixtures and sweeps"""

    max_wildcard: int = 1
    max_instances: int = 5000
    fixture_wildcard: int = 1
    sweep_max_length: int = 8


@dataclass(frozen=True)
class RuleInstance:
    """A concrete rule lhs -> rhs"""

    rule: RuleId
    lhs: Word
    rhs: Word
    params: Dict[str, int] = field(default_factory=dict, compare=False, hash=False)


class AmbiguityKind(str, Enum):
    INTERSECTION = "intersection"
    INCLUSION = "inclusion"

    @property
    def symbol(self) -> str:
        return "^" if self is AmbiguityKind.INTERSECTION else "v"


FamilyKey = Tuple[str, str, AmbiguityKind]


@dataclass(frozen=True)
class Ambiguity:
    """
    A composition of two instances.

    For an intersection w = f.lhs b = a g.lhs, u = f.rhs b and v = a g.rhs.
    For an inclusion w = f.lhs = a g.lhs b, u = f.rhs and v = a g.rhs b.
    """

    kind: AmbiguityKind
    f: RuleInstance
    g: RuleInstance
    w: Word
    u: Word
    v: Word

    @property
    def family(self) -> FamilyKey:
        return (self.f.rule.family, self.g.rule.family, self.kind)


def family_name(key: FamilyKey) -> str:
    f, g, kind = key
    return f"{f}{kind.symbol}{g}"


def _families(kind: AmbiguityKind, pairs: str) -> List[FamilyKey]:
    return [(p[:2], p[2:], kind) for p in pairs.split()]


# composition families a complete proof of confluence has to treat
EXPECTED_FAMILIES: FrozenSet[FamilyKey] = frozenset(
    _families(
        AmbiguityKind.INTERSECTION,
        "E1E1 E1E2 E1E3 E1E4 E1E5 E1E6 E1E7 E1E8 "
        "E2E1 E2E2 E2E3 E3E2 E2E4 E4E2 E2E5 E5E2 E2E6 E6E2 E7E2 E2E8 "
        "E3E1 E3E3 E3E4 E4E3 E3E5 E5E3 E3E6 E6E3 E3E7 E3E8 "
        "E4E1 E4E4 E4E5 E5E4 E4E6 E6E4 E7E4 E4E8 "
        "E5E1 E5E5 E5E6 E6E5 E7E5 E5E8 "
        "E6E1 E6E6 E7E6 E6E8 E7E8",
    )
    + _families(
        AmbiguityKind.INCLUSION,
        "E2E1 E4E1 E5E1 E6E1 E2E2 E4E2 E5E2 E6E2 E7E2 E4E3 E5E3 E6E3 E5E4 E6E4",
    )
)


@dataclass
class ConfluenceReport:
    """Outcome of a bounded confluence check"""

    n: int
    max_wildcard: int
    max_degree: int = 0
    instance_count: int = 0
    ambiguity_count: int = 0
    family_counts: Dict[FamilyKey, int] = field(default_factory=dict)
    failures: List[Ambiguity] = field(default_factory=list)
    complete: bool = True

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def families_hit(self) -> List[FamilyKey]:
        return sorted(EXPECTED_FAMILIES & set(self.family_counts), key=_family_order)

    @property
    def families_unreachable(self) -> List[FamilyKey]:
        return sorted(EXPECTED_FAMILIES - set(self.family_counts), key=_family_order)

    @property
    def families_extra(self) -> List[FamilyKey]:
        return sorted(set(self.family_counts) - EXPECTED_FAMILIES, key=_family_order)


@dataclass(frozen=True)
class LemmaFixture:
    """A pair of words that must be equal in B_n"""

    name: str
    lhs: Word
    rhs: Word


@dataclass
class SweepReport:
    """Normal forms of random words under every policy"""

    n: int
    trials: int
    seed: int
    policies: List[str] = field(default_factory=list)
    discrepancies: List[Tuple[Word, Dict[str, NormalForm]]] = field(
        default_factory=list
    )

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def _family_order(key: FamilyKey) -> Tuple[str, str, str]:
    return (key[2].value, key[0], key[1])


def _words(constraint: RangeConstraint, max_length: int) -> Iterator[Word]:
    """Every word of length <= max_length over the constraint's letters"""
    letters = constraint.letters()
    for length in range(max_length + 1):
        for combo in itertools.product(letters, repeat=length):
            yield tuple(combo)


class ConfluenceVerifier:
    """Checks compositions of the rules at bounded scale"""

    def __init__(self, ctx: BraidContext, config: Optional[VerifierConfig] = None):
        self.ctx = ctx
        self.config = config or VerifierConfig()
        self.engine = RewriteEngine(ctx)

    def enumerate_instances(
        self, max_wildcard: Optional[int] = None
    ) -> List[RuleInstance]:
        """
        Instantiate every schema with wildcards of bounded length.

        Args:
            max_wildcard: longest wildcard word, defaults to config.max_wildcard

        Returns:
            Instances deduplicated by (lhs, rhs), in generation order

        Raises:
            BudgetExceededError: more than config.max_instances instances;
                the instances found so far are attached
        """
        bound = self.config.max_wildcard if max_wildcard is None else max_wildcard
        seen = set()
        instances: List[RuleInstance] = []
        for m in self._schema_matches(bound):
            lhs, rhs = lhs_of(self.ctx, m), rhs_of(self.ctx, m)
            if (lhs, rhs) in seen:
                continue
            seen.add((lhs, rhs))
            instances.append(RuleInstance(m.rule, lhs, rhs, dict(m.params)))
            if len(instances) > self.config.max_instances:
                raise BudgetExceededError(
                    f"more than {self.config.max_instances} rule instances "
                    f"at n={self.ctx.n}, max_wildcard={bound}",
                    partial=instances[: self.config.max_instances],
                )
        logger.info(
            f"Enumerated {len(instances)} rule instances "
            f"(n={self.ctx.n}, max_wildcard={bound})"
        )
        return instances

    def _schema_matches(self, bound: int) -> Iterator[RuleMatch]:
        n = self.ctx.n
        idx = range(1, n + 1)

        def match(
            rule: RuleId, params: Dict[str, int], **wildcards: Word
        ) -> RuleMatch:
            return RuleMatch(rule, 0, 0, params, dict(wildcards))

        for k, l, i, j in itertools.permutations(idx, 4):
            if k > l > i > j:
                yield match(RuleId.E1, {"k": k, "l": l, "i": i, "j": j})
            if k > i > j > l:
                for v in _words(RangeConstraint(j - 1, 1), bound):
                    yield match(RuleId.E2, {"k": k, "l": l, "i": i, "j": j}, V=v)
        for t3, t2, t1 in itertools.combinations(reversed(idx), 3):
            yield match(RuleId.E3, {"t3": t3, "t2": t2, "t1": t1})
            for v in _words(RangeConstraint(t2 - 1, 1), bound):
                yield match(RuleId.E4, {"t3": t3, "t2": t2, "t1": t1}, V=v)
            for s in range(1, t2):
                for v, w in itertools.product(
                    list(_words(RangeConstraint(t2 - 1, 1), bound)),
                    list(_words(RangeConstraint(t3 - 1, t1), bound)),
                ):
                    params = {"s": s, "t3": t3, "t2": t2, "t1": t1}
                    yield match(RuleId.E6, params, V=v, W=w)
                    for t in range(t3 + 1, n + 1):
                        yield match(RuleId.E5, dict(params, t=t), V=v, W=w)
        pools = [list(_words(RangeConstraint(i, 1), bound)) for i in range(2, n)]
        for choice in itertools.product(*pools):
            wildcards = {f"V{i}": v for i, v in zip(range(2, n), choice)}
            yield match(RuleId.E7, {}, **wildcards)
        for band in self.ctx.band_letters:
            params = {"t": band.t, "s": band.s}
            yield match(RuleId.E8_PLUS, params)
            yield match(RuleId.E8_MINUS, params)
        yield match(RuleId.E9_PLUS, {})
        yield match(RuleId.E9_MINUS, {})

    def find_ambiguities(self, instances: Sequence[RuleInstance]) -> List[Ambiguity]:
        """
        All intersection and inclusion compositions of ordered instance pairs.

        Args:
            instances: concrete rules, self-pairs included

        Returns:
            Ambiguities sorted by ambiguity word in deg-lex
        """
        by_first: Dict[Letter, List[RuleInstance]] = defaultdict(list)
        for g in instances:
            if g.lhs:
                by_first[g.lhs[0]].append(g)
        found: List[Ambiguity] = []
        for f in instances:
            size = len(f.lhs)
            for o in range(1, size):
                suffix = f.lhs[o:]
                for g in by_first.get(f.lhs[o], []):
                    if len(g.lhs) > len(suffix) and g.lhs[: len(suffix)] == suffix:
                        rest = g.lhs[len(suffix) :]
                        amb = Ambiguity(
                            AmbiguityKind.INTERSECTION,
                            f,
                            g,
                            f.lhs + rest,
                            f.rhs + rest,
                            f.lhs[:o] + g.rhs,
                        )
                        found.append(amb)
            for p in range(size):
                for g in by_first.get(f.lhs[p], []):
                    end = p + len(g.lhs)
                    if end > size or f.lhs[p:end] != g.lhs or g == f:
                        continue
                    inner = f.lhs[:p] + g.rhs + f.lhs[end:]
                    found.append(
                        Ambiguity(AmbiguityKind.INCLUSION, f, g, f.lhs, f.rhs, inner)
                    )
        found.sort(key=lambda a: (word_key(a.w), _family_order(a.family)))
        logger.info(f"Found {len(found)} ambiguities among {len(instances)} instances")
        return found

    def check_joinable(self, amb: Ambiguity) -> bool:
        """
        Check that both reducts of an ambiguity reach the same normal form.

        Every word on either reduction path must stay strictly below the
        ambiguity word in deg-lex.
        """
        bound = word_key(amb.w)
        ends = []
        for start in (amb.u, amb.v):
            last = start
            for last in self.engine.reduction_path(start):
                if word_key(last) >= bound:
                    logger.debug(
                        f"{family_name(amb.family)} path leaves the region "
                        "below the ambiguity word"
                    )
                    return False
            ends.append(last)
        if ends[0] != ends[1]:
            logger.debug(f"{family_name(amb.family)} reducts end in different words")
            return False
        return True

    def verify_confluence(self, max_wildcard: Optional[int] = None) -> ConfluenceReport:
        """
        Enumerate instances and check every composition.

        Args:
            max_wildcard: longest wildcard word, defaults to config.max_wildcard

        Returns:
            ConfluenceReport; failures is empty when every composition is trivial

        Raises:
            BudgetExceededError: the instance cap was hit; the report over the
                capped instance list is attached with complete=False
        """
        bound = self.config.max_wildcard if max_wildcard is None else max_wildcard
        complete = True
        try:
            instances = self.enumerate_instances(bound)
        except BudgetExceededError as e:
            logger.warning(
                f"Instance budget exceeded, checking a partial instance set: {e}"
            )
            instances = e.partial  # type: ignore[assignment]
            complete = False
        report = ConfluenceReport(n=self.ctx.n, max_wildcard=bound, complete=complete)
        report.instance_count = len(instances)
        report.max_degree = max((len(x.lhs) for x in instances), default=0)
        counts: Dict[FamilyKey, int] = defaultdict(int)
        for amb in self.find_ambiguities(instances):
            report.ambiguity_count += 1
            counts[amb.family] += 1
            if not self.check_joinable(amb):
                report.failures.append(amb)
        report.family_counts = dict(
            sorted(counts.items(), key=lambda kv: _family_order(kv[0]))
        )
        logger.info(
            f"Checked {report.ambiguity_count} ambiguities in {len(counts)} families, "
            f"{len(report.failures)} failures"
        )
        if not complete:
            raise BudgetExceededError(
                f"partial confluence check at n={self.ctx.n}", partial=report
            )
        return report

    def lemma_fixtures(self) -> List[LemmaFixture]:
        """Instances of the identities the rules are derived from"""
        ctx = self.ctx
        n = ctx.n
        bound = self.config.fixture_wildcard
        B = BandLetter
        fixtures: List[LemmaFixture] = []

        def add(name: str, lhs: Word, rhs: Word) -> None:
            fixtures.append(LemmaFixture(name, lhs, rhs))

        # rotating a descending product
        for m in range(2, n + 1):
            for subset in itertools.combinations(range(n, 0, -1), m):
                for k in range(1, m):
                    rotated = subset[m - k :] + subset[: m - k]
                    descending = ctx.descending_product(subset)
                    add("rotation", descending, ctx.chain_product(rotated))
        for t3, t2, t1 in itertools.combinations(range(n, 0, -1), 3):
            triple = [
                (B(t3, t2), B(t2, t1)),
                (B(t2, t1), B(t3, t1)),
                (B(t3, t1), B(t3, t2)),
            ]
            add("triple", triple[0], triple[1])
            add("triple", triple[1], triple[2])
            for s in range(1, t2):
                add(
                    "two-anchor",
                    (B(t3, s), B(t2, t1), B(t3, t1)),
                    (B(t2, s), B(t3, s), B(t2, t1)),
                )
                for t in range(t3 + 1, n + 1):
                    add(
                        "two-anchor",
                        (B(t, s), B(t2, t1), B(t3, t1)),
                        (B(t3, t2), B(t, s), B(t2, t1)),
                    )
        for a, b in itertools.combinations(ctx.band_letters, 2):
            if commutes(a, b):
                add("commute", (a, b), (b, a))
        for g in ctx.band_letters:
            add("delta-shift", (g, DELTA), (DELTA, ctx.delta_conjugate(g, 1)))
            add("delta-shift", (g, DELTA_INV), (DELTA_INV, ctx.delta_conjugate(g, -1)))
            head = list(range(n, g.t - 1, -1)) + list(range(g.s - 1, 0, -1))
            middle = ctx.descending_product(range(g.t - 1, g.s - 1, -1))
            add("delta-factor", ctx.descending_product(head) + middle + (g,), (DELTA,))
        pools = [list(_words(RangeConstraint(i, 1), bound)) for i in range(2, n)]
        for choice in itertools.product(*pools):
            lhs: Word = (B(2, 1),)
            rhs: Word = (DELTA,)
            for i, v in zip(range(2, n), choice):
                lhs += v + (B(i + 1, 1),)
                rhs += prime_transform(v, i + 1, 1)
            add("delta-prefix", lhs, rhs)
        for t2, t1 in itertools.combinations(range(n, 0, -1), 2):
            for v in _words(RangeConstraint(t2 - 1, t1), bound):
                primed = prime_transform(v, t2, t1)
                add("prime", v + (B(t2, t1),), (B(t2, t1),) + primed)
                for t0 in range(1, t1):
                    starred = star_transform(v, t1, t0)
                    add("prime-star", prime_transform(starred, t2, t0), primed)
        for t1, t0 in itertools.combinations(range(n, 0, -1), 2):
            for w in _words(RangeConstraint(n, t1), bound):
                starred = star_transform(w, t1, t0)
                add("star", w + (B(t1, t0),), (B(t1, t0),) + starred)
        logger.info(f"Generated {len(fixtures)} identity fixtures for n={n}")
        return fixtures

    def check_fixtures(
        self, fixtures: Optional[Sequence[LemmaFixture]] = None
    ) -> List[LemmaFixture]:
        """Fixtures whose two sides normalize differently"""
        items = self.lemma_fixtures() if fixtures is None else fixtures
        return [x for x in items if not self.engine.equal(x.lhs, x.rhs)]

    def policy_engines(self) -> List[RewriteEngine]:
        """One engine per shipped match policy"""
        return [RewriteEngine(self.ctx, policy) for policy in POLICIES]

    def strategy_sweep(
        self, trials: int, seed: int, max_length: Optional[int] = None
    ) -> SweepReport:
        """
        Normalize random words under every match policy.

        Args:
            trials: number of random words
            seed: seed of the word generator
            max_length: longest random word, defaults to config.sweep_max_length

        Returns:
            SweepReport listing words whose normal forms differ by policy
        """
        rng = random.Random(seed)
        longest = self.config.sweep_max_length if max_length is None else max_length
        engines = self.policy_engines()
        names = [p.name for p in POLICIES]
        report = SweepReport(n=self.ctx.n, trials=trials, seed=seed, policies=names)
        for _ in range(trials):
            raw = self.ctx.random_word(rng, rng.randint(0, longest))
            word = self.ctx.expand_mixed(raw)
            forms = {e.policy.name: e.normalize(word) for e in engines}
            if len(set(forms.values())) > 1:
                logger.debug(f"policies disagree on {' '.join(map(str, word))}")
                report.discrepancies.append((word, forms))
        logger.info(
            f"Strategy sweep: {trials} words, "
            f"{len(report.discrepancies)} discrepancies"
        )
        return report

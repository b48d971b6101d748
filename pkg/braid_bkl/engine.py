"""
Normalizer for the rewriting system of braid_bkl.rules.

Rewriting stops at the S-irreducible word delta^k A, where A is a positive
band word. Which match is rewritten at each step is fixed by a MatchPolicy;
all policies reach the same normal form.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .core import (
    DELTA,
    DELTA_INV,
    BandLetter,
    BraidContext,
    BraidError,
    DeltaLetter,
    Letter,
    MixedLetter,
    Word,
    deglex_compare,
)
from .rules import RuleId, RuleMatch, lhs_of, rhs_of, scan_at
from .rules import match_at as _match_at

logger = logging.getLogger(__name__)


class RewriteInvariantError(BraidError):
    """Raised when a rewrite step fails to decrease the word in deg-lex"""

    pass


@dataclass(frozen=True)
class NormalForm:
    """delta^delta_exp followed by a positive band word"""

    delta_exp: int
    tail: Word

    def to_word(self) -> Word:
        """The normal form written out as a single word"""
        letter = DELTA if self.delta_exp >= 0 else DELTA_INV
        return (letter,) * abs(self.delta_exp) + self.tail

    @property
    def is_identity(self) -> bool:
        return self.delta_exp == 0 and not self.tail


@dataclass(frozen=True)
class MatchPolicy:
    """
    Which match a rewrite step picks.

    rightmost scans start positions from the right end, longest prefers the
    longest admissible wildcards and order is the rule priority at a
    position.
    """

    name: str
    rightmost: bool = False
    longest: bool = False
    order: Tuple[RuleId, ...] = tuple(RuleId)


DEFAULT_POLICY = MatchPolicy("leftmost-shortest")

POLICIES: Tuple[MatchPolicy, ...] = (
    DEFAULT_POLICY,
    MatchPolicy("rightmost-shortest", rightmost=True),
    MatchPolicy("leftmost-longest", longest=True),
    MatchPolicy("rightmost-longest", rightmost=True, longest=True),
    MatchPolicy("reverse-rule-priority", order=tuple(reversed(list(RuleId)))),
)


def policy_by_name(name: str) -> MatchPolicy:
    for policy in POLICIES:
        if policy.name == name:
            return policy
    raise KeyError(f"unknown match policy: {name}")


class RewriteEngine:
    """Applies the rules E1-E9 under one match-selection policy"""

    def __init__(self, ctx: BraidContext, policy: MatchPolicy = DEFAULT_POLICY):
        self.ctx = ctx
        self.policy = policy

    def match_at(
        self, word: Sequence[Letter], pos: int, rule: RuleId
    ) -> Optional[RuleMatch]:
        return _match_at(self.ctx, word, pos, rule, longest=self.policy.longest)

    def lhs_of(self, m: RuleMatch) -> Word:
        return lhs_of(self.ctx, m)

    def rhs_of(self, m: RuleMatch) -> Word:
        return rhs_of(self.ctx, m)

    def find_match(self, word: Sequence[Letter]) -> Optional[RuleMatch]:
        """The match the policy selects in word, or None if word is irreducible"""
        positions = range(len(word))
        if self.policy.rightmost:
            positions = range(len(word) - 1, -1, -1)
        for pos in positions:
            m, _ = self._scan(word, pos)
            if m is not None:
                return m
        return None

    def _scan(
        self, word: Sequence[Letter], pos: int
    ) -> Tuple[Optional[RuleMatch], int]:
        return scan_at(self.ctx, word, pos, self.policy.order, self.policy.longest)

    def _log_step(
        self, m: RuleMatch, old: Sequence[Letter], new: Sequence[Letter]
    ) -> None:
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f"{m.rule} at {m.start}: {_show(old)} -> {_show(new)}")

    def _apply(self, word: Sequence[Letter], m: RuleMatch) -> Tuple[Word, Word]:
        rhs = self.rhs_of(m)
        lhs = tuple(word[m.start : m.end])
        # prefix and suffix are shared, so comparing the replaced segment decides
        if deglex_compare(rhs, lhs) >= 0:
            raise RewriteInvariantError(
                f"{m.rule} rewrite of {_show(lhs)} to {_show(rhs)} does not descend"
            )
        return tuple(word[: m.start]) + rhs + tuple(word[m.end :]), rhs

    def rewrite_step(self, word: Sequence[Letter]) -> Optional[Word]:
        """
        Apply one rewrite.

        Args:
            word: word over delta^{+-1} and band letters

        Returns:
            The rewritten word, strictly smaller in deg-lex, or None when
            no rule matches
        """
        m = self.find_match(word)
        if m is None:
            return None
        new_word, _ = self._apply(word, m)
        self._log_step(m, word, new_word)
        return new_word

    def reduction_path(self, word: Sequence[Letter]) -> Iterator[Word]:
        """Yield word and every word the rewrite chain passes through"""
        current: Optional[Word] = tuple(self._checked(word))
        while current is not None:
            yield current
            current = self.rewrite_step(current)

    def normalize(self, word: Sequence[Letter]) -> NormalForm:
        """
        Rewrite to the S-irreducible word and split off the delta power.

        Args:
            word: word over delta^{+-1} and band letters of this context

        Returns:
            NormalForm of the word
        """
        current = self._checked(word)
        if self.policy.rightmost:
            irreducible = self._reduce_from_right(current)
        else:
            irreducible = self._reduce_from_left(current)
        return self._split(irreducible)

    def normalize_mixed(self, letters: Iterable[MixedLetter]) -> NormalForm:
        """Normalize a word that may contain band inverses and Artin letters"""
        return self.normalize(self.ctx.expand_mixed(letters))

    def is_irreducible(self, word: Sequence[Letter]) -> bool:
        return self.find_match(word) is None

    def equal(self, u: Iterable[MixedLetter], v: Iterable[MixedLetter]) -> bool:
        """Decide the word problem for two mixed words"""
        return self.normalize_mixed(u) == self.normalize_mixed(v)

    def _checked(self, word: Sequence[Letter]) -> Word:
        for x in word:
            if isinstance(x, BandLetter):
                self.ctx.check_band(x)
            elif not isinstance(x, DeltaLetter):
                raise BraidError(
                    f"{x} is not a positive band letter or delta; "
                    "expand mixed words first"
                )
        return tuple(word)

    def _reduce_from_left(self, word: Word) -> Word:
        current: List[Letter] = list(word)
        # horizons[q] is the furthest index the failed scan at q looked at
        horizons: List[int] = []
        pos = 0
        steps = 0
        while pos < len(current):
            m, reach = self._scan(current, pos)
            if m is None:
                horizons.append(reach)
                pos += 1
                continue
            new_word, _ = self._apply(current, m)
            self._log_step(m, current, new_word)
            current = list(new_word)
            steps += 1
            # scans that never reached the rewritten segment still fail
            resume = m.start
            for q in range(m.start):
                if horizons[q] >= m.start:
                    resume = q
                    break
            del horizons[resume:]
            pos = resume
        logger.debug(f"normalized in {steps} steps")
        return tuple(current)

    def _reduce_from_right(self, word: Word) -> Word:
        current: Word = word
        pos = len(current) - 1
        steps = 0
        while pos >= 0:
            m, _ = self._scan(current, pos)
            if m is None:
                pos -= 1
                continue
            new_word, rhs = self._apply(current, m)
            self._log_step(m, current, new_word)
            current = new_word
            steps += 1
            # scans read rightwards only, so the part past the new segment
            # stays irreducible
            pos = min(m.start + len(rhs), len(current)) - 1
        logger.debug(f"normalized in {steps} steps")
        return current

    def _split(self, word: Word) -> NormalForm:
        k = 0
        head = 0
        while head < len(word) and isinstance(word[head], DeltaLetter):
            k += word[head].exponent  # type: ignore[union-attr]
            head += 1
        tail = word[head:]
        if any(isinstance(x, DeltaLetter) for x in tail):
            raise RewriteInvariantError(
                f"irreducible word {_show(word)} has delta inside the tail"
            )
        return NormalForm(k, tail)


def _show(word: Sequence[Letter]) -> str:
    return " ".join(str(x) for x in word) or "e"

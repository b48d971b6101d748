"""
Independent equality checks for braid words.

Two braids are equal iff they act identically on the free group
F_n = <x_1, ..., x_n> through the Artin representation. The underlying
permutation gives a fast necessary condition. For positive band words a
breadth-first search over the length-preserving defining relations finds
the deg-lex least word of the class.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Deque, Iterable, List, Optional, Sequence, Set, Tuple

from sympy.combinatorics import Permutation
from sympy.combinatorics.free_groups import free_group

from .core import (
    ArtinLetter,
    BandLetter,
    BraidContext,
    BraidError,
    BudgetExceededError,
    DeltaLetter,
    InverseBand,
    MixedLetter,
    Word,
    commutes,
    word_key,
)

logger = logging.getLogger(__name__)

# (index, +1 | -1) letters over the basis x_1 ... x_n
FreeWord = Tuple[Tuple[int, int], ...]


@dataclass
class OracleConfig:
    """Limits for the brute-force searches"""

    max_states: int = 200000


@dataclass(frozen=True)
class FreeAutomorphism:
    """
    An automorphism of F_n given by the images of x_1 ... x_n.

    Images are sympy FreeGroupElements, so they are always freely reduced.
    """

    images: Tuple[Any, ...]
    basis: Tuple[Any, ...] = field(compare=False, repr=False)

    def then_artin(self, a: ArtinLetter) -> "FreeAutomorphism":
        """The composite acting as self followed by the action of a"""
        im = list(self.images)
        i = a.i - 1
        left, right = im[i], im[i + 1]
        if a.sign > 0:
            im[i], im[i + 1] = left * right * left**-1, left
        else:
            im[i], im[i + 1] = right, right**-1 * left * right
        return FreeAutomorphism(tuple(im), self.basis)

    def is_identity(self) -> bool:
        return self.images == self.basis

    def __len__(self) -> int:
        return sum(len(x) for x in self.images)


class FreeGroupOracle:
    """Word-problem oracle for B_n built on the Artin action"""

    def __init__(self, ctx: BraidContext, config: Optional[OracleConfig] = None):
        self.ctx = ctx
        self.config = config or OracleConfig()
        group_and_basis = free_group(", ".join(f"x{i}" for i in range(1, ctx.n + 1)))
        self.group = group_and_basis[0]
        self.basis: Tuple[Any, ...] = tuple(group_and_basis[1:])

    @property
    def identity(self) -> FreeAutomorphism:
        return FreeAutomorphism(self.basis, self.basis)

    def element_of(self, word: Iterable[Tuple[int, int]]) -> Any:
        """The free group element spelled by a FreeWord"""
        result = self.group.identity
        for index, sign in word:
            if not 1 <= index <= self.ctx.n or sign not in (1, -1):
                raise BraidError(
                    f"x{index}^{sign} is not a basis letter of F_{self.ctx.n}"
                )
            result = result * self.basis[index - 1] ** sign
        return result

    def word_of(self, element: Any) -> FreeWord:
        letters: List[Tuple[int, int]] = []
        for symbol, exponent in element.array_form:
            index = self.group.symbols.index(symbol) + 1
            letters.extend([(index, 1 if exponent > 0 else -1)] * abs(exponent))
        return tuple(letters)

    def free_reduce(self, word: Iterable[Tuple[int, int]]) -> FreeWord:
        """Cancel adjacent x x^-1 pairs until none remain"""
        return self.word_of(self.element_of(word))

    def artin_action(self, a: ArtinLetter) -> FreeAutomorphism:
        self.ctx.artin_letter(a.i, a.sign)
        return self.identity.then_artin(a)

    def action_of(self, word: Iterable[MixedLetter]) -> FreeAutomorphism:
        """Compose the Artin actions along a mixed word"""
        phi = self.identity
        for a in self.ctx.mixed_to_artin(word):
            phi = phi.then_artin(a)
        return phi

    def permutation_of(self, word: Iterable[MixedLetter]) -> Permutation:
        """
        The image of a word in the symmetric group S_n.

        Products compose left to right, so delta sends i to i + 1 mod n.
        """
        n = self.ctx.n
        result = Permutation(list(range(n)))
        for x in word:
            if isinstance(x, ArtinLetter):
                self.ctx.artin_letter(x.i, x.sign)
                result = result * Permutation(x.i - 1, x.i, size=n)
            elif isinstance(x, DeltaLetter):
                delta = Permutation([(i + 1) % n for i in range(n)])
                result = result * (delta if x.exponent > 0 else ~delta)
            else:
                band = x.letter if isinstance(x, InverseBand) else x
                self.ctx.check_band(band)
                result = result * Permutation(band.t - 1, band.s - 1, size=n)
        return result

    def braid_eq(self, u: Sequence[MixedLetter], v: Sequence[MixedLetter]) -> bool:
        """
        Decide u = v in B_n.

        Args:
            u: mixed word
            v: mixed word

        Returns:
            True iff both words induce the same automorphism of F_n
        """
        if self.permutation_of(u).array_form != self.permutation_of(v).array_form:
            return False
        return self.action_of(u) == self.action_of(v)

    def positive_class(self, word: Sequence[BandLetter]) -> Set[Word]:
        """
        All positive words reachable from word through the defining relations.

        Raises:
            BudgetExceededError: the class outgrows config.max_states; the
                partial set is attached
        """
        start: Word = tuple(self.ctx.check_band(x) for x in word)
        seen: Set[Word] = {start}
        queue: Deque[Word] = deque([start])
        while queue:
            current = queue.popleft()
            for nxt in _relation_neighbours(current):
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > self.config.max_states:
                        raise BudgetExceededError(
                            f"positive class of a length-{len(start)} word exceeds "
                            f"{self.config.max_states} states",
                            partial=seen,
                        )
                    queue.append(nxt)
        logger.debug(f"positive class of size {len(seen)}")
        return seen

    def minimal_positive(self, word: Sequence[BandLetter]) -> Word:
        """The deg-lex least positive word equal to word"""
        return min(self.positive_class(word), key=word_key)


def _relation_neighbours(word: Word) -> Iterable[Word]:
    for p in range(len(word) - 1):
        a, b = word[p], word[p + 1]
        assert isinstance(a, BandLetter) and isinstance(b, BandLetter)
        for pair in relation_moves(a, b):
            yield word[:p] + pair + word[p + 2 :]


def relation_moves(a: BandLetter, b: BandLetter) -> List[Tuple[BandLetter, BandLetter]]:
    """Words a single defining relation turns the pair ab into"""
    moves = []
    triple: Optional[Tuple[int, int, int]] = None
    if b.t == a.s:
        triple = (a.t, a.s, b.s)
    elif a.s == b.s and b.t > a.t:
        triple = (b.t, a.t, a.s)
    elif a.t == b.t and b.s > a.s:
        triple = (a.t, b.s, a.s)
    if triple is not None:
        t3, t2, t1 = triple
        for pair in (
            (BandLetter(t3, t2), BandLetter(t2, t1)),
            (BandLetter(t2, t1), BandLetter(t3, t1)),
            (BandLetter(t3, t1), BandLetter(t3, t2)),
        ):
            if pair != (a, b):
                moves.append(pair)
    if commutes(a, b):
        moves.append((b, a))
    return moves

"""
Alphabet, ordering and notation for the braid group B_n in the
Birman-Ko-Lee generators enriched by the Garside word delta.

Band letters a_{ts} are written (t,s) with t > s. Words are plain tuples of
letters so they can be hashed, sliced and compared cheaply.
"""

import logging
import random
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)


class BraidError(Exception):
    """Base class for every error raised by braid_bkl"""

    pass


class InvalidGeneratorError(BraidError):
    """Raised for an out-of-range generator index"""

    pass


class InvalidSequenceError(BraidError):
    """Raised when an index sequence does not fit the product notation"""

    pass


class ConstraintViolationError(BraidError):
    """Raised when a letter falls outside a RangeConstraint"""

    pass


class BudgetExceededError(BraidError):
    """Raised when a search outgrows its configured cap; keeps the partial result"""

    def __init__(self, message: str, partial: object = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class BandLetter:
    """The band generator a_{ts}, always stored with t > s"""

    t: int
    s: int

    def __post_init__(self) -> None:
        if not self.t > self.s >= 1:
            raise InvalidGeneratorError(
                f"band letter needs t > s >= 1, got ({self.t},{self.s})"
            )

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return (1, self.t, self.s)

    def __str__(self) -> str:
        return f"a({self.t},{self.s})"


@dataclass(frozen=True)
class DeltaLetter:
    """delta (exponent +1) or delta^-1 (exponent -1)"""

    exponent: int

    def __post_init__(self) -> None:
        if self.exponent not in (1, -1):
            raise InvalidGeneratorError(
                f"delta exponent must be +1 or -1, got {self.exponent}"
            )

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        return (0, 0 if self.exponent < 0 else 1, 0)

    def __str__(self) -> str:
        return "D" if self.exponent > 0 else "D^-1"


@dataclass(frozen=True)
class InverseBand:
    """The inverse a_{ts}^-1 of a band letter; only accepted as input"""

    letter: BandLetter

    def __str__(self) -> str:
        return f"{self.letter}^-1"


@dataclass(frozen=True)
class ArtinLetter:
    """Artin generator sigma_i (sign +1) or its inverse (sign -1)"""

    i: int
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise InvalidGeneratorError(f"Artin sign must be +1 or -1, got {self.sign}")
        if self.i < 1:
            raise InvalidGeneratorError(f"Artin index must be positive, got {self.i}")

    def inverse(self) -> "ArtinLetter":
        return ArtinLetter(self.i, -self.sign)

    def __str__(self) -> str:
        return f"s{self.i}" if self.sign > 0 else f"s{self.i}^-1"


Letter = Union[DeltaLetter, BandLetter]
MixedLetter = Union[DeltaLetter, BandLetter, InverseBand, ArtinLetter]
Word = Tuple[Letter, ...]

DELTA = DeltaLetter(1)
DELTA_INV = DeltaLetter(-1)
EMPTY: Word = ()


@dataclass(frozen=True)
class RangeConstraint:
    """
    Letters (k,l) with hi >= k > l >= lo.

    When hi <= lo no letter qualifies and the constrained class holds only
    the empty word.
    """

    hi: int
    lo: int

    def admits(self, letter: Letter) -> bool:
        if not isinstance(letter, BandLetter):
            return False
        return letter.t <= self.hi and letter.s >= self.lo

    def admits_word(self, word: Sequence[Letter]) -> bool:
        return all(self.admits(x) for x in word)

    def letters(self) -> List[BandLetter]:
        return [
            BandLetter(k, l)
            for k in range(self.lo + 1, self.hi + 1)
            for l in range(self.lo, k)
        ]


def commutes(a: BandLetter, b: BandLetter) -> bool:
    """Band letters commute when their index intervals are disjoint or nested"""
    hi, lo = (a, b) if a.t > b.t else (b, a)
    return hi.s > lo.t or (hi.t > lo.t and lo.s > hi.s)


def word_key(word: Sequence[Letter]) -> Tuple[int, Tuple[Tuple[int, int, int], ...]]:
    """Sort key realising the deg-lex order"""
    return (len(word), tuple(x.sort_key for x in word))


def deglex_compare(u: Sequence[Letter], v: Sequence[Letter]) -> int:
    """
    Compare two words first by length, then letterwise from the left.

    Returns:
        -1, 0 or 1 in the manner of a cmp function
    """
    ku, kv = word_key(u), word_key(v)
    return (ku > kv) - (ku < kv)


def prime_transform(word: Sequence[Letter], t2: int, t1: int) -> Word:
    """
    The letter map V -> V' with V (t2,t1) = (t2,t1) V'.

    Letters (k,l) with l != t1 are fixed and (k,t1) goes to (t2,k). Every
    letter of the input must lie in the range [t2-1, t1].
    """
    constraint = RangeConstraint(t2 - 1, t1)
    image = []
    for x in word:
        if not constraint.admits(x):
            raise ConstraintViolationError(f"{x} is outside [{t2 - 1},{t1}]")
        assert isinstance(x, BandLetter)
        image.append(BandLetter(t2, x.t) if x.s == t1 else x)
    return tuple(image)


def star_transform(word: Sequence[Letter], t1: int, t0: int) -> Word:
    """
    The letter map W -> W* with W (t1,t0) = (t1,t0) W*.

    Letters (k,l) with l != t1 are fixed and (k,t1) goes to (k,t0). The
    identity holds when every letter has lower index at least t1.
    """
    if not t1 > t0 >= 1:
        raise ConstraintViolationError(
            f"star transform needs t1 > t0 >= 1, got {t1}, {t0}"
        )
    image = []
    for x in word:
        if not isinstance(x, BandLetter):
            raise ConstraintViolationError(f"{x} is not a band letter")
        image.append(BandLetter(x.t, t0) if x.s == t1 else x)
    return tuple(image)


@dataclass(frozen=True)
class BraidContext:
    """The braid group B_n with n strands"""

    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidGeneratorError(
                f"braid group needs n >= 2 strands, got {self.n}"
            )

    @property
    def band_letters(self) -> List[BandLetter]:
        """All band letters of B_n in increasing order"""
        return RangeConstraint(self.n, 1).letters()

    def check_band(self, letter: BandLetter) -> BandLetter:
        if letter.t > self.n:
            raise InvalidGeneratorError(f"{letter} is not a generator of B_{self.n}")
        return letter

    def make_band(self, a: int, b: int) -> BandLetter:
        """Build a_{ts} from an index pair given in either order"""
        if a == b:
            raise InvalidGeneratorError(
                f"band letter needs distinct indices, got ({a},{b})"
            )
        for index in (a, b):
            if not 1 <= index <= self.n:
                raise InvalidGeneratorError(f"index {index} out of range [1,{self.n}]")
        return BandLetter(max(a, b), min(a, b))

    def artin_letter(self, i: int, sign: int = 1) -> ArtinLetter:
        if not 1 <= i <= self.n - 1:
            raise InvalidGeneratorError(
                f"Artin index {i} out of range [1,{self.n - 1}]"
            )
        return ArtinLetter(i, sign)

    def chain_product(self, seq: Sequence[int]) -> Word:
        """
        The product (t_m,t_{m-1})(t_{m-1},t_{m-2})...(t_2,t_1).

        Adjacent entries must differ; a sequence of length <= 1 gives the
        empty word.
        """
        for a, b in zip(seq, seq[1:]):
            if a == b:
                raise InvalidSequenceError(f"adjacent entries must differ: {list(seq)}")
        return tuple(self.make_band(a, b) for a, b in zip(seq, seq[1:]))

    def descending_product(self, seq: Sequence[int]) -> Word:
        """chain_product restricted to strictly decreasing sequences"""
        for a, b in zip(seq, seq[1:]):
            if a <= b:
                raise InvalidSequenceError(
                    f"sequence is not strictly decreasing: {list(seq)}"
                )
        return self.chain_product(seq)

    def delta_word(self) -> Word:
        """delta = (n,n-1)(n-1,n-2)...(2,1)"""
        return self.descending_product(range(self.n, 0, -1))

    def delta_conjugate(self, letter: BandLetter, direction: int) -> BandLetter:
        """
        The letter g' with g delta^d = delta^d g'.

        Both indices shift by d and wrap into [1, n]; the pair is then
        re-ordered so the larger index comes first.
        """
        self.check_band(letter)
        t = (letter.t - 1 + direction) % self.n + 1
        s = (letter.s - 1 + direction) % self.n + 1
        return BandLetter(max(t, s), min(t, s))

    def invert_band(self, letter: BandLetter) -> Word:
        """
        delta^-1 (n,...,t,s-1,...,1)(t-1,...,s), the inverse of (t,s).

        Follows from (n,...,t,s-1,...,1)(t-1,...,s)(t,s) = delta.
        """
        self.check_band(letter)
        t, s = letter.t, letter.s
        head = list(range(self.n, t - 1, -1)) + list(range(s - 1, 0, -1))
        tail = self.descending_product(range(t - 1, s - 1, -1))
        return (DELTA_INV,) + self.descending_product(head) + tail

    def band_to_artin(self, letter: BandLetter) -> List[ArtinLetter]:
        """a_{ts} = (s_{t-1}...s_{s+1}) s_s (s_{s+1}^-1...s_{t-1}^-1)"""
        self.check_band(letter)
        up = [ArtinLetter(i) for i in range(letter.t - 1, letter.s, -1)]
        return up + [ArtinLetter(letter.s)] + [a.inverse() for a in reversed(up)]

    def artin_to_band(self, word: Iterable[ArtinLetter]) -> Word:
        result: List[Letter] = []
        for a in word:
            self.artin_letter(a.i, a.sign)
            band = BandLetter(a.i + 1, a.i)
            if a.sign > 0:
                result.append(band)
            else:
                result.extend(self.invert_band(band))
        return tuple(result)

    def mixed_to_artin(self, letters: Iterable[MixedLetter]) -> List[ArtinLetter]:
        """Expand any mixed word into Artin letters, inverting where needed"""
        # delta = s_{n-1} ... s_1 since a_{k+1,k} = s_k
        delta = [ArtinLetter(i) for i in range(self.n - 1, 0, -1)]
        result: List[ArtinLetter] = []
        for x in letters:
            if isinstance(x, ArtinLetter):
                result.append(self.artin_letter(x.i, x.sign))
            elif isinstance(x, DeltaLetter):
                if x.exponent > 0:
                    result.extend(delta)
                else:
                    result.extend(a.inverse() for a in reversed(delta))
            elif isinstance(x, InverseBand):
                up = self.band_to_artin(x.letter)
                result.extend(a.inverse() for a in reversed(up))
            else:
                result.extend(self.band_to_artin(x))
        return result

    def expand_mixed(self, letters: Iterable[MixedLetter]) -> Word:
        """Replace band inverses and Artin letters by positive band words and D^-1"""
        result: List[Letter] = []
        for x in letters:
            if isinstance(x, InverseBand):
                result.extend(self.invert_band(x.letter))
            elif isinstance(x, ArtinLetter):
                result.extend(self.artin_to_band([x]))
            elif isinstance(x, BandLetter):
                result.append(self.check_band(x))
            else:
                result.append(x)
        return tuple(result)

    def random_word(
        self,
        rng: random.Random,
        length: int,
        mixed: bool = True,
        delta_weight: Optional[float] = None,
    ) -> Tuple[MixedLetter, ...]:
        """
        Draw a random word of the given length.

        Letters are band letters, delta^{+-1} and, when mixed, band
        inverses. delta_weight is the probability of a delta letter
        (defaults to one share of the alphabet).
        """
        bands = self.band_letters
        pool: List[MixedLetter] = list(bands)
        if mixed:
            pool.extend(InverseBand(b) for b in bands)
        weight = delta_weight if delta_weight is not None else 2.0 / (len(pool) + 2)
        word: List[MixedLetter] = []
        for _ in range(length):
            if rng.random() < weight:
                word.append(DELTA if rng.random() < 0.5 else DELTA_INV)
            else:
                word.append(rng.choice(pool))
        return tuple(word)

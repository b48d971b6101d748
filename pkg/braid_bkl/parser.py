import logging
import re
from typing import List, Tuple

from .core import DELTA, DELTA_INV, BraidContext, BraidError, InverseBand, MixedLetter

logger = logging.getLogger(__name__)


class ParseError(BraidError):
    """Raised for a token the word grammar does not accept"""

    def __init__(self, message: str, position: int, token: str):
        super().__init__(f"{message} at position {position}: {token!r}")
        self.position = position
        self.token = token


class WordParser:
    """Parser for whitespace-separated braid words such as "a(3,1) s2^-1 D^-1" """

    TOKEN = re.compile(
        r"""
        (?P<band>a\(\s*(?P<t>\d+)\s*,\s*(?P<s>\d+)\s*\)(?P<band_inv>\^-1)?)
        |(?P<artin>s(?P<i>\d+)(?P<artin_inv>\^-1)?)
        |(?P<delta>D(?:\^(?P<k>[+-]?\d+))?)
        |(?P<empty>e)
        """,
        re.VERBOSE,
    )
    MAX_DELTA_POWER = 10000
    SEPARATOR = re.compile(r"\s*")
    BOUNDARY = re.compile(r"\s|$")

    def __init__(self, ctx: BraidContext):
        self.ctx = ctx

    def parse(self, text: str) -> Tuple[MixedLetter, ...]:
        """
        Parse a word in the input grammar.

        Args:
            text: tokens a(t,s), s<i>, either with an optional ^-1 suffix,
                D, D^-1, D^<k> and e for the empty word

        Returns:
            The mixed word, band letters normalized to t > s

        Raises:
            ParseError: unknown or malformed token
            InvalidGeneratorError: index out of range for the context
        """
        letters: List[MixedLetter] = []
        pos = self.SEPARATOR.match(text, 0).end()  # type: ignore[union-attr]
        while pos < len(text):
            m = self.TOKEN.match(text, pos)
            if m is None or not self.BOUNDARY.match(text, m.end()):
                bad = text[pos:].split()[0]
                raise ParseError("unknown token", pos, bad)
            letters.extend(self._letters(m))
            pos = self.SEPARATOR.match(text, m.end()).end()  # type: ignore[union-attr]
        logger.debug(f"parsed {len(letters)} letters from {text!r}")
        return tuple(letters)

    def _letters(self, m: "re.Match[str]") -> List[MixedLetter]:
        if m.group("band"):
            band = self.ctx.make_band(int(m.group("t")), int(m.group("s")))
            return [InverseBand(band) if m.group("band_inv") else band]
        if m.group("artin"):
            sign = -1 if m.group("artin_inv") else 1
            return [self.ctx.artin_letter(int(m.group("i")), sign)]
        if m.group("delta"):
            digits = m.group("k") or "1"
            if len(digits) > 6 or abs(int(digits)) > self.MAX_DELTA_POWER:
                message = f"delta exponent above {self.MAX_DELTA_POWER}"
                raise ParseError(message, m.start(), m.group(0))
            k = int(digits)
            return [DELTA if k > 0 else DELTA_INV] * abs(k)
        return []

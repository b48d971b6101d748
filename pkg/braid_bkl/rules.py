"""
The nine rule schemata E1-E9 of the Groebner-Shirshov basis of B_n.

Every schema is a scanner that reads a word from a start position and
returns all admissible instantiations there, shortest first. Wildcards
V_{[hi,lo]} may be empty. Each scanner also reports its horizon: the last
position it looked at, so callers can tell which failed scans a rewrite
further right could revive.

    E1  (k,l)(i,j)              -> (i,j)(k,l)                    k>l>i>j
    E2  (k,l)V(i,j)             -> (i,j)(k,l)V                   k>i>j>l, V in [j-1,1]
    E3  (t3,t2)(t2,t1)          -> (t2,t1)(t3,t1)
    E4  (t3,t1)V(t3,t2)         -> (t2,t1)(t3,t1)V               V in [t2-1,1]
    E5  (t,s)V(t2,t1)W(t3,t1)   -> (t3,t2)(t,s)V(t2,t1)W'        t>t3, t2>s
    E6  (t3,s)V(t2,t1)W(t3,t1)  -> (t2,s)(t3,s)V(t2,t1)W'        t2>s
    E7  (2,1)V2(3,1)...V{n-1}(n,1) -> delta V2'...V{n-1}'        V_i in [i,1]
    E8  (t,s)delta^{+-1}        -> delta^{+-1}(t+-1,s+-1)        mod n
    E9  delta delta^-1 -> 1,  delta^-1 delta -> 1

In E5/E6 V ranges over [t2-1,1] and W over [t3-1,t1]; W' is primed
relative to (t3,t1) and V_i' relative to (i+1,1).
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .core import (
    DELTA,
    DELTA_INV,
    BandLetter,
    BraidContext,
    Letter,
    Word,
    prime_transform,
)

logger = logging.getLogger(__name__)


class RuleId(str, Enum):
    """Concrete matchers, in priority order"""

    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"
    E5 = "E5"
    E6 = "E6"
    E7 = "E7"
    E8_PLUS = "E8+"
    E8_MINUS = "E8-"
    E9_PLUS = "E9+"
    E9_MINUS = "E9-"

    @property
    def family(self) -> str:
        """Schema name with the +/- split folded back (E8+ -> E8)"""
        return self.value.rstrip("+-")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RuleMatch:
    """One instantiation of a schema inside a word"""

    rule: RuleId
    start: int
    length: int
    params: Dict[str, int] = field(default_factory=dict)
    wildcards: Dict[str, Word] = field(default_factory=dict)

    @property
    def end(self) -> int:
        return self.start + self.length

    def wildcard_size(self) -> Tuple[int, ...]:
        return tuple(len(v) for _, v in sorted(self.wildcards.items()))


ScanResult = Tuple[List[RuleMatch], int]
Scanner = Callable[[BraidContext, Sequence[Letter], int], ScanResult]


def _band(word: Sequence[Letter], i: int) -> Optional[BandLetter]:
    if 0 <= i < len(word):
        x = word[i]
        if isinstance(x, BandLetter):
            return x
    return None


def _last(word: Sequence[Letter], i: int) -> int:
    return max(0, min(i, len(word) - 1))


def _scan_e1(ctx: BraidContext, word: Sequence[Letter], pos: int) -> ScanResult:
    x, y = _band(word, pos), _band(word, pos + 1)
    if x is not None and y is not None and x.t > x.s > y.t > y.s:
        params = {"k": x.t, "l": x.s, "i": y.t, "j": y.s}
        return [RuleMatch(RuleId.E1, pos, 2, params)], pos + 1
    return [], _last(word, pos + 1)


def _scan_e2(ctx: BraidContext, word: Sequence[Letter], pos: int) -> ScanResult:
    x = _band(word, pos)
    if x is None:
        return [], pos
    k, l = x.t, x.s
    found = []
    top = 0
    q = pos + 1
    # an anchor (i,j) needs k > i > j > top
    while q < len(word) and top + 3 <= k:
        y = word[q]
        if not isinstance(y, BandLetter):
            break
        if k > y.t > y.s > l and y.s > top:
            params = {"k": k, "l": l, "i": y.t, "j": y.s}
            wildcards = {"V": tuple(word[pos + 1 : q])}
            found.append(RuleMatch(RuleId.E2, pos, q - pos + 1, params, wildcards))
        top = max(top, y.t)
        q += 1
    return found, _last(word, q)


def _scan_e3(ctx: BraidContext, word: Sequence[Letter], pos: int) -> ScanResult:
    x, y = _band(word, pos), _band(word, pos + 1)
    if x is not None and y is not None and y.t == x.s:
        params = {"t3": x.t, "t2": x.s, "t1": y.s}
        return [RuleMatch(RuleId.E3, pos, 2, params)], pos + 1
    return [], _last(word, pos + 1)


def _scan_e4(ctx: BraidContext, word: Sequence[Letter], pos: int) -> ScanResult:
    x = _band(word, pos)
    if x is None:
        return [], pos
    t3, t1 = x.t, x.s
    found = []
    top = 0
    q = pos + 1
    while q < len(word) and top + 2 <= t3:
        y = word[q]
        if not isinstance(y, BandLetter):
            break
        if y.t == t3 and y.s > t1 and y.s > top:
            params = {"t3": t3, "t2": y.s, "t1": t1}
            wildcards = {"V": tuple(word[pos + 1 : q])}
            found.append(RuleMatch(RuleId.E4, pos, q - pos + 1, params, wildcards))
        top = max(top, y.t)
        q += 1
    return found, _last(word, q)


def _scan_two_anchors(rule: RuleId, word: Sequence[Letter], pos: int) -> ScanResult:
    """Shared scanner for E5 (t > t3) and E6 (t = t3)"""
    x = _band(word, pos)
    if x is None:
        return [], pos
    big, s = x.t, x.s
    same_top = rule is RuleId.E6
    # largest admissible t2, and the bound on W's upper indices
    t2_limit = big - 1 if same_top else big - 2
    w_limit = big if same_top else big - 1
    found = []
    horizon = pos
    top_v = 0
    q1 = pos + 1
    while q1 < len(word) and top_v < t2_limit:
        y = word[q1]
        horizon = max(horizon, q1)
        if not isinstance(y, BandLetter):
            break
        if s < y.t <= t2_limit and y.t > top_v:
            t2, t1 = y.t, y.s
            top_w = 0
            q2 = q1 + 1
            while q2 < len(word):
                z = word[q2]
                horizon = max(horizon, q2)
                if not isinstance(z, BandLetter) or z.s < t1:
                    break
                t3 = z.t
                top_ok = t3 == big if same_top else t3 < big
                if z.s == t1 and t3 > t2 and t3 > top_w and top_ok:
                    params = {"t": big, "s": s, "t3": t3, "t2": t2, "t1": t1}
                    if same_top:
                        del params["t"]
                    wildcards = {
                        "V": tuple(word[pos + 1 : q1]),
                        "W": tuple(word[q1 + 1 : q2]),
                    }
                    found.append(RuleMatch(rule, pos, q2 - pos + 1, params, wildcards))
                top_w = max(top_w, z.t)
                if top_w >= w_limit:
                    break
                q2 += 1
        top_v = max(top_v, y.t)
        q1 += 1
    found.sort(key=lambda m: (m.length, len(m.wildcards["V"])))
    return found, horizon


def _scan_e5(ctx: BraidContext, word: Sequence[Letter], pos: int) -> ScanResult:
    return _scan_two_anchors(RuleId.E5, word, pos)


def _scan_e6(ctx: BraidContext, word: Sequence[Letter], pos: int) -> ScanResult:
    return _scan_two_anchors(RuleId.E6, word, pos)


def _scan_e7(ctx: BraidContext, word: Sequence[Letter], pos: int) -> ScanResult:
    if _band(word, pos) != BandLetter(2, 1):
        return [], pos
    wildcards: Dict[str, Word] = {}
    q = pos + 1
    for i in range(2, ctx.n):
        start = q
        while q < len(word):
            y = word[q]
            if not isinstance(y, BandLetter) or y.t > i:
                break
            q += 1
        if _band(word, q) != BandLetter(i + 1, 1):
            return [], _last(word, q)
        wildcards[f"V{i}"] = tuple(word[start:q])
        q += 1
    return [RuleMatch(RuleId.E7, pos, q - pos, {}, wildcards)], q - 1


def _delta_scanner(rule: RuleId, first: Optional[Letter], second: Letter) -> Scanner:
    """E8/E9 scanners; first=None stands for any band letter"""

    def scan(ctx: BraidContext, word: Sequence[Letter], pos: int) -> ScanResult:
        if pos + 1 >= len(word) or word[pos + 1] != second:
            return [], _last(word, pos + 1)
        x = word[pos]
        if first is None and isinstance(x, BandLetter):
            return [RuleMatch(rule, pos, 2, {"t": x.t, "s": x.s})], pos + 1
        if first is not None and x == first:
            return [RuleMatch(rule, pos, 2)], pos + 1
        return [], pos + 1

    return scan


SCANNERS: Dict[RuleId, Scanner] = {
    RuleId.E1: _scan_e1,
    RuleId.E2: _scan_e2,
    RuleId.E3: _scan_e3,
    RuleId.E4: _scan_e4,
    RuleId.E5: _scan_e5,
    RuleId.E6: _scan_e6,
    RuleId.E7: _scan_e7,
    RuleId.E8_PLUS: _delta_scanner(RuleId.E8_PLUS, None, DELTA),
    RuleId.E8_MINUS: _delta_scanner(RuleId.E8_MINUS, None, DELTA_INV),
    RuleId.E9_PLUS: _delta_scanner(RuleId.E9_PLUS, DELTA, DELTA_INV),
    RuleId.E9_MINUS: _delta_scanner(RuleId.E9_MINUS, DELTA_INV, DELTA),
}


def all_matches_at(
    ctx: BraidContext, word: Sequence[Letter], pos: int, rule: RuleId
) -> List[RuleMatch]:
    """Every admissible instantiation of one schema at pos, shortest first"""
    return SCANNERS[rule](ctx, word, pos)[0]


def match_at(
    ctx: BraidContext,
    word: Sequence[Letter],
    pos: int,
    rule: RuleId,
    longest: bool = False,
) -> Optional[RuleMatch]:
    """
    Match one schema at a position.

    Args:
        ctx: braid group context
        word: word to scan
        pos: start position of the left-hand side
        rule: schema to try
        longest: prefer the longest wildcards instead of the shortest

    Returns:
        The selected match or None
    """
    found = all_matches_at(ctx, word, pos, rule)
    if not found:
        return None
    return found[-1] if longest else found[0]


def scan_at(
    ctx: BraidContext,
    word: Sequence[Letter],
    pos: int,
    order: Sequence[RuleId],
    longest: bool = False,
) -> Tuple[Optional[RuleMatch], int]:
    """First rule in order matching at pos, plus the furthest position read"""
    horizon = pos
    for rule in order:
        found, reach = SCANNERS[rule](ctx, word, pos)
        horizon = max(horizon, reach)
        if found:
            return (found[-1] if longest else found[0]), horizon
    return None, horizon


def _b(t: int, s: int) -> BandLetter:
    return BandLetter(t, s)


def lhs_of(ctx: BraidContext, m: RuleMatch) -> Word:
    """The schema left-hand side instantiated with the match's parameters"""
    p, v = m.params, m.wildcards
    rule = m.rule
    if rule is RuleId.E1:
        return (_b(p["k"], p["l"]), _b(p["i"], p["j"]))
    if rule is RuleId.E2:
        return (_b(p["k"], p["l"]),) + v["V"] + (_b(p["i"], p["j"]),)
    if rule is RuleId.E3:
        return (_b(p["t3"], p["t2"]), _b(p["t2"], p["t1"]))
    if rule is RuleId.E4:
        return (_b(p["t3"], p["t1"]),) + v["V"] + (_b(p["t3"], p["t2"]),)
    if rule in (RuleId.E5, RuleId.E6):
        first = _b(p["t"], p["s"]) if rule is RuleId.E5 else _b(p["t3"], p["s"])
        middle = (_b(p["t2"], p["t1"]),)
        return (first,) + v["V"] + middle + v["W"] + (_b(p["t3"], p["t1"]),)
    if rule is RuleId.E7:
        result: Tuple[Letter, ...] = (_b(2, 1),)
        for i in range(2, ctx.n):
            result += v[f"V{i}"] + (_b(i + 1, 1),)
        return result
    if rule is RuleId.E8_PLUS:
        return (_b(p["t"], p["s"]), DELTA)
    if rule is RuleId.E8_MINUS:
        return (_b(p["t"], p["s"]), DELTA_INV)
    if rule is RuleId.E9_PLUS:
        return (DELTA, DELTA_INV)
    return (DELTA_INV, DELTA)


def rhs_of(ctx: BraidContext, m: RuleMatch) -> Word:
    """The schema right-hand side instantiated with the match's parameters"""
    p, v = m.params, m.wildcards
    rule = m.rule
    if rule is RuleId.E1:
        return (_b(p["i"], p["j"]), _b(p["k"], p["l"]))
    if rule is RuleId.E2:
        return (_b(p["i"], p["j"]), _b(p["k"], p["l"])) + v["V"]
    if rule is RuleId.E3:
        return (_b(p["t2"], p["t1"]), _b(p["t3"], p["t1"]))
    if rule is RuleId.E4:
        return (_b(p["t2"], p["t1"]), _b(p["t3"], p["t1"])) + v["V"]
    if rule in (RuleId.E5, RuleId.E6):
        w_prime = prime_transform(v["W"], p["t3"], p["t1"])
        tail = v["V"] + (_b(p["t2"], p["t1"]),) + w_prime
        if rule is RuleId.E5:
            return (_b(p["t3"], p["t2"]), _b(p["t"], p["s"])) + tail
        return (_b(p["t2"], p["s"]), _b(p["t3"], p["s"])) + tail
    if rule is RuleId.E7:
        result: Tuple[Letter, ...] = (DELTA,)
        for i in range(2, ctx.n):
            result += prime_transform(v[f"V{i}"], i + 1, 1)
        return result
    if rule in (RuleId.E8_PLUS, RuleId.E8_MINUS):
        direction = 1 if rule is RuleId.E8_PLUS else -1
        shifted = ctx.delta_conjugate(_b(p["t"], p["s"]), direction)
        return (DELTA if direction > 0 else DELTA_INV, shifted)
    return ()

"""
Randomized self-checks run by `braid-bkl selftest`.

Equal pairs are produced by perturbing a random word with moves that keep
its value in B_n, so the engine and the free-group oracle are compared on
both equal and unequal pairs. Any failure is shrunk letter by letter to a
small counterexample.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .core import DELTA, DELTA_INV, BandLetter, BraidContext, InverseBand, MixedLetter
from .engine import RewriteEngine
from .oracle import FreeGroupOracle, OracleConfig, relation_moves
from .verifier import ConfluenceVerifier, LemmaFixture, SweepReport, VerifierConfig

logger = logging.getLogger(__name__)

MixedWord = Tuple[MixedLetter, ...]


@dataclass
class SelfTestConfig:
    """Parameters of one self-test run"""

    trials: int = 100
    seed: int = 0
    max_length: int = 12
    sweep_max_length: int = 8


@dataclass
class SelfTestReport:
    n: int
    trials: int
    seed: int
    equal_pairs: int = 0
    disagreements: List[Tuple[MixedWord, MixedWord]] = field(default_factory=list)
    sweep: Optional[SweepReport] = None
    fixture_count: int = 0
    fixture_failures: List[LemmaFixture] = field(default_factory=list)
    counterexamples: List[Tuple[MixedWord, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        sweep_ok = self.sweep is None or self.sweep.ok
        return not self.disagreements and not self.fixture_failures and sweep_ok


class SelfTester:
    """Cross-checks the engine against the oracle and itself"""

    def __init__(self, ctx: BraidContext, config: Optional[SelfTestConfig] = None):
        self.ctx = ctx
        self.config = config or SelfTestConfig()
        self.engine = RewriteEngine(ctx)
        self.oracle = FreeGroupOracle(ctx, OracleConfig())
        self.verifier = ConfluenceVerifier(
            ctx, VerifierConfig(sweep_max_length=self.config.sweep_max_length)
        )

    def perturb(
        self, rng: random.Random, word: Sequence[MixedLetter], moves: int = 2
    ) -> MixedWord:
        """Apply random moves that do not change the braid a word represents"""
        current = list(word)
        bands = self.ctx.band_letters
        for _ in range(moves):
            choice = rng.randrange(4)
            p = rng.randint(0, len(current))
            if choice == 0 or not current:
                x = rng.choice(bands)
                pair: List[MixedLetter] = rng.choice(
                    [[x, InverseBand(x)], [InverseBand(x), x], [DELTA, DELTA_INV]]
                )
                current[p:p] = pair
                continue
            p = min(p, len(current) - 1)
            x = current[p]
            if choice == 1 and isinstance(x, BandLetter):
                current[p : p + 1] = [DELTA, self.ctx.delta_conjugate(x, 1), DELTA_INV]
            elif choice == 2 and isinstance(x, InverseBand):
                current[p : p + 1] = list(self.ctx.invert_band(x.letter))
            elif choice == 3 and p + 1 < len(current):
                a, b = current[p], current[p + 1]
                if isinstance(a, BandLetter) and isinstance(b, BandLetter):
                    options = relation_moves(a, b)
                    if options:
                        current[p : p + 2] = list(rng.choice(options))
        return tuple(current)

    def random_pair(self, rng: random.Random) -> Tuple[MixedWord, MixedWord, bool]:
        """A random pair of words and whether it was built to be equal"""
        u = self.ctx.random_word(rng, rng.randint(0, self.config.max_length))
        if rng.random() < 0.5:
            return u, self.perturb(rng, u, rng.randint(1, 3)), True
        v = self.ctx.random_word(rng, rng.randint(0, self.config.max_length))
        return u, v, False

    def disagrees(self, u: Sequence[MixedLetter], v: Sequence[MixedLetter]) -> bool:
        return self.engine.equal(u, v) != self.oracle.braid_eq(u, v)

    def oracle_agreement(self, rng: random.Random, report: SelfTestReport) -> None:
        for _ in range(self.config.trials):
            u, v, built_equal = self.random_pair(rng)
            report.equal_pairs += int(built_equal)
            if self.disagrees(u, v):
                logger.error(
                    f"engine and oracle disagree on n={self.ctx.n}: "
                    f"{_show(u)} vs {_show(v)}"
                )
                report.disagreements.append((u, v))
                smallest = shrink((u, v), lambda w: self.disagrees(*w))
                report.counterexamples.append(smallest)

    def run(self) -> SelfTestReport:
        """
        Run the oracle agreement check, the strategy sweep and the fixture suite.

        Returns:
            SelfTestReport; identical for identical config and n
        """
        cfg = self.config
        rng = random.Random(cfg.seed)
        report = SelfTestReport(n=self.ctx.n, trials=cfg.trials, seed=cfg.seed)
        logger.info(
            f"Self-test for n={self.ctx.n}: {cfg.trials} trials, seed {cfg.seed}"
        )

        self.oracle_agreement(rng, report)

        report.sweep = self.verifier.strategy_sweep(cfg.trials, cfg.seed)
        for word, _ in report.sweep.discrepancies:
            smallest = shrink((tuple(word),), lambda w: self._policies_disagree(w[0]))
            report.counterexamples.append(smallest)

        fixtures = self.verifier.lemma_fixtures()
        report.fixture_count = len(fixtures)
        report.fixture_failures = self.verifier.check_fixtures(fixtures)

        outcome = "passed" if report.ok else "FAILED"
        logger.info(f"Self-test for n={self.ctx.n} {outcome}")
        return report

    def _policies_disagree(self, word: Sequence[MixedLetter]) -> bool:
        expanded = self.ctx.expand_mixed(word)
        sweep_engines = self.verifier.policy_engines()
        return len({e.normalize(expanded) for e in sweep_engines}) > 1


def shrink(
    words: Tuple[MixedWord, ...], failing: Callable[[Tuple[MixedWord, ...]], bool]
) -> Tuple[MixedWord, ...]:
    """Delete letters one at a time while the failure persists"""
    current = words
    changed = True
    while changed:
        changed = False
        for w_index, word in enumerate(current):
            for p in range(len(word)):
                candidate = list(current)
                candidate[w_index] = word[:p] + word[p + 1 :]
                trial = tuple(candidate)
                if failing(trial):
                    current = trial
                    changed = True
                    break
            if changed:
                break
    return current


def _show(word: Sequence[MixedLetter]) -> str:
    return " ".join(str(x) for x in word) or "e"

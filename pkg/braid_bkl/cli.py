import functools
import logging
import sys
from typing import Any, Callable, List, Sequence, Tuple

import click

from .core import BraidContext, BraidError, BudgetExceededError
from .engine import POLICIES, RewriteEngine, RewriteInvariantError, policy_by_name
from .exporter import ReportExporter
from .oracle import FreeGroupOracle
from .parser import WordParser
from .selftest import SelfTestConfig, SelfTester
from .verifier import ConfluenceReport, ConfluenceVerifier, VerifierConfig

logger = logging.getLogger(__name__)

EXIT_UNEQUAL = 1
EXIT_USAGE = 2
EXIT_FAILURE = 3


def setup_logging(debug: bool) -> None:
    """Setup logging configuration"""
    level = logging.DEBUG if debug else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def handle_errors(command: Callable[..., None]) -> Callable[..., None]:
    """Map library errors onto exit statuses"""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        debug = bool((click.get_current_context().obj or {}).get("debug"))
        try:
            command(*args, **kwargs)
        except RewriteInvariantError as e:
            logger.error(f"Rewrite invariant broken: {e}")
            sys.exit(EXIT_FAILURE)
        except BraidError as e:
            logger.error(str(e))
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_USAGE)
        except click.ClickException:
            raise
        except Exception as e:
            logger.error(f"Unexpected error: {e}")
            if debug:
                import traceback

                traceback.print_exc()
            sys.exit(EXIT_FAILURE)

    return wrapper


def parse_n_range(value: str) -> List[int]:
    """'3' or '2-5' to a list of strand counts"""
    try:
        if "-" in value:
            lo, hi = (int(x) for x in value.split("-", 1))
        else:
            lo = hi = int(value)
    except ValueError:
        raise click.BadParameter(f"expected N or LO-HI, got {value!r}")
    if lo < 2 or hi < lo:
        raise click.BadParameter(f"need 2 <= LO <= HI, got {value!r}")
    return list(range(lo, hi + 1))


n_option = click.option(
    "--n", "n", type=click.IntRange(min=2), required=True, help="Number of strands"
)
format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(ReportExporter.FORMATS),
    default="text",
    show_default=True,
    help="Output format",
)


@click.group()
@click.option(
    "-d", "--debug", is_flag=True, help="Print debug information during execution"
)
@click.pass_context
def main(ctx: click.Context, debug: bool) -> None:
    """
    Normal forms and the word problem for the braid group B_n in
    Birman-Ko-Lee generators with the Garside word D.

    Words are whitespace-separated tokens: a(t,s) band letters, s<i> Artin
    letters (both with an optional ^-1), D, D^-1, D^<k> and e for the
    empty word.

    Examples:
        braid-bkl normalize --n 3 "a(2,1) a(2,1) a(3,1)"
        braid-bkl equal --n 4 "s1 s2 s1" "s2 s1 s2" --crosscheck
        braid-bkl verify --n 3 --max-wildcard 1
    """
    setup_logging(debug)
    ctx.obj = {"debug": debug}


@main.command()
@n_option
@click.argument("word", default="")
@click.option(
    "--policy",
    type=click.Choice([p.name for p in POLICIES]),
    default=POLICIES[0].name,
    show_default=True,
    help="Match selection policy",
)
@format_option
@handle_errors
def normalize(n: int, word: str, policy: str, fmt: str) -> None:
    """Print the normal form D^k A of WORD."""
    ctx = BraidContext(n)
    letters = WordParser(ctx).parse(word)
    nf = RewriteEngine(ctx, policy_by_name(policy)).normalize_mixed(letters)
    click.echo(ReportExporter(fmt).normal_form_output(n, word, nf))


@main.command()
@n_option
@click.argument("word1")
@click.argument("word2")
@click.option(
    "--crosscheck",
    is_flag=True,
    help="Also decide equality with the free-group oracle",
)
@format_option
@handle_errors
def equal(n: int, word1: str, word2: str, crosscheck: bool, fmt: str) -> None:
    """Decide whether WORD1 and WORD2 are the same braid (exit 0 equal, 1 unequal)."""
    ctx = BraidContext(n)
    parser = WordParser(ctx)
    u, v = parser.parse(word1), parser.parse(word2)
    same = RewriteEngine(ctx).equal(u, v)
    oracle_equal = None
    permutations = None
    if crosscheck:
        oracle = FreeGroupOracle(ctx)
        oracle_equal = oracle.braid_eq(u, v)
        permutations = (
            oracle.permutation_of(u).array_form,
            oracle.permutation_of(v).array_form,
        )
    exporter = ReportExporter(fmt)
    click.echo(
        exporter.equal_output(n, word1, word2, same, oracle_equal, permutations)
    )
    if oracle_equal is not None and oracle_equal != same:
        logger.error(f"engine says {same}, oracle says {oracle_equal}")
        sys.exit(EXIT_FAILURE)
    if not same:
        sys.exit(EXIT_UNEQUAL)


@main.command()
@n_option
@click.option(
    "--to",
    "target",
    type=click.Choice(["artin", "band"]),
    required=True,
    help="Target alphabet",
)
@click.option(
    "--normalize", "normalize_first", is_flag=True, help="Normalize before converting"
)
@click.argument("word")
@format_option
@handle_errors
def convert(n: int, target: str, normalize_first: bool, word: str, fmt: str) -> None:
    """Rewrite WORD letter by letter in Artin or band generators."""
    ctx = BraidContext(n)
    letters: Tuple[Any, ...] = WordParser(ctx).parse(word)
    if normalize_first:
        letters = RewriteEngine(ctx).normalize_mixed(letters).to_word()
    if target == "artin":
        converted: Sequence[Any] = ctx.mixed_to_artin(letters)
    else:
        converted = ctx.expand_mixed(letters)
    click.echo(ReportExporter(fmt).convert_output(n, word, target, converted))


@main.command()
@n_option
@click.option(
    "--max-wildcard",
    type=click.IntRange(min=0),
    default=1,
    show_default=True,
    help="Longest wildcard word",
)
@click.option(
    "--budget",
    type=click.IntRange(min=1),
    default=5000,
    show_default=True,
    help="Cap on rule instances",
)
@format_option
@handle_errors
def verify(n: int, max_wildcard: int, budget: int, fmt: str) -> None:
    """Check that every composition of the rules is joinable at bounded scale."""
    ctx = BraidContext(n)
    config = VerifierConfig(max_wildcard=max_wildcard, max_instances=budget)
    verifier = ConfluenceVerifier(ctx, config)
    try:
        report = verifier.verify_confluence()
    except BudgetExceededError as e:
        assert isinstance(e.partial, ConfluenceReport)
        report = e.partial
    fixtures = verifier.lemma_fixtures()
    fixture_failures = verifier.check_fixtures(fixtures)
    exporter = ReportExporter(fmt)
    click.echo(exporter.confluence_output(report, len(fixtures), fixture_failures))
    if not (report.ok and report.complete and not fixture_failures):
        sys.exit(EXIT_FAILURE)


@main.command()
@click.option(
    "--n",
    "n_range",
    default="2-5",
    show_default=True,
    help="Strand count N or range LO-HI",
)
@click.option(
    "--trials",
    type=click.IntRange(min=1),
    default=100,
    show_default=True,
    help="Random words per check",
)
@click.option("--seed", type=int, default=0, show_default=True, help="Random seed")
@click.option(
    "--max-length",
    type=click.IntRange(min=0),
    default=12,
    show_default=True,
    help="Longest random word",
)
@format_option
@handle_errors
def selftest(n_range: str, trials: int, seed: int, max_length: int, fmt: str) -> None:
    """Cross-check the normalizer against the free-group oracle and itself."""
    strands = parse_n_range(n_range)
    exporter = ReportExporter(fmt)
    failed = False
    for n in strands:
        config = SelfTestConfig(trials=trials, seed=seed, max_length=max_length)
        report = SelfTester(BraidContext(n), config).run()
        click.echo(exporter.selftest_output(report))
        failed = failed or not report.ok
    if failed:
        sys.exit(EXIT_FAILURE)


if __name__ == "__main__":
    main()

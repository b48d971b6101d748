import logging
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from .engine import NormalForm
from .selftest import SelfTestReport
from .verifier import Ambiguity, ConfluenceReport, LemmaFixture, family_name

logger = logging.getLogger(__name__)

Record = List[Tuple[str, Any]]


def _names(families: Iterable[Any]) -> List[str]:
    return [family_name(k) for k in families]


class ReportExporter:
    """
    Renders command results.

    "text" is meant for people. "json-like" prints one `key: value` line per
    field in a fixed order so runs with the same flags are byte-identical.
    """

    FORMATS = ("text", "json-like")

    def __init__(self, fmt: str = "text"):
        if fmt not in self.FORMATS:
            raise ValueError(f"unknown output format: {fmt}")
        self.fmt = fmt

    @staticmethod
    def render_word(word: Sequence[Any]) -> str:
        """Letters separated by spaces, e for the empty word"""
        return " ".join(str(x) for x in word) or "e"

    @staticmethod
    def render_normal_form(nf: NormalForm) -> str:
        """D^k followed by the tail; D^0 is left out and an empty tail prints as e"""
        parts = [f"D^{nf.delta_exp}"] if nf.delta_exp else []
        parts.append(ReportExporter.render_word(nf.tail))
        return " ".join(parts)

    def format_record(self, record: Record, text_lines: List[str]) -> str:
        if self.fmt == "json-like":
            return "\n".join(f"{key}: {self._value(value)}" for key, value in record)
        return "\n".join(text_lines)

    @staticmethod
    def _value(value: Any) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, (list, tuple)):
            return ", ".join(str(x) for x in value)
        return str(value)

    def normal_form_output(self, n: int, source: str, nf: NormalForm) -> str:
        rendered = self.render_normal_form(nf)
        record: Record = [
            ("n", n),
            ("input", source),
            ("delta_exp", nf.delta_exp),
            ("tail", self.render_word(nf.tail)),
            ("normal_form", rendered),
        ]
        return self.format_record(record, [rendered])

    def equal_output(
        self,
        n: int,
        word1: str,
        word2: str,
        equal: bool,
        oracle_equal: Optional[bool] = None,
        permutations: Optional[Tuple[List[int], List[int]]] = None,
    ) -> str:
        record: Record = [
            ("n", n),
            ("word1", word1),
            ("word2", word2),
            ("equal", equal),
        ]
        lines = ["equal" if equal else "unequal"]
        if oracle_equal is not None:
            record.append(("oracle_equal", oracle_equal))
            lines.append(f"oracle: {'equal' if oracle_equal else 'unequal'}")
        if permutations is not None:
            record.append(("permutation1", permutations[0]))
            record.append(("permutation2", permutations[1]))
            lines.append(f"permutations: {permutations[0]} {permutations[1]}")
        return self.format_record(record, lines)

    def convert_output(
        self, n: int, source: str, target: str, converted: Sequence[Any]
    ) -> str:
        rendered = self.render_word(converted)
        record: Record = [
            ("n", n),
            ("input", source),
            ("to", target),
            ("output", rendered),
        ]
        return self.format_record(record, [rendered])

    def confluence_output(
        self,
        report: ConfluenceReport,
        fixture_count: int,
        fixture_failures: List[LemmaFixture],
    ) -> str:
        ok = report.ok and report.complete and not fixture_failures
        record: Record = [
            ("n", report.n),
            ("max_wildcard", report.max_wildcard),
            ("complete", report.complete),
            ("instances", report.instance_count),
            ("max_degree", report.max_degree),
            ("ambiguities", report.ambiguity_count),
            ("failures", len(report.failures)),
            ("fixtures", fixture_count),
            ("fixture_failures", len(fixture_failures)),
            ("families_hit", _names(report.families_hit)),
            ("families_unreachable", _names(report.families_unreachable)),
            ("families_extra", _names(report.families_extra)),
        ]
        counts = report.family_counts.items()
        record.extend((f"family.{family_name(k)}", count) for k, count in counts)
        for i, amb in enumerate(report.failures):
            record.append((f"failure.{i}", self._ambiguity(amb)))
        for i, fx in enumerate(fixture_failures):
            record.append((f"fixture_failure.{i}", self._fixture(fx)))
        record.append(("result", "pass" if ok else "fail"))

        lines = [
            f"B_{report.n}, wildcards up to length {report.max_wildcard}"
            + ("" if report.complete else " (PARTIAL: instance budget exceeded)"),
            f"{report.instance_count} rule instances "
            f"(longest lhs {report.max_degree}), "
            f"{report.ambiguity_count} ambiguities, "
            f"{len(report.failures)} not joinable",
            f"{fixture_count} identity fixtures, {len(fixture_failures)} failing",
        ]
        lines.extend(f"  {family_name(k):<8} {count}" for k, count in counts)
        if report.families_unreachable:
            names = ", ".join(family_name(k) for k in report.families_unreachable)
            lines.append(f"unreachable at these bounds: {names}")
        lines.extend(f"NOT JOINABLE {self._ambiguity(amb)}" for amb in report.failures)
        lines.extend(f"FIXTURE FAILED {self._fixture(fx)}" for fx in fixture_failures)
        lines.append("PASS" if ok else "FAIL")
        return self.format_record(record, lines)

    def selftest_output(self, report: SelfTestReport) -> str:
        sweep = report.sweep
        record: Record = [
            ("n", report.n),
            ("trials", report.trials),
            ("seed", report.seed),
            ("equal_pairs", report.equal_pairs),
            ("disagreements", len(report.disagreements)),
            ("policies", sweep.policies if sweep else []),
            ("discrepancies", len(sweep.discrepancies) if sweep else 0),
            ("fixtures", report.fixture_count),
            ("fixture_failures", len(report.fixture_failures)),
        ]
        for i, words in enumerate(report.counterexamples):
            record.append((f"counterexample.{i}", self._words(words)))
        record.append(("result", "pass" if report.ok else "fail"))

        lines = [
            f"B_{report.n}: {report.trials} oracle pairs "
            f"({report.equal_pairs} built equal), "
            f"{len(report.disagreements)} disagreements",
            f"strategy sweep: {len(sweep.discrepancies) if sweep else 0} discrepancies",
            f"fixtures: {report.fixture_count}, {len(report.fixture_failures)} failing",
        ]
        lines.extend(
            f"counterexample: {self._words(words)}" for words in report.counterexamples
        )
        lines.append("PASS" if report.ok else "FAIL")
        return self.format_record(record, lines)

    def _words(self, words: Sequence[Sequence[Any]]) -> str:
        return " | ".join(self.render_word(w) for w in words)

    def _ambiguity(self, amb: Ambiguity) -> str:
        return (
            f"{family_name(amb.family)} w={self.render_word(amb.w)} "
            f"u={self.render_word(amb.u)} v={self.render_word(amb.v)}"
        )

    def _fixture(self, fx: LemmaFixture) -> str:
        return f"{fx.name} {self.render_word(fx.lhs)} = {self.render_word(fx.rhs)}"

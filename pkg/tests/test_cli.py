from unittest.mock import patch

from click.testing import CliRunner

from braid_bkl.cli import EXIT_FAILURE, EXIT_UNEQUAL, EXIT_USAGE, main, parse_n_range
from braid_bkl.core import BandLetter
from braid_bkl.engine import RewriteInvariantError
from braid_bkl.verifier import LemmaFixture

B = BandLetter


class TestNormalizeCommand:
    """Test cases for the normalize command"""

    def setup_method(self):
        """Setup test fixtures"""
        self.runner = CliRunner()

    def test_examples(self):
        """Test normal forms printed for known words"""
        result = self.runner.invoke(main, ["normalize", "--n", "3", "a(3,2) a(2,1)"])
        assert result.exit_code == 0
        assert "D^1 e" in result.output

        result = self.runner.invoke(main, ["normalize", "--n", "3", ""])
        assert result.exit_code == 0
        assert result.output.strip().splitlines()[-1] == "e"

        args = ["normalize", "--n", "3", "a(2,1) a(2,1) a(3,1)"]
        result = self.runner.invoke(main, args)
        assert "D^1 a(3,2)" in result.output

    def test_policy_and_format(self):
        """Test a non-default policy with structured output"""
        result = self.runner.invoke(
            main,
            [
                "normalize",
                "--n",
                "3",
                "--policy",
                "rightmost-longest",
                "--format",
                "json-like",
                "s1^-1",
            ],
        )
        assert result.exit_code == 0
        assert "delta_exp: -1" in result.output
        assert "normal_form: D^-1 a(3,2)" in result.output

    def test_parse_error(self):
        """Test exit status and message for an unknown token"""
        result = self.runner.invoke(main, ["normalize", "--n", "3", "a(2,1) foo"])
        assert result.exit_code == EXIT_USAGE
        assert "position 7" in result.output

        result = self.runner.invoke(main, ["normalize", "--n", "3", "D^99999999999"])
        assert result.exit_code == EXIT_USAGE

    def test_out_of_range(self):
        """Test exit status for a generator outside B_n"""
        result = self.runner.invoke(main, ["normalize", "--n", "3", "a(4,1)"])
        assert result.exit_code == EXIT_USAGE
        result = self.runner.invoke(main, ["normalize", "--n", "1", "e"])
        assert result.exit_code == EXIT_USAGE

    def test_internal_errors(self):
        """Test exit status 3 for broken invariants and unexpected errors"""
        target = "braid_bkl.cli.RewriteEngine.normalize_mixed"
        with patch(target, side_effect=RewriteInvariantError("stuck")):
            result = self.runner.invoke(main, ["normalize", "--n", "3", "a(2,1)"])
        assert result.exit_code == EXIT_FAILURE
        with patch(target, side_effect=RuntimeError("boom")):
            args = ["--debug", "normalize", "--n", "3", "a(2,1)"]
            result = self.runner.invoke(main, args)
        assert result.exit_code == EXIT_FAILURE


class TestEqualCommand:
    """Test cases for the equal command"""

    def setup_method(self):
        """Setup test fixtures"""
        self.runner = CliRunner()

    def test_examples(self):
        """Test equal and unequal pairs"""
        result = self.runner.invoke(main, ["equal", "--n", "4", "s1 s2 s1", "s2 s1 s2"])
        assert result.exit_code == 0
        assert "equal" in result.output

        result = self.runner.invoke(main, ["equal", "--n", "3", "a(2,1)", "a(3,1)"])
        assert result.exit_code == EXIT_UNEQUAL
        assert "unequal" in result.output

        result = self.runner.invoke(main, ["equal", "--n", "3", "D D^-1", ""])
        assert result.exit_code == 0

    def test_crosscheck(self):
        """Test the oracle crosscheck output"""
        args = ["equal", "--n", "3", "--crosscheck", "--format", "json-like"]
        result = self.runner.invoke(main, args + ["s1 s2 s1", "s2 s1 s2"])
        assert result.exit_code == 0
        assert "oracle_equal: true" in result.output
        assert "permutation1: 2, 1, 0" in result.output

    def test_disagreement(self):
        """Test that an oracle disagreement exits with status 3"""
        with patch("braid_bkl.cli.FreeGroupOracle.braid_eq", return_value=False):
            args = ["equal", "--n", "3", "--crosscheck", "s1", "a(2,1)"]
            result = self.runner.invoke(main, args)
        assert result.exit_code == EXIT_FAILURE


class TestConvertCommand:
    """Test cases for the convert command"""

    def setup_method(self):
        """Setup test fixtures"""
        self.runner = CliRunner()

    def test_examples(self):
        """Test letterwise conversion"""
        args = ["convert", "--n", "4", "--to", "artin", "a(3,1)"]
        result = self.runner.invoke(main, args)
        assert result.exit_code == 0
        assert "s2 s1 s2^-1" in result.output

        result = self.runner.invoke(main, ["convert", "--n", "4", "--to", "band", "s2"])
        assert "a(3,2)" in result.output

        args = ["convert", "--n", "3", "--to", "band", "s1^-1"]
        result = self.runner.invoke(main, args)
        assert "D^-1 a(3,2)" in result.output

    def test_normalize_first(self):
        """Test --normalize"""
        args = ["convert", "--n", "3", "--to", "artin", "--normalize", "a(3,2) a(2,1)"]
        result = self.runner.invoke(main, args)
        assert result.exit_code == 0
        assert "s2 s1" in result.output

    def test_missing_target(self):
        """Test that --to is required"""
        result = self.runner.invoke(main, ["convert", "--n", "3", "s1"])
        assert result.exit_code == EXIT_USAGE


class TestVerifyCommand:
    """Test cases for the verify command"""

    def setup_method(self):
        """Setup test fixtures"""
        self.runner = CliRunner()

    def test_examples(self):
        """Test bounded confluence runs that pass"""
        for n, max_wildcard in (("3", "1"), ("2", "2"), ("4", "0")):
            args = ["verify", "--n", n, "--max-wildcard", max_wildcard]
            result = self.runner.invoke(main, args)
            assert result.exit_code == 0, result.output
            assert "PASS" in result.output

    def test_budget_exceeded(self):
        """Test the partial-coverage marker"""
        result = self.runner.invoke(main, ["verify", "--n", "3", "--budget", "5"])
        assert result.exit_code == EXIT_FAILURE
        assert "PARTIAL" in result.output

    def test_fixture_failure(self):
        """Test that a failing fixture fails the run"""
        bad = LemmaFixture("triple", (B(3, 2), B(2, 1)), (B(2, 1),))
        target = "braid_bkl.cli.ConfluenceVerifier.check_fixtures"
        with patch(target, return_value=[bad]):
            args = ["verify", "--n", "3", "--format", "json-like"]
            result = self.runner.invoke(main, args)
        assert result.exit_code == EXIT_FAILURE
        assert "result: fail" in result.output


class TestSelftestCommand:
    """Test cases for the selftest command"""

    def setup_method(self):
        """Setup test fixtures"""
        self.runner = CliRunner()

    def test_small_runs(self):
        """Test passing self-tests"""
        args = ["selftest", "--n", "2", "--trials", "10", "--seed", "0"]
        result = self.runner.invoke(main, args)
        assert result.exit_code == 0
        assert "PASS" in result.output

        args = ["selftest", "--n", "3", "--trials", "20", "--seed", "7"]
        result = self.runner.invoke(main, args + ["--max-length", "8"])
        assert result.exit_code == 0

    def test_bad_range(self):
        """Test an unparsable strand range"""
        result = self.runner.invoke(main, ["selftest", "--n", "five"])
        assert result.exit_code == EXIT_USAGE

    def test_parse_n_range(self):
        """Test strand ranges"""
        assert parse_n_range("3") == [3]
        assert parse_n_range("2-5") == [2, 3, 4, 5]

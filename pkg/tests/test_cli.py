"""Tests for CLI commands."""

import json

import pytest
from click.testing import CliRunner

from apolar.cli.commands import main
from apolar.core.apolarity import AnnReport


@pytest.fixture
def runner():
    """Create CLI runner."""
    return CliRunner()


def _json_lines(output):
    """JSON objects printed one per line, ignoring anything else."""
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


def _json(output):
    return _json_lines(output)[-1]


class TestCLIBasic:
    """Basic CLI tests."""

    def test_help(self, runner):
        """Test --help flag."""
        result = runner.invoke(main, ["--help"])

        assert result.exit_code == 0
        assert "apolar" in result.output
        for command in ("ann", "classify", "verify", "hilbert", "slp", "corpus"):
            assert command in result.output

    def test_version(self, runner):
        """Test --version flag."""
        result = runner.invoke(main, ["--version"])

        assert result.exit_code == 0
        from apolar import __version__

        assert __version__ in result.output


class TestCLIAnn:
    """Tests for 'apolar ann' command."""

    def test_linear_json(self, runner):
        """Test the oracle on X1 - X2."""
        result = runner.invoke(main, ["ann", "X1 - X2", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["mu"] == 2
        assert data["is_ci"] is True
        assert data["minimal_generators"] == ["x1 + x2", "x1^2"]
        assert data["hilbert"] == [1, 1]

    def test_not_ci(self, runner):
        """Test a quadric that is not a complete intersection."""
        result = runner.invoke(main, ["ann", "X1*X2 - X3*X4", "--json", "--check-truncation"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["mu"] > 4
        assert data["is_ci"] is False
        assert data["hilbert"] == [1, 4, 1]
        assert data["truncation_stable"] is True

    def test_table_output(self, runner):
        """Test the human-readable report."""
        result = runner.invoke(main, ["ann", "X1 - X2"])

        assert result.exit_code == 0
        assert "x1 + x2" in result.output
        assert "complete intersection" in result.output

    def test_zero_polynomial(self, runner):
        """Test that F = 0 exits with status 2."""
        result = runner.invoke(main, ["ann", "0"])

        assert result.exit_code == 2

    def test_syntax_error(self, runner):
        """Test that parse errors exit with status 2."""
        result = runner.invoke(main, ["ann", "X1 +"])

        assert result.exit_code == 2

    def test_bad_field(self, runner):
        """Test that a composite modulus is rejected."""
        result = runner.invoke(main, ["ann", "X1", "--field", "p:8"])

        assert result.exit_code == 2

    def test_prime_field(self, runner):
        """Test the oracle over a prime field."""
        result = runner.invoke(main, ["ann", "X1 - X2", "--field", "p:3", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["field"] == "p:3"
        assert data["minimal_generators"] == ["x1 + x2", "x1^2"]


class TestCLIClassify:
    """Tests for 'apolar classify' command."""

    def test_case_three(self, runner):
        """Test the three-variable fixture."""
        result = runner.invoke(main, ["classify", "X1^2*X2^2*X3^3 - X1*X2*X3^5", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["verdict"] == "CI_case_b"
        assert data["case"] == "3"
        assert data["v"] == 2
        assert data["generators"] == ["x1^3", "x2^3", "x1^2*x2^2 + x1*x2*x3^2 + x3^4"]
        assert data["fallback"] is None

    def test_not_ci(self, runner):
        """Test that no generators are printed for a non-CI verdict."""
        result = runner.invoke(main, ["classify", "X1*X2 - X3*X4", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["verdict"] == "NotCI_d2_big"
        assert data["generators"] is None

    def test_oracle_fallback(self, runner):
        """Test the automatic fallback outside the theorem."""
        result = runner.invoke(main, ["classify", "X1^2 - X1", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["verdict"] == "OutsideTheorem_d2_zero"
        assert data["fallback"]["mu"] == 1
        assert data["fallback"]["is_ci"] is True

    def test_table_output(self, runner):
        """Test the human-readable classification."""
        result = runner.invoke(main, ["classify", "X1 - X2"])

        assert result.exit_code == 0
        assert "CI_case_a" in result.output
        assert "x1*x2" in result.output

    def test_not_binomial(self, runner):
        """Test that three terms exit with status 3."""
        result = runner.invoke(main, ["classify", "X1 + X2 + X3"])

        assert result.exit_code == 3

    def test_zero(self, runner):
        """Test that a cancelling input exits with status 2."""
        result = runner.invoke(main, ["classify", "X1*X2 - X1*X2"])

        assert result.exit_code == 2


class TestCLIVerify:
    """Tests for 'apolar verify' command."""

    def test_linear_with_slp(self, runner):
        """Test the end-to-end check with a Lefschetz search."""
        result = runner.invoke(main, ["verify", "X1 - X2", "--slp", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["agreement"] is True
        assert data["ideal_equality"] == "Equal"
        assert data["slp"]["found"] is True

    def test_not_ci(self, runner):
        """Test agreement on a non-CI binomial."""
        result = runner.invoke(main, ["verify", "X1*X2 - X3*X4", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["agreement"] is True
        assert data["generators"] == []

    def test_table_output(self, runner):
        """Test the human-readable record."""
        result = runner.invoke(main, ["verify", "X2^2*X1 - X2^3"])

        assert result.exit_code == 0
        assert "Equal" in result.output

    def test_disagreement_exit_code(self, runner, monkeypatch):
        """Test that a disagreement exits with status 4."""

        def wrong_oracle(F, check_truncation=False):
            return AnnReport(n_vars=F.n_vars, mu=F.n_vars + 1, minimal_generators=[], socle_degree=F.degree, colength=0)

        monkeypatch.setattr("apolar.corpus.verify.analyze", wrong_oracle)
        result = runner.invoke(main, ["verify", "X1 - X2", "--json"])

        assert result.exit_code == 4
        assert _json(result.output)["agreement"] is False

    def test_negative_trials(self, runner):
        """Test that a negative SLP budget is rejected as invalid input."""
        for args in (
            ["verify", "X1^2*X2 - X2^3", "--trials", "-1"],
            ["verify", "X1 - X2", "--slp", "--trials", "-1"],
        ):
            result = runner.invoke(main, args)

            assert result.exit_code == 2
            assert isinstance(result.exception, SystemExit)


class TestCLIHilbert:
    """Tests for 'apolar hilbert' command."""

    def test_values(self, runner):
        """Test a monomial Hilbert function."""
        result = runner.invoke(main, ["hilbert", "X1^2*X2^2", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["hilbert"] == [1, 2, 3, 2, 1]
        assert data["symmetric"] is True

    def test_not_homogeneous(self, runner):
        """Test that non-homogeneous input exits with status 2."""
        result = runner.invoke(main, ["hilbert", "X1^2 - X2"])

        assert result.exit_code == 2


class TestCLISlp:
    """Tests for 'apolar slp' command."""

    def test_rationals(self, runner):
        """Test the deterministic first candidate."""
        result = runner.invoke(main, ["slp", "X1*X2", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["found"] is True
        assert data["witness"] == "x1 + x2"
        assert data["hilbert"] == [1, 2, 1]

    def test_prime_field_refused(self, runner):
        """Test the characteristic gate."""
        result = runner.invoke(main, ["slp", "X1*X2", "--field", "p:2"])

        assert result.exit_code == 2

    def test_prime_field_override(self, runner):
        """Test the exhaustive search over GF(2)."""
        result = runner.invoke(main, ["slp", "X1*X2", "--field", "p:2", "--slp-override", "--trials", "10", "--json"])

        assert result.exit_code == 0
        data = _json(result.output)
        assert data["found"] is False
        assert data["exhaustive"] is True
        assert data["trials_used"] == 3

    def test_negative_trials(self, runner):
        """Test the candidate budget bound."""
        result = runner.invoke(main, ["slp", "X1*X2", "--trials", "-1"])

        assert result.exit_code == 2


class TestCLICorpus:
    """Tests for 'apolar corpus' command."""

    def test_out_file(self, runner, tmp_path):
        """Test writing records to a file."""
        out = tmp_path / "corpus.jsonl"
        summary = tmp_path / "summary.json"
        result = runner.invoke(
            main, ["corpus", "--count", "5", "--seed", "1", "--out", str(out), "--summary", str(summary)]
        )

        assert result.exit_code == 0
        assert len(out.read_text().splitlines()) == 5
        assert json.loads(summary.read_text())["total"] == 5

    def test_stdout(self, runner):
        """Test streaming records followed by the summary."""
        result = runner.invoke(main, ["corpus", "--count", "3", "--seed", "2"])

        assert result.exit_code == 0
        objects = _json_lines(result.output)
        assert len(objects) == 4
        assert objects[-1]["summary"]["total"] == 3
        assert objects[-1]["summary"]["ok"] is True

    def test_config_file(self, runner, tmp_path):
        """Test loading the corpus spec from YAML with a CLI override."""
        config = tmp_path / "corpus.yaml"
        config.write_text("count: 10\nseed: 4\nn_vars_range: [2, 2]\n")
        result = runner.invoke(main, ["corpus", "--config", str(config), "--count", "2"])

        assert result.exit_code == 0
        assert _json(result.output)["summary"]["total"] == 2

    def test_missing_config(self, runner, tmp_path):
        """Test that a missing config file exits with status 5."""
        result = runner.invoke(main, ["corpus", "--config", str(tmp_path / "nope.yaml")])

        assert result.exit_code == 5

    def test_invalid_option(self, runner):
        """Test that schema violations exit with status 2."""
        result = runner.invoke(main, ["corpus", "--workers", "0"])

        assert result.exit_code == 2

    def test_negative_trials(self, runner):
        """Test that corpus SLP overrides are validated."""
        result = runner.invoke(main, ["corpus", "--count", "1", "--slp", "--trials", "-1"])

        assert result.exit_code == 2

    def test_deterministic(self, runner, tmp_path):
        """Test byte-identical records for a fixed seed."""
        outputs = []
        for name in ("a.jsonl", "b.jsonl"):
            out = tmp_path / name
            runner.invoke(main, ["corpus", "--count", "4", "--seed", "9", "--out", str(out)])
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

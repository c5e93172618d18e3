"""End-to-end tests of the goldman command line through main.run()."""

import io
import json

import pytest
import yaml

import main
from core.bracket_service import BracketService
from core.errors import UnstableEnumerationError
from core.results import CheckReport


@pytest.fixture
def config_file(tmp_path, sample_config):
    """Small-sample config written to disk for --config."""
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(sample_config), encoding="utf-8")
    return path


def invoke(*argv):
    """Run the CLI and return (exit code, stdout text, stderr text)."""
    stdout, stderr = io.StringIO(), io.StringIO()
    code = main.run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class TestBracketCommands:
    """Tests for bracket, intersect, poisson and uea subcommands."""

    def test_goldman_of_generators(self):
        """bracket goldman --x a --y b gives a chain with one term."""
        code, out, _ = invoke(
            "bracket", "goldman", "--surface", "torus1:u=4", "--x", "a", "--y", "b"
        )
        assert code == main.EXIT_OK
        data = json.loads(out)
        assert data == {"kind": "hat", "terms": [{"class": "a b", "coeff": "1/1"}]}

    def test_goldman_of_class_with_itself(self):
        code, out, _ = invoke("bracket", "goldman", "--x", "a", "--y", "a")
        assert code == main.EXIT_OK
        assert json.loads(out)["terms"] == []

    def test_twg_flavor(self):
        code, out, _ = invoke("bracket", "twg", "--flavor", "uu", "--x", "a", "--y", "b")
        assert code == main.EXIT_OK
        data = json.loads(out)
        assert data["kind"] == "tilde"
        assert [term["coeff"] for term in data["terms"]] == ["1/1", "1/1"]

    def test_intersect(self):
        code, out, _ = invoke("intersect", "--x", "a b", "--y", "a B")
        assert code == main.EXIT_OK
        data = json.loads(out)
        assert data["geometric_number"] == 2
        assert data["algebraic_number"] == -2

    def test_poisson_deformed(self):
        code, out, _ = invoke("poisson", "--k", "1", "--x", "T(a)", "--y", "T(b)")
        assert code == main.EXIT_OK
        monomials = {term["monomial"]: term["coeff"] for term in json.loads(out)["terms"]}
        assert monomials == {"T(a b)": "1/1", "T(a B)": "-1/1", "U(a)*U(b)": "-1/1"}

    def test_uea_normal_form(self):
        code, out, _ = invoke("uea", "normal-form", "--word", "T(a)*U(b)")
        assert code == main.EXIT_OK
        assert json.loads(out)["terms"] == [{"monomial": "T(a)*U(b)", "coeff": "1/1"}]

    def test_annihilator_scan(self):
        code, out, _ = invoke("annihilator-scan", "--beta", "a b A B", "--m-max", "2")
        assert code == main.EXIT_OK
        data = json.loads(out)
        assert data["verdict"] == "annihilates sample"
        assert data["evidence"] == "consistent with sampled evidence"


class TestSurfaceCommands:
    def test_info(self):
        code, out, _ = invoke("surface", "info", "--surface", "pants")
        assert code == main.EXIT_OK
        data = json.loads(out)
        assert data["spec"] == "pants:u=4,s=6"
        assert data["excluded_from_twg_k"] is True

    def test_certify(self):
        code, out, _ = invoke("surface", "certify", "--max-word-length", "4")
        assert code == main.EXIT_OK
        assert json.loads(out)["passed"] is True


class TestOutputFormats:
    def test_byte_identical_json(self):
        argv = ("intersect", "--x", "a a b", "--y", "a B")
        assert invoke(*argv)[1] == invoke(*argv)[1]

    def test_csv(self):
        code, out, _ = invoke("bracket", "twg", "--x", "a", "--y", "b", "--format", "csv")
        assert code == main.EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "kind,class,coeff"
        assert len(lines) == 3

    def test_jsonl_verify(self, config_file):
        code, out, _ = invoke(
            "verify", "key-lemma", "--config", str(config_file), "--format", "jsonl"
        )
        assert code == main.EXIT_OK
        (line,) = out.splitlines()
        assert json.loads(line)["claim"] == "key-lemma"

    def test_output_file(self, tmp_path):
        target = tmp_path / "out" / "bracket.json"
        target.parent.mkdir()
        code, out, err = invoke("bracket", "goldman", "--x", "a", "--y", "b", "-o", str(target))
        assert code == main.EXIT_OK
        assert out == ""
        assert "Results saved to" in err
        assert json.loads(target.read_text(encoding="utf-8"))["kind"] == "hat"


class TestVerifyCommand:
    def test_single_claim(self, config_file):
        code, out, _ = invoke("verify", "reversibility", "--config", str(config_file))
        assert code == main.EXIT_OK
        data = json.loads(out)
        assert data["passed"] is True
        assert data["surface"] == "torus1:u=4"
        assert [r["claim"] for r in data["reports"]] == ["reversibility"]

    def test_failed_claim_exit_code(self, config_file, monkeypatch):
        def failing(self, selection="all", seed=None, m_max=None):
            return [CheckReport.from_failures("key-lemma", ["(a, b): mismatch"])]

        monkeypatch.setattr(BracketService, "verify", failing)
        code, out, _ = invoke("verify", "key-lemma", "--config", str(config_file))
        assert code == main.EXIT_FAILED
        assert json.loads(out)["passed"] is False

    def test_unknown_claim(self, config_file):
        code, _, err = invoke("verify", "no-such-claim", "--config", str(config_file))
        assert code == main.EXIT_DOMAIN
        assert "no-such-claim" in err


class TestErrors:
    """Exit codes and one-line diagnostics."""

    def test_malformed_word_named(self):
        code, out, err = invoke("bracket", "goldman", "--x", "a^x", "--y", "b")
        assert code == main.EXIT_DOMAIN
        assert out == ""
        assert "a^x" in err

    def test_letter_outside_rank(self):
        code, _, err = invoke("intersect", "--x", "c", "--y", "a")
        assert code == main.EXIT_DOMAIN
        assert "'c'" in err

    def test_unknown_surface(self):
        code, _, err = invoke("surface", "info", "--surface", "genus2")
        assert code == main.EXIT_DOMAIN
        assert "genus2" in err

    def test_parameter_out_of_range(self):
        code, _, err = invoke("surface", "info", "--surface", "torus1:u=1.5")
        assert code == main.EXIT_DOMAIN
        assert "u=1.5" in err

    def test_missing_argument(self):
        code, _, err = invoke("bracket", "goldman", "--x", "a")
        assert code == main.EXIT_DOMAIN
        assert "--y" in err

    def test_bad_rational(self):
        code, _, err = invoke("poisson", "--k", "half", "--x", "T(a)", "--y", "T(b)")
        assert code == main.EXIT_DOMAIN
        assert "half" in err

    def test_unstable_enumeration(self, monkeypatch):
        def unstable(self, alpha, beta):
            raise UnstableEnumerationError(self.engine.depth, f"({alpha}, {beta})")

        monkeypatch.setattr(BracketService, "intersect", unstable)
        code, _, err = invoke("intersect", "--x", "a", "--y", "b")
        assert code == main.EXIT_UNSTABLE
        assert err.startswith("Error:")

    def test_malformed_environment(self, monkeypatch):
        monkeypatch.setenv("GOLDMAN_DEPTH", "deep")
        code, _, err = invoke("intersect", "--x", "a", "--y", "b")
        assert code == main.EXIT_DOMAIN
        assert "GOLDMAN_DEPTH" in err

    def test_flag_beats_environment(self, monkeypatch):
        monkeypatch.setenv("GOLDMAN_DEPTH", "5")
        code, out, _ = invoke("intersect", "--x", "a", "--y", "b", "--depth", "7")
        assert code == main.EXIT_OK
        assert json.loads(out)["depth"] == 7

"""Acceptance run of every claim on torus1:u=4 at the sample sizes in config.yaml.

Run with: pytest tests/acceptance -m acceptance
"""

import io
import json
import math
from pathlib import Path

import pytest

import main
from config import get_verify_config, load_config
from core.results import Verdict
from core.surface_model import one_holed_torus
from core.verify import VerificationRunner, VerifyContext

pytestmark = [pytest.mark.acceptance, pytest.mark.slow]

CONFIG_PATH = Path(__file__).resolve().parents[2] / "config.yaml"


@pytest.fixture(scope="module")
def verify_config():
    return get_verify_config(load_config(CONFIG_PATH))


@pytest.fixture(scope="module")
def reports(verify_config):
    """All claims, run once for the module."""
    context = VerifyContext.from_config(one_holed_torus(4.0), verify_config)
    runner = VerificationRunner(context, max_workers=verify_config.get("max_workers", 4))
    return {report.claim: report for report in runner.run("all")}


def assert_ok(report):
    assert report.passed, "\n".join(report.failures)


class TestGeometry:
    def test_cosh_product(self, reports, verify_config):
        report = reports["cosh-product"]
        assert_ok(report)
        assert report.sample_size == verify_config["samples"]["cosh_pairs"]
        assert report.worst_residual < 1e-8
        assert dict(report.details)["generator_angle"] == pytest.approx(math.pi / 2, abs=1e-9)

    def test_length_angle(self, reports):
        report = reports["length-angle"]
        assert_ok(report)
        assert report.sample_size > 0
        assert report.worst_residual < 1e-8

    def test_family_invariance(self, reports):
        report = reports["family-invariance"]
        assert_ok(report)
        assert dict(report.details)["members"] == [
            "torus1:u=3.5", "torus1:u=4", "torus1:u=5"
        ]


class TestBrackets:
    def test_goldman_lie_axioms(self, reports):
        report = reports["goldman-lie-axioms"]
        assert_ok(report)
        assert dict(report.details)["exhaustive_triples"] > 0

    def test_grading(self, reports):
        assert_ok(reports["z2-grading"])

    def test_twg_consistency(self, reports):
        assert_ok(reports["twg-consistency"])


class TestClassifications:
    def test_annihilator(self, reports):
        report = reports["annihilator"]
        assert_ok(report)
        details = dict(report.details)
        assert details["boundary"] == "annihilates sample"
        assert details["generator"] == "essential witness at m0 = 1"

    def test_pants_exclusion(self, reports):
        report = reports["pants-exclusion"]
        assert report.verdict is Verdict.PASSED
        details = dict(report.details)
        assert details["witness"] == "a B"
        assert set(details["intersections"].values()) == {0}

    def test_reversibility(self, reports):
        report = reports["reversibility"]
        assert report.verdict is Verdict.PASSED
        assert dict(report.details)["max_length"] == 8

    def test_key_lemma(self, reports):
        assert reports["key-lemma"].verdict is Verdict.PASSED

    def test_power_collisions(self, reports):
        report = reports["power-collisions"]
        assert_ok(report)
        assert dict(report.details)["m_max"] == 8
        assert report.sample_size > 0


class TestAlgebras:
    def test_poisson_axioms(self, reports):
        report = reports["poisson-axioms"]
        assert_ok(report)
        assert dict(report.details)["levels"] == ["0", "1", "1/2"]

    def test_uea_confluence(self, reports):
        assert_ok(reports["uea-confluence"])

    def test_every_claim_reported(self, reports):
        assert len(reports) == 13
        assert all(report.passed for report in reports.values())


class TestCliVerifyAll:
    def test_byte_identical_runs(self):
        outputs = []
        for _ in range(2):
            stdout = io.StringIO()
            code = main.run(
                ["verify", "all", "--config", str(CONFIG_PATH)], stdout=stdout,
                stderr=io.StringIO(),
            )
            assert code == main.EXIT_OK
            outputs.append(stdout.getvalue())
        assert outputs[0] == outputs[1]
        assert json.loads(outputs[0])["passed"] is True

"""Geometric claims at the sample sizes and tolerances of the shipped config.yaml."""

from pathlib import Path

import pytest

from config import ENV_DEPTH, ENV_TOLERANCE, apply_env_overrides, load_config
from core.bracket_service import BracketServiceFactory
from core.results import Verdict

pytestmark = pytest.mark.slow

CONFIG_PATH = Path(__file__).resolve().parents[2] / "config.yaml"


@pytest.fixture(scope="module")
def service():
    return BracketServiceFactory.create("torus1:u=4", load_config(CONFIG_PATH))


@pytest.fixture(scope="module")
def reports(service):
    claims = ["annihilator", "cosh-product", "length-angle", "pants-exclusion", "power-collisions"]
    return {report.claim: report for report in service.verify(claims)}


class TestShippedConfig:
    def test_context_uses_config_tolerances(self, service):
        config = load_config(CONFIG_PATH)
        engine = service.context().engine()
        assert engine.tolerance == config["numerics"]["tolerance"]
        assert engine.position_tolerance == config["enumeration"]["position_tolerance"]

    def test_env_tolerance_reaches_verification(self):
        config = apply_env_overrides(load_config(CONFIG_PATH), {ENV_TOLERANCE: "1e-8"})
        service = BracketServiceFactory.create("torus1:u=4", config)
        assert service.context().engine().tolerance == 1e-8

    def test_env_depth_reaches_verification(self):
        config = apply_env_overrides(load_config(CONFIG_PATH), {ENV_DEPTH: "7"})
        service = BracketServiceFactory.create("torus1:u=4", config)
        assert service.context().engine().depth == 7

    def test_cosh_product(self, reports):
        report = reports["cosh-product"]
        assert report.passed, "\n".join(report.failures)
        assert report.sample_size == 100

    def test_length_angle(self, reports):
        report = reports["length-angle"]
        assert report.passed, "\n".join(report.failures)

    def test_pants_exclusion(self, reports):
        report = reports["pants-exclusion"]
        assert report.verdict is Verdict.PASSED, "\n".join(report.failures)
        assert dict(report.details)["witness"] == "a B"

    def test_power_collisions(self, reports):
        report = reports["power-collisions"]
        assert report.passed, "\n".join(report.failures)
        assert dict(report.details)["m_max"] == 8

    def test_annihilator(self, reports):
        assert reports["annihilator"].passed

"""Shared fixtures for bracket toolkit tests."""

import logging
import shutil
import tempfile
from pathlib import Path

import pytest

from core.cyclic_words import parse_class
from core.intersections import IntersectionEngine
from core.surface_model import one_holed_torus, pants
from goldman_logging import GoldmanLogger


@pytest.fixture
def temp_output_dir():
    """Create a temporary output directory."""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)

    # Run loggers are not singletons; release the shared underlying logger
    logger = logging.getLogger("goldman.run")
    for handler in logger.handlers[:]:
        handler.close()
        logger.removeHandler(handler)

    shutil.rmtree(temp_dir, ignore_errors=True)


@pytest.fixture(scope="session")
def torus():
    """one_holed_torus(4): A = diag(2+sqrt3, 2-sqrt3), B = [[2,1],[3,2]]."""
    return one_holed_torus(4.0)


@pytest.fixture(scope="session")
def pants_model():
    """Default pair of pants (u = 4, s = 6)."""
    return pants()


@pytest.fixture(scope="session")
def torus_engine(torus):
    """Shared engine; enumeration caches are safe to reuse across tests."""
    return IntersectionEngine(torus)


@pytest.fixture(scope="session")
def pants_engine(pants_model):
    return IntersectionEngine(pants_model)


@pytest.fixture
def w():
    """Parse a rank-2 class: w("a b A B")."""
    return parse_class


@pytest.fixture
def sample_config():
    """Sample config matching the structure in config.yaml, sized for tests."""
    return {
        "numerics": {"tolerance": 1e-9},
        "enumeration": {"depth": 8, "position_tolerance": 1e-7, "strict_positions": False},
        "certificate": {"max_word_length": 6, "min_translation_length": 0.05},
        "surfaces": {"default": "torus1:u=4"},
        "verify": {
            "seed": 7,
            "m_max": 4,
            "annihilator_m_max": 3,
            "family_grid": [3.5, 4.0, 5.0],
            "max_workers": 2,
            "samples": {
                "cosh_pairs": 10,
                "length_angle_pairs": 4,
                "family_pairs": 3,
                "random_triples": 3,
                "poisson_triples": 2,
                "uea_trials": 3,
                "associativity_triples": 2,
                "collision_pairs": 2,
            },
        },
        "output": {"float_digits": 12, "format": "json"},
        "logging": {"level": "WARNING", "log_file": None},
    }


@pytest.fixture
def goldman_logger_instance(tmp_path):
    """Get a run logger instance with temporary file handler."""
    logger = GoldmanLogger()
    log_path = tmp_path / "test_run.log"
    logger.setup_file_handler(log_path)
    yield logger
    logger.close()


@pytest.fixture
def null_logger():
    """Get a NullLogger for tests that don't need logging."""
    from core.protocols import NullLogger

    return NullLogger()

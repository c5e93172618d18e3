"""Configuration loader for the bracket toolkit.

This module handles loading and parsing of config.yaml settings and the
GOLDMAN_* environment overrides.
"""

import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import yaml

from core.errors import ConfigError

ENV_DEPTH = "GOLDMAN_DEPTH"
ENV_TOLERANCE = "GOLDMAN_TOL"


def load_config(config_path: str | Path | None = None) -> dict[str, Any]:
    """
    Load configuration from YAML file.

    Args:
        config_path: Path to config file. Defaults to config.yaml in project root.

    Returns:
        Configuration dictionary ({} when the default file is missing)

    Raises:
        ConfigError: explicit path missing, or the file is not a YAML mapping
    """
    explicit = config_path is not None
    if config_path is None:
        config_path = Path(__file__).parent.parent / "config.yaml"
    else:
        config_path = Path(config_path)

    if not config_path.exists():
        if explicit:
            raise ConfigError(f"config file not found: {config_path}")
        return {}
    try:
        with open(config_path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"{config_path}: invalid YAML ({exc.__class__.__name__})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{config_path}: top level must be a mapping")
    return data


def apply_env_overrides(
    config: dict[str, Any], environ: Mapping[str, str] | None = None
) -> dict[str, Any]:
    """
    Return a copy of config with GOLDMAN_DEPTH / GOLDMAN_TOL applied.

    Raises:
        ConfigError: a variable is set but malformed
    """
    env = os.environ if environ is None else environ
    merged = {
        key: dict(value) if isinstance(value, dict) else value for key, value in config.items()
    }
    if env.get(ENV_DEPTH):
        try:
            depth = int(env[ENV_DEPTH])
        except ValueError:
            raise ConfigError(f"{ENV_DEPTH}={env[ENV_DEPTH]!r} is not an integer") from None
        merged.setdefault("enumeration", {})["depth"] = depth
    if env.get(ENV_TOLERANCE):
        try:
            tol = float(env[ENV_TOLERANCE])
        except ValueError:
            raise ConfigError(f"{ENV_TOLERANCE}={env[ENV_TOLERANCE]!r} is not a number") from None
        merged.setdefault("numerics", {})["tolerance"] = tol
    return merged


def get_numeric_config(config: dict[str, Any]) -> dict[str, float]:
    """
    Numeric tolerances.

    Returns:
        Dict with keys:
        - tolerance: hyperbolicity, crossing and shared-endpoint tolerance
    """
    numerics = config.get("numerics", {})
    return {
        "tolerance": float(numerics.get("tolerance", 1e-9)),
    }


def get_enumeration_config(config: dict[str, Any]) -> dict[str, Any]:
    """
    Intersection enumeration settings.

    Returns:
        Dict with keys:
        - depth: conjugator search depth L
        - position_tolerance: gap below which two positions coincide
        - strict_positions: coincident positions raise instead of warn
    """
    enumeration = config.get("enumeration", {})
    depth = int(enumeration.get("depth", 8))
    if depth < 1:
        raise ConfigError(f"enumeration.depth must be positive, got {depth}")
    return {
        "depth": depth,
        "position_tolerance": float(enumeration.get("position_tolerance", 1e-7)),
        "strict_positions": bool(enumeration.get("strict_positions", False)),
    }


def get_certificate_config(config: dict[str, Any]) -> dict[str, Any]:
    certificate = config.get("certificate", {})
    return {
        "max_word_length": int(certificate.get("max_word_length", 6)),
        "min_translation_length": float(certificate.get("min_translation_length", 0.05)),
    }


def get_surface_config(config: dict[str, Any]) -> dict[str, Any]:
    """
    Surface defaults.

    Returns:
        Dict with keys:
        - default: surface spec used when --surface is omitted
        - families: per-family default parameters
    """
    surfaces = config.get("surfaces", {})
    families = {
        "torus1": {"u": 4.0},
        "pants": {"u": 4.0, "s": 6.0},
    }
    for name, params in (surfaces.get("families") or {}).items():
        families.setdefault(name, {}).update(params or {})
    return {
        "default": surfaces.get("default", "torus1:u=4"),
        "families": families,
    }


def get_verify_config(config: dict[str, Any]) -> dict[str, Any]:
    """Verification parameters: seed, m_max, sample sizes, family grid, workers."""
    verify = config.get("verify", {})
    return {
        "seed": int(verify.get("seed", 20240501)),
        "m_max": int(verify.get("m_max", 8)),
        "annihilator_m_max": int(verify.get("annihilator_m_max", 5)),
        "family_grid": [float(u) for u in verify.get("family_grid", [3.5, 4.0, 5.0])],
        "residual_tolerance": float(verify.get("residual_tolerance", 1e-8)),
        "reversibility_length": int(verify.get("reversibility_length", 8)),
        "conjugator_length": int(verify.get("conjugator_length", 5)),
        "samples": dict(verify.get("samples") or {}),
        "max_workers": int(verify.get("max_workers", 4)),
    }


def get_output_config(config: dict[str, Any]) -> dict[str, Any]:
    output = config.get("output", {})
    fmt = output.get("format", "json")
    if fmt not in ("json", "jsonl", "csv"):
        raise ConfigError(f"output.format must be json, jsonl or csv, got {fmt!r}")
    return {
        "float_digits": int(output.get("float_digits", 12)),
        "format": fmt,
    }


def get_logging_config(config: dict[str, Any]) -> dict[str, Any]:
    logging_config = config.get("logging", {})
    return {
        "level": str(logging_config.get("level", "WARNING")).upper(),
        "log_file": logging_config.get("log_file"),
    }

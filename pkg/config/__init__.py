"""Configuration loading and management."""

from .loader import (
    ENV_DEPTH,
    ENV_TOLERANCE,
    apply_env_overrides,
    get_certificate_config,
    get_enumeration_config,
    get_logging_config,
    get_numeric_config,
    get_output_config,
    get_surface_config,
    get_verify_config,
    load_config,
)

__all__ = [
    "ENV_DEPTH",
    "ENV_TOLERANCE",
    "apply_env_overrides",
    "get_certificate_config",
    "get_enumeration_config",
    "get_logging_config",
    "get_numeric_config",
    "get_output_config",
    "get_surface_config",
    "get_verify_config",
    "load_config",
]

"""Registry of surface families and the --surface spec parser.

A surface spec is either ``family[:key=value,...]`` (``torus1:u=4``,
``pants:u=4,s=6``) or a path to a YAML surface file.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from core.errors import SurfaceConstructionError
from core.surface_model import SurfaceModel, one_holed_torus, pants

logger = logging.getLogger(__name__)


@dataclass
class SurfaceFamily:
    """
    One-parameter family with metadata for ``surface info`` listings.

    Attributes:
        name: Family identifier used in surface specs
        builder: Callable taking keyword parameters and returning a model
        defaults: Parameter values used when a spec omits them
        description: Human-readable description
    """

    name: str
    builder: Callable[..., SurfaceModel]
    defaults: dict[str, float] = field(default_factory=dict)
    description: str = ""

    def __repr__(self) -> str:
        params = ",".join(f"{key}={value:g}" for key, value in self.defaults.items())
        return f"<SURFACE:{self.name}:{params}>"


def parse_surface_spec(text: str) -> tuple[str, dict[str, float]]:
    """
    Split ``name:key=value,...`` into the family name and float parameters.

    Raises:
        SurfaceConstructionError: empty name, malformed pair or non-numeric value
    """
    name, _, arg_text = text.strip().partition(":")
    if not name:
        raise SurfaceConstructionError(f"empty surface name in {text!r}")
    params: dict[str, float] = {}
    for pair in filter(None, (item.strip() for item in arg_text.split(","))):
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise SurfaceConstructionError(f"malformed parameter {pair!r} in {text!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise SurfaceConstructionError(
                f"parameter {key.strip()} in {text!r} is not a number: {value!r}"
            ) from None
    return name, params


class SurfaceRegistry:
    """
    Registry of named surface families.

    Provides:
    - register(family): add a family
    - build(spec): resolve a spec string or YAML path to a certified model
    - build_family(name, params): one family member
    - list_families(): registered families
    - summary(): human-readable listing

    Example:
        >>> registry = create_default_registry()
        >>> model = registry.build("torus1:u=4")
    """

    def __init__(self, certificate: dict[str, Any] | None = None):
        self.families: dict[str, SurfaceFamily] = {}
        self.certificate = dict(certificate or {})

    def register(self, family: SurfaceFamily) -> None:
        self.families[family.name] = family

    def list_families(self) -> list[SurfaceFamily]:
        return [self.families[name] for name in sorted(self.families)]

    def get(self, name: str) -> SurfaceFamily:
        if name not in self.families:
            known = ", ".join(sorted(self.families))
            raise SurfaceConstructionError(f"unknown surface family {name!r}; known: {known}")
        return self.families[name]

    def build(self, spec: str) -> SurfaceModel:
        """
        Build a certified model.

        Args:
            spec: ``family[:key=value,...]`` or a path to a YAML surface file

        Returns:
            SurfaceModel whose certificate passed

        Raises:
            SurfaceConstructionError: unknown family or parameter, or failed construction
        """
        if spec.endswith((".yaml", ".yml")) or Path(spec).is_file():
            from file_io.surface_files import load_surface_file

            return load_surface_file(spec, registry=self, **self.certificate)
        name, params = parse_surface_spec(spec)
        return self.build_family(name, params)

    def build_family(
        self,
        name: str,
        params: dict[str, float],
        certificate: dict[str, Any] | None = None,
    ) -> SurfaceModel:
        """Family member with defaults filled in; certificate overrides the registry settings."""
        family = self.get(name)
        unknown = sorted(set(params) - set(family.defaults))
        if unknown:
            raise SurfaceConstructionError(
                f"{name} takes parameters {sorted(family.defaults)}, got {unknown}"
            )
        merged = {**family.defaults, **params}
        model = family.builder(**merged, **{**self.certificate, **(certificate or {})})
        logger.debug(f"[SurfaceRegistry] built {model.spec}")
        return model

    def summary(self) -> str:
        lines = ["Surface families:"]
        for family in self.list_families():
            lines.append(f"  - {family!r} {family.description}")
        return "\n".join(lines)


def create_default_registry(app_config: dict[str, Any] | None = None) -> SurfaceRegistry:
    """
    Registry with the built-in one-holed torus and pair-of-pants families.

    Args:
        app_config: Full application config; surface defaults and certificate
                    settings are read from it when given

    Returns:
        SurfaceRegistry with both families registered
    """
    from config import get_certificate_config, get_surface_config

    app_config = app_config or {}
    surfaces = get_surface_config(app_config)
    registry = SurfaceRegistry(certificate=get_certificate_config(app_config))
    registry.register(
        SurfaceFamily(
            name="torus1",
            builder=one_holed_torus,
            defaults=dict(surfaces["families"]["torus1"]),
            description="one-holed torus, A = diag(l, 1/l) with trace u, B = [[2,1],[3,2]]",
        )
    )
    registry.register(
        SurfaceFamily(
            name="pants",
            builder=pants,
            defaults=dict(surfaces["families"]["pants"]),
            description="pair of pants, Schottky pair of trace-u generators shifted by s",
        )
    )
    return registry

"""Declarative YAML surface files.

A file either names a built-in family with its parameters::

    family: pants
    u: 4.5
    s: 7
    certificate: {max_word_length: 5}

or gives explicit generators::

    name: torus-custom
    topology: {genus: 1, boundary_count: 1}
    generators:
      - [[2.0, 0.0], [0.0, 0.5]]
      - [[2.0, 1.0], [3.0, 2.0]]
    peripheral: ["a b A B"]
    simple_classes: ["a", "b", "a b", "a B", "a b A B"]
    orientation: -1

The optional ``certificate`` mapping overrides the configured certificate
settings for this file only.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Any

import yaml

from core.errors import SurfaceConstructionError
from core.surface_model import SurfaceModel, Topology, from_generators

if TYPE_CHECKING:
    from surfaces.registry import SurfaceRegistry

REQUIRED_KEYS = ("name", "topology", "generators")
CERTIFICATE_KEYS = {"max_word_length": int, "min_translation_length": float}


def load_surface_file(
    path: str | Path, *, registry: SurfaceRegistry | None = None, **certificate: Any
) -> SurfaceModel:
    """
    Build a certified model from a YAML surface file.

    Args:
        path: Path to the YAML file
        registry: Registry resolving ``family:`` files (default registry when None)
        **certificate: max_word_length / min_translation_length defaults

    Returns:
        SurfaceModel built by the family builder or by from_generators

    Raises:
        SurfaceConstructionError: missing file, missing keys or malformed values
    """
    path = Path(path)
    if not path.is_file():
        raise SurfaceConstructionError(f"surface file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as exc:
        raise SurfaceConstructionError(f"{path}: invalid YAML") from exc
    if not isinstance(data, dict):
        raise SurfaceConstructionError(f"{path}: top level must be a mapping")

    certificate = {**certificate, **_certificate_overrides(path, data.pop("certificate", None))}
    if "family" in data:
        return _build_family(path, data, registry, certificate)

    missing = [key for key in REQUIRED_KEYS if key not in data]
    if missing:
        raise SurfaceConstructionError(f"{path}: missing keys {missing}")

    topology_data = data["topology"] or {}
    try:
        topology = Topology(
            genus=int(topology_data["genus"]),
            boundary_count=int(topology_data["boundary_count"]),
        )
        matrices = [[[float(x) for x in row] for row in m] for m in data["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SurfaceConstructionError(f"{path}: malformed topology or generators ({exc})") from exc
    if any(len(m) != 2 or any(len(row) != 2 for row in m) for m in matrices):
        raise SurfaceConstructionError(f"{path}: generators must be 2x2 matrices")

    return from_generators(
        str(data["name"]),
        matrices,
        topology,
        peripheral=[str(w) for w in data.get("peripheral", [])],
        simple_classes=[str(w) for w in data.get("simple_classes", [])],
        orientation=int(data.get("orientation", -1)),
        excluded_from_twg_k=bool(data.get("excluded_from_twg_k", False)),
        family_parameter=float(data.get("family_parameter", 0.0)),
        **certificate,
    )


def _certificate_overrides(path: Path, section: Any) -> dict[str, Any]:
    if section is None:
        return {}
    if not isinstance(section, dict):
        raise SurfaceConstructionError(f"{path}: certificate must be a mapping")
    unknown = sorted(set(section) - set(CERTIFICATE_KEYS))
    if unknown:
        raise SurfaceConstructionError(
            f"{path}: unknown certificate keys {unknown}; expected {sorted(CERTIFICATE_KEYS)}"
        )
    try:
        return {key: CERTIFICATE_KEYS[key](value) for key, value in section.items()}
    except (TypeError, ValueError) as exc:
        raise SurfaceConstructionError(f"{path}: malformed certificate ({exc})") from exc


def _build_family(
    path: Path,
    data: dict[str, Any],
    registry: SurfaceRegistry | None,
    certificate: dict[str, Any],
) -> SurfaceModel:
    name = str(data.pop("family"))
    try:
        params = {str(key): float(value) for key, value in data.items()}
    except (TypeError, ValueError) as exc:
        raise SurfaceConstructionError(
            f"{path}: family parameters must be numbers ({exc})"
        ) from exc
    if registry is None:
        from surfaces import create_default_registry

        registry = create_default_registry()
    return registry.build_family(name, params, certificate)

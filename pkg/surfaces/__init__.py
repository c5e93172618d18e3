"""Built-in surface families and surface spec resolution."""

from .registry import SurfaceFamily, SurfaceRegistry, create_default_registry, parse_surface_spec

__all__ = ["SurfaceFamily", "SurfaceRegistry", "create_default_registry", "parse_surface_spec"]

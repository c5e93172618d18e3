"""Tests for SurfaceRegistry, surface specs and YAML surface files."""

import pytest
import yaml

from core.errors import SurfaceConstructionError
from core.surface_model import one_holed_torus
from file_io import load_surface_file
from surfaces import (
    SurfaceFamily,
    SurfaceRegistry,
    create_default_registry,
    parse_surface_spec,
)

CUSTOM_TORUS = {
    "name": "torus-custom",
    "topology": {"genus": 1, "boundary_count": 1},
    "generators": [[[2.0, 0.0], [0.0, 0.5]], [[2.0, 1.0], [3.0, 2.0]]],
    "peripheral": ["a b A B"],
    "simple_classes": ["a", "b"],
}


def write_surface(tmp_path, data, name="surface.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return path


class TestParseSurfaceSpec:
    """Tests for the name:key=value spec grammar."""

    def test_name_only(self):
        assert parse_surface_spec("torus1") == ("torus1", {})

    def test_parameters(self):
        assert parse_surface_spec("pants:u=4.5, s=7") == ("pants", {"u": 4.5, "s": 7.0})

    def test_empty_name(self):
        with pytest.raises(SurfaceConstructionError, match="empty"):
            parse_surface_spec(":u=4")

    def test_missing_equals(self):
        with pytest.raises(SurfaceConstructionError, match="malformed"):
            parse_surface_spec("torus1:u")

    def test_non_numeric_value(self):
        with pytest.raises(SurfaceConstructionError, match="not a number"):
            parse_surface_spec("torus1:u=big")


class TestSurfaceRegistry:
    """Tests for family registration and building."""

    def test_default_families(self):
        registry = create_default_registry()
        assert [f.name for f in registry.list_families()] == ["pants", "torus1"]

    def test_build_default_torus(self):
        model = create_default_registry().build("torus1")
        assert model.spec == "torus1:u=4"
        assert model.certificate.passed

    def test_build_with_parameters(self):
        model = create_default_registry().build("pants:u=5,s=6")
        assert dict(model.parameters) == {"u": 5.0, "s": 6.0}

    def test_unknown_family_lists_known(self):
        with pytest.raises(SurfaceConstructionError, match="known: pants, torus1"):
            create_default_registry().build("genus2")

    def test_unknown_parameter(self):
        with pytest.raises(SurfaceConstructionError, match="takes parameters"):
            create_default_registry().build("torus1:v=3")

    def test_invalid_pants_shift(self):
        with pytest.raises(SurfaceConstructionError):
            create_default_registry().build("pants:s=1")

    def test_config_defaults_used(self):
        config = {"surfaces": {"families": {"torus1": {"u": 5}}}}
        model = create_default_registry(config).build("torus1")
        assert model.spec == "torus1:u=5"

    def test_custom_family(self):
        registry = SurfaceRegistry()
        registry.register(SurfaceFamily("t", one_holed_torus, {"u": 3.0}, "test torus"))
        assert registry.build("t").family_parameter == 3.0
        assert repr(registry.get("t")) == "<SURFACE:t:u=3>"
        assert "test torus" in registry.summary()


class TestSurfaceFiles:
    """Tests for YAML surface files."""

    def test_load(self, tmp_path):
        model = load_surface_file(write_surface(tmp_path, CUSTOM_TORUS))
        assert model.name == "torus-custom"
        assert model.rank == 2
        assert [str(w) for w in model.simple_classes] == ["a", "b"]

    def test_registry_routes_paths(self, tmp_path):
        path = write_surface(tmp_path, CUSTOM_TORUS)
        assert create_default_registry().build(str(path)).name == "torus-custom"

    def test_missing_file(self, tmp_path):
        with pytest.raises(SurfaceConstructionError, match="not found"):
            load_surface_file(tmp_path / "none.yaml")

    def test_missing_keys(self, tmp_path):
        data = {key: value for key, value in CUSTOM_TORUS.items() if key != "generators"}
        with pytest.raises(SurfaceConstructionError, match="generators"):
            load_surface_file(write_surface(tmp_path, data))

    def test_generators_must_be_2x2(self, tmp_path):
        data = dict(CUSTOM_TORUS, generators=[[[1.0, 0.0, 0.0]], [[2.0, 1.0], [3.0, 2.0]]])
        with pytest.raises(SurfaceConstructionError, match="2x2"):
            load_surface_file(write_surface(tmp_path, data))

    def test_non_hyperbolic_generator_rejected(self, tmp_path):
        data = dict(CUSTOM_TORUS, generators=[[[1.0, 1.0], [0.0, 1.0]], [[2.0, 1.0], [3.0, 2.0]]])
        with pytest.raises(SurfaceConstructionError):
            load_surface_file(write_surface(tmp_path, data))

    def test_family_form(self, tmp_path):
        model = load_surface_file(write_surface(tmp_path, {"family": "pants", "u": 4.5, "s": 7}))
        assert model.spec == "pants:u=4.5,s=7"
        assert model.excluded_from_twg_k

    def test_family_form_uses_defaults(self, tmp_path):
        model = load_surface_file(write_surface(tmp_path, {"family": "torus1"}))
        assert model.spec == "torus1:u=4"

    def test_family_form_unknown_parameter(self, tmp_path):
        with pytest.raises(SurfaceConstructionError, match="takes parameters"):
            load_surface_file(write_surface(tmp_path, {"family": "torus1", "s": 6}))

    def test_certificate_override(self, tmp_path):
        data = dict(CUSTOM_TORUS, certificate={"max_word_length": 4})
        model = load_surface_file(write_surface(tmp_path, data), max_word_length=6)
        assert model.certificate.max_word_length == 4

    def test_file_certificate_beats_registry(self, tmp_path):
        data = {"family": "pants", "certificate": {"max_word_length": 3}}
        registry = create_default_registry({"certificate": {"max_word_length": 6}})
        model = registry.build(str(write_surface(tmp_path, data)))
        assert model.certificate.max_word_length == 3
        assert model.spec == "pants:u=4,s=6"

    def test_unknown_certificate_key(self, tmp_path):
        data = dict(CUSTOM_TORUS, certificate={"depth": 3})
        with pytest.raises(SurfaceConstructionError, match="certificate"):
            load_surface_file(write_surface(tmp_path, data))

"""
Unit tests for artifact stores, codecs and renders.
"""

import json

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from src.core.beltrami import BeltramiField, Disk, SetModel
from src.core.douady_earle import CircleHomeo
from src.core.errors import InvalidArgumentError
from src.core.grids import GridField, make_grid
from src.core.jordan import JordanCurve
from src.core.lieb import TeichPoint
from src.core.moebius import INF, is_infinite
from src.core.solver import SolverReport
from src.infrastructure.codecs import (
    decode_circle,
    decode_curve,
    decode_field,
    decode_trace,
    dump_json,
    dump_report,
    encode_circle,
    encode_curve,
    encode_field,
    encode_trace,
    read_teich_point,
    set_model_from_dict,
    set_model_to_dict,
    write_teich_point,
)
from src.infrastructure.rendering import render_family, render_field
from src.infrastructure.storage import (
    InMemoryArtifactStore,
    LocalArtifactStore,
    StorageError,
    create_artifact_store,
)


# ---------------------------------------------------------------------------
# Storage
# ---------------------------------------------------------------------------

class TestArtifactStores:
    """Tests for the local and in-memory stores."""

    def test_local_store_writes_nested_keys(self, tmp_path):
        store = LocalArtifactStore(tmp_path)
        location = store.write_text("runs/a/summary.json", "{}\n")
        assert (tmp_path / "runs" / "a" / "summary.json").read_text() == "{}\n"
        assert location.endswith("summary.json")
        assert store.exists("runs/a/summary.json")
        assert store.keys() == ["runs/a/summary.json"]

    def test_local_store_leaves_no_temp_files(self, tmp_path):
        store = LocalArtifactStore(tmp_path)
        store.write_text("x.csv", "a\n")
        store.write_text("x.csv", "b\n")
        assert [p.name for p in tmp_path.iterdir()] == ["x.csv"]
        assert store.read_text("x.csv") == "b\n"

    def test_missing_artifact(self, tmp_path):
        with pytest.raises(StorageError, match="Read failed"):
            LocalArtifactStore(tmp_path).read_text("nope.json")
        with pytest.raises(StorageError, match="No artifact"):
            InMemoryArtifactStore().read_text("nope.json")

    @pytest.mark.parametrize("key", ["", "/etc/passwd", "../outside.txt", "a/../../b"])
    def test_rejects_escaping_keys(self, key):
        with pytest.raises(StorageError, match="invalid artifact key"):
            InMemoryArtifactStore().write_text(key, "x")

    def test_factory(self, tmp_path):
        assert isinstance(create_artifact_store(), InMemoryArtifactStore)
        assert isinstance(create_artifact_store(tmp_path), LocalArtifactStore)


# ---------------------------------------------------------------------------
# CSV codecs
# ---------------------------------------------------------------------------

class TestCsvCodecs:
    """Header checks and exact decoding of sampled data."""

    def test_field_decodes_bit_for_bit(self):
        grid = make_grid(2.0, 16)
        field = GridField(grid, np.exp(-np.abs(grid.nodes) ** 2) * (0.1 + 0.3j))
        decoded = decode_field(encode_field(field))
        assert decoded.grid.same_as(grid)
        assert_array_equal(decoded.values, field.values)

    def test_field_header_is_checked(self):
        with pytest.raises(InvalidArgumentError, match="header"):
            decode_field("x,y\n1,2\n")

    def test_field_must_be_square(self):
        text = "re_z,im_z,re_v,im_v\n" + "0,0,0,0\n" * 3
        with pytest.raises(InvalidArgumentError, match="square grid"):
            decode_field(text)

    def test_circle_header_and_angles(self):
        phi = CircleHomeo.identity(16)
        assert encode_circle(phi).splitlines()[0] == "theta,psi"
        assert_array_equal(decode_circle(encode_circle(phi)).psi, phi.psi)

    def test_curve_keeps_infinity(self):
        gamma = JordanCurve(np.array([-1, 0.5j, 1, INF], dtype=complex))
        text = encode_curve(gamma)
        assert "inf" in text
        decoded = decode_curve(text)
        assert is_infinite(decoded.vertices[3])
        assert_array_equal(decoded.vertices[:3], gamma.vertices[:3])

    def test_trace_rows(self):
        rows = [(0.5 + 0j, 0.5j, 0.1 + 0.6j), (0.5 + 0j, INF, INF)]
        decoded = decode_trace(encode_trace(rows))
        assert decoded[0] == rows[0]
        assert is_infinite(decoded[1][2])

    def test_malformed_rows(self):
        with pytest.raises(InvalidArgumentError, match="malformed CSV"):
            decode_circle("theta,psi\n0,abc\n")


# ---------------------------------------------------------------------------
# JSON codecs
# ---------------------------------------------------------------------------

class TestJsonCodecs:
    """Deterministic JSON for reports, set models and points of T(E)."""

    def test_dump_json_sorts_keys(self):
        assert dump_json({"b": 1, "a": 2}).index('"a"') < dump_json({"b": 1, "a": 2}).index('"b"')

    def test_dump_report_scrubs_non_finite(self):
        report = SolverReport(
            iterations=3, residual=float("inf"), norm=0.5, K=3.0, converged=False, grid_l=4.0, grid_n=64
        )
        payload = json.loads(dump_report(report))
        assert payload["residual"] == "inf"

    def test_set_model_dict(self):
        E = SetModel.finite_points([0, 1, INF, 2j])
        raw = set_model_to_dict(E)
        assert raw["points"][2] == "inf"
        assert set_model_from_dict(json.loads(json.dumps(raw))).matches(E)

    def test_malformed_set_model(self):
        with pytest.raises(InvalidArgumentError, match="malformed set model"):
            set_model_from_dict({"points": []})
        with pytest.raises(InvalidArgumentError, match=r"\[re, im\]"):
            set_model_from_dict({"kind": "finite-points", "points": [1.0]})

    def test_teich_point_through_a_store(self):
        grid = make_grid(4.0, 16)
        E = SetModel.disk_complement([Disk(2 + 0j, 0.5)])
        t = TeichPoint(E, (CircleHomeo.identity(16),), BeltramiField.zeros(grid))
        store = InMemoryArtifactStore()
        keys = write_teich_point(store, "point", t)
        assert keys[-1] == "point/teich_point.json"
        restored = read_teich_point(store, keys[-1])
        assert restored.set_model.matches(E)
        assert_array_equal(restored.components[0].psi, t.components[0].psi)
        assert restored.mu_on_e.sup_norm == 0.0


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

class TestRendering:
    def test_family_render_is_deterministic(self):
        family = [
            (0j, JordanCurve.regular_polygon(16)),
            (0.5 + 0j, JordanCurve(np.array([-1, 0.5j, 1, INF], dtype=complex))),
        ]
        first = render_family(family)
        assert "<svg" in first
        assert render_family(family) == first

    def test_field_render(self):
        svg = render_field(GridField.zeros(make_grid(1.0, 8)), title="zero")
        assert "<svg" in svg

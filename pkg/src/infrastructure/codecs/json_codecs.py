"""
JSON codecs. Output is deterministic: keys sorted, two-space indent, and
infinity spelled as the string "inf".
"""

import json
import math
from typing import Any

from pydantic import BaseModel

from ...core.beltrami import BeltramiField, Disk, SetKind, SetModel
from ...core.errors import InvalidArgumentError
from ...core.lieb import TeichPoint
from ...core.moebius import INF, is_infinite
from ..storage import ArtifactStore
from .csv_codecs import decode_circle, decode_field, encode_circle, encode_field


def dump_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def dump_report(report: BaseModel) -> str:
    """A pydantic report as sorted-key JSON."""
    return dump_json(_scrub(report.model_dump(mode="json")))


def _scrub(value: Any) -> Any:
    """Replace non-finite floats, which strict JSON cannot hold, by strings."""
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _scrub(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_scrub(v) for v in value]
    return value


# ---------------------------------------------------------------------------
# Set models
# ---------------------------------------------------------------------------

def _point_to_json(p: complex) -> list[float] | str:
    return "inf" if is_infinite(p) else [p.real, p.imag]


def _point_from_json(raw: Any) -> complex:
    if raw == "inf":
        return INF
    if not (isinstance(raw, list) and len(raw) == 2):
        raise InvalidArgumentError(f"a point is [re, im] or \"inf\", got {raw!r}")
    return complex(float(raw[0]), float(raw[1]))


def set_model_to_dict(E: SetModel) -> dict[str, Any]:
    return {
        "kind": E.kind.value,
        "points": [_point_to_json(p) for p in E.points],
        "disks": [{"cx": d.center.real, "cy": d.center.imag, "r": d.radius} for d in E.disks],
    }


def set_model_from_dict(raw: dict[str, Any]) -> SetModel:
    try:
        kind = SetKind(raw["kind"])
        if kind is SetKind.FINITE_POINTS:
            return SetModel.finite_points(_point_from_json(p) for p in raw.get("points", []))
        return SetModel.disk_complement(
            Disk(complex(d["cx"], d["cy"]), float(d["r"])) for d in raw.get("disks", [])
        )
    except (KeyError, TypeError) as e:
        raise InvalidArgumentError(f"malformed set model: {e}") from e


# ---------------------------------------------------------------------------
# Teichmueller points
# ---------------------------------------------------------------------------

def write_teich_point(store: ArtifactStore, prefix: str, t: TeichPoint) -> list[str]:
    """Component traces and mu|E as CSV files next to an index JSON (written last)."""
    refs = []
    for i, component in enumerate(t.components):
        ref = f"{prefix}/component_{i}.csv"
        store.write_text(ref, encode_circle(component))
        refs.append(ref)
    field_ref = f"{prefix}/mu_on_e.csv"
    store.write_text(field_ref, encode_field(t.mu_on_e.samples))
    index = {
        "set_model": set_model_to_dict(t.set_model),
        "components": refs,
        "mu_on_e": field_ref,
        "support_radius": t.mu_on_e.support_radius,
    }
    key = f"{prefix}/teich_point.json"
    store.write_text(key, dump_json(index))
    return [*refs, field_ref, key]


def read_teich_point(store: ArtifactStore, key: str) -> TeichPoint:
    index = json.loads(store.read_text(key))
    samples = decode_field(store.read_text(index["mu_on_e"]))
    return TeichPoint(
        set_model=set_model_from_dict(index["set_model"]),
        components=tuple(decode_circle(store.read_text(ref)) for ref in index["components"]),
        mu_on_e=BeltramiField(samples, float(index["support_radius"])),
    )

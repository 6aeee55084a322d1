"""
CSV codecs. Every file has one header row; floats are written with 17
significant digits so a decode reproduces the samples bit for bit.
Infinity is written as ``inf``.
"""

import io
from collections.abc import Iterable

import numpy as np

from ...core.douady_earle import CircleHomeo
from ...core.errors import InvalidArgumentError
from ...core.grids import GridField, make_grid
from ...core.jordan import JordanCurve
from ...core.solver import QuasiconformalMap

FLOAT_FORMAT = "%.17g"

TraceRow = tuple[complex, complex, complex]


def _write(columns: list[str], data: np.ndarray) -> str:
    buf = io.StringIO()
    np.savetxt(buf, data, delimiter=",", header=",".join(columns), comments="", fmt=FLOAT_FORMAT)
    return buf.getvalue()


def _read(text: str, columns: list[str]) -> np.ndarray:
    lines = text.splitlines()
    if not lines or [c.strip() for c in lines[0].split(",")] != columns:
        raise InvalidArgumentError(f"expected CSV header {','.join(columns)}")
    try:
        data = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1, ndmin=2)
    except ValueError as e:
        raise InvalidArgumentError(f"malformed CSV: {e}") from e
    if data.size == 0:
        return np.empty((0, len(columns)))
    if data.shape[1] != len(columns):
        raise InvalidArgumentError(f"expected {len(columns)} columns, got {data.shape[1]}")
    return data


def _pairs(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex).ravel()
    return np.column_stack([z.real, z.imag])


# ---------------------------------------------------------------------------
# Grid fields and maps
# ---------------------------------------------------------------------------

FIELD_COLUMNS = ["re_z", "im_z", "re_v", "im_v"]
MAP_COLUMNS = ["re_z", "im_z", "re_w", "im_w"]


def encode_field(field: GridField) -> str:
    """Nodes and values, row-major."""
    return _write(FIELD_COLUMNS, np.hstack([_pairs(field.grid.nodes), _pairs(field.values)]))


def decode_field(text: str) -> GridField:
    """Inverse of encode_field; the grid is read off the node columns."""
    data = _read(text, FIELD_COLUMNS)
    n = int(round(np.sqrt(data.shape[0])))
    if n * n != data.shape[0] or n < 2:
        raise InvalidArgumentError(f"{data.shape[0]} rows do not form a square grid")
    grid = make_grid(-data[0, 0], n)
    nodes = data[:, 0] + 1j * data[:, 1]
    if not np.allclose(nodes, grid.nodes.ravel(), rtol=0.0, atol=1e-9 * grid.half_width):
        raise InvalidArgumentError("node columns do not match a uniform grid")
    values = (data[:, 2] + 1j * data[:, 3]).reshape(grid.shape)
    return GridField(grid, values)


def encode_map(w: QuasiconformalMap) -> str:
    """Grid nodes and their normalized images."""
    return _write(MAP_COLUMNS, np.hstack([_pairs(w.grid.nodes), _pairs(w.samples)]))


# ---------------------------------------------------------------------------
# Circle maps, curves and motion traces
# ---------------------------------------------------------------------------

CIRCLE_COLUMNS = ["theta", "psi"]
CURVE_COLUMNS = ["re", "im"]
TRACE_COLUMNS = ["re_x", "im_x", "re_zeta", "im_zeta", "re_image", "im_image"]


def encode_circle(phi: CircleHomeo) -> str:
    n = phi.psi.size
    theta = 2 * np.pi * np.arange(n) / n
    return _write(CIRCLE_COLUMNS, np.column_stack([theta, phi.psi]))


def decode_circle(text: str) -> CircleHomeo:
    data = _read(text, CIRCLE_COLUMNS)
    n = data.shape[0]
    if n and not np.allclose(data[:, 0], 2 * np.pi * np.arange(n) / n, atol=1e-12):
        raise InvalidArgumentError("theta column must hold uniform angles 2 pi k / n")
    return CircleHomeo(data[:, 1])


def encode_curve(gamma: JordanCurve) -> str:
    v = gamma.vertices
    inf = ~np.isfinite(v)
    data = _pairs(np.where(inf, 0j, v))
    data[inf, 0] = np.inf
    data[inf, 1] = 0.0
    return _write(CURVE_COLUMNS, data)


def decode_curve(text: str) -> JordanCurve:
    data = _read(text, CURVE_COLUMNS)
    inf = np.isinf(data[:, 0]) | np.isinf(data[:, 1])
    vertices = np.where(inf, np.inf + 0j, data[:, 0] + 1j * np.where(inf, 0.0, data[:, 1]))
    return JordanCurve(vertices)


def encode_trace(rows: Iterable[TraceRow]) -> str:
    """Motion samples (x, zeta, phi(x, zeta))."""
    flat = []
    for x, zeta, image in rows:
        line = []
        for c in (complex(x), complex(zeta), complex(image)):
            if np.isfinite(c):
                line.extend([c.real, c.imag])
            else:
                line.extend([np.inf, 0.0])
        flat.append(line)
    data = np.array(flat, dtype=float).reshape(-1, len(TRACE_COLUMNS))
    return _write(TRACE_COLUMNS, data)


def decode_trace(text: str) -> list[TraceRow]:
    data = _read(text, TRACE_COLUMNS)
    rows = []
    for line in data:
        values = []
        for re, im in zip(line[0::2], line[1::2], strict=True):
            values.append(complex(np.inf, 0.0) if np.isinf(re) or np.isinf(im) else complex(re, im))
        rows.append((values[0], values[1], values[2]))
    return rows

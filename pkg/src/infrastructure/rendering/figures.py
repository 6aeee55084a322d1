"""
SVG renders of curve families and sampled fields.

matplotlib runs on the Agg backend with a fixed hash salt and no date
stamp, so the same data always renders to the same bytes.
"""

import io
import logging
from collections.abc import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib import colormaps  # noqa: E402
from matplotlib.colors import Normalize  # noqa: E402

from ...core.grids import GridField  # noqa: E402
from ...core.jordan import JordanCurve  # noqa: E402

logger = logging.getLogger(__name__)

HASH_SALT = "qclab"


def _closed_path(gamma: JordanCurve, far: float) -> np.ndarray:
    """Vertices in drawing order, rays through infinity cut at radius ``far`` and broken by NaN."""
    v = gamma.vertices
    n = v.size
    out: list[complex] = []
    for k in range(n + 1):
        z = complex(v[k % n])
        if np.isfinite(z):
            out.append(z)
            continue
        prev, nxt = complex(v[k - 1]), complex(v[(k + 1) % n])
        out.extend([far * prev / abs(prev), complex(np.nan, np.nan), far * nxt / abs(nxt)])
    return np.array(out)


def _to_svg(fig: plt.Figure) -> str:
    buf = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": HASH_SALT, "svg.fonttype": "none"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def render_family(family: Sequence[tuple[complex, JordanCurve]], extent: float = 3.0) -> str:
    """Overlay of the curves gamma_x colored by |x|."""
    fig, ax = plt.subplots(figsize=(6, 6))
    norm = Normalize(vmin=0.0, vmax=max([abs(x) for x, _ in family] + [1e-12]))
    cmap = colormaps["viridis"]
    for x, gamma in sorted(family, key=lambda item: abs(item[0])):
        path = _closed_path(gamma, 2.0 * extent)
        ax.plot(path.real, path.imag, color=cmap(norm(abs(x))), linewidth=1.0, label=f"|x|={abs(x):.2f}")
    ax.set_xlim(-extent, extent)
    ax.set_ylim(-extent, extent)
    ax.set_aspect("equal")
    if family:
        ax.legend(loc="upper right", fontsize="small")
    logger.debug("Rendered curve family", extra={"curves": len(family)})
    return _to_svg(fig)


def render_field(field: GridField, title: str = "") -> str:
    """Modulus of a sampled field over the grid box."""
    grid = field.grid
    lo, hi = -grid.half_width, grid.half_width - grid.spacing
    fig, ax = plt.subplots(figsize=(6, 5))
    image = ax.imshow(
        np.abs(field.values), origin="lower", extent=(lo, hi, lo, hi), cmap="magma",
        interpolation="nearest",
    )
    fig.colorbar(image, ax=ax)
    if title:
        ax.set_title(title)
    return _to_svg(fig)

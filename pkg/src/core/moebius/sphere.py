"""
Points of the Riemann sphere.

A sphere point is a Python/NumPy complex number; infinity is any value with
an infinite component, canonically INF = inf + 0j. All sphere-valued
comparisons use the chordal metric.
"""

import math

import numpy as np

INF = complex(math.inf, 0.0)


def is_infinite(z: complex | np.ndarray) -> bool | np.ndarray:
    """True for the point at infinity (elementwise on arrays)."""
    if np.ndim(z) == 0:
        w = complex(z)
        return math.isinf(w.real) or math.isinf(w.imag)
    arr = np.asarray(z, dtype=complex)
    return np.isinf(arr.real) | np.isinf(arr.imag)


def same_point(p: complex, q: complex) -> bool:
    """Exact equality on the sphere (all infinities coincide)."""
    p_inf, q_inf = is_infinite(p), is_infinite(q)
    if p_inf or q_inf:
        return bool(p_inf and q_inf)
    return complex(p) == complex(q)


def chordal_distance(z: complex | np.ndarray, w: complex | np.ndarray) -> np.ndarray:
    """d(z, w) = 2|z - w| / sqrt((1 + |z|^2)(1 + |w|^2)), with infinity handled."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    z, w = np.broadcast_arrays(z, w)
    zi = np.asarray(is_infinite(z))
    wi = np.asarray(is_infinite(w))

    with np.errstate(invalid="ignore", over="ignore"):
        finite = 2.0 * np.abs(z - w) / np.sqrt((1.0 + np.abs(z) ** 2) * (1.0 + np.abs(w) ** 2))
        to_inf_from_z = 2.0 / np.sqrt(1.0 + np.abs(z) ** 2)
        to_inf_from_w = 2.0 / np.sqrt(1.0 + np.abs(w) ** 2)

    out = np.where(zi & wi, 0.0, finite)
    out = np.where(zi & ~wi, to_inf_from_w, out)
    out = np.where(~zi & wi, to_inf_from_z, out)
    return out


def sphere_array(points: object) -> np.ndarray:
    """Coerce a sequence of sphere points to a complex array with canonical INF."""
    arr = np.array(points, dtype=complex, ndmin=1)
    arr[np.asarray(is_infinite(arr))] = INF
    return arr


def reciprocal(z: complex | np.ndarray) -> np.ndarray:
    """1/z on the sphere: 0 and infinity are exchanged."""
    z = np.asarray(z, dtype=complex)
    inf = np.asarray(is_infinite(z))
    zero = z == 0
    safe = np.where(inf | zero, 1.0, z)
    out = 1.0 / safe
    out = np.where(zero, INF, out)
    return np.where(inf, 0j, out)


def to_sphere(z: complex | np.ndarray) -> np.ndarray:
    """Stereographic lift to the unit sphere; Euclidean distance there is the chordal distance."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    inf = np.asarray(is_infinite(z))
    zf = np.where(inf, 0j, z)
    scale = 1.0 + np.abs(zf) ** 2
    out = np.column_stack([2 * zf.real / scale, 2 * zf.imag / scale, (np.abs(zf) ** 2 - 1) / scale])
    out[inf] = (0.0, 0.0, 1.0)
    return out

"""Minkowski linear algebra on R^{2,1} with the form diag(1, 1, -1).

Vectors are numpy arrays whose last axis has length 3; every function
broadcasts over leading axes so batches of vectors can be processed at once.
"""
from enum import Enum

import numpy as np

Q = np.diag([1.0, 1.0, -1.0])
_SIGN = np.array([1.0, 1.0, -1.0])

DEFAULT_TOL = 1e-9


class CausalClass(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"
    ZERO = "zero"


def vec(x1, x2, x3):
    return np.array([x1, x2, x3], dtype=float)


def inner(u, v):
    """u1 v1 + u2 v2 - u3 v3."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.sum(u * v * _SIGN, axis=-1)


def norm2(v):
    return inner(v, v)


def cross(u, v):
    """The cross product adapted to the form, so that <u, v x w> = det[u, v, w]."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    u1, u2, u3 = u[..., 0], u[..., 1], u[..., 2]
    v1, v2, v3 = v[..., 0], v[..., 1], v[..., 2]
    return np.stack([u2 * v3 - u3 * v2, u3 * v1 - u1 * v3, u2 * v1 - u1 * v2], axis=-1)


def det3(u, v, w):
    """Determinant of the matrix with columns u, v, w."""
    m = np.stack(np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float),
                                     np.asarray(w, float)), axis=-1)
    return np.linalg.det(m)


def causal_class(v, tol=DEFAULT_TOL):
    # absolute tolerance: null vectors of any length must classify as null
    if tol <= 0:
        raise ValueError("tol must be positive")
    v = np.asarray(v, dtype=float)
    if not np.any(v):
        return CausalClass.ZERO
    k = norm2(v)
    if abs(k) <= tol:
        return CausalClass.NULL
    return CausalClass.SPACELIKE if k > 0 else CausalClass.TIMELIKE


def normalize_spacelike(v):
    k = np.asarray(norm2(v))
    if np.any(k <= 0):
        raise ValueError("vector is not spacelike")
    return np.asarray(v, float) / np.sqrt(k)[..., None]


def ray_normalize(n):
    """Rescale a future null (or timelike) vector so its third coordinate is 1."""
    n = np.asarray(n, dtype=float)
    return n / n[..., 2:3]


def ray_angle(xi):
    """Angle of a boundary ray (x, y, 1) in the circle chart."""
    xi = np.asarray(xi, dtype=float)
    return np.arctan2(xi[..., 1], xi[..., 0])


def ray_from_angle(theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta), np.ones_like(theta)], axis=-1)


def ray_distance(xi, eta):
    """Euclidean distance between boundary rays in the {x3 = 1} chart."""
    d = ray_normalize(xi) - ray_normalize(eta)
    return np.sqrt(np.sum(d * d, axis=-1))

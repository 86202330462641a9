"""SO0(2,1), the affine group G = SO0(2,1) x R^3, and frames of the unit tangent bundle.

A frame is an element g of SO0(2,1) read as the point (g e3, g e2) of the unit
tangent bundle of the hyperboloid.  Frames and linear isometries are plain
3x3 arrays; the affine group gets a small dataclass.
"""
from dataclasses import dataclass

import numpy as np

from .lorentz import Q, cross, inner, ray_normalize

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])
NU_PLUS_E = np.array([0.0, 1.0, 1.0]) / np.sqrt(2.0)
NU_MINUS_E = np.array([0.0, -1.0, 1.0]) / np.sqrt(2.0)

RENORMALIZE_AT = 1e-10


def a(t):
    """Geodesic flow generator: boost in the (x2, x3) plane."""
    c, s = np.cosh(t), np.sinh(t)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, c]])


def u_plus(s):
    return np.array([
        [1.0, -2 * s, 2 * s],
        [2 * s, 1 - 2 * s * s, 2 * s * s],
        [2 * s, -2 * s * s, 1 + 2 * s * s],
    ])


def u_minus(s):
    return np.array([
        [1.0, 2 * s, 2 * s],
        [-2 * s, 1 - 2 * s * s, -2 * s * s],
        [2 * s, 2 * s * s, 1 + 2 * s * s],
    ])


def rotation(theta):
    """Elliptic element fixing (0, 0, 1)."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def lorentz_inverse(m):
    # exact for isometries of Q
    return Q @ np.swapaxes(m, -1, -2) @ Q


def isometry_residual(m):
    """Relative defect of m from SO0(2,1); 0 for an exact element.

    The Gram defect is scaled by |m|^2 because mT Q m carries rounding of that
    order for long hyperbolic products.
    """
    m = np.asarray(m, dtype=float)
    scale = max(1.0, float(np.max(np.abs(m))) ** 2)
    gram = np.max(np.abs(m.T @ Q @ m - Q)) / scale
    det = abs(np.linalg.det(m) - 1.0) / scale
    return max(gram, det)


def is_isometry(m, tol=1e-9):
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        return False
    return isometry_residual(m) <= tol and m[2, 2] > 0


def renormalize(g):
    """Lorentz Gram-Schmidt on the columns, timelike column first."""
    g = np.asarray(g, dtype=float)
    b = g[:, 2] / np.sqrt(-inner(g[:, 2], g[:, 2]))
    d = g[:, 1] + inner(g[:, 1], b) * b
    d = d / np.sqrt(inner(d, d))
    return np.column_stack([cross(d, b), d, b])


def _maybe_renormalize(g):
    return renormalize(g) if isometry_residual(g) > RENORMALIZE_AT else g


def random_isometry(rng, t_max=3.0):
    """K A K sample: rotation, boost of size <= t_max, rotation."""
    th, ph = rng.uniform(0, 2 * np.pi, size=2)
    return rotation(th) @ a(rng.uniform(-t_max, t_max)) @ rotation(ph)


@dataclass(frozen=True)
class AffineIsometry:
    """The pair (linear part, translation part) acting by X -> L X + u."""

    linear: np.ndarray
    trans: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "linear", np.asarray(self.linear, dtype=float).reshape(3, 3))
        object.__setattr__(self, "trans", np.asarray(self.trans, dtype=float).reshape(3))

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def linear_only(cls, m):
        return cls(m, np.zeros(3))

    @classmethod
    def translation(cls, u):
        return cls(np.eye(3), u)

    def __matmul__(self, other):
        return compose(self, other)

    def inverse(self):
        return invert(self)

    def apply(self, x):
        """Act on affine points (broadcasts over leading axes)."""
        return np.asarray(x, float) @ self.linear.T + self.trans

    def apply_vector(self, v):
        return np.asarray(v, float) @ self.linear.T

    def act(self, p):
        return PhasePoint(self.apply(p.point), self.apply_vector(p.dir))

    def allclose(self, other, tol=1e-9):
        return (np.max(np.abs(self.linear - other.linear)) <= tol
                and np.max(np.abs(self.trans - other.trans)) <= tol)


def compose(f1, f2):
    """(g1, v1)(g2, v2) = (g1 g2, v1 + g1 v2)."""
    return AffineIsometry(f1.linear @ f2.linear, f1.trans + f1.linear @ f2.trans)


def invert(f):
    g_inv = lorentz_inverse(f.linear)
    return AffineIsometry(g_inv, -(g_inv @ f.trans))


@dataclass(frozen=True)
class PhasePoint:
    """A point X of affine space with a unit spacelike direction."""

    point: np.ndarray
    dir: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))
        object.__setattr__(self, "dir", np.asarray(self.dir, dtype=float))

    def as_array(self):
        return np.concatenate([self.point, self.dir])

    def distance(self, other):
        """Euclidean distance in A x V = R^6."""
        return float(np.linalg.norm(self.as_array() - other.as_array()))


def affine_flow(p, t):
    return PhasePoint(p.point + t * p.dir, p.dir)


def check_frame(g, tol=1e-9):
    g = np.asarray(g, dtype=float)
    b, d = g[:, 2], g[:, 1]
    return (abs(inner(b, b) + 1) <= tol and abs(inner(d, d) - 1) <= tol
            and abs(inner(b, d)) <= tol and b[2] > 0)


def base_point(g):
    return np.asarray(g)[..., :, 2]


def geodesic_flow(g, t):
    return _maybe_renormalize(np.asarray(g, float) @ a(t))


def nu(g):
    """Neutral section g (1, 0, 0)."""
    return np.asarray(g)[..., :, 0].astype(float)


def nu_plus(g):
    return np.asarray(g, float) @ NU_PLUS_E


def nu_minus(g):
    return np.asarray(g, float) @ NU_MINUS_E


def boundary_ray(g, sign):
    """Ideal endpoint g^{+} or g^{-} as a null vector with third coordinate 1."""
    n = nu_plus(g) if sign > 0 else nu_minus(g)
    return ray_normalize(n)


def horocycle_coefficient(g, h):
    """The nu^+(g)-component of nu(h) - nu(g), as the vector it multiplies."""
    return inner(nu(h), nu_minus(g)) / inner(nu_plus(g), nu_minus(g)) * nu_plus(g)


def section_identities_check(g, h, t, s):
    """Max residual of each section identity at the given arguments."""
    g = np.asarray(g, float)
    h = np.asarray(h, float)
    flowed = g @ a(t)
    res = {
        "nu_flow_invariant": np.max(np.abs(nu(flowed) - nu(g))),
        "nu_equivariant": np.max(np.abs(nu(h @ g) - h @ nu(g))),
        "nu_plus_flow_scaling": np.max(np.abs(nu_plus(flowed) - np.exp(t) * nu_plus(g))),
        "nu_minus_flow_scaling": np.max(np.abs(nu_minus(flowed) - np.exp(-t) * nu_minus(g))),
        "nu_plus_equivariant": np.max(np.abs(nu_plus(h @ g) - h @ nu_plus(g))),
        "nu_minus_equivariant": np.max(np.abs(nu_minus(h @ g) - h @ nu_minus(g))),
        "nu_plus_horocycle": np.max(np.abs(nu_plus(g @ u_plus(s)) - nu_plus(g))),
        "nu_minus_horocycle": np.max(np.abs(nu_minus(g @ u_minus(s)) - nu_minus(g))),
    }
    return {k: float(v) for k, v in res.items()}

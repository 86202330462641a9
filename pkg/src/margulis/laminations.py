"""Stable/unstable leaves through neutralised points, their charts, and contraction.

Everything is computed upstairs from frame-based data; a resolver supplies the
neutralised section on a flow line when a chart has to be inverted.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import lambertw

from .affine import nu_of_pair
from .errors import NoOrbitFound, NotOnLeaf, ZeroDisplacement
from .isometry import PhasePoint, a, boundary_ray, nu, nu_minus, nu_plus, u_minus, u_plus
from .lorentz import det3, inner, ray_distance
from .schottky import frame_from_endpoints


@dataclass(frozen=True)
class NeutralizedPoint:
    """A frame g together with the value of the neutralised section at g."""

    frame: np.ndarray
    point: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "frame", np.asarray(self.frame, dtype=float))
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))

    def phase(self):
        return PhasePoint(self.point, nu(self.frame))

    def act(self, gamma):
        return NeutralizedPoint(gamma.linear @ self.frame, gamma.apply(self.point))

    def flow(self, t1, f_avg):
        """Geodesic time t1 on the frame; the point moves by f_avg t1 along nu."""
        return NeutralizedPoint(self.frame @ a(t1), self.point + f_avg * t1 * nu(self.frame))

    def endpoint(self, sign):
        return boundary_ray(self.frame, sign)


@dataclass(frozen=True)
class LeafCoords:
    s1: float
    s2: float

    def norm(self):
        return float(np.hypot(self.s1, self.s2))


@dataclass(frozen=True)
class ChartTriple:
    xi_minus: np.ndarray
    xi_plus: np.ndarray
    tau: float

    def distance(self, other):
        return max(float(ray_distance(self.xi_minus, other.xi_minus)),
                   float(ray_distance(self.xi_plus, other.xi_plus)),
                   abs(self.tau - other.tau))


def _limit(g, sign):
    return nu_plus(g) if sign > 0 else nu_minus(g)


def _coefficient(x, g, sign):
    # component of x along nu^sign(g) in the basis (nu, nu+, nu-); <nu+, nu-> = -1
    return -inner(x, _limit(g, -sign))


def leaf_point(Z, sign, c):
    g = Z.frame
    n = _limit(g, sign)
    return PhasePoint(Z.point + c.s1 * n, nu(g) + c.s2 * n)


def leaf_neutralized(Z, sign, c):
    """The leaf point with a frame attached: g u^{sign}(s2 / 2 sqrt 2), same endpoint g^{sign}."""
    u = u_plus if sign > 0 else u_minus
    g = Z.frame @ u(c.s2 / (2 * np.sqrt(2.0)))
    return NeutralizedPoint(g, Z.point + c.s1 * _limit(Z.frame, sign))


def leaf_lift(Z, W, sign, tol=1e-9):
    """Leaf coordinates (s1, s2) of W on the sign-leaf through Z."""
    g = Z.frame
    n = _limit(g, sign)
    db = W.point - Z.point
    dd = W.dir - nu(g)
    s1, s2 = _coefficient(db, g, sign), _coefficient(dd, g, sign)
    residual = max(adapted_norm(Z, db - s1 * n, np.zeros(3)),
                   adapted_norm(Z, np.zeros(3), dd - s2 * n))
    if residual > tol:
        raise NotOnLeaf(residual)
    return LeafCoords(float(s1), float(s2))


def chart_forward(Zref, W):
    """(h-, h+, <N(h) - N(g), nu(g-, h+)>) for W = N(h) in the chart at Zref = N(g)."""
    g_minus = Zref.endpoint(-1)
    h_minus, h_plus = W.endpoint(-1), W.endpoint(1)
    tau = inner(W.point - Zref.point, nu_of_pair(g_minus, h_plus))
    return ChartTriple(h_minus, h_plus, float(tau))


def flat_section(Zref, W):
    """N(h) - <N(h) - N(g), nu(g-, h+)> nu(h): constant along the flow line of W."""
    v_gh = nu_of_pair(Zref.endpoint(-1), W.endpoint(1))
    return W.point - inner(W.point - Zref.point, v_gh) * nu(W.frame)


def chart_inverse(Zref, triple, resolver):
    """Phase point with chart coordinates ``triple``; ``resolver`` gives N on the flow line."""
    g_minus = Zref.endpoint(-1)
    n_h = np.asarray(resolver(triple.xi_minus, triple.xi_plus), dtype=float)
    v_h = nu_of_pair(triple.xi_minus, triple.xi_plus)
    v_gh = nu_of_pair(g_minus, triple.xi_plus)
    flat = n_h - inner(n_h - Zref.point, v_gh) * v_h
    return PhasePoint(flat + triple.tau * v_h, v_h)


class PeriodicResolver:
    """Exact N on the invariant lines of enumerated closed orbits."""

    def __init__(self, orbits, tol=1e-7):
        self.orbits = list(orbits)
        self.tol = tol
        self._rep = np.array([od.repelling for od in self.orbits])
        self._att = np.array([od.attracting for od in self.orbits])

    def find(self, xi_minus, xi_plus):
        if not self.orbits:
            raise NoOrbitFound("resolver has no orbits")
        d = np.maximum(ray_distance(self._rep, xi_minus), ray_distance(self._att, xi_plus))
        i = int(np.argmin(d))
        if d[i] > self.tol:
            raise NoOrbitFound(f"no closed orbit within {self.tol:g} of the endpoint pair")
        return self.orbits[i]

    def __call__(self, xi_minus, xi_plus):
        return self.find(xi_minus, xi_plus).axis_line.base


class ApproximateResolver:
    """Heuristic N from the nearest enumerated orbit (see ``approximate_N``)."""

    def __init__(self, group, depth, orbits=None):
        from .affine import neutral_data_many

        self.group = group
        self.depth = depth
        self.orbits = neutral_data_many(group, depth) if orbits is None else orbits

    def __call__(self, xi_minus, xi_plus):
        from .affine import approximate_N

        g = frame_from_endpoints(xi_minus, xi_plus)
        return approximate_N(self.group, g, self.depth, self.orbits).point


def F_det(Z1, Z2):
    """det[N(g) - N(h), nu(g), nu(h)]."""
    return float(det3(Z1.point - Z2.point, nu(Z1.frame), nu(Z2.frame)))


def frame_coefficients(g, x):
    """Coefficients of x in the basis (nu, nu+, nu-) at the frame g."""
    return np.array([inner(x, nu(g)), -inner(x, nu_minus(g)), -inner(x, nu_plus(g))])


def adapted_norm(Z, w_base, w_dir):
    """Euclidean norm of the coefficients of (w_base, w_dir) in the frame basis at Z."""
    c = np.concatenate([frame_coefficients(Z.frame, w_base), frame_coefficients(Z.frame, w_dir)])
    return float(np.linalg.norm(c))


def contraction_factor(orbit, c, t, sign=1):
    """Adapted-norm ratio of a leaf displacement after affine flow time t.

    The geodesic time is t1 = t / f_avg, exact over whole periods of the orbit.
    For the unstable leaves (sign = -1) the flow runs backwards by t.
    """
    s = c.norm()
    if s == 0:
        raise ZeroDisplacement("leaf displacement is zero")
    if t < 0:
        raise ValueError("t must be >= 0")
    t1 = t / orbit.f_avg
    moved = np.hypot(c.s1 + sign * t * c.s2, c.s2)
    return float(moved * np.exp(-t1) / s)


def contraction_envelope(f_avg, t):
    """sqrt 2 (1 + t) e^{-t / f_avg}."""
    t = np.asarray(t, dtype=float)
    return np.sqrt(2.0) * (1 + t) * np.exp(-t / f_avg)


def half_contraction_time(f_avg):
    """Smallest T with contraction_envelope(f_avg, t) <= 1/2 for all t >= T."""
    if f_avg <= 0:
        raise ValueError("orbit average must be positive for contraction")
    k = 1.0 / f_avg
    z = lambertw(-k * np.exp(-k) / (2 * np.sqrt(2.0)), -1).real
    return float(-z / k - 1)


def exponent_lower_bound(f_avgs):
    """1 / (2 c1) with c1 the largest sampled orbit average (a surrogate for sup f)."""
    return 1.0 / (2.0 * float(max(f_avgs)))


def flowed_leaf_coords(c, t, sign=1):
    """Leaf coordinates after affine flow t, relative to the original nu^{sign}(g)."""
    return LeafCoords(c.s1 + sign * t * c.s2, c.s2)

"""Affine null planes, transverse pairs and oriented spacelike lines.

A transverse pair of null planes meets in an oriented spacelike line; the
maps ``iota`` and ``iota_prime`` pass between the two descriptions and are
equivariant for the affine Lorentz group.
"""
from dataclasses import dataclass

import numpy as np

from .affine import SpacelikeLine
from .errors import DegeneratePair, SingularSolve
from .isometry import AffineIsometry, PhasePoint, a, nu
from .lorentz import Q, cross, inner, norm2, normalize_spacelike, ray_distance, ray_normalize
from .schottky import frame_from_endpoints

TOL = 1e-9


@dataclass(frozen=True)
class NullPlane:
    """{Y : <Y - base, normal> = 0} with ``normal`` future null, third coordinate 1."""

    base: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        if n[2] <= 0:
            n = -n
        object.__setattr__(self, "base", np.asarray(self.base, dtype=float))
        object.__setattr__(self, "normal", ray_normalize(n))

    def offset(self, y):
        return inner(np.asarray(y, float) - self.base, self.normal)

    def transform(self, F):
        return NullPlane(F.apply(self.base), F.apply_vector(self.normal))

    def distance(self, other):
        """Normal mismatch plus the offset of other's base from this plane."""
        return max(float(np.max(np.abs(self.normal - other.normal))), abs(float(self.offset(other.base))))


@dataclass(frozen=True)
class TransversePair:
    p1: NullPlane
    p2: NullPlane

    def transform(self, F):
        return TransversePair(self.p1.transform(F), self.p2.transform(F))

    def distance(self, other):
        return max(self.p1.distance(other.p1), self.p2.distance(other.p2))


def null_plane_through(x, u, w):
    """Null plane through x spanned by vectors u, w (their cross product must be null)."""
    return NullPlane(x, cross(u, w))


def is_transverse(P1, P2, tol=TOL):
    return bool(ray_distance(P1.normal, P2.normal) > tol)


def intersection_direction(pair, tol=TOL):
    """Unit vector along V(P1) cap V(P2), oriented like (v0+, v0, v0-)."""
    if not is_transverse(pair.p1, pair.p2, tol):
        raise DegeneratePair("null planes are parallel")
    # det[n1, v, n2] = -<n1 x n2, n1 x n2> < 0, matching det[v0+, v0, v0-] = -2
    return normalize_spacelike(cross(pair.p1.normal, pair.p2.normal))


def null_directions(v):
    """Future null (n1, n2) orthogonal to unit spacelike v with n1 x n2 along +v."""
    v = np.asarray(v, dtype=float)
    t = np.array([0.0, 0.0, 1.0])
    e = t - inner(t, v) * v
    e = e / np.sqrt(-norm2(e))
    if e[2] < 0:
        e = -e
    f = cross(v, e)
    n1, n2 = e + f, e - f
    if inner(cross(n1, n2), v) < 0:
        n1, n2 = n2, n1
    return ray_normalize(n1), ray_normalize(n2)


def iota(p):
    """Phase point (X, v) -> the pair of null planes through X containing v."""
    n1, n2 = null_directions(p.dir)
    return TransversePair(NullPlane(p.point, n1), NullPlane(p.point, n2))


def iota_prime(pair, tol=TOL):
    """Transverse pair -> its oriented line of intersection."""
    v = intersection_direction(pair, tol)
    rows = np.stack([Q @ pair.p1.normal, Q @ pair.p2.normal])
    rhs = np.array([inner(pair.p1.base, pair.p1.normal), inner(pair.p2.base, pair.p2.normal)])
    y, _, rank, _ = np.linalg.lstsq(rows, rhs, rcond=None)
    if rank < 2:
        raise SingularSolve("plane equations are dependent")
    return SpacelikeLine(y, v)


def line_to_phase(line):
    return PhasePoint(line.base, line.dir)


def stabilizer_membership(P, F, tol=TOL):
    """Does F map the null plane P onto itself?"""
    image = F.apply_vector(P.normal)
    if image[2] <= 0:
        return False
    moved = ray_normalize(image)
    return bool(np.max(np.abs(moved - P.normal)) <= tol and abs(P.offset(F.apply(P.base))) <= tol)


def line_frame(line):
    """Canonical frame with nu equal to the line direction (null scaling <n+, n-> = -1, n+3 = n-3)."""
    n1, n2 = null_directions(line.dir)
    return frame_from_endpoints(n2, n1)


def open_orbit_witness(pair1, pair2, tol=1e-8):
    """An affine isometry taking pair1 to pair2, plane by plane."""
    l1, l2 = iota_prime(pair1), iota_prime(pair2)
    g1, g2 = line_frame(l1), line_frame(l2)
    lin = g2 @ np.linalg.inv(g1)
    F = AffineIsometry(lin, l2.base - lin @ l1.base)
    res = pair1.transform(F).distance(pair2)
    if res > tol * max(1.0, float(np.max(np.abs(F.trans)))):
        raise DegeneratePair(f"witness residual {res:.3g} exceeds {tol:g}")
    return F


@dataclass
class AnosovReport:
    word: tuple
    f_avg: float
    t_grid: list
    norms: list
    A: float
    c_hat: float
    c_envelope: float
    c_bound: float
    line_drift: float
    fit_tol: float = 0.05

    @property
    def consistent(self):
        return abs(self.c_hat - self.c_envelope) <= self.fit_tol * self.c_envelope

    @property
    def ok(self):
        return self.c_hat > 0 and self.consistent and self.c_hat >= self.c_bound * (1 - self.fit_tol)


def fiber_operator_norm(f_avg, t):
    """Norm of (s1, s2) -> (s1 + t s2, s2) e^{-t / f_avg} in the adapted norm."""
    t = np.asarray(t, dtype=float)
    return 0.5 * (t + np.sqrt(t * t + 4)) * np.exp(-t / f_avg)


def _fit_exponential(t, y):
    slope, intercept = np.polyfit(t, np.log(y), 1)
    return float(np.exp(intercept)), float(-slope)


def anosov_bundle_check(group, orbit, t_grid, c_bound=None, fit_tol=0.05):
    """Exponential decay of the flag-tangent fibre over a closed orbit.

    The fibre is the (nu+, nu+) coordinate plane of the adapted norm, moved by
    the flow with affine time converted through the orbit average.  ``c_bound``
    defaults to 1 / (2 f_avg) of this orbit; pass 1 / (2 max f_avg) for the
    group-wide bound.
    """
    t = np.asarray(list(t_grid), dtype=float)
    if t.size == 0 or np.any(t < 0):
        raise ValueError("t_grid must be nonempty and nonnegative")
    f = orbit.f_avg
    norms = fiber_operator_norm(f, t)
    if t.size >= 2:
        A, c_hat = _fit_exponential(t, norms)
        envelope = np.sqrt(2.0) * (1 + t) * np.exp(-t / f)
        _, c_env = _fit_exponential(t, envelope)
    else:
        A, c_hat, c_env = float(norms[0]), float("nan"), float("nan")
    # the line attached to N along the orbit does not move under the flow
    ref = iota_prime(iota(orbit.neutralized(0.0).phase()))
    drift = 0.0
    for s in t:
        p = orbit.neutralized(s / f).phase()
        drift = max(drift, ref.distance_to(iota_prime(iota(p))))
    bound = 1.0 / (2 * f) if c_bound is None else c_bound
    return AnosovReport(orbit.word, f, t.tolist(), norms.tolist(), A, c_hat, c_env, bound, drift,
                        fit_tol)

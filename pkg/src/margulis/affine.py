"""Affine data of the group: Margulis invariants, invariant axes, neutral data on closed orbits."""
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePair, NoOrbitFound, SingularSolve
from .isometry import PhasePoint, boundary_ray, nu, nu_plus
from .lorentz import cross, inner, ray_distance
from .schottky import axis, enumerate_closed_orbits, evaluate, frame_from_endpoints

COND_LIMIT = 1e12


def nu_of_pair(xi_minus, xi_plus, tol=1e-12):
    """Unit spacelike vector orthogonal to both endpoint rays, n- x n+ / <n-, n+>."""
    ip = inner(xi_minus, xi_plus)
    if abs(ip) <= tol * max(1.0, np.linalg.norm(xi_minus) * np.linalg.norm(xi_plus)):
        raise DegeneratePair("rays coincide")
    return cross(xi_minus, xi_plus) / ip


def neutral_vector(h):
    """Neutral eigenvector of a hyperbolic h, oriented by (repelling, attracting)."""
    ax = axis(h)
    return nu_of_pair(ax.repelling, ax.attracting)


@dataclass(frozen=True)
class SpacelikeLine:
    base: np.ndarray
    dir: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "base", np.asarray(self.base, dtype=float))
        object.__setattr__(self, "dir", np.asarray(self.dir, dtype=float))

    def canonical_base(self):
        """Point of the line nearest the origin in the euclidean sense."""
        d = self.dir
        return self.base - (self.base @ d) / (d @ d) * d

    def distance_to(self, other):
        """Max of the direction defect and the base-point defect."""
        return max(float(np.max(np.abs(self.dir - other.dir))),
                   float(np.max(np.abs(self.canonical_base() - other.canonical_base()))))

    def point_at(self, s):
        return self.base + s * self.dir


def margulis_invariant(gamma):
    """Signed translation of gamma along its invariant spacelike line."""
    return float(inner(gamma.trans, neutral_vector(gamma.linear)))


def invariant_axis(gamma):
    """The gamma-invariant spacelike line, solved in the eigenbasis of the linear part."""
    ax = axis(gamma.linear)
    v = nu_of_pair(ax.repelling, ax.attracting)
    alpha = inner(gamma.trans, v)
    w = gamma.trans - alpha * v
    n_plus, n_minus = ax.attracting, ax.repelling
    ip = inner(n_plus, n_minus)
    c_plus = inner(w, n_minus) / ip
    c_minus = inner(w, n_plus) / ip
    lam_plus = np.expm1(ax.length)
    lam_minus = np.expm1(-ax.length)
    # inverse norm of (L - I) restricted to span(n+, n-)
    cond = 1.0 / min(abs(lam_plus), abs(lam_minus))
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularSolve(f"restricted axis system has condition {cond:.3e}")
    p = -(c_plus / lam_plus) * n_plus - (c_minus / lam_minus) * n_minus
    return SpacelikeLine(p, v)


def axis_residual(gamma, line):
    """|gamma p - p - alpha v| for the base point of the line."""
    alpha = margulis_invariant(gamma)
    return float(np.max(np.abs(gamma.apply(line.base) - line.base - alpha * line.dir)))


@dataclass(frozen=True)
class OrbitNeutralData:
    """Closed orbit of a word: the invariant line and the orbit average of f.

    On this orbit N(g0 a(t)) = base + f_avg t dir, where g0 is the t = 0 frame
    with the word's endpoints.
    """

    word: tuple
    axis_line: SpacelikeLine
    alpha: float
    ell: float
    attracting: np.ndarray
    repelling: np.ndarray

    @property
    def f_avg(self):
        return self.alpha / self.ell

    def frame(self, t=0.0):
        return frame_from_endpoints(self.repelling, self.attracting, t)

    def neutralized(self, t=0.0):
        from .laminations import NeutralizedPoint

        return NeutralizedPoint(self.frame(t), self.axis_line.point_at(self.f_avg * t))

    def flow_time_for_offset(self, delta):
        """Geodesic time that moves N by ``delta`` along the axis."""
        return delta / self.f_avg


def orbit_neutral_data(group, w):
    gamma = evaluate(group, w)
    ax = axis(gamma.linear)
    line = invariant_axis(gamma)
    return OrbitNeutralData(tuple(w), line, margulis_invariant(gamma), ax.length,
                            ax.attracting, ax.repelling)


def neutral_data_many(group, max_len):
    return [orbit_neutral_data(group, w) for w, _ in enumerate_closed_orbits(group, max_len)]


@dataclass
class SignReport:
    status: str
    values: list

    @property
    def min(self):
        return min(v for _, v in self.values)


def properness_sign_diagnostic(group, max_len, tol=1e-12):
    """Signs of alpha / ell over all conjugacy classes up to ``max_len``."""
    vals = [(od.word, od.f_avg) for od in neutral_data_many(group, max_len)]
    f = np.array([v for _, v in vals])
    if np.all(np.abs(f) <= tol):
        status = "degenerate"
    elif np.all(f > tol):
        status = "all_positive"
    elif np.all(f < -tol):
        status = "all_negative"
    elif np.any(np.abs(f) <= tol) and (np.all(f >= -tol) or np.all(f <= tol)):
        status = "degenerate"
    else:
        status = "mixed"
    return SignReport(status, vals)


def approximate_N(group, g, word_depth, orbits=None):
    """Heuristic neutralised section: borrow the closest closed orbit's axis.

    Picks the enumerated orbit whose endpoint pair is nearest (g-, g+) in the
    boundary chart, reads off a flow time from the growth of nu^+ relative to
    that orbit's t = 0 frame, and places the point on the orbit's invariant
    line accordingly, paired with nu(g).  Exact when g lies on an enumerated
    orbit; no convergence guarantee elsewhere.
    """
    orbits = neutral_data_many(group, word_depth) if orbits is None else orbits
    if not orbits:
        raise NoOrbitFound("no closed orbits enumerated")
    gm, gp = boundary_ray(g, -1), boundary_ray(g, 1)
    dist = [max(float(ray_distance(od.repelling, gm)), float(ray_distance(od.attracting, gp)))
            for od in orbits]
    best = orbits[int(np.argmin(dist))]
    t = float(np.log(nu_plus(g)[2] / nu_plus(best.frame())[2]))
    return PhasePoint(best.axis_line.point_at(best.f_avg * t), nu(g))

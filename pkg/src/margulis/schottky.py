"""Schottky subgroups of SO0(2,1): words, axes, ping-pong arcs, limit sets, closed orbits.

Boundary points are future null vectors with third coordinate 1; arcs are
stored by their endpoints, traversed counterclockwise in the {x3 = 1} circle.
"""
from dataclasses import dataclass, field

import numpy as np

from . import words as W
from .errors import DegenerateEndpoints, NotHyperbolic, PingPongViolation, ValidationError
from .isometry import AffineIsometry, a, compose, invert, is_isometry, lorentz_inverse
from .lorentz import cross, inner, ray_angle, ray_distance, ray_normalize

TWO_PI = 2 * np.pi
HYPERBOLIC_TOL = 1e-6
DEDUP_TOL = 1e-8


def _ccw(theta0, theta):
    """Counterclockwise angle from theta0 to theta, in [0, 2 pi)."""
    return np.mod(np.asarray(theta) - theta0, TWO_PI)


@dataclass(frozen=True)
class Arc:
    """Closed boundary arc from ``start`` counterclockwise to ``end``."""

    start: np.ndarray
    end: np.ndarray

    @property
    def width(self):
        return float(_ccw(ray_angle(self.start), ray_angle(self.end)))

    def contains(self, xi, tol=1e-9):
        th0 = ray_angle(self.start)
        off = _ccw(th0, ray_angle(xi))
        # points just clockwise of start wrap to ~2 pi
        return (off <= self.width + tol) | (off >= TWO_PI - tol)

    def sample(self, n):
        th0 = ray_angle(self.start)
        th = th0 + np.linspace(0.0, self.width, n)
        return np.stack([np.cos(th), np.sin(th), np.ones_like(th)], axis=-1)

    def complement(self):
        return Arc(self.end, self.start)

    def transform(self, m):
        return Arc(ray_normalize(m @ self.start), ray_normalize(m @ self.end))


def arcs_disjoint(p, q, tol=1e-9):
    return not (p.contains(q.start, tol) or p.contains(q.end, tol)
                or q.contains(p.start, tol) or q.contains(p.end, tol))


@dataclass(frozen=True)
class AxisData:
    attracting: np.ndarray
    repelling: np.ndarray
    length: float


def trace(m):
    return float(np.trace(m))


def _dominant_ray(m):
    vals, vecs = np.linalg.eig(m)
    i = int(np.argmax(vals.real))
    return ray_normalize(vecs[:, i].real)


def axis(h, tol=HYPERBOLIC_TOL):
    """Endpoints and translation length of a hyperbolic element of SO0(2,1)."""
    h = np.asarray(h, dtype=float)
    tr = trace(h)
    if tr <= 3 + tol:
        raise NotHyperbolic(f"trace {tr:.12g} <= 3")
    ell = float(np.arccosh((tr - 1) / 2))
    return AxisData(_dominant_ray(h), _dominant_ray(lorentz_inverse(h)), ell)


def frame_from_endpoints(xi_minus, xi_plus, t=0.0, tol=1e-9):
    """The frame with the given backward/forward endpoints, flowed by t.

    Representatives are scaled to <n+, n-> = -1 with equal third coordinates,
    which pins the t = 0 frame.
    """
    pm = ray_normalize(xi_plus)
    mm = ray_normalize(xi_minus)
    ip = inner(pm, mm)
    if ip > -tol:
        raise DegenerateEndpoints("endpoints coincide")
    lam = 1.0 / np.sqrt(-ip)
    np_, nm = lam * pm, lam * mm
    g = np.column_stack([cross(np_, nm), (np_ - nm) / np.sqrt(2.0), (np_ + nm) / np.sqrt(2.0)])
    return g @ a(t) if t else g


def standard_arcs(h):
    """Repelling and attracting arcs of a hyperbolic element.

    In the coordinate x on the boundary where the element acts as x -> e^l x
    the arcs are |x| <= e^{-l/2} and |x| >= e^{l/2}.
    """
    ax = axis(h)
    g0 = frame_from_endpoints(ax.repelling, ax.attracting)
    r = np.exp(-ax.length / 2)

    def ray(x):
        return ray_normalize(g0 @ np.array([2 * x, x * x - 1, x * x + 1]))

    return Arc(ray(-r), ray(r)), Arc(ray(1 / r), ray(-1 / r))


@dataclass
class SchottkyGroup:
    """Generators (affine) with one (repelling, attracting) arc pair each."""

    generators: list
    pingpong: list = field(default=None)

    def __post_init__(self):
        self.generators = [g if isinstance(g, AffineIsometry) else AffineIsometry(*g)
                           for g in self.generators]
        for i, g in enumerate(self.generators, 1):
            if not is_isometry(g.linear, 1e-8):
                raise ValidationError(f"generator {i} is not in SO0(2,1)")
            if abs(trace(g.linear) - 3) < HYPERBOLIC_TOL or trace(g.linear) < 3:
                raise ValidationError(f"generator {i} is not hyperbolic")
        if self.pingpong is None:
            self.pingpong = [standard_arcs(g.linear) for g in self.generators]
        self._inverses = [invert(g) for g in self.generators]

    @property
    def rank(self):
        return len(self.generators)

    def letter(self, s):
        if s == 0 or abs(s) > self.rank:
            raise IndexError(f"letter {s} out of range for {self.rank} generators")
        return self.generators[s - 1] if s > 0 else self._inverses[-s - 1]

    def source_arc(self, s):
        # s maps the complement of its source arc into its target arc
        rep, att = self.pingpong[abs(s) - 1]
        return rep if s > 0 else att

    def target_arc(self, s):
        rep, att = self.pingpong[abs(s) - 1]
        return att if s > 0 else rep

    def twisted(self, sign):
        """Same linear parts, translations multiplied by ``sign``."""
        gens = [AffineIsometry(g.linear, sign * g.trans) for g in self.generators]
        return SchottkyGroup(gens, self.pingpong)


def evaluate(group, w):
    """Left-to-right product of the letters of a reduced word."""
    W.check_reduced(w)
    out = AffineIsometry.identity()
    for s in w:
        out = compose(out, group.letter(s))
    return out


def evaluate_many(group, words):
    """Evaluate a list of reduced words, sharing prefixes."""
    cache = {(): AffineIsometry.identity()}
    out = []
    for w in words:
        W.check_reduced(w)
        i = len(w)
        while w[:i] not in cache:
            i -= 1
        f = cache[w[:i]]
        for j in range(i, len(w)):
            f = compose(f, group.letter(w[j]))
            cache[w[:j + 1]] = f
        out.append(f)
    return out


@dataclass
class PingPongReport:
    ok: bool
    violations: list

    def raise_for_violation(self):
        if not self.ok:
            raise PingPongViolation(self.violations[0])


def validate_pingpong(group, samples_per_arc=64, tol=1e-9):
    if samples_per_arc < 2:
        raise ValueError("samples_per_arc must be >= 2")
    violations = []
    arcs = []
    for i in range(group.rank):
        rep, att = group.pingpong[i]
        arcs += [(f"repelling[{i + 1}]", rep), (f"attracting[{i + 1}]", att)]
    for x in range(len(arcs)):
        for y in range(x + 1, len(arcs)):
            if not arcs_disjoint(arcs[x][1], arcs[y][1], tol):
                violations.append(f"arcs {arcs[x][0]} and {arcs[y][0]} intersect")
    for s in W.letters(group.rank):
        m = group.letter(s).linear
        pts = group.source_arc(s).complement().sample(samples_per_arc)
        images = ray_normalize(pts @ m.T)
        inside = group.target_arc(s).contains(images, 1e-7)
        if not np.all(inside):
            k = int(np.argmin(inside))
            violations.append(
                f"letter {s} maps boundary angle {float(ray_angle(pts[k])):.6f} outside its target arc")
    return PingPongReport(not violations, violations)


def dedup_rays(rays, tol=DEDUP_TOL):
    rays = np.asarray(rays, dtype=float).reshape(-1, 3)
    order = np.argsort(ray_angle(rays), kind="stable")
    kept = []
    for i in order:
        if not kept or np.min(ray_distance(rays[kept], rays[i])) > tol:
            kept.append(i)
    return rays[sorted(kept)]


def limit_set_sample(group, depth, dedup=True):
    """Attracting fixed points of every reduced word of length <= depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    words = W.words_up_to(group.rank, depth)
    rays = np.array([_dominant_ray(f.linear) for f in evaluate_many(group, words)])
    return dedup_rays(rays) if dedup else rays


def recurrent_membership(group, g, depth, tol=1e-6, sample=None):
    from .isometry import boundary_ray

    lam = limit_set_sample(group, depth) if sample is None else sample
    return all(float(np.min(ray_distance(lam, boundary_ray(g, s)))) <= tol for s in (1, -1))


def enumerate_closed_orbits(group, max_len):
    """(word, axis) for one cyclically reduced representative per conjugacy class."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    reps = W.conjugacy_representatives(group.rank, max_len)
    return [(w, axis(f.linear)) for w, f in zip(reps, evaluate_many(group, reps))]

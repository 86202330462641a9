"""Computable bracket for the Gamma-invariant path metric on phase space.

Phase points are vectors of R^6 (point, direction) with the euclidean metric d.
Each translate gamma U of a base ball U carries d_gamma(x, y) = d(gamma^-1 x,
gamma^-1 y); a path may switch translates wherever consecutive waypoints share
one, and its length adds up the local distances.  The upper bound is the
shortest such path through a finite waypoint graph; the lower bound uses an
empirical bilipschitz constant measured on the same graph.
"""
from dataclasses import dataclass, field

import numpy as np

from .affine import neutral_data_many
from .errors import NotCovered
from .isometry import AffineIsometry, PhasePoint
from .schottky import evaluate_many
from .words import words_up_to

# edges shorter than this join numerically coincident points and are left out of K
COINCIDE = 1e-8


def _vec(p):
    return p.as_array() if isinstance(p, PhasePoint) else np.asarray(p, dtype=float)


def _act(gamma, z):
    """Act on stacked phase vectors (..., 6)."""
    z = np.asarray(z, dtype=float)
    return np.concatenate([gamma.apply(z[..., :3]), gamma.apply_vector(z[..., 3:])], axis=-1)


@dataclass
class Bracket:
    lower: float
    upper: float
    k_hat: float
    alpha_hat: float
    hops: int

    def as_tuple(self):
        return self.lower, self.upper


@dataclass
class PathMetric:
    """Waypoint graph on a finite sample of the recurrent set.

    ``sample`` holds phase vectors of neutralised periodic points; they are
    pulled into a Dirichlet-style cell around the first one, and U is the
    euclidean ball about it whose radius covers the reduced sample with
    ``margin`` to spare.
    """

    group: object
    sample: np.ndarray
    cover_depth: int = 1
    margin: float = 1.25
    max_steps: int = 64
    lookahead: int = 3
    words: list = field(init=False)
    maps: list = field(init=False)
    inverses: list = field(init=False)

    def __post_init__(self):
        self.words = words_up_to(self.group.rank, self.cover_depth, include_empty=True)
        self.maps = evaluate_many(self.group, self.words)
        self.inverses = [g.inverse() for g in self.maps]
        self._moves = evaluate_many(self.group, words_up_to(self.group.rank, self.lookahead))
        self.center = np.asarray(self.sample[0], dtype=float)
        reduced = np.array([self.reduce(z)[0] for z in self.sample])
        self.radius = self.margin * float(np.max(np.linalg.norm(reduced - self.center, axis=1)))
        self.reduced_sample = reduced
        self._build_graph(reduced)

    # -- cell reduction ---------------------------------------------------
    def reduce(self, z):
        """Descent to the translate of z closest to the centre.

        Each step tries every word up to ``lookahead`` letters and keeps the
        best strict improvement.  Returns (reduced vector, element applied).
        """
        z = _vec(z)
        applied = AffineIsometry.identity()
        best = np.linalg.norm(z - self.center)
        for _ in range(self.max_steps):
            cands = np.stack([_act(g, z) for g in self._moves])
            dists = np.linalg.norm(cands - self.center, axis=1)
            i = int(np.argmin(dists))
            if dists[i] >= best * (1 - 1e-12):
                break
            best = dists[i]
            z = cands[i]
            applied = self._moves[i] @ applied
        return z, applied

    # -- translates -------------------------------------------------------
    def pulled_back(self, z):
        """gamma^-1 z for every enumerated gamma, shape (n_words, ..., 6)."""
        return np.stack([_act(gi, z) for gi in self.inverses])

    def membership(self, z):
        """Boolean mask (n_words, n_points) of z lying in gamma U."""
        back = self.pulled_back(np.atleast_2d(z))
        return np.linalg.norm(back - self.center, axis=-1) <= self.radius

    def local_distances(self, z):
        """d_gamma between all point pairs, shape (n_words, n, n)."""
        back = self.pulled_back(np.atleast_2d(z))
        return np.linalg.norm(back[:, :, None, :] - back[:, None, :, :], axis=-1)

    def _edges(self, z):
        inside = self.membership(z)
        dg = self.local_distances(z)
        shared = inside[:, :, None] & inside[:, None, :]
        w = np.where(shared, dg, np.inf).min(axis=0)
        np.fill_diagonal(w, 0.0)
        return w

    def _build_graph(self, reduced):
        nodes = np.concatenate([_act(g, reduced) for g in self.maps])
        self.nodes = nodes
        self._node_weights = self._edges(nodes)
        inside = self.membership(nodes)
        depth = self.radius - np.linalg.norm(self.pulled_back(nodes) - self.center, axis=-1)
        best_depth = np.where(inside, depth, -np.inf).max(axis=0)
        self.alpha_hat = float(best_depth[: len(reduced)].min())
        self.k_hat = self._ratio(nodes, self._node_weights)

    def _ratio(self, z, w):
        """Largest d / (path-edge weight) over finite edges, at least 1."""
        d = np.linalg.norm(z[:, None, :] - z[None, :, :], axis=-1)
        ok = np.isfinite(w) & (w > COINCIDE)
        if not ok.any():
            return 1.0
        return float(max(1.0, np.max(d[ok] / w[ok])))

    def epsilon_separation(self):
        """Half the smallest displacement of the reduced sample by nontrivial words."""
        disp = [np.linalg.norm(_act(g, self.reduced_sample) - self.reduced_sample, axis=1).min()
                for w, g in zip(self.words, self.maps) if w]
        return 0.5 * float(min(disp))

    # -- bracket ----------------------------------------------------------
    def bracket(self, x, y, max_hops=3):
        x, y = _vec(x), _vec(y)
        _, delta = self.reduce(x)
        x, y = _act(delta, x), _act(delta, y)
        if np.allclose(x, y, rtol=0, atol=0):
            return Bracket(0.0, 0.0, self.k_hat, self.alpha_hat, 0)
        ends = np.stack([x, y])
        inside = self.membership(ends)
        if not inside[:, 0].any():
            raise NotCovered("x lies in no enumerated translate")
        if not inside[:, 1].any():
            raise NotCovered("y lies in no enumerated translate")
        z = np.concatenate([ends, self.nodes])
        n0 = len(self.nodes)
        w = np.full((n0 + 2, n0 + 2), np.inf)
        w[2:, 2:] = self._node_weights
        # only edges touching x or y need fresh local distances
        mask = self.membership(z)
        back = self.pulled_back(z)
        for i in range(2):
            dg = np.linalg.norm(back - back[:, i : i + 1, :], axis=-1)
            shared = mask & mask[:, i : i + 1]
            row = np.where(shared, dg, np.inf).min(axis=0)
            w[i, :] = row
            w[:, i] = row
        np.fill_diagonal(w, 0.0)
        dist = w[0].copy()
        hops = 1
        for hops in range(2, max_hops + 1):
            nxt = np.minimum(dist, (dist[:, None] + w).min(axis=0))
            if np.array_equal(nxt, dist):
                break
            dist = nxt
        upper = float(dist[1])
        k_hat = max(self.k_hat, self._cross_ratio(z, w))
        d_gamma = np.linalg.norm(back[:, 0] - back[:, 1], axis=-1).min()
        lower = min(self.alpha_hat / 5, float(d_gamma)) / k_hat
        if not lower <= upper:
            raise AssertionError(f"bracket inverted: {lower} > {upper}")
        return Bracket(float(lower), upper, float(k_hat), self.alpha_hat, hops)

    def _cross_ratio(self, z, w):
        d = np.linalg.norm(z[:2, None, :] - z[None, :, :], axis=-1)
        ww = w[:2]
        ok = np.isfinite(ww) & (ww > COINCIDE)
        return float(np.max(d[ok] / ww[ok])) if ok.any() else 1.0


def recurrent_sample(group, max_len=2, per_orbit=3):
    """Phase vectors of neutralised periodic points spread over each period."""
    out = []
    for od in neutral_data_many(group, max_len):
        for j in range(per_orbit):
            out.append(od.neutralized(j * od.ell / per_orbit).phase().as_array())
    return np.array(out)


def path_metric_bracket(group, x, y, cover_depth=1, max_hops=3, metric=None):
    """(lower, upper) bracket of the path metric between phase points x and y."""
    metric = metric or PathMetric(group, recurrent_sample(group), cover_depth)
    return metric.bracket(x, y, max_hops).as_tuple()

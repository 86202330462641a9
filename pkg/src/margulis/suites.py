"""Numerical check suites shared by the CLI and the test-suite.

Every suite returns a list of ``Check`` records (name, worst residual,
tolerance) plus, where useful, table rows for emission.
"""
from dataclasses import asdict, dataclass

import numpy as np

from . import flags as FL
from . import laminations as LM
from .affine import axis_residual, invariant_axis, margulis_invariant, neutral_data_many
from .errors import DegeneratePair
from .isometry import (AffineIsometry, PhasePoint, a, affine_flow, horocycle_coefficient, nu,
                       nu_minus, nu_plus, random_isometry, section_identities_check, u_plus)
from .lorentz import cross, det3, inner
from .metric import PathMetric, _act, recurrent_sample
from .precise import word_invariant
from .schottky import enumerate_closed_orbits, evaluate, limit_set_sample
from .words import reduced_words


@dataclass
class Check:
    name: str
    value: float
    tol: float
    mode: str = "max"  # "max": value <= tol; "min": value >= tol

    @property
    def passed(self):
        if not np.isfinite(self.value):
            return False
        return bool(self.value <= self.tol if self.mode == "max" else self.value >= self.tol)

    def to_dict(self):
        d = asdict(self)
        d["value"] = float(self.value)
        d["pass"] = self.passed
        return d


def all_passed(checks):
    return all(c.passed for c in checks)


def _worst(values):
    values = np.asarray(values, dtype=float)
    return float(np.max(values)) if values.size else 0.0


# -- Minkowski algebra ----------------------------------------------------

def lorentz_checks(rng, n=10_000, tol=1e-10):
    u, v, w = (rng.normal(size=(n, 3)) for _ in range(3))
    uv = cross(u, v)
    pairing = np.abs(det3(u, v, w) - inner(u, cross(v, w)))
    norm_id = np.abs(inner(uv, uv) - (inner(u, v) ** 2 - inner(u, u) * inner(v, v)))
    anti = np.max(np.abs(uv + cross(v, u)), axis=1)
    return [
        Check("det_pairing", _worst(pairing), tol),
        Check("cross_norm_identity", _worst(norm_id), tol),
        Check("cross_antisymmetry", _worst(anti), tol),
    ]


def _random_frames(rng, n, t_max=3.0):
    return [random_isometry(rng, t_max) for _ in range(n)]


def section_checks(rng, n=1000, tol=1e-10):
    worst = {}
    one_param = comm = 0.0
    for _ in range(n):
        g, h = random_isometry(rng), random_isometry(rng)
        t, s, s2, c = rng.uniform(-3, 3, size=4)
        for k, v in section_identities_check(g, h, t, s).items():
            worst[k] = max(worst.get(k, 0.0), v)
        one_param = max(one_param, np.max(np.abs(u_plus(s) @ u_plus(s2) - u_plus(s + s2))))
        comm = max(comm, np.max(np.abs(a(t) @ u_plus(c * np.exp(-t)) - u_plus(c) @ a(t))))
    out = [Check(k, v, tol) for k, v in worst.items()]
    out += [Check("u_plus_one_parameter", float(one_param), tol),
            Check("a_u_plus_commutation", float(comm), tol)]
    return out


def horocycle_checks(rng, n=1000, tol=1e-9, window=3.0, anti_window=2.0, anti_boost=1.0):
    """nu-relation on h = g a(t1) u+(t2), and antisymmetry of its coefficient.

    The antisymmetry compares two vectors whose size grows like e^{2|t1|} t2^2
    while the rounding defect of the frames is amplified by the same factor,
    so it is sampled on a narrower window than the relation itself.
    """
    rel = anti = 0.0
    for _ in range(n):
        g = random_isometry(rng)
        t1, t2 = rng.uniform(-window, window, size=2)
        h = g @ a(t1) @ u_plus(t2)
        rel = max(rel, np.max(np.abs(nu(h) - nu(g) - horocycle_coefficient(g, h))))
        g = random_isometry(rng, anti_boost)
        t1, t2 = rng.uniform(-anti_window, anti_window, size=2)
        h = g @ a(t1) @ u_plus(t2)
        anti = max(anti, np.max(np.abs(horocycle_coefficient(g, h) + horocycle_coefficient(h, g))))
    return [Check("horocycle_nu_relation", float(rel), tol),
            Check("horocycle_antisymmetry", float(anti), tol)]


def leaf_checks(group, rng, max_len=2, n=200, tol=1e-10):
    """Leaf round trips, flow equivariance and Gamma-equivariance on periodic points."""
    orbits = neutral_data_many(group, max_len)
    gens = [group.letter(s) for s in (1, -1, 2, -2)[: 2 * group.rank]]
    trip = flow = rescale = equi = 0.0
    for _ in range(n):
        od = orbits[rng.integers(len(orbits))]
        Z = od.neutralized(rng.uniform(-1, 1))
        sign = 1 if rng.random() < 0.5 else -1
        c = LM.LeafCoords(*rng.uniform(-1, 1, size=2))
        W = LM.leaf_point(Z, sign, c)
        back = LM.leaf_lift(Z, W, sign, tol=1e-8)
        trip = max(trip, abs(back.s1 - c.s1), abs(back.s2 - c.s2))
        # affine flow moves the leaf point to the leaf of N + t nu with coords (s1 + t s2, s2)
        t = rng.uniform(0, 2)
        moved = affine_flow(W, sign * t)
        shifted = LM.NeutralizedPoint(Z.frame, Z.point + sign * t * nu(Z.frame))
        want = LM.leaf_point(shifted, sign, LM.LeafCoords(c.s1 + sign * t * c.s2, c.s2))
        flow = max(flow, float(np.max(np.abs(moved.as_array() - want.as_array()))))
        # in the flowed frame the same coordinates pick up the factor e^{-t1}
        t = rng.uniform(0, 1)
        t1 = t / od.f_avg
        got = LM.leaf_lift(Z.flow(sign * t1, od.f_avg), affine_flow(W, sign * t), sign, tol=1e-8)
        scaled = np.exp(-t1) * np.array([c.s1 + sign * t * c.s2, c.s2])
        rescale = max(rescale, float(np.max(np.abs(np.array([got.s1, got.s2]) - scaled))))
        g = gens[rng.integers(len(gens))]
        lhs = g.act(W)
        rhs = LM.leaf_point(Z.act(g), sign, c)
        equi = max(equi, float(np.max(np.abs(lhs.as_array() - rhs.as_array()))))
    return [Check("leaf_round_trip", trip, tol), Check("leaf_flow_equivariance", flow, tol),
            Check("leaf_flowed_frame_coords", rescale, 1e-9),
            Check("leaf_gamma_equivariance", equi, 1e-9)]


def identity_suite(group, rng):
    return (lorentz_checks(rng) + section_checks(rng) + horocycle_checks(rng)
            + leaf_checks(group, rng))


# -- limit set and orbits -------------------------------------------------

def limit_set_checks(group, depth, tol=1e-6):
    lam = limit_set_sample(group, depth)
    bigger = limit_set_sample(group, depth + 1)
    worst = 0.0
    for s in (1, -1, 2, -2)[: 2 * group.rank]:
        img = lam @ group.letter(s).linear.T
        img = img / img[:, 2:3]
        d = np.sqrt(((img[:, None, :] - bigger[None, :, :]) ** 2).sum(-1)).min(axis=1)
        worst = max(worst, float(d.max()))
    return lam, [Check("limit_set_invariance", worst, tol)]


def orbit_rows(group, max_len):
    rows = []
    for od in neutral_data_many(group, max_len):
        rows.append({"word": list(od.word), "ell": od.ell, "alpha": od.alpha, "f_avg": od.f_avg,
                     "axis_base": od.axis_line.base.tolist(), "axis_dir": od.axis_line.dir.tolist()})
    return rows


def orbit_checks(group, max_len, tol=1e-9):
    rows = orbit_rows(group, max_len)
    worst_axis = 0.0
    for w, _ in enumerate_closed_orbits(group, max_len):
        g = evaluate(group, w)
        worst_axis = max(worst_axis, axis_residual(g, invariant_axis(g)))
    return rows, [Check("min_alpha", min(r["alpha"] for r in rows), 0.0, "min"),
                  Check("axis_invariance", worst_axis, tol)]


def margulis_algebra_checks(group, rng, max_len=4, tol=1e-9):
    """Conjugation invariance, additivity on squares, axis residual and sign.

    The algebra is evaluated in extended precision (see ``precise``); the
    double-precision alpha is compared against it as a separate check.
    """
    conj = square = dbl = axis_res = 0.0
    alphas = []
    for w, _ in enumerate_closed_orbits(group, max_len):
        al = word_invariant(group, w)
        alphas.append(al)
        eta = AffineIsometry(random_isometry(rng), rng.normal(size=3))
        conj = max(conj, abs(word_invariant(group, w, eta) - al))
        square = max(square, abs(word_invariant(group, tuple(w) + tuple(w)) - 2 * al))
        g = evaluate(group, w)
        dbl = max(dbl, abs(margulis_invariant(g) - al))
        axis_res = max(axis_res, axis_residual(g, invariant_axis(g)))
    return alphas, [Check("alpha_conjugation", conj, tol), Check("alpha_square", square, tol),
                    Check("axis_invariance", axis_res, tol),
                    Check("alpha_double_vs_extended", dbl, tol),
                    Check("min_alpha", min(alphas), 0.0, "min")]


# -- contraction ----------------------------------------------------------

UNIT_GRID = [(s1, s2) for s1 in (-1, 0, 1) for s2 in (-1, 0, 1) if (s1, s2) != (0, 0)]


def contraction_table(group, max_len, t_grid, coords=UNIT_GRID, tail=10.0, n_tail=201):
    """Factor rows on ``t_grid`` plus envelope and half-contraction checks per orbit."""
    rows = []
    env_excess = 0.0
    half_excess = -np.inf
    for od in neutral_data_many(group, max_len):
        T = LM.half_contraction_time(od.f_avg)
        tail_grid = T + np.linspace(0.0, tail, n_tail)
        for s1, s2 in coords:
            c = LM.LeafCoords(float(s1), float(s2))
            for t in t_grid:
                fac = LM.contraction_factor(od, c, float(t))
                env = float(LM.contraction_envelope(od.f_avg, t))
                env_excess = max(env_excess, fac - env)
                rows.append({"word": list(od.word), "s1": s1, "s2": s2, "t": float(t), "factor": fac,
                             "envelope": env, "T": T, "conversion": "orbit_average"})
            tail_fac = [LM.contraction_factor(od, c, float(t)) for t in tail_grid]
            half_excess = max(half_excess, max(tail_fac) - 0.5)
    return rows, [Check("factor_below_envelope", env_excess, 1e-12),
                  Check("half_contraction_after_T", float(half_excess), 0.0)]


# -- charts and F ---------------------------------------------------------

def chart_roundtrip_checks(group, max_len=3, tol=1e-8, ref_time=0.3, target_time=-0.7):
    orbits = neutral_data_many(group, max_len)
    resolver = LM.PeriodicResolver(orbits)
    rows = []
    worst_pi = worst_amalg = 0.0
    skipped = 0
    for o1 in orbits:
        Z = o1.neutralized(ref_time)
        for o2 in orbits:
            W = o2.neutralized(target_time)
            try:
                tr = LM.chart_forward(Z, W)
            except DegeneratePair:
                skipped += 1
                continue
            P = LM.chart_inverse(Z, tr, resolver)
            e_pi = float(np.max(np.abs(P.as_array() - W.phase().as_array())))
            tr2 = LM.chart_forward(Z, LM.NeutralizedPoint(W.frame, P.point))
            e_am = tr.distance(tr2)
            worst_pi, worst_amalg = max(worst_pi, e_pi), max(worst_amalg, e_am)
            rows.append({"ref": list(o1.word), "target": list(o2.word), "tau": tr.tau,
                         "pi_after_chart": e_pi, "chart_after_pi": e_am})
    return rows, skipped, [Check("pi_after_chart", worst_pi, tol),
                           Check("chart_after_pi", worst_amalg, tol),
                           Check("pairs", float(len(rows)), 100.0, "min")]


def fdet_checks(group, rng, max_len=2, n=200):
    """F vanishes on central-stable pairs and is flow- and Gamma-invariant."""
    orbits = neutral_data_many(group, max_len)
    gens = [group.letter(s) for s in (1, -1, 2, -2)[: 2 * group.rank]]
    vanish = flow = equi = 0.0
    for _ in range(n):
        o1, o2 = orbits[rng.integers(len(orbits))], orbits[rng.integers(len(orbits))]
        Z1 = o1.neutralized(rng.uniform(-1, 1))
        # same forward endpoint: the stable leaf through a flowed copy of Z1
        c = LM.LeafCoords(*rng.uniform(-1, 1, size=2))
        Z2 = LM.leaf_neutralized(Z1.flow(rng.uniform(-2, 2), o1.f_avg), 1, c)
        vanish = max(vanish, abs(LM.F_det(Z1, Z2)))
        X1 = o2.neutralized(rng.uniform(-1, 1))
        base = LM.F_det(Z1, X1)
        t1, t2 = rng.uniform(-2, 2, size=2)
        moved = LM.F_det(Z1.flow(t1, o1.f_avg), X1.flow(t2, o2.f_avg))
        flow = max(flow, abs(moved - base))
        g = gens[rng.integers(len(gens))]
        equi = max(equi, abs(LM.F_det(Z1.act(g), X1.act(g)) - base))
    return [Check("F_central_stable_zero", vanish, 1e-8), Check("F_flow_invariance", flow, 1e-9),
            Check("F_gamma_invariance", equi, 1e-9)]


# -- flags ----------------------------------------------------------------

def _random_phase(rng, spread=3.0):
    return PhasePoint(rng.normal(size=3) * spread, nu(random_isometry(rng)))


def flag_checks(rng, n=1000, tol=1e-9):
    lines = pairs = anti = witness = 0.0
    for _ in range(n):
        p = _random_phase(rng)
        pair = FL.iota(p)
        line = FL.iota_prime(pair)
        lines = max(lines, line.distance_to(FL.SpacelikeLine(p.point, p.dir)))
        pairs = max(pairs, FL.iota(FL.line_to_phase(line)).distance(pair))
        swapped = FL.TransversePair(pair.p2, pair.p1)
        anti = max(anti, float(np.max(np.abs(FL.intersection_direction(pair)
                                              + FL.intersection_direction(swapped)))))
        other = FL.iota(_random_phase(rng))
        F = FL.open_orbit_witness(pair, other)
        witness = max(witness, pair.transform(F).distance(other))
    return [Check("iota_prime_then_iota", pairs, tol), Check("iota_then_iota_prime", lines, tol),
            Check("direction_antisymmetry", anti, tol), Check("witness_residual", witness, 1e-8)]


# -- metric bracket -------------------------------------------------------

def metric_bracket_checks(group, rng, n_pairs=100, cover_depth=1, max_hops=3, metric=None):
    """Order, Gamma-invariance and shared-translate bounds of the path-metric bracket.

    Invariance is checked under the generators and their inverses, which
    generate the group; longer words lose digits to the e^{2 l} conditioning
    of their linear parts.
    """
    metric = metric or PathMetric(group, recurrent_sample(group, 3), cover_depth)
    gens = [group.letter(s) for s in (1, -1, 2, -2)[: 2 * group.rank]]
    pts = metric.reduced_sample
    rows = []
    order = inv = shared = 0.0
    for _ in range(n_pairs):
        i, j = rng.choice(len(pts), 2, replace=False)
        x, y = pts[i], pts[j]
        b = metric.bracket(x, y, max_hops)
        order = max(order, b.lower - b.upper)
        g = gens[rng.integers(len(gens))]
        b2 = metric.bracket(_act(g, x), _act(g, y), max_hops)
        inv = max(inv, abs(b.lower - b2.lower), abs(b.upper - b2.upper))
        # both points are in U itself, so the identity translate is shared
        shared = max(shared, b.upper - float(np.linalg.norm(x - y)))
        rows.append({"i": int(i), "j": int(j), "lower": b.lower, "upper": b.upper,
                     "euclidean": float(np.linalg.norm(x - y))})
    info = {"k_hat": metric.k_hat, "alpha_hat": metric.alpha_hat, "radius": metric.radius,
            "epsilon_separation": metric.epsilon_separation(), "nodes": len(metric.nodes)}
    return rows, info, [Check("lower_minus_upper", order, 0.0),
                        Check("bracket_gamma_invariance", inv, 1e-9),
                        Check("upper_minus_shared_translate", shared, 1e-12)]


# -- Anosov bundle --------------------------------------------------------

DEFAULT_T_GRID = [0.25 * k for k in range(21)]


def anosov_checks(group, max_len=4, t_grid=DEFAULT_T_GRID, fit_tol=0.05):
    orbits = neutral_data_many(group, max_len)
    bound = LM.exponent_lower_bound([od.f_avg for od in orbits])
    reports = [FL.anosov_bundle_check(group, od, t_grid, bound, fit_tol) for od in orbits]
    min_c = min(r.c_hat for r in reports)
    worst_fit = max(abs(r.c_hat - r.c_envelope) / r.c_envelope for r in reports)
    t0 = [r.norms[0] for r in reports if r.t_grid[0] == 0.0]
    return reports, [
        Check("min_c_hat", min_c, bound, "min"),
        Check("fit_vs_envelope_relative", worst_fit, fit_tol),
        Check("line_drift", max(r.line_drift for r in reports), 1e-9),
        Check("norm_at_zero", _worst(np.abs(np.array(t0) - 1.0)), 1e-12),
    ]

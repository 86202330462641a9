import numpy as np
import pytest

from margulis.errors import DegenerateEndpoints, NotHyperbolic, ValidationError
from margulis.isometry import (AffineIsometry, a, boundary_ray, geodesic_flow, lorentz_inverse,
                               random_isometry, rotation)
from margulis.lorentz import ray_distance, ray_normalize
from margulis.schottky import (SchottkyGroup, axis, enumerate_closed_orbits, evaluate,
                               evaluate_many, frame_from_endpoints, limit_set_sample,
                               recurrent_membership, standard_arcs, validate_pingpong)
from margulis.words import reduced_words, words_up_to


def test_evaluate_basics(group):
    assert evaluate(group, ()).allclose(AffineIsometry.identity(), 0)
    with pytest.raises(ValueError):
        evaluate(group, (1, -1))
    with pytest.raises(IndexError):
        evaluate(group, (3,))


def test_evaluate_homomorphism(group):
    for w in reduced_words(2, 2):
        for v in reduced_words(2, 2):
            if w[-1] == -v[0]:
                continue
            lhs = evaluate(group, w + v)
            rhs = evaluate(group, w) @ evaluate(group, v)
            scale = max(1.0, np.abs(lhs.linear).max())
            assert lhs.allclose(rhs, 1e-10 * scale)


def test_evaluate_many_matches(group):
    ws = words_up_to(2, 3)
    for w, f in zip(ws, evaluate_many(group, ws)):
        assert f.allclose(evaluate(group, w), 0)


def test_pingpong_preset(group):
    assert validate_pingpong(group).ok


def test_pingpong_equal_generators_fail(group):
    g = group.generators[0]
    report = validate_pingpong(SchottkyGroup([g, g]))
    assert not report.ok
    assert any("intersect" in v for v in report.violations)


def test_pingpong_single_generator():
    assert validate_pingpong(SchottkyGroup([AffineIsometry(a(4), np.zeros(3))])).ok
    with pytest.raises(ValueError):
        validate_pingpong(SchottkyGroup([AffineIsometry(a(4), np.zeros(3))]), samples_per_arc=1)


def test_standard_arc_half_width():
    rep, att = standard_arcs(a(4))
    assert np.isclose(rep.width, 4 * np.arctan(np.exp(-2)))
    assert np.isclose(att.width, 4 * np.arctan(np.exp(-2)))


def test_axis_of_a():
    ax = axis(a(2.5))
    assert np.allclose(ax.attracting, [0, 1, 1]) and np.allclose(ax.repelling, [0, -1, 1])
    assert np.isclose(ax.length, 2.5)
    with pytest.raises(NotHyperbolic):
        axis(np.eye(3))


def test_axis_conjugation(rng):
    for _ in range(50):
        g = random_isometry(rng)
        t = rng.uniform(0.5, 4)
        ax = axis(g @ a(t) @ lorentz_inverse(g))
        assert np.isclose(ax.length, t)
        assert np.allclose(ax.attracting, ray_normalize(g @ [0, 1, 1]), atol=1e-8)
        assert np.allclose(ax.repelling, ray_normalize(g @ [0, -1, 1]), atol=1e-8)


def test_axis_eigenvalue(group):
    for w, ax in enumerate_closed_orbits(group, 3):
        m = evaluate(group, w).linear
        v = m @ ax.attracting
        assert np.allclose(v, np.exp(ax.length) * ax.attracting, rtol=1e-8)


def test_axis_equivariance(group):
    gamma = group.letter(1).linear
    inv = group.letter(-1).linear
    for w, ax in enumerate_closed_orbits(group, 2):
        h = evaluate(group, w).linear
        moved = axis(gamma @ h @ inv)
        assert np.allclose(moved.attracting, ray_normalize(gamma @ ax.attracting), atol=1e-8)


def test_frame_from_endpoints(rng):
    g = frame_from_endpoints([0, -1, 1], [0, 1, 1])
    assert np.allclose(g, np.eye(3), atol=1e-15)
    for _ in range(50):
        h = random_isometry(rng)
        xm, xp = boundary_ray(h, -1), boundary_ray(h, 1)
        t = rng.uniform(-2, 2)
        f = frame_from_endpoints(xm, xp, t)
        assert np.allclose(boundary_ray(f, -1), xm, atol=1e-9)
        assert np.allclose(boundary_ray(f, 1), xp, atol=1e-9)
        assert np.allclose(geodesic_flow(frame_from_endpoints(xm, xp), t), f, atol=1e-10)
    with pytest.raises(DegenerateEndpoints):
        frame_from_endpoints([0, 1, 1], [0, 2, 2])


def test_limit_set_depth1(group):
    assert len(limit_set_sample(group, 1)) == 4
    assert len(limit_set_sample(group, 3, dedup=False)) == 4 + 12 + 36


def test_limit_set_invariance(group):
    lam = limit_set_sample(group, 5)
    bigger = limit_set_sample(group, 6)
    for s in (1, -1, 2, -2):
        img = ray_normalize(lam @ group.letter(s).linear.T)
        d = np.array([ray_distance(bigger, x).min() for x in img])
        assert d.max() <= 1e-6


def test_limit_set_in_arcs(group):
    lam = limit_set_sample(group, 4)
    inside = np.zeros(len(lam), bool)
    for rep, att in group.pingpong:
        inside |= rep.contains(lam, 1e-9) | att.contains(lam, 1e-9)
    assert inside.all()


def test_free_group_injective(group):
    ws = words_up_to(2, 6)
    hs = evaluate_many(group, ws)
    lin = np.array([h.linear.ravel() for h in hs])
    ray = np.array([axis(h.linear).attracting for h in hs])
    # compare by attracting ray then full matrix, avoiding an all-pairs matrix comparison
    order = np.lexsort(ray.T[:2])
    for i, j in zip(order[:-1], order[1:]):
        if np.max(np.abs(ray[i] - ray[j])) < 1e-6:
            assert np.max(np.abs(lin[i] - lin[j])) > 1e-6


def test_recurrent_membership(group):
    g = frame_from_endpoints(*[axis(group.letter(1).linear).repelling,
                               axis(group.letter(1).linear).attracting])
    assert recurrent_membership(group, g, 1)
    assert recurrent_membership(group, g, 3)
    # the direction (1, 0) lies between the ping-pong arcs of the preset
    far = frame_from_endpoints([-1 / np.sqrt(2), -1 / np.sqrt(2), 1], [1 / np.sqrt(2), 1 / np.sqrt(2), 1])
    assert not recurrent_membership(group, far, 3)


def test_closed_orbits(group):
    orbs = enumerate_closed_orbits(group, 1)
    assert [w for w, _ in orbs] == [(1,), (-1,), (2,), (-2,)]
    data = dict(enumerate_closed_orbits(group, 4))
    # (2, 1) is a rotation of the representative (1, 2)
    assert np.isclose(data[(1, 2)].length, axis(evaluate(group, (2, 1)).linear).length, rtol=1e-10)
    assert np.isclose(data[(1, 1)].length, 2 * data[(1,)].length, rtol=1e-9)
    assert np.isclose(data[(1, 2, 1, 2)].length, 2 * data[(1, 2)].length, rtol=1e-9)


def test_group_validation():
    with pytest.raises(ValidationError):
        SchottkyGroup([AffineIsometry.identity()])
    with pytest.raises(ValidationError):
        SchottkyGroup([AffineIsometry(2 * np.eye(3), np.zeros(3))])


def test_rotated_preset_axes_cross(group):
    a1 = axis(group.letter(1).linear)
    a2 = axis(group.letter(2).linear)
    assert np.allclose(a2.attracting, ray_normalize(rotation(np.pi / 2) @ a1.attracting))

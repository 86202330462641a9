import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from margulis.lorentz import (CausalClass, causal_class, cross, det3, inner, normalize_spacelike,
                              ray_angle, ray_distance, ray_from_angle, ray_normalize)

coord = st.floats(-50, 50, allow_nan=False, allow_subnormal=False)
vec3 = st.tuples(coord, coord, coord).map(np.array)


def test_inner_examples():
    assert inner([1, 0, 0], [1, 0, 0]) == 1
    assert inner([0, 0, 1], [0, 0, 1]) == -1
    assert inner([0, 1, 1], [0, 1, 1]) == 0


def test_cross_examples():
    assert np.array_equal(cross([1, 0, 0], [0, 1, 0]), [0, 0, -1])
    u = np.array([0.3, -2.0, 1.5])
    assert np.array_equal(cross(u, u), np.zeros(3))


def test_cross_of_limit_vectors():
    # hand evaluation of the component formula at (0, 1, 1)/sqrt2 and (0, -1, 1)/sqrt2
    p = np.array([0, 1, 1]) / np.sqrt(2)
    m = np.array([0, -1, 1]) / np.sqrt(2)
    assert np.allclose(cross(p, m), [1, 0, 0], atol=1e-15)
    assert np.allclose(cross(m, p), [-1, 0, 0], atol=1e-15)


def test_cross_orthogonal_in_form():
    rng = np.random.default_rng(0)
    u, v = rng.normal(size=(2, 100, 3))
    w = cross(u, v)
    assert np.max(np.abs(inner(w, u))) < 1e-12
    assert np.max(np.abs(inner(w, v))) < 1e-12


def test_det3_examples():
    assert np.isclose(det3([1, 0, 0], [0, 1, 0], [0, 0, 1]), 1)
    u, w = np.array([1.0, 2, 3]), np.array([0.5, -1, 2])
    assert abs(det3(u, u, w)) < 1e-12


@settings(max_examples=200, deadline=None)
@given(vec3, vec3, vec3)
def test_det_pairing(u, v, w):
    scale = max(1.0, np.abs(u).max() * np.abs(v).max() * np.abs(w).max())
    assert abs(det3(u, v, w) - inner(u, cross(v, w))) <= 1e-12 * scale


@settings(max_examples=200, deadline=None)
@given(vec3, vec3)
def test_cross_norm_identity(u, v):
    uv = cross(u, v)
    lhs = inner(uv, uv)
    rhs = inner(u, v) ** 2 - inner(u, u) * inner(v, v)
    assert abs(lhs - rhs) <= 1e-11 * max(1.0, (np.abs(u).max() * np.abs(v).max()) ** 2)


@settings(max_examples=200, deadline=None)
@given(vec3, vec3)
def test_cross_antisymmetric(u, v):
    assert np.array_equal(cross(u, v), -cross(v, u))


def test_det3_trilinear_alternating():
    rng = np.random.default_rng(1)
    for _ in range(200):
        u, u2, v, w = rng.normal(size=(4, 3))
        s, t = rng.normal(size=2)
        assert abs(det3(s * u + t * u2, v, w) - s * det3(u, v, w) - t * det3(u2, v, w)) < 1e-10
        assert abs(det3(u, v, w) + det3(v, u, w)) < 1e-10
        assert abs(det3(u, v, w) + det3(u, w, v)) < 1e-10


def test_causal_class():
    assert causal_class([0, 0, 1]) is CausalClass.TIMELIKE
    assert causal_class([1, 0, 0]) is CausalClass.SPACELIKE
    assert causal_class([0, 1, 1]) is CausalClass.NULL
    assert causal_class([0, 0, 0]) is CausalClass.ZERO
    # tolerance is absolute in <v, v>
    assert causal_class([0, 1e3, 1e3 + 1e-13], tol=1e-9) is CausalClass.NULL


def test_normalize_and_rays():
    v = normalize_spacelike([3.0, 0.0, 1.0])
    assert np.isclose(inner(v, v), 1)
    xi = ray_normalize([0, 2, 2])
    assert np.array_equal(xi, [0, 1, 1])
    th = np.linspace(-3, 3, 7)
    assert np.allclose(ray_angle(ray_from_angle(th)), th)
    assert np.isclose(ray_distance([1, 0, 1], [-1, 0, 1]), 2)

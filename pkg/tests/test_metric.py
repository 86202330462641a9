import numpy as np
import pytest

from margulis.errors import NotCovered
from margulis.metric import PathMetric, _act, path_metric_bracket, recurrent_sample


@pytest.fixture(scope="module")
def metric(group):
    return PathMetric(group, recurrent_sample(group, 3), cover_depth=1)


def test_same_point_is_zero(group, metric):
    x = metric.reduced_sample[4]
    assert metric.bracket(x, x).as_tuple() == (0.0, 0.0)
    assert path_metric_bracket(group, x, x, metric=metric) == (0.0, 0.0)


def test_bracket_order_and_shared_translate(metric, rng):
    pts = metric.reduced_sample
    for _ in range(30):
        i, j = rng.choice(len(pts), 2, replace=False)
        b = metric.bracket(pts[i], pts[j])
        assert 0 < b.lower <= b.upper
        assert b.upper <= np.linalg.norm(pts[i] - pts[j]) + 1e-12
        assert b.k_hat >= 1 and b.alpha_hat > 0


def test_bracket_gamma_invariant(group, metric, rng):
    pts = metric.reduced_sample
    for s in (1, -1, 2, -2):
        g = group.letter(s)
        i, j = rng.choice(len(pts), 2, replace=False)
        b = metric.bracket(pts[i], pts[j])
        b2 = metric.bracket(_act(g, pts[i]), _act(g, pts[j]))
        assert abs(b.lower - b2.lower) < 1e-9 and abs(b.upper - b2.upper) < 1e-9


def test_reduction_recovers_cell(group, metric):
    x = metric.reduced_sample[7]
    for w in [(1,), (2, -1), (-2, -2)]:
        y = x
        for s in w:
            y = _act(group.letter(s), y)
        z, _ = metric.reduce(y)
        assert np.linalg.norm(z - x) < 1e-6


def test_not_covered(metric):
    far = metric.center + np.array([1e3, 0, 0, 0, 0, 0])
    with pytest.raises(NotCovered):
        metric.bracket(metric.center, far)


def test_epsilon_separation_positive(metric):
    assert metric.epsilon_separation() > 0

import math

import numpy as np
import pytest

from conftest import random_triangles
from tridist import DomainError, EmptySample, chord_cdf, chord_sweep, eval_H, triangle_from_degrees, triangle_from_sides
from tridist.chord_dist import case_layout, empirical_cdf_from_samples
from tridist.quadrature import integrate_segments


def test_h1_vanishes_at_zero(randoms):
    for t in randoms:
        assert eval_H(1, t, 0.0) == 0.0


def test_h2_meets_h1_at_h_a(randoms):
    for t in randoms:
        assert eval_H(2, t, t.h_a) == pytest.approx(eval_H(1, t, t.h_a), abs=1e-12)


def test_eval_h_vectorized_matches_scalar():
    t = triangle_from_degrees(80, 70, 30)
    ls = np.linspace(t.h_b, t.c, 7)
    assert np.allclose(eval_H(5, t, ls), [eval_H(5, t, float(l)) for l in ls], rtol=0, atol=1e-15)


@pytest.mark.parametrize("l", [-0.01, 1.01])
def test_eval_h_domain(l):
    with pytest.raises(DomainError):
        eval_H(1, triangle_from_sides(1, 1, 1), l)


def test_eval_h_bad_index():
    with pytest.raises(ValueError):
        eval_H(8, triangle_from_sides(1, 1, 1), 0.5)


def test_endpoints(reference):
    for t in reference:
        F = chord_cdf(t)
        assert F(0.0) == 0.0
        assert F(t.a) == pytest.approx(1.0, abs=1e-9)
        assert F(-1.0) == 0.0 and F(t.a + 1) == 1.0


@pytest.mark.parametrize("angles, labels", [((130, 30, 20), ["H1", "H2", "H3", "H4"]),
                                            ((65, 60, 55), ["H1", "H2", "H5", "H6", "H7", "H4"]),
                                            ((80, 70, 30), ["H1", "H2", "H5", "H3", "H7", "H4"]),
                                            ((60, 60, 60), ["H1", "H6"]),
                                            ((120, 30, 30), ["H1", "H2", "H4"])])
def test_piece_layout(angles, labels):
    assert chord_cdf(triangle_from_degrees(*angles)).labels == labels


def test_layout_breakpoints_case2():
    t = triangle_from_degrees(65, 60, 55)
    _, bps, _ = case_layout(t)
    assert bps == [0.0, t.h_a, t.h_b, t.h_c, t.c, t.b, t.a]


def test_continuity_at_breakpoints(reference, randoms):
    for t in reference + randoms:
        assert max(chord_cdf(t).continuity_gaps(), default=0.0) <= 1e-9


def test_monotone_for_many_triangles():
    for t in random_triangles(per_case=34, seed=7):
        v = chord_cdf(t)(np.linspace(0, t.a, 2000))
        assert np.all(np.diff(v) >= -1e-12), str(t)
        assert v.min() >= 0 and v.max() <= 1 + 1e-12


def test_mean_chord_length_is_pi_area_over_perimeter(reference, randoms):
    # Cauchy: for isotropic uniform random lines, E[L] = pi A / u
    for t in reference + randoms[::5]:
        F = chord_cdf(t)
        mean = integrate_segments(lambda l: 1.0 - float(F(l)), list(F.breakpoints), 0.0, t.a)
        assert mean == pytest.approx(math.pi * t.area / t.u, rel=1e-9)


def test_cdf_matches_sweep_at_points():
    t = triangle_from_degrees(65, 60, 55)
    emp = chord_sweep(t).empirical_cdf()
    F = chord_cdf(t)
    assert abs(F(0.5) - emp(0.5)) <= 0.01
    assert abs(F(0.9) - emp(0.9)) <= 0.01
    # the last piece, used on [b, a]
    l = 0.5 * (t.b + t.a)
    assert abs(eval_H(4, t, l) / t.u - emp(l)) <= 0.01


def test_sweep_horizontal_equilateral_is_linear():
    t = triangle_from_sides(1, 1, 1)
    res = chord_sweep(t)
    first = res.length[res.theta == 0.0]
    assert first[0] == 0.0
    assert first[-1] == pytest.approx(1.0, abs=1e-3 / (math.sqrt(3) / 2))
    assert np.allclose(np.diff(first), 1e-3 / (math.sqrt(3) / 2), rtol=1e-9)


def test_sweep_parallel_to_b():
    t = triangle_from_degrees(80, 70, 30)
    res = chord_sweep(t)
    at_gamma = res.length[np.abs(res.theta - t.gamma) < 1e-12]
    # linear in the offset with slope b / h_b
    assert np.allclose(np.diff(at_gamma), 1e-3 * t.b / t.h_b, rtol=1e-9)
    assert at_gamma[-1] <= t.b + 1e-12


def test_sweep_bounds_and_order(reference):
    for t in reference:
        res = chord_sweep(t, dtheta=math.pi / 90, dd=2e-3)
        assert res.length.min() >= 0 and res.length.max() <= t.a + 1e-12
        assert np.all(np.diff(res.theta) >= 0)
        assert res.theta.min() == 0 and res.theta.max() == pytest.approx(math.pi)
        assert len(res) == len(list(res))


def test_sweep_rejects_bad_steps():
    with pytest.raises(ValueError):
        chord_sweep(triangle_from_sides(1, 1, 1), dtheta=0)


def test_empirical_cdf_examples():
    one = empirical_cdf_from_samples([0.5])
    assert one(0.49) == 0 and one(0.5) == 1 and one(2) == 1
    assert empirical_cdf_from_samples([1, 2, 3])(2) == pytest.approx(2 / 3)
    with pytest.raises(EmptySample):
        empirical_cdf_from_samples([])

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tridist import (CaseLabel, DegenerateTriangle, InvalidAngles, SpecParseError, classify, parse_triangle,
                     triangle_from_angles, triangle_from_degrees, triangle_from_sides)
from tridist.geometry import format_triangle

FIELDS = ("a", "b", "c", "alpha", "beta", "gamma", "h_a", "h_b", "h_c", "u", "area")


def test_equilateral_from_sides():
    t = triangle_from_sides(1, 1, 1)
    for ang in t.angles:
        assert ang == pytest.approx(math.pi / 3, abs=1e-15)
    assert t.area == pytest.approx(math.sqrt(3) / 4, rel=1e-15)
    for h in (t.h_a, t.h_b, t.h_c):
        assert h == pytest.approx(math.sqrt(3) / 2, rel=1e-15)
    assert t.u == 3


def test_sides_are_sorted_and_angle_from_law_of_cosines():
    t = triangle_from_sides(2, 3, 4)
    assert t.sides == (4, 3, 2)
    assert t.alpha == pytest.approx(math.acos(-0.25), abs=1e-14)


@pytest.mark.parametrize("sides", [(1, 1, 3), (1, 2, 3), (0, 1, 1), (-1, 2, 2), (1, 1, float("nan"))])
def test_degenerate_sides_rejected(sides):
    with pytest.raises(DegenerateTriangle):
        triangle_from_sides(*sides)


def test_from_degrees_obtuse_example():
    t = triangle_from_degrees(130, 30, 20, a=1)
    s130 = math.sin(math.radians(130))
    assert t.b == pytest.approx(math.sin(math.radians(30)) / s130, rel=1e-14)
    assert t.c == pytest.approx(math.sin(math.radians(20)) / s130, rel=1e-14)


def test_thirty_sixty_ninety():
    t = triangle_from_degrees(90, 60, 30, a=2)
    assert (t.a, t.b, t.c) == pytest.approx((2, math.sqrt(3), 1), rel=1e-14)


def test_angles_in_any_order():
    assert triangle_from_degrees(20, 130, 30) == triangle_from_degrees(130, 30, 20)


@pytest.mark.parametrize("angles", [(60, 60, 61), (90, 90, 0), (100, 100, -20)])
def test_bad_angles_rejected(angles):
    with pytest.raises(InvalidAngles):
        triangle_from_degrees(*angles)


def test_angle_sum_exact_after_construction():
    t = triangle_from_angles(1.0, 1.1, math.pi - 2.1 + 5e-10)
    assert sum(t.angles) == pytest.approx(math.pi, abs=1e-12)


@pytest.mark.parametrize("angles, case", [((130, 30, 20), CaseLabel.CASE1),
                                          ((65, 60, 55), CaseLabel.CASE2),
                                          ((80, 70, 30), CaseLabel.CASE3)])
def test_classify_reference_triangles(angles, case):
    assert classify(triangle_from_degrees(*angles)) is case


def test_classify_boundaries():
    # right angle is not obtuse
    assert classify(triangle_from_degrees(90, 60, 30)) is not CaseLabel.CASE1
    # equilateral: h_c = sqrt(3)/2 < c = 1
    assert classify(triangle_from_sides(1, 1, 1)) is CaseLabel.CASE2


def test_invariants_hold(reference, randoms):
    for t in reference + randoms:
        assert t.a >= t.b >= t.c > 0
        assert t.alpha >= t.beta >= t.gamma > 0
        assert abs(sum(t.angles) - math.pi) <= 1e-12
        assert abs(t.a / math.sin(t.alpha) - t.b / math.sin(t.beta)) <= 1e-9 * t.a
        assert t.h_a <= t.h_b <= t.h_c
        s = t.u / 2
        assert t.area == pytest.approx(math.sqrt(s * (s - t.a) * (s - t.b) * (s - t.c)), rel=1e-9)


def test_vertices_match_frame():
    t = triangle_from_degrees(80, 70, 30)
    A, B, C = t.vertices()
    assert np.allclose(C, 0) and np.allclose(B, (t.a, 0))
    assert np.linalg.norm(A - C) == pytest.approx(t.b)
    assert np.linalg.norm(A - B) == pytest.approx(t.c)


@pytest.mark.parametrize("spec, sides", [("angles:90,60,30@a=2", (2, math.sqrt(3), 1)),
                                         ("sides:3,4,5", (5, 4, 3)),
                                         ("sides: 1, 1, 1", (1, 1, 1)),
                                         ("angles:60,60,60@a=1e0", (1, 1, 1))])
def test_parse_triangle(spec, sides):
    assert parse_triangle(spec).sides == pytest.approx(sides, rel=1e-14)


@pytest.mark.parametrize("spec", ["", "sides:1,2", "angles:60,60,60", "circle:1", "sides:a,b,c"])
def test_parse_triangle_rejects(spec):
    with pytest.raises(SpecParseError):
        parse_triangle(spec)


def test_format_round_trip():
    t = triangle_from_degrees(65, 60, 55)
    back = parse_triangle(format_triangle(t))
    assert back.sides == t.sides
    assert back.angles == pytest.approx(t.angles, rel=1e-14)


side = st.floats(min_value=0.1, max_value=10.0)


@settings(max_examples=200, deadline=None)
@given(side, side, side)
def test_relabeling_invariance(x, y, z):
    try:
        ref = triangle_from_sides(x, y, z)
    except DegenerateTriangle:
        return
    for perm in itertools.permutations((x, y, z)):
        t = triangle_from_sides(*perm)
        for f in FIELDS:
            assert getattr(t, f) == pytest.approx(getattr(ref, f), rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0), st.floats(0.1, 5.0))
def test_angle_round_trip(x, y, a):
    if x + y >= math.pi - 0.05:
        return
    t = triangle_from_angles(x, y, math.pi - x - y, a=a)
    back = triangle_from_angles(*t.angles, a=t.a)
    for f in FIELDS:
        assert getattr(back, f) == pytest.approx(getattr(t, f), rel=1e-9)
    # exactly one case predicate holds
    preds = [t.alpha > math.pi / 2,
             t.alpha <= math.pi / 2 and t.h_c < t.c,
             t.alpha <= math.pi / 2 and t.h_c >= t.c]
    assert sum(preds) == 1
    assert classify(t) is [CaseLabel.CASE1, CaseLabel.CASE2, CaseLabel.CASE3][preds.index(True)]


def test_scaled_keeps_angles():
    t = triangle_from_degrees(130, 30, 20)
    s = t.scaled(3.0)
    assert s.angles == t.angles
    assert s.sides == pytest.approx(tuple(3 * x for x in t.sides), rel=1e-15)
    assert s.area == pytest.approx(9 * t.area, rel=1e-14)
    with pytest.raises(DegenerateTriangle):
        t.scaled(0)

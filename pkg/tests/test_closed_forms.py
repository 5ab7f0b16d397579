import math

import numpy as np
import pytest

from tridist import (InvalidScale, NAMED, equilateral_unit, named, pdist_cdf, pdist_pdf, rhombus_unit, scaled,
                     triangle_from_degrees, triangle_from_sides)
from tridist.closed_forms import iso_pi6_concave_pair, iso_pi6_rhombus_pair
from tridist.quadrature import integrate_segments

ALL = sorted(NAMED)
R3 = math.sqrt(3)

# mpmath at 30 digits from the equilateral pdf formula
G_ET_QUARTER = 1.903748675487953855


@pytest.mark.parametrize("name", ALL)
def test_cdf_endpoints(name):
    dist = named(name)
    lo, hi = dist.support
    assert dist.cdf(lo) == pytest.approx(0.0, abs=1e-12)
    assert dist.cdf(hi) == pytest.approx(1.0, abs=1e-12)
    assert dist.cdf(hi + 1) == 1.0 and dist.cdf(-1) == 0.0


@pytest.mark.parametrize("name", ALL)
def test_continuous_across_branches(name):
    dist = named(name)
    for b in dist.breakpoints:
        eps = 1e-9 * dist.support[1]
        assert dist.cdf(b - eps) == pytest.approx(dist.cdf(b + eps), abs=1e-8)
        assert dist.pdf(b - eps) == pytest.approx(dist.pdf(b + eps), abs=1e-6)


@pytest.mark.parametrize("name", ALL)
def test_pdf_normalised_and_nonnegative(name):
    dist = named(name)
    lo, hi = dist.support
    total = integrate_segments(lambda x: float(dist.pdf(x)), list(dist.breakpoints), lo, hi, 1e-11, 40)
    assert total == pytest.approx(1.0, abs=1e-8)
    x = np.linspace(lo, hi, 5001)
    assert dist.pdf(x).min() >= -1e-12
    v = dist.cdf(x)
    assert v.min() >= 0 and v.max() <= 1 and np.all(np.diff(v) >= -1e-12)


@pytest.mark.parametrize("name", ALL)
def test_cdf_derivative_is_pdf(name):
    dist = named(name)
    hi = dist.support[1]
    x = np.linspace(0, hi, 403)[1:-1]
    if dist.breakpoints:
        x = x[np.min(np.abs(x[:, None] - np.array(dist.breakpoints)[None, :]), axis=1) > 1e-3 * hi]
    h = 1e-6 * hi
    fd = (dist.cdf(x + h) - dist.cdf(x - h)) / (2 * h)
    assert np.abs(fd - dist.pdf(x)).max() <= 1e-6 * dist.pdf(x).max()


def test_equilateral_pdf_value():
    assert equilateral_unit().pdf(0.25) == pytest.approx(G_ET_QUARTER, rel=1e-13)


def test_equilateral_matches_general_formula():
    t = triangle_from_sides(1, 1, 1)
    x = np.linspace(0, 1, 301)
    assert np.abs(equilateral_unit().cdf(x) - pdist_cdf(t)(x)).max() <= 1e-12
    assert np.abs(equilateral_unit().pdf(x) - pdist_pdf(t)(x)).max() <= 1e-9


def test_rhombus_against_direct_sampling():
    # independent sampler: u e1 + v e2 with the 60 degree rhombus edges
    rng = np.random.default_rng(12345)
    n = 1_000_000
    e = np.array([[1.0, 0.0], [0.5, R3 / 2]])
    p = rng.random((n, 2)) @ e
    q = rng.random((n, 2)) @ e
    d = np.hypot(*(p - q).T)
    for x in (0.3, 0.9, 1.4):
        # 4 standard errors of a proportion
        assert rhombus_unit().cdf(x) == pytest.approx(np.mean(d <= x), abs=4 * 0.5 / math.sqrt(n))


def test_pair_forms_against_decomposition_identities():
    t = triangle_from_degrees(120, 30, 30)
    x = np.linspace(0, 1, 401)
    G_T = pdist_cdf(t)(x)
    rhombus = 2 * rhombus_unit().cdf(R3 * x) - G_T
    concave = (3 * equilateral_unit().cdf(x) - G_T) / 2
    assert np.abs(iso_pi6_rhombus_pair().cdf(x) - rhombus).max() <= 1e-12
    assert np.abs(iso_pi6_concave_pair().cdf(x) - concave).max() <= 1e-12


@pytest.mark.parametrize("s", [0, -1, float("nan"), float("inf")])
def test_scaled_rejects_bad_factor(s):
    with pytest.raises(InvalidScale):
        scaled(equilateral_unit(), s)


def test_scaled_distribution():
    base = rhombus_unit()
    assert scaled(base, 1) is base
    s = 2.5
    d = scaled(base, s)
    assert d.support == pytest.approx((0, s * R3))
    assert d.breakpoints == pytest.approx(tuple(s * b for b in base.breakpoints))
    x = np.linspace(0, R3, 50)
    assert np.array_equal(d.cdf(s * x), base.cdf(s * x / s))
    total = integrate_segments(lambda y: float(d.pdf(y)), list(d.breakpoints), 0, d.support[1], 1e-11, 40)
    assert total == pytest.approx(1.0, abs=1e-8)


def test_named_lookup():
    assert named("equilateral-unit").name == "equilateral-unit"
    with pytest.raises(KeyError, match="choose from"):
        named("square")

"""Cross distances between two triangles that share a side.

If a region of area ``S`` is split into triangles of areas ``S1`` and
``S2``, a random pair lands in (1,1), (1,2), (2,1) or (2,2) with
probabilities ``(S1/S)^2, S1 S2/S^2, S1 S2/S^2, (S2/S)^2``. Knowing the
whole-region CDF ``G`` and the two triangle CDFs therefore pins down the
cross term ``G12 = (S^2 G - S1^2 G1 - S2^2 G2) / (2 S1 S2)``.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .closed_forms import NamedDistribution, equilateral_unit, rhombus_unit, scaled
from .exceptions import NotACdf, ShapeMismatch, SpecParseError, UnsupportedConfiguration
from .geometry import Triangle, triangle_from_degrees
from .point_dist import pdist_cdf, pdist_pdf

SIDE_RTOL = 1e-9
CDF_SLACK = 1e-6
PROBE_POINTS = 1000


class PairShape(enum.Enum):
    CONVEX = "convex"
    CONCAVE = "concave"


def _evaluate(fn: Callable, x: np.ndarray) -> np.ndarray:
    out = np.asarray(fn(x), dtype=float)
    if out.shape != x.shape:
        out = np.array([float(fn(v)) for v in x])
    return out


def shared_side(t1: Triangle, t2: Triangle) -> Optional[float]:
    """Length of a side common to both triangles, if any."""
    for s1 in t1.sides:
        for s2 in t2.sides:
            if abs(s1 - s2) <= SIDE_RTOL * max(s1, s2):
                return s1
    return None


@dataclass
class TrianglePairConfig:
    """Two triangles sharing a side, plus the CDF of their union.

    ``placement1``/``placement2`` are optional ``(3, 2)`` vertex arrays that
    fix the relative position (needed only for simulation and for the
    union diameter). ``whole_cdf`` must be supplied by the caller.
    """

    t1: Triangle
    t2: Triangle
    shape: PairShape = PairShape.CONVEX
    whole_cdf: Optional[Callable] = None
    whole_pdf: Optional[Callable] = None
    placement1: Optional[np.ndarray] = None
    placement2: Optional[np.ndarray] = None
    diameter: Optional[float] = None
    name: str = "pair"
    shared: float = field(init=False)

    def __post_init__(self):
        self.shape = PairShape(self.shape)
        side = shared_side(self.t1, self.t2)
        if side is None:
            raise ShapeMismatch("triangles %s and %s share no side length" % (self.t1, self.t2))
        self.shared = side
        if self.diameter is None:
            if self.placement1 is not None and self.placement2 is not None:
                pts = np.vstack([self.placement1, self.placement2])
                self.diameter = float(np.max(np.hypot(*(pts[:, None, :] - pts[None, :, :]).T)))
            else:
                # any cross path detours through the shared side
                self.diameter = self.t1.a + self.t2.a

    @property
    def S1(self) -> float:
        return self.t1.area

    @property
    def S2(self) -> float:
        return self.t2.area

    @property
    def S(self) -> float:
        return self.S1 + self.S2


def _sanity(cdf: Callable, diameter: float, what: str) -> None:
    grid = np.linspace(0.0, diameter, PROBE_POINTS)
    v = _evaluate(cdf, grid)
    if not np.all(np.isfinite(v)):
        raise NotACdf("%s: non-finite values" % what)
    if v.min() < -CDF_SLACK or v.max() > 1 + CDF_SLACK:
        raise NotACdf("%s leaves [0, 1]: range [%.3g, %.3g]" % (what, v.min(), v.max()))
    if np.min(np.diff(v)) < -CDF_SLACK:
        raise NotACdf("%s decreases by %.3g" % (what, -np.min(np.diff(v))))
    if abs(v[-1] - 1.0) > CDF_SLACK:
        raise NotACdf("%s is %.9g at the union diameter %.6g, expected 1" % (what, v[-1], diameter))


def _combine(weights, fns, kind: str):
    """Linear combination of distributions, settling pure roundoff.

    Values that leave the valid range by less than a rounding bound on the
    terms are snapped back; anything larger is left for the caller to see.
    """
    def fn(d):
        d = np.asarray(d, dtype=float)
        terms = [w * np.asarray(f(d), dtype=float) for w, f in zip(weights, fns)]
        out = np.sum(terms, axis=0)
        noise = 64 * np.finfo(float).eps * np.sum(np.abs(terms), axis=0)
        out = np.where((out < 0) & (out >= -noise), 0.0, out)
        if kind == "cdf":
            out = np.where((out > 1) & (out <= 1 + noise), 1.0, out)
        return float(out) if out.ndim == 0 else out
    return fn


def _mix(S, S1, S2, whole, part1, part2, kind):
    den = 2 * S1 * S2
    return _combine([S * S / den, -S1 * S1 / den, -S2 * S2 / den], [whole, part1, part2], kind)


def cross_cdf_convex(cfg: TrianglePairConfig, check: bool = True) -> Callable:
    """CDF of the distance between a point in ``t1`` and a point in ``t2``."""
    if cfg.shape is not PairShape.CONVEX:
        raise UnsupportedConfiguration("cross_cdf_convex needs a convex pair")
    if cfg.whole_cdf is None:
        raise ValueError("whole_cdf of the union must be supplied")
    whole = cfg.whole_cdf
    fn = _mix(cfg.S, cfg.S1, cfg.S2, lambda d: _evaluate(whole, d), pdist_cdf(cfg.t1), pdist_cdf(cfg.t2), "cdf")
    if check:
        _sanity(fn, cfg.diameter, "cross CDF of %s" % cfg.name)
    return fn


def cross_pdf_convex(cfg: TrianglePairConfig) -> Callable:
    if cfg.shape is not PairShape.CONVEX:
        raise UnsupportedConfiguration("cross_pdf_convex needs a convex pair")
    if cfg.whole_pdf is None:
        raise ValueError("whole_pdf of the union must be supplied")
    whole = cfg.whole_pdf
    return _mix(cfg.S, cfg.S1, cfg.S2, lambda d: _evaluate(whole, d), pdist_pdf(cfg.t1), pdist_pdf(cfg.t2), "pdf")


def _check_pi6(t: Triangle) -> None:
    want = [math.radians(x) for x in (120.0, 30.0, 30.0)]
    if any(abs(x - y) > 1e-9 for x, y in zip(t.angles, want)):
        raise ShapeMismatch("expected a (120, 30, 30) degree triangle, got %s" % t)


def cross_cdf_concave_equilateral(t_unit: Triangle) -> Callable:
    """Cross CDF for two of the three (120, 30, 30) triangles tiling an equilateral one.

    All three pieces are congruent, so the three-way split collapses to
    ``G12 = (3 G - G1) / 2`` with ``G`` the equilateral CDF of side ``a``.
    """
    _check_pi6(t_unit)
    G = scaled(equilateral_unit(), t_unit.a).cdf
    return _combine([1.5, -0.5], [G, pdist_cdf(t_unit)], "cdf")


def cross_pdf_concave_equilateral(t_unit: Triangle) -> Callable:
    _check_pi6(t_unit)
    g = scaled(equilateral_unit(), t_unit.a).pdf
    return _combine([1.5, -0.5], [g, pdist_pdf(t_unit)], "pdf")


def _congruent(t1: Triangle, t2: Triangle) -> bool:
    return all(abs(x - y) <= SIDE_RTOL * t1.a for x, y in zip(t1.sides, t2.sides))


def cross_cdf(cfg: TrianglePairConfig) -> Callable:
    """Dispatch on the pair shape; only solvable concave pairs are accepted."""
    if cfg.shape is PairShape.CONVEX:
        return cross_cdf_convex(cfg)
    if _congruent(cfg.t1, cfg.t2):
        try:
            _check_pi6(cfg.t1)
        except ShapeMismatch:
            pass
        else:
            return cross_cdf_concave_equilateral(cfg.t1)
    raise UnsupportedConfiguration(
        "concave pairs are solvable only for congruent (120, 30, 30) triangles "
        "tiling an equilateral triangle")


def cross_distribution(cfg: TrianglePairConfig) -> NamedDistribution:
    """Cross CDF and PDF of a configuration bundled with their support."""
    if cfg.shape is PairShape.CONVEX:
        cdf = cross_cdf_convex(cfg)
        pdf = cross_pdf_convex(cfg) if cfg.whole_pdf is not None else None
    else:
        cdf = cross_cdf(cfg)
        pdf = cross_pdf_concave_equilateral(cfg.t1)
    return NamedDistribution(cfg.name, pdf, cdf, (0.0, cfg.diameter))


def rhombus_pi6(a: float = 1.0) -> TrianglePairConfig:
    """Two (120, 30, 30) triangles joined along their long side ``a``."""
    t = triangle_from_degrees(120, 30, 30, a=a)
    p1 = t.vertices()
    p2 = p1 * np.array([1.0, -1.0])
    whole = scaled(rhombus_unit(), t.b)  # rhombus side is the short side a/sqrt(3)
    return TrianglePairConfig(t, t, PairShape.CONVEX, whole.cdf, whole.pdf, p1, p2,
                              name="rhombus-pi6")


def concave_pi6(a: float = 1.0) -> TrianglePairConfig:
    """Two of the three (120, 30, 30) triangles fanning out from an equilateral centre."""
    t = triangle_from_degrees(120, 30, 30, a=a)
    p1_, p2_, p3_ = np.array([[0.0, 0.0], [a, 0.0], [0.5 * a, 0.5 * math.sqrt(3) * a]])
    centre = (p1_ + p2_ + p3_) / 3
    # rows are A (obtuse apex), B, C
    place1 = np.array([centre, p2_, p1_])
    place2 = np.array([centre, p3_, p2_])
    whole = scaled(equilateral_unit(), a)
    return TrianglePairConfig(t, t, PairShape.CONCAVE, whole.cdf, whole.pdf, place1, place2,
                              name="concave-pi6")


PAIRS = {"rhombus-pi6": rhombus_pi6, "concave-pi6": concave_pi6}


def named_pair(name: str) -> TrianglePairConfig:
    try:
        return PAIRS[name]()
    except KeyError:
        raise KeyError("unknown pair config %r; choose from %s" % (name, ", ".join(PAIRS))) from None


def load_cdf_table(path) -> Callable:
    """Read a two-column ``x,cdf`` CSV (header optional) as a linear interpolant."""
    xs, ys = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            try:
                x, y = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if xs:
                    raise SpecParseError("bad row in %s: %r" % (path, row))
                continue  # header
            xs.append(x)
            ys.append(y)
    if len(xs) < 2:
        raise SpecParseError("%s needs at least two data rows" % path)
    xs_a, ys_a = np.array(xs), np.array(ys)
    if np.any(np.diff(xs_a) <= 0):
        raise SpecParseError("abscissa in %s must be strictly increasing" % path)

    def cdf(d):
        return np.interp(d, xs_a, ys_a)
    cdf.table = (xs_a, ys_a)
    return cdf

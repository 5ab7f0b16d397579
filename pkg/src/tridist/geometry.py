"""Triangle construction, canonicalization and case classification.

Every distribution formula in this package assumes the sides are labelled
so that ``a >= b >= c``; the constructors here enforce that once so the
rest of the code never has to.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateTriangle, InvalidAngles, SpecParseError

ANGLE_SUM_TOL = 1e-9
MIN_ANGLE = 1e-9
MIN_AREA_RATIO = 1e-12


class CaseLabel(enum.Enum):
    """Which piecewise regime of the chord-length CDF applies."""

    CASE1 = 1  # obtuse: alpha > pi/2
    CASE2 = 2  # alpha <= pi/2 and h_c < c
    CASE3 = 3  # alpha <= pi/2 and h_c >= c


@dataclass(frozen=True)
class Triangle:
    """Canonical triangle with ``a >= b >= c``.

    ``alpha``, ``beta`` and ``gamma`` are the angles opposite ``a``, ``b``
    and ``c`` (radians), ``h_a``, ``h_b``, ``h_c`` the altitudes onto those
    sides, ``u`` the perimeter.
    """

    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma: float
    h_a: float
    h_b: float
    h_c: float
    u: float
    area: float

    @property
    def angles(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)

    @property
    def sides(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def vertices(self) -> np.ndarray:
        """Vertices ``A, B, C`` as rows, with C at the origin and B on the +x axis."""
        return np.array(
            [
                [self.b * math.cos(self.gamma), self.h_a],
                [self.a, 0.0],
                [0.0, 0.0],
            ]
        )

    def scaled(self, s: float) -> "Triangle":
        """Similar triangle with sides times ``s``; the angles are kept as is."""
        s = float(s)
        if not (math.isfinite(s) and s > 0.0):
            raise DegenerateTriangle("scale factor must be positive: %r" % s)
        return _make(s * self.a, s * self.b, s * self.c, self.alpha, self.beta, self.gamma)

    def __str__(self) -> str:
        deg = [math.degrees(x) for x in self.angles]
        return "Triangle(a=%.6g, b=%.6g, c=%.6g; angles %.6g/%.6g/%.6g deg)" % (
            self.a, self.b, self.c, *deg)


def _heron(a: float, b: float, c: float) -> float:
    # Kahan's cancellation-free form, requires a >= b >= c.
    p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    if p <= 0.0:
        return 0.0
    return 0.25 * math.sqrt(p)


def _make(a: float, b: float, c: float, alpha: float, beta: float, gamma: float) -> Triangle:
    area = _heron(a, b, c)
    if area <= MIN_AREA_RATIO * a * a or min(alpha, beta, gamma) < MIN_ANGLE:
        raise DegenerateTriangle(
            "degenerate triangle: sides (%g, %g, %g), area %g" % (a, b, c, area))
    return Triangle(
        a=a, b=b, c=c,
        alpha=alpha, beta=beta, gamma=gamma,
        h_a=2.0 * area / a, h_b=2.0 * area / b, h_c=2.0 * area / c,
        u=a + b + c, area=area,
    )


def triangle_from_sides(a: float, b: float, c: float) -> Triangle:
    """Build a canonical triangle from three side lengths in any order."""
    sides = [float(x) for x in (a, b, c)]
    if not all(math.isfinite(x) and x > 0.0 for x in sides):
        raise DegenerateTriangle("side lengths must be positive and finite: %r" % (sides,))
    a, b, c = sorted(sides, reverse=True)
    if not b + c > a:
        raise DegenerateTriangle(
            "degenerate triangle: %g + %g <= %g violates the triangle inequality" % (b, c, a))
    area = _heron(a, b, c)
    # atan2 keeps small angles accurate where arccos would not
    alpha = math.atan2(4.0 * area, b * b + c * c - a * a)
    beta = math.atan2(4.0 * area, a * a + c * c - b * b)
    if a == b == c:
        alpha = beta = math.pi / 3.0
    elif b == c:
        beta = 0.5 * (math.pi - alpha)
    elif a == b:
        gamma = math.atan2(4.0 * area, a * a + b * b - c * c)
        alpha = beta = 0.5 * (math.pi - gamma)
    gamma = math.pi - alpha - beta
    return _make(a, b, c, alpha, beta, gamma)


def triangle_from_angles(alpha: float, beta: float, gamma: float, a: float = 1.0) -> Triangle:
    """Build a triangle from its angles (radians); ``a`` is the longest side."""
    angles = [float(x) for x in (alpha, beta, gamma)]
    if not all(math.isfinite(x) and x > 0.0 for x in angles):
        raise InvalidAngles("angles must be positive: %r" % (angles,))
    if abs(sum(angles) - math.pi) > ANGLE_SUM_TOL:
        raise InvalidAngles("angles sum to %.12g, expected pi" % sum(angles))
    if not (math.isfinite(a) and a > 0.0):
        raise DegenerateTriangle("side length must be positive: %r" % a)
    alpha, beta, gamma = sorted(angles, reverse=True)
    tie_bc = beta == gamma
    if tie_bc:
        beta = 0.5 * (math.pi - alpha)
    gamma = math.pi - alpha - beta
    if tie_bc:
        gamma = beta
    s = a / math.sin(alpha)
    b = a if alpha == beta else s * math.sin(beta)
    c = b if tie_bc else s * math.sin(gamma)
    return _make(a, b, c, alpha, beta, gamma)


def triangle_from_degrees(alpha: float, beta: float, gamma: float, a: float = 1.0) -> Triangle:
    return triangle_from_angles(*(math.radians(x) for x in (alpha, beta, gamma)), a=a)


def classify(t: Triangle) -> CaseLabel:
    if t.alpha > 0.5 * math.pi:
        return CaseLabel.CASE1
    if t.h_c < t.c:
        return CaseLabel.CASE2
    return CaseLabel.CASE3


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_ANGLES_RE = re.compile(r"^angles:(%s),(%s),(%s)@a=(%s)$" % ((_NUM,) * 4))
_SIDES_RE = re.compile(r"^sides:(%s),(%s),(%s)$" % ((_NUM,) * 3))


def parse_triangle(spec: str) -> Triangle:
    """Parse ``angles:<deg>,<deg>,<deg>@a=<len>`` or ``sides:<a>,<b>,<c>``."""
    text = spec.replace(" ", "")
    m = _ANGLES_RE.match(text)
    if m:
        al, be, ga, a = (float(x) for x in m.groups())
        return triangle_from_degrees(al, be, ga, a=a)
    m = _SIDES_RE.match(text)
    if m:
        return triangle_from_sides(*(float(x) for x in m.groups()))
    raise SpecParseError(
        "cannot parse triangle spec %r; expected 'angles:A,B,C@a=L' or 'sides:a,b,c'" % spec)


def format_triangle(t: Triangle) -> str:
    return "sides:%r,%r,%r" % (t.a, t.b, t.c)

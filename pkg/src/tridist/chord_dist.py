"""Chord-length distribution of a triangle.

The analytic CDF is assembled from seven closed-form pieces ``H_1 .. H_7``;
which ones apply, and in which order, depends on :func:`classify`. The
deterministic chord sweep gives an independent empirical CDF to check it
against.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple

import numpy as np

from .exceptions import DomainError
from .geometry import CaseLabel, Triangle, classify
from .montecarlo import EmpiricalCDF
from .piecewise import Kind, PiecewiseFn, drop_zero_width

# segments narrower than this (relative to a) are collapsed away
ZERO_WIDTH = 1e-12
DOMAIN_SLACK = 1e-12


def _cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


def case_layout(t: Triangle) -> tuple[CaseLabel, list[float], list[int]]:
    """Breakpoints and the H-function index used on each segment.

    Zero-width segments (isosceles and equilateral ties) are dropped.
    """
    case = classify(t)
    if case is CaseLabel.CASE1:
        bps = [0.0, t.h_a, t.c, t.b, t.a]
        ks = [1, 2, 3, 4]
    elif case is CaseLabel.CASE2:
        bps = [0.0, t.h_a, t.h_b, t.h_c, t.c, t.b, t.a]
        ks = [1, 2, 5, 6, 7, 4]
    else:
        bps = [0.0, t.h_a, t.h_b, t.c, t.h_c, t.b, t.a]
        ks = [1, 2, 5, 3, 7, 4]
    bps, ks, _ = drop_zero_width(bps, ks, ks, ZERO_WIDTH * t.a)
    return case, bps, ks


def _phis(t: Triangle, l):
    # arccos(h/l) via atan2 of sqrt((l-h)(l+h)): stays accurate as l -> h
    return tuple(np.arctan2(np.sqrt(np.maximum((l - h) * (l + h), 0.0)), h)
                 for h in (t.h_a, t.h_b, t.h_c))


def eval_H(k: int, t: Triangle, l):
    """The k-th chord-length piece, ``u * F(l)`` on the segment where it applies."""
    l = np.asarray(l, dtype=float)
    if np.any(l < -DOMAIN_SLACK * t.a) or np.any(l > t.a * (1.0 + DOMAIN_SLACK)):
        raise DomainError("chord length outside [0, a=%g]" % t.a)
    a, b, c = t.a, t.b, t.c
    al, be, ga = t.alpha, t.beta, t.gamma
    ca, cb, cg = _cot(al), _cot(be), _cot(ga)
    pi = math.pi
    p1, p2, p3 = _phis(t, l)
    if k == 1:
        out = 1.5 * l + 0.5 * l * ((pi - al) * ca + (pi - be) * cb + (pi - ga) * cg)
    elif k == 2:
        out = (1.5 * l + a * np.sin(p1)
               + 0.5 * l * ((pi - al) * ca + (pi - be - 2 * p1) * cb + (pi - ga - 2 * p1) * cg))
    elif k == 3:
        out = (l + c + 0.5 * a * np.sin(p1) + 0.5 * b * np.sin(p2)
               + 0.5 * l * ((pi / 2 - p2) * ca + (pi / 2 - p1) * cb + (pi - 2 * ga - p1 - p2) * cg))
    elif k == 4:
        out = (0.5 * l + b + c + 0.5 * b * np.sin(p2) + 0.5 * c * np.sin(p3)
               + 0.5 * l * ((al - p2 - p3) * ca + (pi / 2 - be - p3) * cb + (pi / 2 - ga - p2) * cg))
    elif k == 5:
        out = (1.5 * l + a * np.sin(p1) + b * np.sin(p2)
               + 0.5 * l * ((pi - al - 2 * p2) * ca + (pi - be - 2 * p1) * cb
                            + (pi - ga - 2 * p1 - 2 * p2) * cg))
    elif k == 6:
        out = (1.5 * l + a * np.sin(p1) + b * np.sin(p2) + c * np.sin(p3)
               + 0.5 * l * ((pi - al - 2 * p2 - 2 * p3) * ca + (pi - be - 2 * p1 - 2 * p3) * cb
                            + (pi - ga - 2 * p1 - 2 * p2) * cg))
    elif k == 7:
        out = (l + c + 0.5 * a * np.sin(p1) + 0.5 * b * np.sin(p2) + c * np.sin(p3)
               + 0.5 * l * ((pi / 2 - p2 - 2 * p3) * ca + (pi / 2 - p1 - 2 * p3) * cb
                            + (pi - 2 * ga - p1 - p2) * cg))
    else:
        raise ValueError("H index must be in 1..7, got %r" % (k,))
    return float(out) if out.ndim == 0 else out


def chord_cdf(t: Triangle) -> PiecewiseFn:
    """Analytic chord-length CDF ``F(l)`` as a validated piecewise function."""
    _, bps, ks = case_layout(t)
    u = t.u
    segs = [(lambda l, k=k: eval_H(k, t, l) / u) for k in ks]
    return PiecewiseFn(bps, segs, Kind.CDF, labels=["H%d" % k for k in ks])


class ChordSample(NamedTuple):
    theta: float
    length: float


class SweepResult:
    """Chord lengths produced by :func:`chord_sweep`, ordered by (theta, offset)."""

    def __init__(self, theta: np.ndarray, length: np.ndarray):
        self.theta = theta
        self.length = length

    def __len__(self) -> int:
        return len(self.length)

    def __iter__(self) -> Iterator[ChordSample]:
        for th, l in zip(self.theta, self.length):
            yield ChordSample(float(th), float(l))

    def empirical_cdf(self) -> EmpiricalCDF:
        return EmpiricalCDF(self.length)


def _sweep_orientations(t: Triangle, dtheta: float) -> np.ndarray:
    n = int(math.floor(math.pi / dtheta + 1e-9))
    grid = np.concatenate([np.arange(n + 1) * dtheta, [t.gamma, math.pi - t.beta, math.pi]])
    grid = np.sort(grid[grid <= math.pi + 1e-12])
    keep = np.concatenate([[True], np.diff(grid) > 1e-12])
    return grid[keep]


def _offsets(d: float, dd: float) -> np.ndarray:
    return np.arange(int(math.floor(d / dd + 1e-9)) + 1) * dd


def chord_sweep(t: Triangle, dtheta: float = math.pi / 180, dd: float = 1e-3) -> SweepResult:
    """Enumerate chords orientation by orientation with parallel offsets.

    The triangle sits with C at the origin, B at ``(a, 0)`` and A above the
    x axis. For each orientation the strip between the two supporting
    lines is cut every ``dd``; chords parallel to a side scale linearly
    with the offset, all others grow up to the chord through the middle
    vertex and shrink after it.
    """
    if not (dtheta > 0 and dd > 0):
        raise ValueError("dtheta and dd must be positive")
    a, b, c = t.a, t.b, t.c
    be, ga = t.beta, t.gamma
    xa, ya = b * math.cos(ga), t.h_a
    eps = 1e-12
    thetas, lengths = [], []
    for th in _sweep_orientations(t, dtheta):
        if th < eps or abs(th - math.pi) < eps:
            d1 = None
            d, base = t.h_a, a
        elif abs(th - ga) < eps:
            d1 = None
            d, base = t.h_b, b
        elif abs(th - (math.pi - be)) < eps:
            d1 = None
            d, base = t.h_c, c
        elif th < ga:
            d1, d2 = b * math.sin(ga - th), a * math.sin(th)
            yi = a / (_cot(be) + _cot(th))
            xi = yi * _cot(th)
            base = math.hypot(xi, yi)
        elif th < math.pi - be:
            d1, d2 = b * math.sin(th - ga), c * math.sin(th + be)
            xi = b / ((_cot(ga) + _cot(th - ga)) * math.sin(ga))
            base = math.hypot(xi - xa, -ya)
        else:
            d1, d2 = a * math.sin(th), -c * math.sin(th + be)
            yi = a / (_cot(ga) - _cot(th))
            xi = yi * _cot(ga)
            base = math.hypot(xi - a, yi)
        if d1 is None:
            off = _offsets(d, dd)
            ls = off * base / d
        else:
            d = d1 + d2
            off = _offsets(d, dd)
            ls = np.where(off <= d1, off * base / d1, (d - off) * base / d2)
        thetas.append(np.full(len(ls), th))
        lengths.append(np.clip(ls, 0.0, None))
    return SweepResult(np.concatenate(thetas), np.concatenate(lengths))


def empirical_cdf_from_samples(samples) -> EmpiricalCDF:
    return EmpiricalCDF(samples)

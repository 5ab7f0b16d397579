"""Known closed-form distance distributions used as references.

Coefficients are kept exactly as published, unsimplified, so that the
cross-identities between them (see ``tests/test_closed_forms.py``) act as
a transcription checksum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .exceptions import InvalidScale

R3 = math.sqrt(3.0)
PI = math.pi


@dataclass(frozen=True)
class NamedDistribution:
    """A distance distribution with support ``[0, d_max]``."""

    name: str
    pdf: Callable
    cdf: Callable
    support: tuple[float, float]
    breakpoints: tuple[float, ...] = field(default=())


def _branches(d, edges: Sequence[float], fns: Sequence[Callable], right: float):
    """Evaluate branch ``i`` on ``(edges[i], edges[i+1]]`` (left branch at ties).

    Below ``edges[0]`` the result is 0, above ``edges[-1]`` it is ``right``.
    """
    d = np.asarray(d, dtype=float)
    scalar = d.ndim == 0
    x = np.atleast_1d(d)
    out = np.zeros(x.shape)
    idx = np.clip(np.searchsorted(edges, x, side="left") - 1, 0, len(fns) - 1)
    inside = (x >= edges[0]) & (x <= edges[-1])
    for i, fn in enumerate(fns):
        m = inside & (idx == i)
        if m.any():
            out[m] = fn(x[m])
    out[x > edges[-1]] = right
    return float(out[0]) if scalar else out


# The published forms are sums of O(100) terms that cancel at the support
# ends, leaving ~1e-14 of residue; values within this of the valid range
# are snapped back into it.
ROUNDOFF = 4096 * np.finfo(float).eps


def _settled(fn: Callable, kind: str) -> Callable:
    def wrapped(d):
        v = fn(d)
        v = np.where((v < 0) & (v >= -ROUNDOFF), 0.0, v)
        if kind == "cdf":
            v = np.where((v > 1) & (v <= 1 + ROUNDOFF), 1.0, v)
        return float(v) if np.ndim(v) == 0 else v
    wrapped.__name__ = fn.__name__
    return wrapped


def _sqrt(x):
    return np.sqrt(np.maximum(x, 0.0))


def _asin(x):
    return np.arcsin(np.clip(x, -1.0, 1.0))


def _acos(x):
    return np.arccos(np.clip(x, -1.0, 1.0))


# Unit equilateral triangle.

def _g_et(d):
    return _branches(d, [0.0, R3 / 2, 1.0], [
        lambda d: 4 * d * ((2 + 4 * R3 * PI / 9) * d ** 2 - 8 * d + 2 * R3 * PI / 3),
        lambda d: 4 * d * (2 * R3 / 3 * (4 * d ** 2 + 6) * _asin(R3 / (2 * d))
                           + (2 - 8 * R3 * PI / 9) * d ** 2
                           + 6 * _sqrt(4 * d ** 2 - 3) - 8 * d - 4 * R3 * PI / 3),
    ], right=0.0)


def _G_et(d):
    return _branches(d, [0.0, R3 / 2, 1.0], [
        lambda d: 2 * ((1 + 2 * R3 * PI / 9) * d ** 4 - 16 / 3 * d ** 3 + 2 * R3 * PI / 3 * d ** 2),
        lambda d: 2 * (4 * R3 * d ** 2 / 3 * (d ** 2 + 3) * _asin(R3 / (2 * d))
                       + (26 * d ** 2 / 3 + 1) * _sqrt(d ** 2 - 3 / 4)
                       + (1 - 4 * R3 * PI / 9) * d ** 4 - 16 / 3 * d ** 3
                       - 4 * R3 * PI / 3 * d ** 2),
    ], right=1.0)


# Unit rhombus (side 1, angles 60/120 degrees).

def _g_r(d):
    return _branches(d, [0.0, R3 / 2, 1.0, R3], [
        lambda d: 2 * d * ((4 / 3 + 2 * R3 * PI / 27) * d ** 2 - 16 / 3 * d + 2 * R3 * PI / 3),
        lambda d: 2 * d * (8 * R3 / 3 * (1 + d ** 2 / 3) * _asin(R3 / (2 * d))
                           + (4 / 3 - 10 * R3 * PI / 27) * d ** 2 - 16 / 3 * d
                           + 10 / 3 * _sqrt(4 * d ** 2 - 3) - 2 * R3 * PI / 3),
        lambda d: 2 * d * (4 * R3 / 3 * (1 - d ** 2 / 3) * _asin(R3 / (2 * d))
                           - (2 / 3 - 2 * R3 * PI / 27) * d ** 2
                           + _sqrt(4 * d ** 2 - 3) - 2 * R3 * PI / 9 - 1),
    ], right=0.0)


def _G_r(d):
    return _branches(d, [0.0, R3 / 2, 1.0, R3], [
        lambda d: (2 / 3 + R3 * PI / 27) * d ** 4 - 32 / 9 * d ** 3 + 2 * R3 * PI / 3 * d ** 2,
        lambda d: (4 * R3 / 3 * (2 * d ** 2 + d ** 4 / 3) * _asin(R3 / (2 * d))
                   + (2 / 3 - 5 * R3 * PI / 27) * d ** 4 - 32 / 9 * d ** 3
                   - 2 * R3 * PI / 3 * d ** 2
                   + 1 / 6 * (14 * d ** 2 + 3) * _sqrt(4 * d ** 2 - 3)),
        lambda d: (2 * R3 / 3 * (2 * d ** 2 - d ** 4 / 3) * _asin(R3 / (2 * d))
                   + (R3 * PI / 27 - 1 / 3) * d ** 4 - (2 * R3 * PI / 9 + 1) * d ** 2
                   + 1 / 36 * (22 * d ** 2 + 15) * _sqrt(4 * d ** 2 - 3) + 1 / 4),
    ], right=1.0)


# Two (120, 30, 30) triangles with a = 1 sharing their long side (a rhombus).

_RP_EDGES = [0.0, R3 / 6, 0.5, R3 / 3, 1.0]


def _g_rp(d):
    return _branches(d, _RP_EDGES, [
        lambda d: 8 / 3 * d * (36 * d - (9 + 13 * R3 * PI) * d ** 2),
        lambda d: 8 / 3 * d * ((36 * R3 * _acos(R3 / (6 * d)) - 13 * R3 * PI - 9) * d ** 2
                               - 9 * _sqrt(36 * d ** 2 - 3) - 6 * R3 * _asin(R3 / (6 * d))
                               + 3 * R3 * PI + 36 * d),
        lambda d: 8 / 3 * d * (12 * R3 * (1 + d ** 2) * _asin(1 / (2 * d))
                               + (36 * R3 * _acos(R3 / (6 * d)) - 9 - 19 * R3 * PI) * d ** 2
                               + 15 * _sqrt(12 * d ** 2 - 3) - 3 * R3 * PI
                               - 6 * R3 * _asin(R3 / (6 * d))
                               - 9 * _sqrt(36 * d ** 2 - 3) + 36 * d),
        lambda d: 8 / 3 * d * ((12 * R3 * _acos(1 / (2 * d)) - 6 * R3 * _asin(1 / (2 * d))
                                - 3 * R3 * PI - 18) * d ** 2
                               - 9 * R3 / 2 * _sqrt(4 * d ** 2 - 1) + 36 * d - 9 / 2),
    ], right=0.0)


def _G_rp(d):
    return _branches(d, _RP_EDGES, [
        lambda d: 32 * d ** 3 - (26 * R3 * PI / 3 + 6) * d ** 4,
        lambda d: ((24 * R3 * _acos(R3 / (6 * d)) - 26 * R3 * PI / 3 - 6) * d ** 4 + 32 * d ** 3
                   + (4 * R3 * PI - 26 / 3 * _sqrt(36 * d ** 2 - 3)
                      - 8 * R3 * _asin(R3 / (6 * d))) * d ** 2
                   - 1 / 9 * _sqrt(36 * d ** 2 - 3)),
        lambda d: (1 / 9 * (126 * d ** 2 + 9) * _sqrt(12 * d ** 2 - 3)
                   - 1 / 9 * (1 + 78 * d ** 2) * _sqrt(36 * d ** 2 - 3)
                   - 38 * d ** 2 / 3 * (12 * R3 / 19 * _asin(R3 / (6 * d))
                                        - 36 * R3 * d ** 2 / 19 * _acos(R3 / (6 * d))
                                        - 12 * R3 / 19 * (2 + d ** 2) * _asin(1 / (2 * d))
                                        + R3 * PI * (d ** 2 + 6 / 19)
                                        + 9 * d ** 2 / 19 - 48 * d / 19)),
        lambda d: ((8 * R3 * _acos(1 / (2 * d)) - 4 * R3 * _asin(1 / (2 * d)) - 2 * R3 * PI - 12) * d ** 4
                   + 32 * d ** 3 + R3 / 2 * (1 - 10 * d ** 2) * _sqrt(4 * d ** 2 - 1)
                   - 6 * d ** 2 + 1 / 2),
    ], right=1.0)


# Two (120, 30, 30) triangles with a = 1 sharing a short side (concave 4-gon).

_CP_EDGES = [0.0, R3 / 6, R3 / 3, R3 / 2, 1.0]


def _g_cp(d):
    return _branches(d, _CP_EDGES, [
        lambda d: 8 / 3 * (12 * R3 - 9 * d - 6 * R3 * PI * d) * d ** 2,
        lambda d: 4 / 3 * d * ((36 * R3 * _acos(R3 / (6 * d)) - 12 * R3 * PI - 18) * d ** 2
                               + 24 * R3 * d - 9 * _sqrt(36 * d ** 2 - 3) + 3 * R3 * PI
                               - 6 * R3 * _asin(R3 / (6 * d))),
        lambda d: 4 / 9 * d * ((36 * R3 * _acos(1 / (2 * d)) - 6 * R3 * PI) * d ** 2
                               - 27 * _sqrt(12 * d ** 2 - 3) - 18 * R3 * _asin(1 / (2 * d))
                               + 12 * R3 * PI),
        lambda d: 32 * R3 / 3 * d * (9 * R3 / 8 * _sqrt(4 * d ** 2 - 3)
                                     - 9 / 8 * _sqrt(4 * d ** 2 - 1)
                                     + (3 / 2 * d ** 2 + 9 / 4) * _asin(R3 / (2 * d))
                                     + 3 / 2 * d ** 2 * _acos(1 / (2 * d)) - PI * d ** 2
                                     - 3 / 4 * _asin(1 / (2 * d)) - 5 / 8 * PI),
    ], right=0.0)


def _G_cp(d):
    return _branches(d, _CP_EDGES, [
        lambda d: 32 * R3 / 3 * d ** 3 - (6 + 4 * R3 * PI) * d ** 4,
        lambda d: (1 / 18 * (-78 * d ** 2 - 1) * _sqrt(36 * d ** 2 - 3)
                   - 4 * d ** 2 * (R3 * _asin(R3 / (6 * d))
                                   - 3 * R3 * d ** 2 * _acos(R3 / (6 * d))
                                   + (PI * d ** 2 - 8 / 3 * d - PI / 2) * R3
                                   + 3 / 2 * d ** 2)),
        lambda d: R3 / 6 * (16 * PI * d ** 2 - 4 * PI * d ** 4
                            - _sqrt(4 * d ** 2 - 1) * (1 + 26 * d ** 2)
                            - 24 * d ** 2 * (_asin(1 / (2 * d)) - d ** 2 * _acos(1 / (2 * d)))),
        lambda d: (1 / 6 * (78 * d ** 2 + 9) * _sqrt(4 * d ** 2 - 3)
                   - 8 * R3 / 3 * ((1 / 16 + 13 / 8 * d ** 2) * _sqrt(4 * d ** 2 - 1)
                                   + d ** 2 * (3 / 2 * _asin(1 / (2 * d))
                                               - (3 / 2 * d ** 2 + 9 / 2) * _asin(R3 / (2 * d))
                                               - 3 / 2 * d ** 2 * _acos(1 / (2 * d))
                                               + PI * d ** 2 + 5 / 4 * PI))),
    ], right=1.0)


def equilateral_unit() -> NamedDistribution:
    return NamedDistribution("equilateral-unit", _settled(_g_et, "pdf"), _settled(_G_et, "cdf"), (0.0, 1.0), (R3 / 2,))


def rhombus_unit() -> NamedDistribution:
    return NamedDistribution("rhombus-unit", _settled(_g_r, "pdf"), _settled(_G_r, "cdf"), (0.0, R3), (R3 / 2, 1.0))


def iso_pi6_rhombus_pair() -> NamedDistribution:
    """Cross distances between two (120, 30, 30) triangles forming a rhombus."""
    return NamedDistribution("iso-pi6-rhombus-pair", _settled(_g_rp, "pdf"), _settled(_G_rp, "cdf"), (0.0, 1.0), tuple(_RP_EDGES[1:-1]))


def iso_pi6_concave_pair() -> NamedDistribution:
    """Cross distances between two (120, 30, 30) triangles forming a concave 4-gon."""
    return NamedDistribution("iso-pi6-concave-pair", _settled(_g_cp, "pdf"), _settled(_G_cp, "cdf"), (0.0, 1.0), tuple(_CP_EDGES[1:-1]))


def scaled(dist: NamedDistribution, s: float) -> NamedDistribution:
    """Distribution of ``s * D`` where ``D`` follows ``dist``."""
    if not (math.isfinite(s) and s > 0):
        raise InvalidScale("scale factor must be positive, got %r" % (s,))
    if s == 1:
        return dist
    pdf, cdf = dist.pdf, dist.cdf
    return NamedDistribution(
        "%s*%g" % (dist.name, s),
        lambda d: pdf(np.asarray(d, dtype=float) / s) / s,
        lambda d: cdf(np.asarray(d, dtype=float) / s),
        (dist.support[0] * s, dist.support[1] * s),
        tuple(b * s for b in dist.breakpoints),
    )


NAMED = {
    "equilateral-unit": equilateral_unit,
    "rhombus-unit": rhombus_unit,
    "iso-pi6-rhombus-pair": iso_pi6_rhombus_pair,
    "iso-pi6-concave-pair": iso_pi6_concave_pair,
}


def named(name: str) -> NamedDistribution:
    try:
        return NAMED[name]()
    except KeyError:
        raise KeyError("unknown distribution %r; choose from %s" % (name, ", ".join(NAMED))) from None

"""Piecewise scalar functions with explicit breakpoints."""

from __future__ import annotations

import enum
from typing import Callable, Sequence

import numpy as np

from .exceptions import ConstructionError

CONTINUITY_TOL = 1e-9
CDF_END_TOL = 1e-9
PDF_FLOOR = -1e-12
# monotonicity probes tolerate float noise on flat stretches of a CDF
MONOTONE_SLACK = 1e-12
PROBE_POINTS = 1000


class Kind(enum.Enum):
    CDF = "cdf"
    PDF = "pdf"


class PiecewiseFn:
    """Function defined segment by segment on ``[x_0, x_n]``.

    ``segments[i]`` is valid on ``[x_i, x_{i+1}]`` and must accept numpy
    arrays. Points exactly on an interior breakpoint use the left segment.
    Outside the domain a CDF evaluates to 0 (left) or 1 (right) and a PDF
    to 0.
    """

    def __init__(self, breakpoints: Sequence[float], segments: Sequence[Callable],
                 kind: Kind | str, labels: Sequence[str] | None = None,
                 zero_width: float = 0.0, validate: bool = True):
        kind = Kind(kind)
        bps = [float(x) for x in breakpoints]
        segs = list(segments)
        labels = list(labels) if labels is not None else ["seg%d" % i for i in range(len(segs))]
        if len(bps) != len(segs) + 1 or len(labels) != len(segs):
            raise ConstructionError("need len(breakpoints) == len(segments) + 1")
        bps, segs, labels = drop_zero_width(bps, segs, labels, zero_width)
        if any(hi <= lo for lo, hi in zip(bps[:-1], bps[1:])):
            raise ConstructionError("breakpoints must be strictly increasing: %r" % bps)
        self.breakpoints = np.array(bps)
        self.segments = segs
        self.labels = labels
        self.kind = kind
        if validate:
            self.check()

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.breakpoints[0]), float(self.breakpoints[-1])

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        xs = np.atleast_1d(x)
        out = np.zeros(xs.shape)
        lo, hi = self.domain
        idx = np.clip(np.searchsorted(self.breakpoints, xs, side="left") - 1, 0, len(self.segments) - 1)
        inside = (xs >= lo) & (xs <= hi)
        for i, seg in enumerate(self.segments):
            mask = inside & (idx == i)
            if mask.any():
                out[mask] = seg(xs[mask])
        if self.kind is Kind.CDF:
            out[xs > hi] = 1.0
        return float(out[0]) if scalar else out

    def segment_values(self, i: int, x) -> np.ndarray:
        return np.asarray(self.segments[i](np.asarray(x, dtype=float)), dtype=float)

    def continuity_gaps(self) -> list[float]:
        gaps = []
        for i in range(1, len(self.segments)):
            x = self.breakpoints[i:i + 1]
            gaps.append(float(abs(self.segments[i - 1](x)[0] - self.segments[i](x)[0])))
        return gaps

    def check(self) -> None:
        """Raise ConstructionError unless the invariants of ``kind`` hold."""
        for i, gap in enumerate(self.continuity_gaps()):
            if not gap <= CONTINUITY_TOL:
                raise ConstructionError(
                    "discontinuity %.3g at breakpoint %.12g between %s and %s"
                    % (gap, self.breakpoints[i + 1], self.labels[i], self.labels[i + 1]))
        lo, hi = self.domain
        grid = np.linspace(lo, hi, PROBE_POINTS)
        vals = self(grid)
        if not np.all(np.isfinite(vals)):
            raise ConstructionError("non-finite values on probe grid")
        if self.kind is Kind.CDF:
            first = self.segment_values(0, [lo])[0]
            last = self.segment_values(len(self.segments) - 1, [hi])[0]
            if abs(first) > CDF_END_TOL or abs(last - 1.0) > CDF_END_TOL:
                raise ConstructionError("CDF endpoints are %.12g and %.12g" % (first, last))
            if np.min(np.diff(vals)) < -MONOTONE_SLACK:
                raise ConstructionError("CDF decreases on probe grid")
        elif np.min(vals) < PDF_FLOOR:
            raise ConstructionError("PDF negative on probe grid (min %.3g)" % np.min(vals))


def drop_zero_width(bps: list[float], segs: list, labels: list[str], tol: float = 0.0):
    """Remove segments no wider than ``tol``, keeping both domain endpoints.

    Widths down to ``-tol`` count as zero (ties that rounding put out of
    order); anything more negative is left for the ordering check.
    """
    bps, segs, labels = list(bps), list(segs), list(labels)
    i = 0
    while i < len(segs) and len(segs) > 1:
        if abs(bps[i + 1] - bps[i]) <= tol:
            del segs[i]
            del labels[i]
            # keep the outer endpoint when the last segment collapses
            del bps[i if i == len(segs) else i + 1]
        else:
            i += 1
    return bps, segs, labels

"""Adaptive Simpson quadrature.

Used as the independent numerical oracle for the closed-form antiderivative
tables and as their fallback when a printed form fails its gate.
"""

from __future__ import annotations

from typing import Callable, Sequence

DEFAULT_TOL = 1e-10
DEFAULT_DEPTH = 40


def _asr(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return (_asr(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + _asr(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1))


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = DEFAULT_TOL, max_depth: int = DEFAULT_DEPTH) -> float:
    """Integrate scalar ``f`` over ``[a, b]`` to absolute tolerance ``tol``."""
    if b == a:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, tol, max_depth)
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _asr(f, a, fa, b, fb, m, fm, whole, tol, max_depth)


def integrate_segments(f: Callable[[float], float], breakpoints: Sequence[float],
                       a: float, b: float, tol: float = DEFAULT_TOL,
                       max_depth: int = DEFAULT_DEPTH) -> float:
    """Integrate over ``[a, b]`` splitting at every breakpoint inside it.

    Kinks at breakpoints otherwise force deep refinement around them.
    """
    if b <= a:
        return -integrate_segments(f, breakpoints, b, a, tol, max_depth) if b < a else 0.0
    cuts = [a] + [x for x in sorted(breakpoints) if a < x < b] + [b]
    return sum(adaptive_simpson(f, lo, hi, tol, max_depth) for lo, hi in zip(cuts[:-1], cuts[1:]))

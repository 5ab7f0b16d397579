"""Command-line entry point: evaluate, sample and verify distance distributions.

Every command writes CSV (or a one-line report) to stdout or ``--output``;
diagnostics go to stderr. Exit codes: 0 success, 1 verification or
self-check failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys
from contextlib import nullcontext

import numpy as np

from .chord_dist import chord_cdf, chord_sweep
from .closed_forms import NAMED, named
from .decompose import PAIRS, PairShape, TrianglePairConfig, cross_distribution, load_cdf_table, named_pair
from .exceptions import DegenerateTriangle, InvalidAngles, TridistError
from .geometry import parse_triangle
from .montecarlo import KS_THRESHOLD, RunSpec, cross_distances, ks_statistic, pair_distances, EmpiricalCDF
from .point_dist import pdist_cdf, pdist_pdf

FMT = "%.6g"


class CliError(Exception):
    def __init__(self, msg, code=2):
        super().__init__(msg)
        self.code = code


def _grid(n: int, hi: float) -> np.ndarray:
    if n < 2:
        raise CliError("--grid must be at least 2")
    return np.linspace(0.0, hi, n)


def _emit(out, header, columns, cdf_col=None):
    rows = [[FMT % v for v in col] for col in columns]
    if cdf_col is not None:
        vals = np.array([float(s) for s in rows[cdf_col]])
        if vals.min() < 0 or vals.max() > 1 or np.any(np.diff(vals) < 0):
            raise CliError("emitted CDF column fails the monotone/[0,1] self-check", code=1)
    out.write(",".join(header) + "\n")
    for row in zip(*rows):
        out.write(",".join(row) + "\n")


def _target(args):
    """Resolve the single input spec to ('triangle', T) or ('pair', cfg)."""
    spec = args.triangle or getattr(args, "config", None) or getattr(args, "target", None)
    if spec in PAIRS:
        return "pair", named_pair(spec)
    return "triangle", parse_triangle(spec)


def cmd_cld(args, out):
    t = parse_triangle(args.triangle)
    d = _grid(args.grid, t.a)
    _emit(out, ["l", "F"], [d, chord_cdf(t)(d)], cdf_col=1)


def cmd_pdist(args, out):
    if args.named:
        dist = named(args.named)
        hi = dist.support[1]
        pdf, cdf = dist.pdf, dist.cdf
    else:
        t = parse_triangle(args.triangle)
        hi = t.a
        pdf, cdf = pdist_pdf(t), pdist_cdf(t)
    d = _grid(args.grid, hi)
    if args.pdf:
        _emit(out, ["d", "value"], [d, pdf(d)])
    else:
        _emit(out, ["d", "value"], [d, cdf(d)], cdf_col=1)


def _pair_from_args(args) -> TrianglePairConfig:
    if args.config:
        return named_pair(args.config)
    if not (args.t1 and args.t2 and args.whole_cdf):
        raise CliError("cross needs --config, or all of --t1, --t2 and --whole-cdf")
    whole = load_cdf_table(args.whole_cdf)
    xs = whole.table[0]
    return TrianglePairConfig(parse_triangle(args.t1), parse_triangle(args.t2), PairShape.CONVEX,
                              whole_cdf=whole, diameter=float(xs[-1]), name=args.whole_cdf)


def cmd_cross(args, out):
    dist = cross_distribution(_pair_from_args(args))
    d = _grid(args.grid, dist.support[1])
    if args.pdf:
        if dist.pdf is None:
            raise CliError("no PDF available for a tabulated whole-region CDF")
        _emit(out, ["d", "value"], [d, dist.pdf(d)])
    else:
        _emit(out, ["d", "value"], [d, dist.cdf(d)], cdf_col=1)


def cmd_sweep(args, out):
    t = parse_triangle(args.triangle)
    res = chord_sweep(t, dtheta=args.dtheta, dd=args.dd)
    _emit(out, ["theta", "length"], [res.theta, res.length])


def _distances(args):
    kind, obj = _target(args)
    spec = RunSpec(seed=args.seed, pairs=args.pairs, target=args.triangle or args.config or args.target)
    if kind == "pair":
        return kind, obj, cross_distances(obj.placement1, obj.placement2, spec)
    return kind, obj, pair_distances(obj, spec)


def cmd_simulate(args, out):
    _, _, dist = _distances(args)
    _emit(out, ["distance"], [dist])


def cmd_verify(args, out):
    kind, obj, dist = _distances(args)
    analytic = cross_distribution(obj).cdf if kind == "pair" else pdist_cdf(obj)
    ks = ks_statistic(EmpiricalCDF(dist), analytic)
    ok = ks <= KS_THRESHOLD
    out.write("ks=%.6g pass=%s threshold=%g\n" % (ks, "true" if ok else "false", KS_THRESHOLD))
    return 0 if ok else 1


def _positive(text):
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tridist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grid=True):
        sp.add_argument("-o", "--output", help="write CSV here instead of stdout")
        if grid:
            sp.add_argument("--grid", type=int, default=101, help="number of grid points (>= 2)")

    sp = sub.add_parser("cld", help="chord-length CDF on a grid")
    sp.add_argument("--triangle", required=True)
    common(sp)
    sp.set_defaults(func=cmd_cld)

    sp = sub.add_parser("pdist", help="point-distance PDF or CDF on a grid")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--triangle")
    src.add_argument("--named", choices=sorted(NAMED))
    which = sp.add_mutually_exclusive_group()
    which.add_argument("--pdf", action="store_true")
    which.add_argument("--cdf", action="store_true", help="default")
    common(sp)
    sp.set_defaults(func=cmd_pdist)

    sp = sub.add_parser("cross", help="cross-triangle distance PDF or CDF on a grid")
    sp.add_argument("--config", choices=sorted(PAIRS))
    sp.add_argument("--t1")
    sp.add_argument("--t2")
    sp.add_argument("--whole-cdf", help="CSV table x,cdf of the union of t1 and t2")
    which = sp.add_mutually_exclusive_group()
    which.add_argument("--pdf", action="store_true")
    which.add_argument("--cdf", action="store_true", help="default")
    common(sp)
    sp.set_defaults(func=cmd_cross)

    sp = sub.add_parser("sweep", help="deterministic chord sweep samples")
    sp.add_argument("--triangle", required=True)
    sp.add_argument("--dtheta", type=_positive, default=math.pi / 180)
    sp.add_argument("--dd", type=_positive, default=1e-3)
    common(sp, grid=False)
    sp.set_defaults(func=cmd_sweep)

    for name, func, helptext in (("simulate", cmd_simulate, "Monte Carlo distance samples"),
                                 ("verify", cmd_verify, "KS distance of samples vs the analytic CDF")):
        sp = sub.add_parser(name, help=helptext)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--triangle")
        src.add_argument("--config", choices=sorted(PAIRS))
        src.add_argument("--target", help="triangle spec or pair name")
        sp.add_argument("--pairs", type=int, default=10_000)
        sp.add_argument("--seed", type=int, default=42)
        common(sp, grid=False)
        sp.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "pairs", 1) < 1:
        parser.error("--pairs must be at least 1")
    buf = io.StringIO()
    try:
        status = args.func(args, buf) or 0
        # only write once everything succeeded, so failures leave no partial file
        with (open(args.output, "w", newline="") if args.output else nullcontext(sys.stdout)) as out:
            out.write(buf.getvalue())
        return status
    except (DegenerateTriangle, InvalidAngles) as exc:
        msg = str(exc)
        if not msg.startswith("degenerate triangle"):
            msg = "degenerate triangle: " + msg
        print("tridist: %s" % msg, file=sys.stderr)
        return 2
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error
        sys.stdout = open(os.devnull, "w")
        return 0
    except CliError as exc:
        print("tridist: %s" % exc, file=sys.stderr)
        return exc.code
    except (TridistError, KeyError, OSError) as exc:
        print("tridist: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

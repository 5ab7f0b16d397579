"""Exact distance distributions for triangles and pairs of adjacent triangles."""

from .chord_dist import chord_cdf, chord_sweep, eval_H
from .closed_forms import NAMED, equilateral_unit, named, rhombus_unit, scaled
from .decompose import (PairShape, TrianglePairConfig, concave_pi6, cross_cdf, cross_cdf_concave_equilateral,
                        cross_cdf_convex, cross_distribution, load_cdf_table, rhombus_pi6)
from .estimators import (ChordLengthDistribution, CrossDistanceDistribution, EmpiricalDistanceDistribution,
                         PointDistanceDistribution)
from .exceptions import *  # noqa: F401,F403
from .geometry import (CaseLabel, Triangle, classify, parse_triangle, triangle_from_angles,
                       triangle_from_degrees, triangle_from_sides)
from .montecarlo import EmpiricalCDF, RunSpec, ks_statistic, sample_cross_distances, sample_pair_distances
from .point_dist import AntiderivativeTable, QuadraturePipeline, antiderivative_table, i_diamond, i_star, pdist_cdf, pdist_pdf

__version__ = "0.1.0"

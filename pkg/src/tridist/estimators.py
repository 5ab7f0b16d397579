"""Estimator-style wrappers around the distance distributions.

Each class stores its constructor arguments untouched, validates them in
``fit`` and exposes the fitted distribution through ``predict`` (CDF
values) and ``transform`` (one column per quantity) on arrays of
distances.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .closed_forms import NamedDistribution, named
from .decompose import TrianglePairConfig, cross_distribution, named_pair
from .geometry import Triangle, classify, parse_triangle, triangle_from_sides
from .montecarlo import RunSpec, ks_statistic, sample_pair_distances
from .chord_dist import chord_cdf
from .point_dist import pdist_cdf, pdist_pdf


def resolve_triangle(triangle) -> Triangle:
    """Accept a Triangle, a spec string or three side lengths."""
    if isinstance(triangle, Triangle):
        return triangle
    if isinstance(triangle, str):
        return parse_triangle(triangle)
    sides = np.asarray(triangle, dtype=float).ravel()
    if sides.shape != (3,):
        raise ValueError("triangle must be a Triangle, a spec string or three side lengths")
    return triangle_from_sides(*sides)


def check_distances(X) -> np.ndarray:
    """Flatten distance input to a finite float vector."""
    X = check_array(X, ensure_2d=False, dtype=float, ensure_min_samples=1)
    if X.ndim == 2 and X.shape[1] != 1:
        raise ValueError("expected a 1-d array of distances or a single column, got shape %s" % (X.shape,))
    return X.ravel()


class _DistanceMixin(TransformerMixin):
    _fitted_attr = "cdf_"

    def predict(self, X):
        """CDF evaluated at each distance in ``X``."""
        check_is_fitted(self, self._fitted_attr)
        d = check_distances(X)
        return np.asarray(self.cdf_(d), dtype=float)


class ChordLengthDistribution(_DistanceMixin, BaseEstimator):
    """Distribution of random chord lengths across a triangle."""

    def __init__(self, triangle="sides:1,1,1"):
        self.triangle = triangle

    def fit(self, X=None, y=None):
        self.triangle_ = resolve_triangle(self.triangle)
        self.case_ = classify(self.triangle_)
        self.cdf_ = chord_cdf(self.triangle_)
        return self

    def transform(self, X):
        return self.predict(X)[:, None]


class PointDistanceDistribution(_DistanceMixin, BaseEstimator):
    """Distance between two independent uniform points of one triangle."""

    def __init__(self, triangle="sides:1,1,1"):
        self.triangle = triangle

    def fit(self, X=None, y=None):
        self.triangle_ = resolve_triangle(self.triangle)
        self.case_ = classify(self.triangle_)
        self.pdf_ = pdist_pdf(self.triangle_)
        self.cdf_ = pdist_cdf(self.triangle_)
        return self

    def predict_pdf(self, X):
        check_is_fitted(self, "pdf_")
        return np.asarray(self.pdf_(check_distances(X)), dtype=float)

    def transform(self, X):
        """Columns ``[pdf, cdf]``."""
        check_is_fitted(self, "cdf_")
        d = check_distances(X)
        return np.column_stack([self.pdf_(d), self.cdf_(d)])


class CrossDistanceDistribution(_DistanceMixin, BaseEstimator):
    """Distance between a point in one triangle and a point in an adjacent one.

    ``config`` is the name of a built-in pair, a :class:`TrianglePairConfig`
    or the name of a closed-form distribution.
    """

    def __init__(self, config="rhombus-pi6"):
        self.config = config

    def fit(self, X=None, y=None):
        cfg = self.config
        if isinstance(cfg, TrianglePairConfig):
            dist = cross_distribution(cfg)
        elif isinstance(cfg, NamedDistribution):
            dist = cfg
        else:
            try:
                cfg = named_pair(cfg)
            except KeyError:
                dist = named(cfg)
            else:
                dist = cross_distribution(cfg)
        self.distribution_ = dist
        self.cdf_ = dist.cdf
        self.pdf_ = dist.pdf
        self.support_ = dist.support
        return self

    def transform(self, X):
        check_is_fitted(self, "cdf_")
        d = check_distances(X)
        pdf = self.pdf_(d) if self.pdf_ is not None else np.full(d.shape, np.nan)
        return np.column_stack([pdf, self.cdf_(d)])


class EmpiricalDistanceDistribution(_DistanceMixin, BaseEstimator):
    """Monte Carlo estimate of the point-pair distance CDF of a triangle."""

    def __init__(self, triangle="sides:1,1,1", pairs=10_000, seed=42):
        self.triangle = triangle
        self.pairs = pairs
        self.seed = seed

    def fit(self, X=None, y=None):
        self.triangle_ = resolve_triangle(self.triangle)
        self.cdf_ = sample_pair_distances(self.triangle_, RunSpec(seed=int(self.seed), pairs=int(self.pairs)))
        self.ks_ = ks_statistic(self.cdf_, pdist_cdf(self.triangle_))
        return self

    def transform(self, X):
        return self.predict(X)[:, None]

    def score(self, X=None, y=None):
        """Negative KS distance to the analytic CDF (higher is better)."""
        check_is_fitted(self, "ks_")
        return -self.ks_


__all__ = [
    "ChordLengthDistribution",
    "CrossDistanceDistribution",
    "EmpiricalDistanceDistribution",
    "PointDistanceDistribution",
    "check_distances",
    "resolve_triangle",
]

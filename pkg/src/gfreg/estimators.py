"""scikit-learn style wrappers around the functional API.

Each row of ``X`` is one signal sampled on a uniform periodic grid of
``X.shape[1]`` points over ``period``.  Nothing is learned from the data:
``fit`` validates the input, builds the frame and records the grid, so the
wrappers can sit inside a :class:`sklearn.pipeline.Pipeline` as feature
extractors.
"""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .calibration import growth_function
from .frame import build_frame
from .grid import GridSpec, SampledFunction
from .signals import Sampled, embed
from .tauberian import g_infinity_test, local_decay_map, wavelet_transform
from .zygmund import zygmund_exponent


class _GridEstimator(BaseEstimator):
    """Shared fit logic: grid, frame and scale grid from the training shape."""

    def _fit_grid(self, X):
        X = check_array(X, dtype=np.float64)
        self.grid_ = GridSpec(X.shape[1], self.period)
        self.frame_ = build_frame(self.grid_, self.transition_sharpness)
        self.n_features_in_ = X.shape[1]
        return X

    def _check(self, X):
        check_is_fitted(self, "frame_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        return X

    def _specs(self, X):
        for i, row in enumerate(X):
            yield Sampled(SampledFunction(self.grid_, values=row), label=f"row{i}")

    def _scales(self):
        if self.eps_grid is None:
            return self.grid_.default_scales()
        return np.asarray(self.eps_grid, dtype=float)

    def fit(self, X, y=None):
        self._fit_grid(X)
        return self


class GrowthFunctionEstimator(TransformerMixin, _GridEstimator):
    """Calibrations ``c(0), ..., c(max_order)`` of the mollifier embedding of each row.

    Parameters
    ----------
    period : float
        Length of the periodic domain.
    max_order : int
        Highest derivative order.
    p : float
        Lebesgue exponent of the norms; ``inf`` for sup norms.
    eps_grid : array-like or None
        Decreasing scales; ``None`` uses the grid default.
    transition_sharpness : float
        Frame transition parameter.
    plateau_tol : float
        Plateau tolerance used by ``classify``.
    """

    def __init__(self, period=16.0 * math.pi, max_order=3, p=math.inf, eps_grid=None,
                 transition_sharpness=1.0, plateau_tol=0.1):
        self.period = period
        self.max_order = max_order
        self.p = p
        self.eps_grid = eps_grid
        self.transition_sharpness = transition_sharpness
        self.plateau_tol = plateau_tol

    def _reports(self, X):
        X = self._check(X)
        eps = self._scales()
        return [growth_function(embed(s, self.frame_), self.max_order, self.p, None, eps, self.plateau_tol)
                for s in self._specs(X)]

    def transform(self, X):
        """Array of shape ``(n_samples, max_order + 1)``; unbounded orders are ``inf``."""
        return np.array([r.c_hat for r in self._reports(X)], dtype=float)

    def classify(self, X):
        """Inferred regularity class ``(k, s)`` of each row."""
        return [r.inferred_class for r in self._reports(X)]

    def get_feature_names_out(self, input_features=None):
        return np.array([f"c{j}" for j in range(self.max_order + 1)], dtype=object)


class ZygmundExponentEstimator(TransformerMixin, _GridEstimator):
    """Band-sup scaling exponent of each row; one output column."""

    def __init__(self, period=16.0 * math.pi, transition_sharpness=1.0, r_cap=4.0):
        self.period = period
        self.transition_sharpness = transition_sharpness
        self.r_cap = r_cap

    eps_grid = None

    def transform(self, X):
        X = self._check(X)
        vals = [zygmund_exponent(s, self.frame_, r_cap=self.r_cap).value for s in self._specs(X)]
        return np.asarray(vals, dtype=float)[:, None]

    def get_feature_names_out(self, input_features=None):
        return np.array(["r_hat"], dtype=object)


class LocalRegularityEstimator(TransformerMixin, _GridEstimator):
    """Pointwise wavelet decay exponent ``p(x)`` of each row.

    The output has one column per analysis position; ``positions_`` holds
    them after ``fit``.
    """

    def __init__(self, period=16.0 * math.pi, wavelet_order=1, transition_sharpness=1.0,
                 cone=3.0, r_cap=4.0):
        self.period = period
        self.wavelet_order = wavelet_order
        self.transition_sharpness = transition_sharpness
        self.cone = cone
        self.r_cap = r_cap

    eps_grid = None

    def _profiles(self, X):
        X = self._check(X)
        for s in self._specs(X):
            wmap = wavelet_transform(s, self.wavelet_order, self.frame_)
            yield local_decay_map(wmap, self.cone, self.r_cap)

    def fit(self, X, y=None):
        X = self._fit_grid(X)
        self.positions_ = next(self._profiles(X[:1])).x
        return self

    def transform(self, X):
        return np.vstack([prof.p_hat for prof in self._profiles(X)])

    def argmin(self, X):
        """Position of the strongest singularity of each row."""
        return np.array([prof.argmin for prof in self._profiles(X)])


class SmoothnessClassifier(ClassifierMixin, _GridEstimator):
    """Predicts ``True`` for rows consistent with a smooth function.

    A row is smooth-consistent when no derivative order up to ``M`` grows
    faster, as ``eps -> 0``, than order zero plus ``slack``.
    """

    def __init__(self, period=16.0 * math.pi, M=3, slack=0.25, eps_grid=None, transition_sharpness=1.0):
        self.period = period
        self.M = M
        self.slack = slack
        self.eps_grid = eps_grid
        self.transition_sharpness = transition_sharpness

    def fit(self, X, y=None):
        self._fit_grid(X)
        self.classes_ = np.array([False, True])
        return self

    def _verdicts(self, X):
        X = self._check(X)
        eps = self._scales()
        return [g_infinity_test(embed(s, self.frame_), self.M, None, eps, self.slack) for s in self._specs(X)]

    def predict(self, X):
        return np.array([v.smooth for v in self._verdicts(X)], dtype=bool)

    def decision_function(self, X):
        """Largest excess ``max_m c(m) - c(0)``; smooth rows score below ``slack``."""
        out = []
        for v in self._verdicts(X):
            finite = [c for c in v.c_hat if np.isfinite(c)]
            out.append(np.inf if len(finite) < len(v.c_hat) else max(finite) - finite[0])
        return np.asarray(out, dtype=float)

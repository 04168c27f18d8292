"""Scalar Kalman denoising of per-anchor RSSI series."""

from __future__ import annotations

from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ..errors import ValidationError
from .types import KalmanParams


def kalman_filter(series: Sequence[float], params: KalmanParams) -> np.ndarray:
    """Predict/update a random-walk state over a scalar measurement series.

    State transition is identity with process variance q; each measurement
    carries variance r. Output has the same length as the input and is the
    posterior state estimate after each measurement.
    """
    z = np.asarray(series, dtype=float)
    if z.ndim != 1 or z.size == 0:
        raise ValidationError("series must be a non-empty 1-D sequence")

    q = params.process_var_q
    r = params.measurement_var_r
    x = z[0] if params.initial_estimate is None else params.initial_estimate
    p = params.resolved_initial_var()

    out = np.empty_like(z)
    for i, measurement in enumerate(z):
        p = p + q
        gain = 1.0 if (p + r) == 0 else p / (p + r)
        x = x + gain * (measurement - x)
        p = (1.0 - gain) * p
        out[i] = x
    return out


class KalmanDenoiser(BaseEstimator, TransformerMixin):
    """Transformer wrapper so the filter drops into sklearn pipelines.

    ``transform`` filters each column of a 2-D array (or a single 1-D
    series) independently; ``fit`` is stateless.
    """

    def __init__(
        self,
        process_var_q: float = 0.01,
        measurement_var_r: float = 4.0,
        initial_estimate: float | None = None,
        initial_var: float | None = None,
    ):
        self.process_var_q = process_var_q
        self.measurement_var_r = measurement_var_r
        self.initial_estimate = initial_estimate
        self.initial_var = initial_var

    def _params(self) -> KalmanParams:
        return KalmanParams(
            process_var_q=self.process_var_q,
            measurement_var_r=self.measurement_var_r,
            initial_estimate=self.initial_estimate,
            initial_var=self.initial_var,
        )

    def fit(self, X, y=None):
        self._params()  # validate
        return self

    def transform(self, X):
        params = self._params()
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            return kalman_filter(X, params)
        return np.column_stack([kalman_filter(X[:, j], params) for j in range(X.shape[1])])

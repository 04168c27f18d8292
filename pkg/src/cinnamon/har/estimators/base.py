"""Shared estimator machinery: validation, standardization, serialization.

Every classifier follows the sklearn estimator contract (``fit`` /
``predict`` / ``get_params``) so it composes with pipelines, ``clone`` and
model selection from the wider ecosystem, while the fitting algorithms
themselves are implemented here from first principles.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import ClassVar, Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from ...errors import ValidationError


def check_feature_matrix(X, n_features: Optional[int] = None) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ValidationError("X must be a 2-D array of shape (n_samples, n_features)")
    if not np.all(np.isfinite(X)):
        raise ValidationError("X contains non-finite values")
    if n_features is not None and X.shape[1] != n_features:
        raise ValidationError(
            f"dimension mismatch: model was fitted with {n_features} features, "
            f"got {X.shape[1]}"
        )
    return X


def check_training_set(X, y) -> tuple[np.ndarray, np.ndarray]:
    X = check_feature_matrix(X)
    y = np.asarray(y)
    if y.ndim != 1 or len(y) != len(X):
        raise ValidationError("y must be 1-D with one label per row of X")
    if len(X) == 0:
        raise ValidationError("training set is empty")
    return X, y


class ScoredClassifier(BaseEstimator, ClassifierMixin):
    """Base for the activity classifiers.

    Subclasses implement ``_fit(Xs, y_idx, n_classes, rng)`` on standardized
    inputs and ``_score_matrix(Xs)`` returning an (n_samples, n_classes)
    score array; argmax of the scores (first maximum, i.e. class-order
    tie-break) is the prediction. ``probabilistic`` marks kinds whose scores
    form a distribution.
    """

    kind: ClassVar[str] = ""
    probabilistic: ClassVar[bool] = True

    # -- fitting ---------------------------------------------------------

    def fit(self, X, y):
        X, y = check_training_set(X, y)
        class_order = getattr(self, "class_order", None)
        if class_order is not None:
            self.classes_ = np.asarray(class_order)
            unknown = set(y) - set(self.classes_)
            if unknown:
                raise ValidationError(f"labels {sorted(unknown)!r} not in class_order")
        else:
            self.classes_ = np.unique(y)
        if len(self.classes_) < 2:
            raise ValidationError("training set must contain at least 2 classes")

        lookup = {label: i for i, label in enumerate(self.classes_)}
        y_idx = np.array([lookup[label] for label in y])

        self.n_features_in_ = X.shape[1]
        self.mean_ = X.mean(axis=0)
        scale = X.std(axis=0)
        scale[scale == 0] = 1.0  # constant features pass through unscaled
        self.scale_ = scale

        rng = np.random.default_rng(getattr(self, "seed", 0))
        self._fit(self._standardize(X), y_idx, len(self.classes_), rng)
        return self

    def _standardize(self, X: np.ndarray) -> np.ndarray:
        return (X - self.mean_) / self.scale_

    def _fit(self, Xs: np.ndarray, y_idx: np.ndarray, n_classes: int, rng) -> None:
        raise NotImplementedError

    def _score_matrix(self, Xs: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    # -- inference -------------------------------------------------------

    def _check_fitted(self) -> None:
        if not hasattr(self, "classes_"):
            raise ValidationError(f"{type(self).__name__} is not fitted")

    def predict_scores(self, X) -> np.ndarray:
        """Per-class score matrix; rows sum to 1 for probabilistic kinds."""
        self._check_fitted()
        X = check_feature_matrix(X, self.n_features_in_)
        return self._score_matrix(self._standardize(X))

    def predict_proba(self, X) -> np.ndarray:
        if not self.probabilistic:
            raise ValidationError(f"{self.kind} scores are not probabilities")
        return self.predict_scores(X)

    def predict(self, X):
        scores = self.predict_scores(X)
        return self.classes_[np.argmax(scores, axis=1)]

    # -- serialization ---------------------------------------------------

    def _fitted_state(self) -> dict:
        raise NotImplementedError

    def _restore_state(self, state: dict) -> None:
        raise NotImplementedError

    def to_json_dict(self) -> dict:
        self._check_fitted()
        return {
            "kind": self.kind,
            "hyperparameters": _plain(self.get_params()),
            "classes": [str(c) for c in self.classes_],
            "n_features": int(self.n_features_in_),
            "normalization": {
                "mean": self.mean_.tolist(),
                "std": self.scale_.tolist(),
            },
            "fitted": _plain(self._fitted_state()),
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_json_dict(), sort_keys=True, indent=1) + "\n",
            encoding="utf-8",
        )


def _plain(value):
    """Recursively convert numpy containers to JSON-serializable types."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def restore_classifier(cls, doc: dict) -> "ScoredClassifier":
    """Rebuild a fitted classifier of type ``cls`` from its JSON document."""
    model = cls(**doc["hyperparameters"])
    model.classes_ = np.array(doc["classes"])
    model.n_features_in_ = int(doc["n_features"])
    model.mean_ = np.array(doc["normalization"]["mean"], dtype=float)
    model.scale_ = np.array(doc["normalization"]["std"], dtype=float)
    model._restore_state(doc["fitted"])
    return model

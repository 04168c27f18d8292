"""Human-activity recognition: windowing, features, classifiers, evaluation."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..errors import ValidationError
from .estimators import (
    MODEL_KINDS,
    MODEL_REGISTRY,
    ScoredClassifier,
    load_model,
    make_classifier,
)
from .evaluation import MetricsReport, ModelMetrics, evaluate, metrics_from_confusion, session_folds
from .features import (
    FEATURE_NAMES,
    N_FEATURES,
    FeatureVector,
    extract_features,
    features_to_matrix,
)
from .labels import ActivityLabel, LABEL_ORDER
from .windowing import window

DEFAULT_WINDOW_S = 3.0
DEFAULT_OVERLAP = 0.5


def dataset_from_samples(
    samples,
    window_s: float = DEFAULT_WINDOW_S,
    overlap_fraction: float = DEFAULT_OVERLAP,
) -> list[FeatureVector]:
    """Window an IMU stream and extract one feature vector per window."""
    return [extract_features(w) for w in window(samples, window_s, overlap_fraction)]


def train(
    features: Sequence[FeatureVector],
    kind: str,
    hyperparameters: Optional[dict] = None,
    seed: int = 0,
) -> ScoredClassifier:
    """Fit one classifier kind on labelled feature vectors."""
    X, y = features_to_matrix(features)
    if np.any(y == ""):
        raise ValidationError("training requires labelled feature vectors")
    model = make_classifier(
        kind,
        hyperparameters,
        seed=seed,
        class_order=[label.value for label in LABEL_ORDER],
    )
    return model.fit(X, y)


def predict(model: ScoredClassifier, feature_vector: FeatureVector) -> tuple[ActivityLabel, np.ndarray]:
    """Label one window; returns (label, per-class scores in model class order)."""
    scores = model.predict_scores(feature_vector.values.reshape(1, -1))[0]
    label = model.classes_[int(np.argmax(scores))]
    return ActivityLabel.from_name(str(label)), scores


__all__ = [
    "ActivityLabel",
    "DEFAULT_OVERLAP",
    "DEFAULT_WINDOW_S",
    "FEATURE_NAMES",
    "FeatureVector",
    "LABEL_ORDER",
    "MODEL_KINDS",
    "MODEL_REGISTRY",
    "MetricsReport",
    "ModelMetrics",
    "N_FEATURES",
    "ScoredClassifier",
    "dataset_from_samples",
    "evaluate",
    "extract_features",
    "features_to_matrix",
    "load_model",
    "make_classifier",
    "metrics_from_confusion",
    "predict",
    "session_folds",
    "train",
    "window",
]

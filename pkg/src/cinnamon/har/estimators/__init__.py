"""The seven classifier kinds and their registry."""

from __future__ import annotations

import json
from pathlib import Path

from ...errors import ValidationError
from .base import ScoredClassifier, restore_classifier
from .instance import GaussianNaiveBayes, KNeighborsVoteClassifier
from .linear import LinearHingeClassifier, SoftmaxRegression, softmax, softmax_loss_and_grad
from .trees import BaggedForestClassifier, BoostedTreesClassifier, CartTreeClassifier

#: kind string -> estimator class, in the canonical comparison order.
MODEL_REGISTRY: dict[str, type[ScoredClassifier]] = {
    "lr": SoftmaxRegression,
    "dt": CartTreeClassifier,
    "rf": BaggedForestClassifier,
    "gb": BoostedTreesClassifier,
    "knn": KNeighborsVoteClassifier,
    "svc": LinearHingeClassifier,
    "gnb": GaussianNaiveBayes,
}

MODEL_KINDS = tuple(MODEL_REGISTRY)


def make_classifier(kind: str, hyperparameters: dict | None = None, seed: int = 0,
                    class_order=None) -> ScoredClassifier:
    if kind not in MODEL_REGISTRY:
        raise ValidationError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")
    params = dict(hyperparameters or {})
    params.setdefault("seed", seed)
    if class_order is not None:
        params.setdefault("class_order", list(class_order))
    return MODEL_REGISTRY[kind](**params)


def load_model(path: str | Path) -> ScoredClassifier:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    kind = doc.get("kind")
    if kind not in MODEL_REGISTRY:
        raise ValidationError(f"model file {path} has unknown kind {kind!r}")
    return restore_classifier(MODEL_REGISTRY[kind], doc)


__all__ = [
    "BaggedForestClassifier",
    "BoostedTreesClassifier",
    "CartTreeClassifier",
    "GaussianNaiveBayes",
    "KNeighborsVoteClassifier",
    "LinearHingeClassifier",
    "MODEL_KINDS",
    "MODEL_REGISTRY",
    "ScoredClassifier",
    "SoftmaxRegression",
    "load_model",
    "make_classifier",
    "softmax",
    "softmax_loss_and_grad",
]

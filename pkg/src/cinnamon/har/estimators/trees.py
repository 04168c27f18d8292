"""Tree-based classifiers: single CART tree, bagged forest, boosted ensemble."""

from __future__ import annotations

import math

import numpy as np

from ._trees import (
    build_classification_tree,
    build_regression_tree,
    tree_apply_distribution,
    tree_apply_value,
)
from .base import ScoredClassifier


class CartTreeClassifier(ScoredClassifier):
    """Single Gini-impurity CART tree with depth and leaf-size limits."""

    kind = "dt"
    probabilistic = True

    def __init__(self, max_depth=8, min_samples_leaf=2, seed=0, class_order=None):
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.seed = seed
        self.class_order = class_order

    def _fit(self, Xs, y_idx, n_classes, rng):
        self.tree_ = build_classification_tree(
            Xs, y_idx, n_classes, self.max_depth, self.min_samples_leaf
        )

    def _score_matrix(self, Xs):
        return tree_apply_distribution(self.tree_, Xs, len(self.classes_))

    def _fitted_state(self):
        return {"tree": self.tree_}

    def _restore_state(self, state):
        self.tree_ = state["tree"]


class BaggedForestClassifier(ScoredClassifier):
    """Bootstrap-aggregated CART trees with per-split feature subsampling.

    Scores are hard-vote fractions over the ensemble, so they always sum
    to 1.
    """

    kind = "rf"
    probabilistic = True

    def __init__(
        self,
        n_trees=100,
        max_depth=8,
        min_samples_leaf=2,
        max_features="sqrt",
        seed=0,
        class_order=None,
    ):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.max_features = max_features
        self.seed = seed
        self.class_order = class_order

    def _subset_size(self, n_features: int) -> int:
        if self.max_features == "sqrt":
            return max(1, round(math.sqrt(n_features)))
        return min(int(self.max_features), n_features)

    def _fit(self, Xs, y_idx, n_classes, rng):
        n = len(Xs)
        subset = self._subset_size(Xs.shape[1])
        trees = []
        for _ in range(self.n_trees):
            boot = rng.integers(0, n, size=n)
            trees.append(
                build_classification_tree(
                    Xs[boot],
                    y_idx[boot],
                    n_classes,
                    self.max_depth,
                    self.min_samples_leaf,
                    rng=rng,
                    feature_subset_size=subset,
                )
            )
        self.trees_ = trees

    def _score_matrix(self, Xs):
        k = len(self.classes_)
        votes = np.zeros((len(Xs), k))
        for tree in self.trees_:
            winners = np.argmax(tree_apply_distribution(tree, Xs, k), axis=1)
            votes[np.arange(len(Xs)), winners] += 1.0
        return votes / len(self.trees_)

    def _fitted_state(self):
        return {"trees": self.trees_}

    def _restore_state(self, state):
        self.trees_ = state["trees"]


class BoostedTreesClassifier(ScoredClassifier):
    """One-vs-rest gradient boosting: shallow regression trees on logistic loss.

    Each class gets an additive model F_k built from depth-limited
    squared-error trees fitted to the logistic residual, with Newton-step
    leaf values and shrinkage. The per-round training loss curve is kept on
    the fitted model so loss monotonicity can be inspected without refitting.
    """

    kind = "gb"
    probabilistic = True

    def __init__(
        self,
        n_rounds=100,
        max_depth=3,
        learning_rate=0.1,
        min_samples_leaf=2,
        seed=0,
        class_order=None,
    ):
        self.n_rounds = n_rounds
        self.max_depth = max_depth
        self.learning_rate = learning_rate
        self.min_samples_leaf = min_samples_leaf
        self.seed = seed
        self.class_order = class_order

    @staticmethod
    def _logistic_loss(margins: np.ndarray, targets01: np.ndarray) -> float:
        # Numerically stable mean of log(1 + exp(-y*F)) with y in {-1, +1}.
        signed = np.where(targets01 > 0.5, margins, -margins)
        return float(np.mean(np.logaddexp(0.0, -signed)))

    def _fit(self, Xs, y_idx, n_classes, rng):
        n = len(Xs)
        base_scores = []
        all_trees: list[list[dict]] = []
        margins = np.zeros((n, n_classes))
        targets = np.zeros((n, n_classes))
        targets[np.arange(n), y_idx] = 1.0
        for k in range(n_classes):
            positive = float(np.clip(targets[:, k].mean(), 1e-6, 1 - 1e-6))
            f0 = math.log(positive / (1.0 - positive))
            base_scores.append(f0)
            margins[:, k] = f0
            all_trees.append([])

        loss_curve = [
            float(
                np.mean(
                    [self._logistic_loss(margins[:, k], targets[:, k]) for k in range(n_classes)]
                )
            )
        ]
        for _ in range(self.n_rounds):
            for k in range(n_classes):
                prob = 1.0 / (1.0 + np.exp(-margins[:, k]))
                residual = targets[:, k] - prob
                hessian = np.maximum(prob * (1.0 - prob), 1e-12)
                tree = build_regression_tree(
                    Xs, residual, hessian, self.max_depth, self.min_samples_leaf
                )
                all_trees[k].append(tree)
                margins[:, k] += self.learning_rate * tree_apply_value(tree, Xs)
            loss_curve.append(
                float(
                    np.mean(
                        [self._logistic_loss(margins[:, k], targets[:, k]) for k in range(n_classes)]
                    )
                )
            )
        self.base_scores_ = np.array(base_scores)
        self.trees_ = all_trees
        self.training_loss_ = loss_curve

    def _margins(self, Xs: np.ndarray) -> np.ndarray:
        k = len(self.classes_)
        margins = np.tile(self.base_scores_, (len(Xs), 1))
        for class_idx in range(k):
            for tree in self.trees_[class_idx]:
                margins[:, class_idx] += self.learning_rate * tree_apply_value(tree, Xs)
        return margins

    def _score_matrix(self, Xs):
        raw = 1.0 / (1.0 + np.exp(-self._margins(Xs)))
        totals = raw.sum(axis=1, keepdims=True)
        uniform = np.full_like(raw, 1.0 / raw.shape[1])
        return np.where(totals > 0, raw / np.maximum(totals, 1e-300), uniform)

    def _fitted_state(self):
        return {
            "base_scores": self.base_scores_,
            "trees": self.trees_,
            "training_loss": self.training_loss_,
        }

    def _restore_state(self, state):
        self.base_scores_ = np.array(state["base_scores"], dtype=float)
        self.trees_ = state["trees"]
        self.training_loss_ = list(state["training_loss"])

"""Instance- and density-based classifiers: k-NN voting and Gaussian NB."""

from __future__ import annotations

import numpy as np

from ...errors import ValidationError
from .base import ScoredClassifier


class KNeighborsVoteClassifier(ScoredClassifier):
    """k-nearest-neighbour majority vote on standardized Euclidean distance.

    Scores are vote fractions; distance ties resolve to the earlier
    training row, vote ties to the earlier class.
    """

    kind = "knn"
    probabilistic = True

    def __init__(self, n_neighbors=5, seed=0, class_order=None):
        self.n_neighbors = n_neighbors
        self.seed = seed
        self.class_order = class_order

    def _fit(self, Xs, y_idx, n_classes, rng):
        if self.n_neighbors < 1:
            raise ValidationError("n_neighbors must be >= 1")
        self.train_X_ = Xs
        self.train_y_ = y_idx

    def _score_matrix(self, Xs):
        k = min(self.n_neighbors, len(self.train_X_))
        n_classes = len(self.classes_)
        d2 = (
            np.sum(Xs**2, axis=1)[:, None]
            - 2.0 * Xs @ self.train_X_.T
            + np.sum(self.train_X_**2, axis=1)[None, :]
        )
        neighbors = np.argsort(d2, axis=1, kind="stable")[:, :k]
        votes = np.zeros((len(Xs), n_classes))
        for i in range(len(Xs)):
            counts = np.bincount(self.train_y_[neighbors[i]], minlength=n_classes)
            votes[i] = counts / k
        return votes

    def _fitted_state(self):
        return {"train_X": self.train_X_, "train_y": self.train_y_}

    def _restore_state(self, state):
        self.train_X_ = np.array(state["train_X"], dtype=float)
        self.train_y_ = np.array(state["train_y"], dtype=int)


class GaussianNaiveBayes(ScoredClassifier):
    """Per-class, per-feature Gaussians with variance smoothing."""

    kind = "gnb"
    probabilistic = True

    def __init__(self, var_smoothing=1e-9, seed=0, class_order=None):
        self.var_smoothing = var_smoothing
        self.seed = seed
        self.class_order = class_order

    def _fit(self, Xs, y_idx, n_classes, rng):
        n, d = Xs.shape
        means = np.zeros((n_classes, d))
        variances = np.zeros((n_classes, d))
        priors = np.zeros(n_classes)
        for k in range(n_classes):
            rows = Xs[y_idx == k]
            if len(rows) == 0:
                raise ValidationError(f"class {self.classes_[k]!r} has no training rows")
            means[k] = rows.mean(axis=0)
            variances[k] = rows.var(axis=0)
            priors[k] = len(rows) / n
        epsilon = self.var_smoothing * max(float(Xs.var(axis=0).max()), 1e-12)
        self.means_ = means
        self.variances_ = variances + epsilon
        self.log_priors_ = np.log(priors)

    def _score_matrix(self, Xs):
        log_likelihood = np.empty((len(Xs), len(self.classes_)))
        for k in range(len(self.classes_)):
            diff = Xs - self.means_[k]
            log_likelihood[:, k] = self.log_priors_[k] - 0.5 * np.sum(
                np.log(2.0 * np.pi * self.variances_[k]) + diff**2 / self.variances_[k],
                axis=1,
            )
        shifted = log_likelihood - log_likelihood.max(axis=1, keepdims=True)
        posterior = np.exp(shifted)
        return posterior / posterior.sum(axis=1, keepdims=True)

    def _fitted_state(self):
        return {
            "means": self.means_,
            "variances": self.variances_,
            "log_priors": self.log_priors_,
        }

    def _restore_state(self, state):
        self.means_ = np.array(state["means"], dtype=float)
        self.variances_ = np.array(state["variances"], dtype=float)
        self.log_priors_ = np.array(state["log_priors"], dtype=float)

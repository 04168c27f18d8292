"""Linear classifiers: multinomial softmax regression and one-vs-rest hinge."""

from __future__ import annotations

import numpy as np

from .base import ScoredClassifier


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def softmax_loss_and_grad(
    weights: np.ndarray,
    bias: np.ndarray,
    Xs: np.ndarray,
    y_idx: np.ndarray,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy and its analytic gradient w.r.t. weights and bias.

    Kept as a standalone function so the gradient can be checked against
    finite differences independently of the training loop.
    """
    n = len(Xs)
    probs = softmax(Xs @ weights + bias)
    loss = -float(np.mean(np.log(np.maximum(probs[np.arange(n), y_idx], 1e-300))))
    delta = probs.copy()
    delta[np.arange(n), y_idx] -= 1.0
    grad_w = Xs.T @ delta / n
    grad_b = delta.mean(axis=0)
    return loss, grad_w, grad_b


class SoftmaxRegression(ScoredClassifier):
    """Multinomial logistic regression, full-batch gradient descent."""

    kind = "lr"
    probabilistic = True

    def __init__(self, learning_rate=0.1, epochs=500, seed=0, class_order=None):
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.seed = seed
        self.class_order = class_order

    def _fit(self, Xs, y_idx, n_classes, rng):
        weights = np.zeros((Xs.shape[1], n_classes))
        bias = np.zeros(n_classes)
        for _ in range(self.epochs):
            _, grad_w, grad_b = softmax_loss_and_grad(weights, bias, Xs, y_idx)
            weights -= self.learning_rate * grad_w
            bias -= self.learning_rate * grad_b
        self.weights_ = weights
        self.bias_ = bias

    def _score_matrix(self, Xs):
        return softmax(Xs @ self.weights_ + self.bias_)

    def _fitted_state(self):
        return {"weights": self.weights_, "bias": self.bias_}

    def _restore_state(self, state):
        self.weights_ = np.array(state["weights"], dtype=float)
        self.bias_ = np.array(state["bias"], dtype=float)


class LinearHingeClassifier(ScoredClassifier):
    """Linear one-vs-rest SVM trained by L2-regularized hinge subgradient descent."""

    kind = "svc"
    probabilistic = False  # decision margins, not a distribution

    def __init__(self, reg_lambda=1e-3, learning_rate=0.1, epochs=500, seed=0, class_order=None):
        self.reg_lambda = reg_lambda
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.seed = seed
        self.class_order = class_order

    def _fit(self, Xs, y_idx, n_classes, rng):
        n, d = Xs.shape
        weights = np.zeros((d, n_classes))
        bias = np.zeros(n_classes)
        targets = np.where(
            y_idx[:, None] == np.arange(n_classes)[None, :], 1.0, -1.0
        )
        for _ in range(self.epochs):
            margins = targets * (Xs @ weights + bias)
            active = (margins < 1.0).astype(float)  # hinge subgradient support
            coeff = active * targets
            grad_w = self.reg_lambda * weights - Xs.T @ coeff / n
            grad_b = -coeff.mean(axis=0)
            weights -= self.learning_rate * grad_w
            bias -= self.learning_rate * grad_b
        self.weights_ = weights
        self.bias_ = bias

    def _score_matrix(self, Xs):
        return Xs @ self.weights_ + self.bias_

    def _fitted_state(self):
        return {"weights": self.weights_, "bias": self.bias_}

    def _restore_state(self, state):
        self.weights_ = np.array(state["weights"], dtype=float)
        self.bias_ = np.array(state["bias"], dtype=float)

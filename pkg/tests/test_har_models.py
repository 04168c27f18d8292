"""Classifier contracts: oracles, determinism, serialization, score shapes."""

import json

import numpy as np
import pytest

from cinnamon.errors import ValidationError
from cinnamon.har import MODEL_KINDS, features_to_matrix, train
from cinnamon.har.estimators import (
    MODEL_REGISTRY,
    load_model,
    make_classifier,
    softmax_loss_and_grad,
)

PROBABILISTIC_KINDS = ("lr", "rf", "gb", "knn", "gnb")


def gaussian_blobs(n_per_class=40, n_classes=4, dim=6, sigma=0.1, seed=0):
    """Unit-separated blobs: any sane classifier should score 1.0."""
    rng = np.random.default_rng(seed)
    X, y = [], []
    for k in range(n_classes):
        center = np.zeros(dim)
        center[k % dim] = k + 1.0
        X.append(center + rng.normal(0, sigma, size=(n_per_class, dim)))
        y.extend([f"class{k}"] * n_per_class)
    return np.vstack(X), np.array(y)


class TestPerKindOracles:
    def test_knn_k1_returns_training_point_label(self):
        X, y = gaussian_blobs(seed=3)
        model = make_classifier("knn", {"n_neighbors": 1}).fit(X, y)
        assert (model.predict(X) == y).all()

    def test_gnb_separable_blobs_percent_accuracy(self):
        X, y = gaussian_blobs(seed=4)
        X_test, y_test = gaussian_blobs(seed=5)
        model = make_classifier("gnb").fit(X, y)
        assert (model.predict(X_test) == y_test).mean() == 1.0

    def test_all_kinds_beat_chance_on_separable_blobs(self):
        X, y = gaussian_blobs(seed=6)
        X_test, y_test = gaussian_blobs(seed=7)
        for kind in MODEL_KINDS:
            model = make_classifier(kind, seed=0).fit(X, y)
            accuracy = (model.predict(X_test) == y_test).mean()
            assert accuracy > 0.25, f"{kind} no better than chance"

    def test_lr_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            n, d, k = 12, 4, 3
            X = rng.normal(size=(n, d))
            y_idx = rng.integers(0, k, size=n)
            W = rng.normal(scale=0.5, size=(d, k))
            b = rng.normal(scale=0.5, size=k)
            _, grad_w, grad_b = softmax_loss_and_grad(W, b, X, y_idx)

            eps = 1e-6
            num_w = np.zeros_like(W)
            for i in range(d):
                for j in range(k):
                    Wp, Wm = W.copy(), W.copy()
                    Wp[i, j] += eps
                    Wm[i, j] -= eps
                    lp, _, _ = softmax_loss_and_grad(Wp, b, X, y_idx)
                    lm, _, _ = softmax_loss_and_grad(Wm, b, X, y_idx)
                    num_w[i, j] = (lp - lm) / (2 * eps)
            rel = np.abs(num_w - grad_w) / np.maximum(np.abs(num_w) + np.abs(grad_w), 1e-8)
            assert rel.max() < 1e-5

    def test_gb_training_loss_non_increasing(self, small_features):
        X, y = features_to_matrix(small_features)
        model = make_classifier("gb", {"n_rounds": 40}).fit(X, y)
        losses = model.training_loss_
        assert len(losses) == 41
        assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))


class TestScoreContracts:
    def test_probabilistic_scores_sum_to_one(self, small_features):
        X, y = features_to_matrix(small_features)
        for kind in PROBABILISTIC_KINDS:
            model = train(small_features, kind, seed=1)
            scores = model.predict_scores(X[:50])
            assert np.allclose(scores.sum(axis=1), 1.0, atol=1e-9), kind

    def test_label_is_argmax_of_scores_every_kind(self, small_features):
        X, _ = features_to_matrix(small_features)
        for kind in MODEL_KINDS:
            model = train(small_features, kind, seed=1)
            scores = model.predict_scores(X[:50])
            labels = model.predict(X[:50])
            expected = model.classes_[np.argmax(scores, axis=1)]
            assert (labels == expected).all(), kind

    def test_class_order_follows_label_enumeration(self, small_features):
        model = train(small_features, "dt", seed=0)
        assert list(model.classes_) == ["FastWalk", "SlowWalk", "Rest", "Stairs"]

    def test_dimension_mismatch_rejected(self, small_features):
        model = train(small_features, "gnb", seed=0)
        with pytest.raises(ValidationError, match="dimension mismatch"):
            model.predict(np.zeros((3, 5)))

    def test_single_class_dataset_rejected(self):
        X = np.random.default_rng(0).normal(size=(20, 4))
        y = np.array(["only"] * 20)
        with pytest.raises(ValidationError, match="2 classes"):
            make_classifier("dt").fit(X, y)


class TestDeterminismAndSerialization:
    def test_same_inputs_give_identical_serialized_models(self, small_features):
        for kind in MODEL_KINDS:
            a = train(small_features, kind, seed=9)
            b = train(small_features, kind, seed=9)
            doc_a = json.dumps(a.to_json_dict(), sort_keys=True)
            doc_b = json.dumps(b.to_json_dict(), sort_keys=True)
            assert doc_a == doc_b, kind

    def test_round_trip_identical_predictions_on_1000_vectors(self, small_features, tmp_path):
        rng = np.random.default_rng(123)
        X, _ = features_to_matrix(small_features)
        probe = rng.normal(
            loc=X.mean(axis=0), scale=X.std(axis=0) + 1e-9, size=(1000, X.shape[1])
        )
        for kind in MODEL_KINDS:
            model = train(small_features, kind, seed=2)
            path = tmp_path / f"{kind}.json"
            model.save(path)
            restored = load_model(path)
            assert (model.predict(probe) == restored.predict(probe)).all(), kind
            assert np.allclose(
                model.predict_scores(probe), restored.predict_scores(probe)
            ), kind

    def test_model_file_names_kind_and_normalization(self, small_features, tmp_path):
        model = train(small_features, "lr", seed=0)
        path = tmp_path / "lr.json"
        model.save(path)
        doc = json.loads(path.read_text())
        assert doc["kind"] == "lr"
        assert set(doc) >= {"kind", "hyperparameters", "classes", "normalization", "fitted"}
        assert len(doc["normalization"]["mean"]) == 32

    def test_sklearn_get_params_round_trip(self):
        for kind, cls in MODEL_REGISTRY.items():
            inst = cls()
            params = inst.get_params()
            clone = cls(**params)
            assert clone.get_params() == params, kind

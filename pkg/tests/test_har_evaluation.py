"""Leave-one-session-out harness: folds, pooled metrics, leak-freedom."""

import numpy as np
import pytest

from cinnamon.errors import ValidationError
from cinnamon.har import evaluate, session_folds, train
from cinnamon.har.estimators.base import ScoredClassifier
from cinnamon.har.features import FeatureVector, N_FEATURES
from cinnamon.labels import ActivityLabel


def synthetic_features(sessions_per_class=3, windows_per_session=10, encode_label=True, seed=0):
    """Tiny labelled dataset; feature 0 encodes the class index when asked."""
    rng = np.random.default_rng(seed)
    out = []
    for class_idx, label in enumerate(ActivityLabel):
        for session in range(sessions_per_class):
            for w in range(windows_per_session):
                values = rng.normal(size=N_FEATURES)
                if encode_label:
                    values[0] = float(class_idx)
                out.append(
                    FeatureVector(
                        values=values,
                        window_start_t=w * 1.5,
                        session_id=f"{label.value.lower()}-s{session + 1}",
                        label=label,
                    )
                )
    return out


class OracleClassifier(ScoredClassifier):
    """Reads the class index straight out of feature 0 (harness upper bound)."""

    kind = "oracle"

    def __init__(self, seed=0, class_order=None):
        self.seed = seed
        self.class_order = class_order

    def _fit(self, Xs, y_idx, n_classes, rng):
        self._n = n_classes

    def predict_scores(self, X):
        X = np.asarray(X, dtype=float)
        scores = np.zeros((len(X), self._n))
        idx = np.clip(np.round(X[:, 0]).astype(int), 0, self._n - 1)
        scores[np.arange(len(X)), idx] = 1.0
        return scores


class ConstantClassifier(ScoredClassifier):
    """Always predicts the first class (chance level on balanced data)."""

    kind = "constant"

    def __init__(self, seed=0, class_order=None):
        self.seed = seed
        self.class_order = class_order

    def _fit(self, Xs, y_idx, n_classes, rng):
        self._n = n_classes

    def predict_scores(self, X):
        scores = np.zeros((np.asarray(X).shape[0], self._n))
        scores[:, 0] = 1.0
        return scores


def oracle_factory(seed):
    model = OracleClassifier(seed=seed, class_order=[l.value for l in ActivityLabel])
    return model


def constant_factory(seed):
    return ConstantClassifier(seed=seed, class_order=[l.value for l in ActivityLabel])


class TestHarness:
    def test_oracle_classifier_scores_perfectly(self):
        features = synthetic_features()
        report = evaluate(features, [("oracle", oracle_factory)], seed=0)
        metrics = report.per_model[0]
        assert metrics.accuracy == 1.0
        assert metrics.macro_f1 == 1.0

    def test_constant_classifier_scores_chance_on_balanced_data(self):
        features = synthetic_features()
        report = evaluate(features, [("constant", constant_factory)], seed=0)
        assert report.per_model[0].accuracy == pytest.approx(0.25)

    def test_fold_plan_holds_out_one_session_per_class(self):
        features = synthetic_features(sessions_per_class=4)
        folds = session_folds(features)
        assert len(folds) == 4
        for fold in folds:
            assert len(fold["test_sessions"]) == len(ActivityLabel)
        all_held = set().union(*(f["test_sessions"] for f in folds))
        assert len(all_held) == 4 * len(ActivityLabel)

    def test_single_session_per_class_rejected(self):
        features = synthetic_features(sessions_per_class=1)
        with pytest.raises(ValidationError, match="2 sessions"):
            evaluate(features, [("oracle", oracle_factory)], seed=0)

    def test_confusion_rows_match_class_counts(self):
        features = synthetic_features(sessions_per_class=3, windows_per_session=7)
        report = evaluate(features, [("constant", constant_factory)], seed=0)
        confusion = report.per_model[0].confusion
        assert confusion.sum(axis=1).tolist() == [21, 21, 21, 21]

    def test_rows_sorted_by_macro_f1_descending(self):
        features = synthetic_features()
        report = evaluate(
            features, [("constant", constant_factory), ("oracle", oracle_factory)], seed=0
        )
        assert [m.kind for m in report.per_model] == ["oracle", "constant"]
        f1s = [m.macro_f1 for m in report.per_model]
        assert f1s == sorted(f1s, reverse=True)


class TestLeakFreedom:
    def test_normalization_stats_come_from_training_split_only(self, small_features):
        # Hold out one session per class manually; the fitted stats must match
        # the training rows exactly even though the test rows differ wildly.
        folds = session_folds(small_features)
        held = folds[0]["test_sessions"]
        train_rows = [fv for fv in small_features if fv.session_id not in held]
        model = train(train_rows, "lr", seed=0)
        X_train = np.stack([fv.values for fv in train_rows])
        assert np.allclose(model.mean_, X_train.mean(axis=0))
        expected_scale = X_train.std(axis=0)
        expected_scale[expected_scale == 0] = 1.0
        assert np.allclose(model.scale_, expected_scale)

    def test_evaluation_deterministic_for_fixed_seed(self, small_features):
        a = evaluate(small_features, ["dt", "gnb"], seed=5)
        b = evaluate(small_features, ["dt", "gnb"], seed=5)
        assert a.to_dict() == b.to_dict()

    def test_kind_results_independent_of_requested_set(self, small_features):
        solo = evaluate(small_features, ["rf"], seed=5)
        paired = evaluate(small_features, ["gnb", "rf"], seed=5)
        rf_solo = next(m for m in solo.per_model if m.kind == "rf")
        rf_paired = next(m for m in paired.per_model if m.kind == "rf")
        assert rf_solo.to_dict() == rf_paired.to_dict()

"""Leave-one-session-out model comparison and its metrics report."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from ..errors import ValidationError
from .estimators import MODEL_KINDS, ScoredClassifier, make_classifier
from .features import FeatureVector
from .labels import ActivityLabel, LABEL_ORDER

ModelSpec = Union[str, tuple[str, Callable[[int], ScoredClassifier]]]


@dataclass
class ModelMetrics:
    kind: str
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    confusion: np.ndarray  # rows: true class, cols: predicted class
    labels: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "accuracy": self.accuracy,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "labels": list(self.labels),
            "confusion": self.confusion.astype(int).tolist(),
        }


@dataclass
class MetricsReport:
    scheme: str
    per_model: list[ModelMetrics] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"scheme": self.scheme, "per_model": [m.to_dict() for m in self.per_model]}

    def format_table(self) -> str:
        header = f"{'model':<6} {'accuracy':>9} {'precision':>10} {'recall':>8} {'f1':>8}"
        lines = [header, "-" * len(header)]
        for m in self.per_model:
            lines.append(
                f"{m.kind:<6} {m.accuracy:>9.4f} {m.macro_precision:>10.4f} "
                f"{m.macro_recall:>8.4f} {m.macro_f1:>8.4f}"
            )
        return "\n".join(lines)


def metrics_from_confusion(kind: str, confusion: np.ndarray, labels: Sequence[str]) -> ModelMetrics:
    total = confusion.sum()
    trace = np.trace(confusion)
    accuracy = float(trace / total) if total else 0.0
    precisions, recalls, f1s = [], [], []
    for k in range(len(labels)):
        col = confusion[:, k].sum()
        row = confusion[k, :].sum()
        precision = float(confusion[k, k] / col) if col else 0.0
        recall = float(confusion[k, k] / row) if row else 0.0
        f1 = 2 * precision * recall / (precision + recall) if (precision + recall) else 0.0
        precisions.append(precision)
        recalls.append(recall)
        f1s.append(f1)
    return ModelMetrics(
        kind=kind,
        accuracy=accuracy,
        macro_precision=float(np.mean(precisions)),
        macro_recall=float(np.mean(recalls)),
        macro_f1=float(np.mean(f1s)),
        confusion=confusion,
        labels=tuple(labels),
    )


def session_folds(features: Sequence[FeatureVector]) -> list[dict]:
    """Fold plan: fold i holds out each class's i-th session (first-seen order)."""
    sessions_by_class: dict[ActivityLabel, list[str]] = {}
    for fv in features:
        if fv.label is None:
            raise ValidationError("evaluation requires labelled feature vectors")
        order = sessions_by_class.setdefault(fv.label, [])
        if fv.session_id not in order:
            order.append(fv.session_id)
    if not sessions_by_class:
        raise ValidationError("no labelled windows to evaluate")
    min_sessions = min(len(v) for v in sessions_by_class.values())
    if min_sessions < 2:
        raise ValidationError("need at least 2 sessions per class for session folds")
    folds = []
    for i in range(min_sessions):
        held_out = {sessions[i] for sessions in sessions_by_class.values()}
        folds.append({"test_sessions": held_out})
    return folds


def _resolve_spec(spec: ModelSpec, seed: int, fold: int) -> tuple[str, ScoredClassifier]:
    class_order = [label.value for label in LABEL_ORDER]
    if isinstance(spec, str):
        # Per-(kind, fold) seeds keep results independent of which kinds run.
        kind_index = MODEL_KINDS.index(spec) if spec in MODEL_KINDS else len(MODEL_KINDS)
        fold_seed = int(
            np.random.SeedSequence([seed, kind_index, fold]).generate_state(1)[0]
        )
        return spec, make_classifier(spec, seed=fold_seed, class_order=class_order)
    name, factory = spec
    fold_seed = int(np.random.SeedSequence([seed, hash(name) % (2**31), fold]).generate_state(1)[0])
    return name, factory(fold_seed)


def evaluate(
    features: Sequence[FeatureVector],
    kinds: Sequence[ModelSpec],
    seed: int = 0,
    hyperparameters: Optional[dict[str, dict]] = None,
) -> MetricsReport:
    """Train/test every requested model over the session folds.

    Confusions are pooled over folds; models are reported best macro-F1
    first. Normalization statistics are computed inside each fold's
    training split only (the estimators standardize in ``fit``).
    """
    folds = session_folds(features)
    labels = [label.value for label in LABEL_ORDER]
    label_index = {label: i for i, label in enumerate(labels)}
    X = np.stack([fv.values for fv in features])
    y = np.array([fv.label.value for fv in features])
    session_ids = np.array([fv.session_id for fv in features])

    report = MetricsReport(scheme=f"leave-one-session-out ({len(folds)} folds)")
    overrides = hyperparameters or {}
    for spec in kinds:
        confusion = np.zeros((len(labels), len(labels)), dtype=np.int64)
        expected_counts = np.zeros(len(labels), dtype=np.int64)
        name = None
        for fold_idx, fold in enumerate(folds):
            test_mask = np.isin(session_ids, list(fold["test_sessions"]))
            for label, idx in label_index.items():
                expected_counts[idx] += int(np.sum(y[test_mask] == label))
            name, model = _resolve_spec(spec, seed, fold_idx)
            if isinstance(spec, str) and spec in overrides:
                model.set_params(**overrides[spec])
            model.fit(X[~test_mask], y[~test_mask])
            predicted = model.predict(X[test_mask])
            for true_label, pred_label in zip(y[test_mask], predicted):
                confusion[label_index[true_label], label_index[pred_label]] += 1

        # Consistency assertions on every evaluation run.
        if not np.array_equal(confusion.sum(axis=1), expected_counts):
            raise AssertionError("confusion row sums do not match test-set class counts")
        metrics = metrics_from_confusion(name, confusion, labels)
        if confusion.sum() and abs(metrics.accuracy - np.trace(confusion) / confusion.sum()) > 1e-12:
            raise AssertionError("accuracy does not equal confusion trace/total")
        report.per_model.append(metrics)

    report.per_model.sort(key=lambda m: (-m.macro_f1, m.kind))
    return report

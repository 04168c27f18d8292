"""Binary decision-tree internals shared by the tree, forest and boosting kinds.

Nodes are plain dicts so fitted models serialize to JSON directly:
internal ``{"f": feature, "t": threshold, "l": left, "r": right}``,
classification leaf ``{"p": class_distribution, "n": count}``,
regression leaf ``{"v": value, "n": count}``. Rows with feature value
<= threshold go left.
"""

from __future__ import annotations

from typing import Optional

import numpy as np


def _best_split_for_feature(gain_at: np.ndarray, valid: np.ndarray):
    """Pick the best valid split position; returns (gain, position) or None.

    ``gain_at[i]`` scores the split with i+1 samples on the left; positions
    where consecutive sorted values are equal are already masked invalid.
    """
    if not np.any(valid):
        return None
    gains = np.where(valid, gain_at, -np.inf)
    pos = int(np.argmax(gains))
    return float(gains[pos]), pos


def find_split_gini(
    Xs: np.ndarray,
    y_idx: np.ndarray,
    n_classes: int,
    feature_ids: np.ndarray,
    min_leaf: int,
) -> Optional[tuple[int, float]]:
    """Best (feature, threshold) by Gini impurity decrease; None if no valid split."""
    n = len(y_idx)
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y_idx] = 1.0

    best_gain = -np.inf
    best: Optional[tuple[int, float]] = None
    left_n = np.arange(1, n, dtype=float)
    right_n = n - left_n
    for f in feature_ids:
        x = Xs[:, f]
        order = np.argsort(x, kind="stable")
        x_sorted = x[order]
        cum = np.cumsum(onehot[order], axis=0)
        left_sq = np.sum(cum[:-1] ** 2, axis=1)
        total = cum[-1]
        right_counts = total[None, :] - cum[:-1]
        right_sq = np.sum(right_counts**2, axis=1)
        # Minimizing weighted Gini == maximizing sum(counts^2)/n per side.
        gain_at = left_sq / left_n + right_sq / right_n
        valid = (
            (x_sorted[1:] > x_sorted[:-1])
            & (left_n >= min_leaf)
            & (right_n >= min_leaf)
        )
        found = _best_split_for_feature(gain_at, valid)
        if found is not None and found[0] > best_gain:
            gain, pos = found
            best_gain = gain
            best = (int(f), float((x_sorted[pos] + x_sorted[pos + 1]) / 2.0))
    return best


def find_split_sse(
    Xs: np.ndarray,
    target: np.ndarray,
    feature_ids: np.ndarray,
    min_leaf: int,
) -> Optional[tuple[int, float]]:
    """Best (feature, threshold) by squared-error decrease on a regression target."""
    n = len(target)
    best_gain = -np.inf
    best: Optional[tuple[int, float]] = None
    left_n = np.arange(1, n, dtype=float)
    right_n = n - left_n
    for f in feature_ids:
        x = Xs[:, f]
        order = np.argsort(x, kind="stable")
        x_sorted = x[order]
        cum = np.cumsum(target[order])
        left_sum = cum[:-1]
        right_sum = cum[-1] - left_sum
        gain_at = left_sum**2 / left_n + right_sum**2 / right_n
        valid = (
            (x_sorted[1:] > x_sorted[:-1])
            & (left_n >= min_leaf)
            & (right_n >= min_leaf)
        )
        found = _best_split_for_feature(gain_at, valid)
        if found is not None and found[0] > best_gain:
            gain, pos = found
            best_gain = gain
            best = (int(f), float((x_sorted[pos] + x_sorted[pos + 1]) / 2.0))
    return best


def _feature_subset(n_features: int, subset_size: Optional[int], rng) -> np.ndarray:
    if subset_size is None or subset_size >= n_features:
        return np.arange(n_features)
    return np.sort(rng.choice(n_features, size=subset_size, replace=False))


def build_classification_tree(
    Xs: np.ndarray,
    y_idx: np.ndarray,
    n_classes: int,
    max_depth: int,
    min_leaf: int,
    rng=None,
    feature_subset_size: Optional[int] = None,
    depth: int = 0,
) -> dict:
    counts = np.bincount(y_idx, minlength=n_classes).astype(float)
    n = len(y_idx)
    distribution = counts / n
    if depth >= max_depth or n < 2 * min_leaf or np.max(counts) == n:
        return {"p": distribution.tolist(), "n": int(n)}
    features = _feature_subset(Xs.shape[1], feature_subset_size, rng)
    split = find_split_gini(Xs, y_idx, n_classes, features, min_leaf)
    if split is None:
        return {"p": distribution.tolist(), "n": int(n)}
    f, threshold = split
    mask = Xs[:, f] <= threshold
    return {
        "f": f,
        "t": threshold,
        "l": build_classification_tree(
            Xs[mask], y_idx[mask], n_classes, max_depth, min_leaf, rng,
            feature_subset_size, depth + 1,
        ),
        "r": build_classification_tree(
            Xs[~mask], y_idx[~mask], n_classes, max_depth, min_leaf, rng,
            feature_subset_size, depth + 1,
        ),
    }


def build_regression_tree(
    Xs: np.ndarray,
    residual: np.ndarray,
    hessian: np.ndarray,
    max_depth: int,
    min_leaf: int,
    depth: int = 0,
) -> dict:
    """Squared-error tree on the residual with Newton-step leaf values."""
    n = len(residual)

    def leaf() -> dict:
        denom = max(float(np.sum(hessian)), 1e-12)
        return {"v": float(np.sum(residual) / denom), "n": int(n)}

    if depth >= max_depth or n < 2 * min_leaf:
        return leaf()
    split = find_split_sse(Xs, residual, np.arange(Xs.shape[1]), min_leaf)
    if split is None:
        return leaf()
    f, threshold = split
    mask = Xs[:, f] <= threshold
    return {
        "f": f,
        "t": threshold,
        "l": build_regression_tree(
            Xs[mask], residual[mask], hessian[mask], max_depth, min_leaf, depth + 1
        ),
        "r": build_regression_tree(
            Xs[~mask], residual[~mask], hessian[~mask], max_depth, min_leaf, depth + 1
        ),
    }


def tree_apply_distribution(node: dict, Xs: np.ndarray, n_classes: int) -> np.ndarray:
    """Leaf class distribution for every row (vectorized tree walk)."""
    out = np.empty((len(Xs), n_classes))

    def walk(nd: dict, idx: np.ndarray) -> None:
        if "p" in nd:
            out[idx] = nd["p"]
            return
        mask = Xs[idx, nd["f"]] <= nd["t"]
        walk(nd["l"], idx[mask])
        walk(nd["r"], idx[~mask])

    walk(node, np.arange(len(Xs)))
    return out


def tree_apply_value(node: dict, Xs: np.ndarray) -> np.ndarray:
    """Leaf regression value for every row (vectorized tree walk)."""
    out = np.empty(len(Xs))

    def walk(nd: dict, idx: np.ndarray) -> None:
        if "v" in nd:
            out[idx] = nd["v"]
            return
        mask = Xs[idx, nd["f"]] <= nd["t"]
        walk(nd["l"], idx[mask])
        walk(nd["r"], idx[~mask])

    walk(node, np.arange(len(Xs)))
    return out

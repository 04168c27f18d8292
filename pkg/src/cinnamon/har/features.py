"""Per-window feature extraction for activity classification.

The feature set mixes amplitude statistics (separates rest from motion),
the dominant oscillation period (separates gait speeds), posture range
(separates stair climbing) and heart rate. Names and order are a stable
contract: serialized models and datasets depend on them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import ValidationError
from ..labels import ActivityLabel, LABEL_ORDER
from ..simulate.types import ImuSample


def _axis_names() -> list[str]:
    names = []
    for sensor in ("accel", "gyro"):
        for axis in ("x", "y", "z"):
            for stat in ("mean", "std", "min", "max"):
                names.append(f"{sensor}_{axis}_{stat}")
    return names


FEATURE_NAMES: tuple[str, ...] = tuple(
    _axis_names()
    + [
        "accel_mag_mean",
        "accel_mag_std",
        "gyro_mag_mean",
        "gyro_mag_std",
        "accel_vertical_zero_cross_rate",
        "dominant_period_s",
        "heart_rate_mean",
        "pitch_range",
    ]
)

N_FEATURES = len(FEATURE_NAMES)

#: Autocorrelation peaks below this are treated as "no periodicity".
_AUTOCORR_MIN_PEAK = 0.2


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    window_start_t: float
    session_id: str
    label: Optional[ActivityLabel] = None

    def __post_init__(self) -> None:
        if self.values.shape != (N_FEATURES,):
            raise ValidationError(
                f"feature vector must have {N_FEATURES} values, got {self.values.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            bad = FEATURE_NAMES[int(np.argmin(np.isfinite(self.values)))]
            raise ValidationError(f"feature {bad!r} is not finite")

    def named(self) -> dict[str, float]:
        return dict(zip(FEATURE_NAMES, map(float, self.values)))


def zero_crossing_rate(series: np.ndarray) -> float:
    """Fraction of consecutive pairs where the mean-centered series flips sign."""
    centered = series - series.mean()
    if len(centered) < 2:
        return 0.0
    signs = np.sign(centered)
    return float(np.count_nonzero(signs[:-1] * signs[1:] < 0) / (len(centered) - 1))


def dominant_period(series: np.ndarray, dt: float) -> float:
    """Lag of the first autocorrelation peak, in seconds; 0 when aperiodic.

    The first local maximum above a small threshold is used rather than the
    global one, which would alias to a multiple of the true period on
    coarsely sampled signals.
    """
    centered = series - series.mean()
    energy = float(np.dot(centered, centered))
    if energy < 1e-12:
        return 0.0
    max_lag = len(centered) // 2
    if max_lag < 2:
        return 0.0
    corr = np.array(
        [np.dot(centered[:-lag], centered[lag:]) / energy for lag in range(1, max_lag + 1)]
    )
    for i in range(1, len(corr) - 1):
        if corr[i] > corr[i - 1] and corr[i] >= corr[i + 1] and corr[i] > _AUTOCORR_MIN_PEAK:
            return (i + 1) * dt
    return 0.0


def majority_label(samples: Sequence[ImuSample]) -> Optional[ActivityLabel]:
    labels = [s.label for s in samples if s.label is not None]
    if not labels:
        return None
    counts = Counter(labels)
    best = max(counts.values())
    for label in LABEL_ORDER:  # enumeration order breaks ties
        if counts.get(label) == best:
            return label
    return None


def extract_features(raw_window: Sequence[ImuSample]) -> FeatureVector:
    """Summarise one window of inertial samples into the fixed feature set."""
    if not raw_window:
        raise ValidationError("cannot extract features from an empty window")
    accel = np.array([s.accel for s in raw_window])
    gyro = np.array([s.gyro for s in raw_window])
    orientation = np.array([s.orientation for s in raw_window])
    times = np.array([s.t for s in raw_window])
    dt = (times[-1] - times[0]) / (len(times) - 1) if len(times) > 1 else 0.1

    values: list[float] = []
    for matrix in (accel, gyro):
        for axis in range(3):
            column = matrix[:, axis]
            values.extend(
                [float(column.mean()), float(column.std()), float(column.min()), float(column.max())]
            )
    accel_mag = np.linalg.norm(accel, axis=1)
    gyro_mag = np.linalg.norm(gyro, axis=1)
    values.extend([float(accel_mag.mean()), float(accel_mag.std())])
    values.extend([float(gyro_mag.mean()), float(gyro_mag.std())])
    values.append(zero_crossing_rate(accel[:, 2]))
    values.append(dominant_period(accel[:, 2], dt))
    heart_rates = [s.heart_rate_bpm for s in raw_window if s.heart_rate_bpm is not None]
    values.append(float(np.mean(heart_rates)) if heart_rates else 0.0)
    values.append(float(orientation[:, 1].max() - orientation[:, 1].min()))

    return FeatureVector(
        values=np.array(values),
        window_start_t=float(times[0]),
        session_id=raw_window[0].session_id,
        label=majority_label(raw_window),
    )


def features_to_matrix(
    features: Sequence[FeatureVector],
) -> tuple[np.ndarray, np.ndarray]:
    """Stack feature vectors into (X, y) with string labels."""
    if not features:
        raise ValidationError("empty feature list")
    X = np.stack([fv.values for fv in features])
    y = np.array([fv.label.value if fv.label is not None else "" for fv in features])
    return X, y

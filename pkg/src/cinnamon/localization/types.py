"""Domain types for the RSSI-to-position pipeline."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ..errors import ValidationError
from ..geometry import Point


@dataclass(frozen=True)
class DistanceEstimate:
    t: float
    anchor_id: str
    distance_m: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.distance_m) and self.distance_m > 0):
            raise ValidationError("distance_m must be finite and > 0")


@dataclass(frozen=True)
class KalmanParams:
    """Scalar random-walk filter parameters, all in dB / (dB)^2.

    ``initial_estimate=None`` seeds the state from the first measurement;
    ``initial_var=None`` uses ``measurement_var_r`` (or 1.0 when r is 0).
    """

    process_var_q: float = 0.01
    measurement_var_r: float = 4.0
    initial_estimate: Optional[float] = None
    initial_var: Optional[float] = None

    def __post_init__(self) -> None:
        if self.process_var_q < 0:
            raise ValidationError("process_var_q must be >= 0")
        if self.measurement_var_r < 0:
            raise ValidationError("measurement_var_r must be >= 0")
        if self.process_var_q == 0 and self.measurement_var_r == 0:
            raise ValidationError("process_var_q and measurement_var_r cannot both be 0")
        if self.initial_var is not None and not self.initial_var > 0:
            raise ValidationError("initial_var must be > 0")

    def resolved_initial_var(self) -> float:
        if self.initial_var is not None:
            return self.initial_var
        return self.measurement_var_r if self.measurement_var_r > 0 else 1.0


@dataclass(frozen=True)
class PositionEstimate:
    t: float
    xy: Optional[Point]
    residual_rms_m: Optional[float]
    room_id: Optional[str]
    anchors_used: int

    def __post_init__(self) -> None:
        if self.xy is not None and self.anchors_used < 3:
            raise ValidationError("a resolved position needs at least 3 anchors")
        if self.residual_rms_m is not None and self.residual_rms_m < 0:
            raise ValidationError("residual_rms_m must be >= 0")


@dataclass
class LocalizationReport:
    """Accuracy summary of a localization run against ground truth."""

    n_estimates: int
    n_matched: int
    mean_position_error_m: Optional[float]
    median_position_error_m: Optional[float]
    room_accuracy: float
    per_room_confusion: dict[str, dict[str, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n_estimates": self.n_estimates,
            "n_matched": self.n_matched,
            "mean_position_error_m": self.mean_position_error_m,
            "median_position_error_m": self.median_position_error_m,
            "room_accuracy": self.room_accuracy,
            "per_room_confusion": self.per_room_confusion,
        }

"""RSSI streams to room-level positions: denoise, invert, trilaterate."""

from .kalman import KalmanDenoiser, kalman_filter
from .pipeline import (
    DEFAULT_WINDOW_S,
    MATCH_TOLERANCE_S,
    evaluate_localization,
    localize_stream,
)
from .ranging import rssi_to_distance, slant_to_horizontal
from .rooms import assign_room
from .trilateration import (
    COLLINEARITY_AREA_M2,
    range_residual_rms,
    solve_position,
    trilaterate,
)
from .types import DistanceEstimate, KalmanParams, LocalizationReport, PositionEstimate

__all__ = [
    "COLLINEARITY_AREA_M2",
    "DEFAULT_WINDOW_S",
    "DistanceEstimate",
    "KalmanDenoiser",
    "KalmanParams",
    "LocalizationReport",
    "MATCH_TOLERANCE_S",
    "PositionEstimate",
    "assign_room",
    "evaluate_localization",
    "kalman_filter",
    "localize_stream",
    "range_residual_rms",
    "rssi_to_distance",
    "slant_to_horizontal",
    "solve_position",
    "trilaterate",
]

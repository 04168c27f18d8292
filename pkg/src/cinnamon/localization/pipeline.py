"""Windowed RSSI-stream localization and its accuracy evaluation."""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from ..errors import ValidationError
from ..simulate.types import ChannelModel, GroundTruthTrack, RoomLayout, RssiSample
from .kalman import kalman_filter
from .ranging import rssi_to_distance, slant_to_horizontal
from .rooms import assign_room
from .trilateration import solve_position
from .types import KalmanParams, LocalizationReport, PositionEstimate

DEFAULT_WINDOW_S = 2.0
MATCH_TOLERANCE_S = 0.5


def localize_stream(
    samples: Sequence[RssiSample],
    layout: RoomLayout,
    channel: ChannelModel,
    kalman: Optional[KalmanParams] = None,
    window_s: float = DEFAULT_WINDOW_S,
) -> list[PositionEstimate]:
    """One position estimate per time window of the RSSI stream.

    Within a window each anchor's series is optionally Kalman-filtered; the
    last (filtered) value is inverted to a slant range, projected to the
    floor plane via the anchor's mount height, and the three anchors with
    the strongest mean RSSI are trilaterated. Windows with fewer than three
    anchors (or a degenerate anchor set) yield an estimate without a
    position rather than an error.
    """
    if window_s <= 0:
        raise ValidationError("window_s must be > 0")
    if not samples:
        return []

    anchor_index = {a.anchor_id: i for i, a in enumerate(layout.anchors)}
    for s in samples:
        if s.anchor_id not in anchor_index:
            raise ValidationError(f"sample references unknown anchor {s.anchor_id!r}")

    ordered = sorted(samples, key=lambda s: s.t)
    t0 = ordered[0].t
    estimates: list[PositionEstimate] = []
    window: list[RssiSample] = []
    boundary = t0 + window_s

    def flush(win: list[RssiSample]) -> None:
        if not win:
            return
        t_est = max(s.t for s in win)
        per_anchor: dict[str, list[float]] = {}
        for s in win:
            per_anchor.setdefault(s.anchor_id, []).append(s.rssi_dbm)
        if len(per_anchor) < 3:
            estimates.append(
                PositionEstimate(
                    t=t_est, xy=None, residual_rms_m=None, room_id=None,
                    anchors_used=len(per_anchor),
                )
            )
            return
        # Strongest three anchors by mean raw RSSI; layout order breaks ties.
        ranked = sorted(
            per_anchor.items(),
            key=lambda kv: (-float(np.mean(kv[1])), anchor_index[kv[0]]),
        )[:3]
        anchors_xy = []
        distances = []
        for anchor_id, series in ranked:
            level = (
                float(kalman_filter(series, kalman)[-1]) if kalman is not None else series[-1]
            )
            anchor = layout.anchors[anchor_index[anchor_id]]
            d3 = rssi_to_distance(level, channel)
            distances.append(slant_to_horizontal(d3, anchor.mount_height))
            anchors_xy.append(anchor.position)
        try:
            point, residual = solve_position(anchors_xy, distances)
        except ValidationError:
            estimates.append(
                PositionEstimate(
                    t=t_est, xy=None, residual_rms_m=None, room_id=None, anchors_used=3
                )
            )
            return
        xy = (float(point[0]), float(point[1]))
        estimates.append(
            PositionEstimate(
                t=t_est,
                xy=xy,
                residual_rms_m=residual,
                room_id=assign_room(xy, layout),
                anchors_used=3,
            )
        )

    for s in ordered:
        while s.t >= boundary - 1e-12:
            flush(window)
            window = []
            boundary += window_s
        window.append(s)
    flush(window)
    return estimates


def evaluate_localization(
    estimates: Sequence[PositionEstimate],
    truth: GroundTruthTrack,
    match_tolerance_s: float = MATCH_TOLERANCE_S,
) -> LocalizationReport:
    """Match estimates to the nearest-in-time truth sample and score them.

    Estimates without a resolved position count against room accuracy but
    contribute no position error. Raises when nothing matches in time.
    """
    if not truth.samples:
        raise ValidationError("ground truth track is empty")
    truth_t = np.array([s.t for s in truth.samples])

    errors: list[float] = []
    confusion: dict[str, dict[str, int]] = {}
    n_matched = 0
    correct = 0
    for est in estimates:
        idx = int(np.argmin(np.abs(truth_t - est.t)))
        if abs(truth_t[idx] - est.t) > match_tolerance_s:
            continue
        n_matched += 1
        true_sample = truth.samples[idx]
        est_room = est.room_id if est.room_id is not None else "none"
        row = confusion.setdefault(true_sample.room_id, {})
        row[est_room] = row.get(est_room, 0) + 1
        if est.room_id == true_sample.room_id:
            correct += 1
        if est.xy is not None:
            errors.append(
                math.hypot(
                    est.xy[0] - true_sample.position[0],
                    est.xy[1] - true_sample.position[1],
                )
            )
    if n_matched == 0:
        raise ValidationError("no estimate matched the ground truth in time")

    return LocalizationReport(
        n_estimates=len(estimates),
        n_matched=n_matched,
        mean_position_error_m=float(np.mean(errors)) if errors else None,
        median_position_error_m=float(np.median(errors)) if errors else None,
        room_accuracy=correct / n_matched,
        per_room_confusion=confusion,
    )

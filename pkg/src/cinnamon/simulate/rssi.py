"""BLE scan synthesis: anchor-to-wearable RSSI under the channel model."""

from __future__ import annotations

import math

import numpy as np

from ..errors import ValidationError
from .types import ChannelModel, GroundTruthTrack, RoomLayout, RssiSample


def anchor_distance_3d(position: tuple[float, float], anchor_xy: tuple[float, float], mount_height: float) -> float:
    """Slant distance from a floor-level wearable to a ceiling anchor."""
    dx = position[0] - anchor_xy[0]
    dy = position[1] - anchor_xy[1]
    return math.sqrt(dx * dx + dy * dy + mount_height * mount_height)


def emit_rssi(
    track: GroundTruthTrack,
    layout: RoomLayout,
    channel: ChannelModel,
    rate_hz: float,
    seed: int,
) -> list[RssiSample]:
    """One RSSI sample per anchor per tick along the track.

    Ticks run from the first track timestamp to the last at ``rate_hz``.
    Each sample is the log-distance model value at the 3-D anchor distance
    plus Gaussian shadowing and, when the channel enables it, an occasional
    extra multipath drop. Deterministic per (inputs, seed).
    """
    if rate_hz <= 0:
        raise ValidationError("rate_hz must be > 0")
    if not track.samples:
        raise ValidationError("track is empty")

    rng = np.random.default_rng(seed)
    t0 = track.samples[0].t
    t_end = track.samples[-1].t
    n_ticks = int(math.floor((t_end - t0) * rate_hz + 1e-9)) + 1
    ticks = t0 + np.arange(n_ticks) / rate_hz

    track_t = np.array([s.t for s in track.samples])
    track_x = np.array([s.position[0] for s in track.samples])
    track_y = np.array([s.position[1] for s in track.samples])
    xs = np.interp(ticks, track_t, track_x)
    ys = np.interp(ticks, track_t, track_y)

    anchors = layout.anchors
    n_anchors = len(anchors)
    rssi = np.empty((n_ticks, n_anchors))
    for j, anchor in enumerate(anchors):
        dx = xs - anchor.position[0]
        dy = ys - anchor.position[1]
        d3 = np.sqrt(dx * dx + dy * dy + anchor.mount_height**2)
        d3 = np.maximum(d3, 1e-12)
        rssi[:, j] = channel.p0_dbm - 10.0 * channel.path_loss_exponent * np.log10(
            d3 / channel.d0_m
        )

    if channel.shadow_sigma_db > 0:
        rssi += rng.normal(0.0, channel.shadow_sigma_db, size=rssi.shape)
    if channel.outlier_prob > 0:
        hit = rng.random(rssi.shape) < channel.outlier_prob
        depth = rng.random(rssi.shape) * channel.outlier_max_extra_db
        rssi -= hit * depth

    samples = []
    for i in range(n_ticks):
        t = float(ticks[i])
        for j, anchor in enumerate(anchors):
            samples.append(
                RssiSample(
                    t=t,
                    anchor_id=anchor.anchor_id,
                    wearable_id=track.wearable_id,
                    rssi_dbm=float(rssi[i, j]),
                )
            )
    return samples

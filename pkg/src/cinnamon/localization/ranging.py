"""RSSI-to-range inversion under the log-distance channel model."""

from __future__ import annotations

import math

from ..simulate.types import ChannelModel

#: Floor for projected horizontal ranges; keeps distances strictly positive
#: when a noisy slant range comes out at or below the mount height.
MIN_DISTANCE_M = 1e-9


def rssi_to_distance(rssi_dbm: float, channel: ChannelModel) -> float:
    """Invert the path-loss model: d = d0 * 10^((p0 - rssi) / (10 n))."""
    exponent = (channel.p0_dbm - rssi_dbm) / (10.0 * channel.path_loss_exponent)
    return channel.d0_m * 10.0**exponent


def slant_to_horizontal(distance_3d_m: float, mount_height_m: float) -> float:
    """Project a ceiling-anchor slant range onto the floor plane.

    Slant ranges shorter than the mount height (possible under noise) clamp
    to a point directly below the anchor.
    """
    gap = distance_3d_m * distance_3d_m - mount_height_m * mount_height_m
    if gap <= 0:
        return MIN_DISTANCE_M
    return max(math.sqrt(gap), MIN_DISTANCE_M)

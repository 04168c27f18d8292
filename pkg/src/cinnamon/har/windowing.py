"""Sliding windows over session-contiguous 10 Hz inertial streams."""

from __future__ import annotations

from typing import Sequence

from ..errors import ValidationError
from ..simulate.imu import SAMPLE_RATE_HZ
from ..simulate.types import ImuSample

Window = list[ImuSample]


def window(
    samples: Sequence[ImuSample],
    window_s: float = 3.0,
    overlap_fraction: float = 0.5,
) -> list[Window]:
    """Cut each session into fixed-length windows with the given overlap.

    Windows never span session boundaries; a session shorter than one
    window simply yields none. Sample cadence must be 10 Hz within each
    session.
    """
    if window_s <= 0:
        raise ValidationError("window_s must be > 0")
    if not 0 <= overlap_fraction < 1:
        raise ValidationError("overlap_fraction must be in [0, 1)")

    length = int(round(window_s * SAMPLE_RATE_HZ))
    if length < 1:
        raise ValidationError("window_s shorter than one sample period")
    step = max(int(round(length * (1.0 - overlap_fraction))), 1)

    sessions: dict[str, list[ImuSample]] = {}
    order: list[str] = []
    for s in samples:
        if s.session_id not in sessions:
            sessions[s.session_id] = []
            order.append(s.session_id)
        sessions[s.session_id].append(s)

    expected_dt = 1.0 / SAMPLE_RATE_HZ
    windows: list[Window] = []
    for session_id in order:
        session = sessions[session_id]
        for a, b in zip(session, session[1:]):
            if abs((b.t - a.t) - expected_dt) > 1e-6:
                raise ValidationError(
                    f"session {session_id!r} is not 10 Hz contiguous "
                    f"(gap of {b.t - a.t:.6f} s at t={a.t})"
                )
        start = 0
        while start + length <= len(session):
            windows.append(session[start : start + length])
            start += step
    return windows

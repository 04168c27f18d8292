"""Wearable trajectory synthesis from a scripted path."""

from __future__ import annotations

import numpy as np

from ..errors import ValidationError
from ..geometry import Point, point_in_polygon, polygon_centroid
from .types import (
    GroundTruthTrack,
    RoomLayout,
    Scenario,
    StaySegment,
    TrackSample,
    TrajectoryScript,
    WalkSegment,
)

#: Lateral gait wobble applied while walking (meters, 1 sigma).
WALK_WOBBLE_SIGMA_M = 0.03


def _resolve_point(target: Point | str, layout: RoomLayout) -> Point:
    if isinstance(target, str):
        for room in layout.rooms:
            if room.room_id == target:
                return polygon_centroid(room.polygon)
        raise ValidationError(f"trajectory references unknown room {target!r}")
    return target


def _room_of(point: Point, layout: RoomLayout) -> str:
    for room in layout.rooms:
        if point_in_polygon(point, room.polygon):
            return room.room_id
    raise ValidationError(f"trajectory position {point} lies outside every room")


def simulate_track(scenario: Scenario, seed: int) -> GroundTruthTrack:
    """Sample the scripted trajectory at the script rate over [0, total).

    Deterministic for a fixed (scenario, seed): the nominal path follows the
    waypoints exactly; while walking, a small seeded wobble is added and is
    dropped for any sample it would push outside all rooms.
    """
    return _simulate(scenario.trajectory, scenario.layout, seed)


def _simulate(script: TrajectoryScript, layout: RoomLayout, seed: int) -> GroundTruthTrack:
    rng = np.random.default_rng(seed)

    # Timeline of (t_start, t_end, from_pos, to_pos, walking).
    timeline: list[tuple[float, float, Point, Point, bool]] = []
    t = 0.0
    position: Point | None = None
    for seg in script.segments:
        if isinstance(seg, StaySegment):
            position = _resolve_point(seg.position, layout)
            timeline.append((t, t + seg.duration_s, position, position, False))
        else:
            assert isinstance(seg, WalkSegment) and position is not None
            target = _resolve_point(seg.to, layout)
            timeline.append((t, t + seg.duration_s, position, target, True))
            position = target
        t += seg.duration_s
    total = t

    rate = script.rate_hz
    n = int(np.floor(total * rate + 1e-9))
    samples = []
    seg_idx = 0
    for k in range(n):
        tk = k / rate
        while seg_idx < len(timeline) - 1 and tk >= timeline[seg_idx][1] - 1e-9:
            seg_idx += 1
        t0, t1, p0, p1, walking = timeline[seg_idx]
        w = 0.0 if t1 == t0 else min(max((tk - t0) / (t1 - t0), 0.0), 1.0)
        x = p0[0] + w * (p1[0] - p0[0])
        y = p0[1] + w * (p1[1] - p0[1])
        if walking:
            wx, wy = rng.normal(0.0, WALK_WOBBLE_SIGMA_M, size=2)
            if any(point_in_polygon((x + wx, y + wy), r.polygon) for r in layout.rooms):
                x, y = x + wx, y + wy
        samples.append(TrackSample(t=tk, position=(x, y), room_id=_room_of((x, y), layout)))
    return GroundTruthTrack(samples=tuple(samples), wearable_id=script.wearable_id)

"""Domain types produced and consumed by the hardware simulator."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..errors import ValidationError
from ..geometry import Point, point_in_polygon, polygon_is_simple
from ..labels import ActivityLabel

#: Closed enumeration of environmental parameters a bulb can report.
ENV_PARAMETERS = (
    "temperature_c",
    "humidity_pct",
    "co2_ppm",
    "voc_ppb",
    "ambient_light_lux",
    "dust_ug_m3",
    "smoke_ppm",
    "motion_bool",
)

GRAVITY_MS2 = 9.81


@dataclass(frozen=True)
class Room:
    room_id: str
    polygon: tuple[Point, ...]


@dataclass(frozen=True)
class Anchor:
    anchor_id: str
    position: Point
    mount_height: float = 2.5


@dataclass(frozen=True)
class RoomLayout:
    """Polygonal rooms plus the ceiling anchors mounted in them."""

    rooms: tuple[Room, ...]
    anchors: tuple[Anchor, ...]

    def __post_init__(self) -> None:
        if not self.rooms:
            raise ValidationError("layout must contain at least one room")
        seen_rooms: set[str] = set()
        for room in self.rooms:
            if room.room_id in seen_rooms:
                raise ValidationError(f"duplicate room_id {room.room_id!r}")
            seen_rooms.add(room.room_id)
            if len(room.polygon) < 3:
                raise ValidationError(
                    f"room {room.room_id!r} polygon needs at least 3 vertices"
                )
            if not polygon_is_simple(room.polygon):
                raise ValidationError(
                    f"room {room.room_id!r} polygon is self-intersecting"
                )
        seen_anchors: set[str] = set()
        for anchor in self.anchors:
            if anchor.anchor_id in seen_anchors:
                raise ValidationError(f"duplicate anchor_id {anchor.anchor_id!r}")
            seen_anchors.add(anchor.anchor_id)
            if anchor.mount_height < 0:
                raise ValidationError(
                    f"anchor {anchor.anchor_id!r} mount_height must be >= 0"
                )
            if not any(point_in_polygon(anchor.position, r.polygon) for r in self.rooms):
                raise ValidationError(
                    f"anchor {anchor.anchor_id!r} lies outside every room"
                )

    def room_ids(self) -> list[str]:
        return [room.room_id for room in self.rooms]

    def anchor_by_id(self, anchor_id: str) -> Anchor:
        for anchor in self.anchors:
            if anchor.anchor_id == anchor_id:
                return anchor
        raise ValidationError(f"unknown anchor_id {anchor_id!r}")


@dataclass(frozen=True)
class ChannelModel:
    """Log-distance path loss with Gaussian shadowing.

    Mean RSSI at 3-D distance ``d`` is ``p0_dbm - 10 n log10(d / d0_m)``;
    ``shadow_sigma_db`` is the standard deviation of the additive dB noise.
    ``outlier_prob`` optionally mixes in heavy-tail multipath drops of up to
    ``outlier_max_extra_db`` below the model value (set it to 0 for exactness
    tests).
    """

    p0_dbm: float = -45.0
    d0_m: float = 1.0
    path_loss_exponent: float = 2.8
    shadow_sigma_db: float = 2.0
    outlier_prob: float = 0.05
    outlier_max_extra_db: float = 10.0

    def __post_init__(self) -> None:
        if not self.d0_m > 0:
            raise ValidationError("channel d0_m must be > 0")
        if not self.path_loss_exponent > 0:
            raise ValidationError("channel path_loss_exponent must be > 0")
        if self.shadow_sigma_db < 0:
            raise ValidationError("channel shadow_sigma_db must be >= 0")
        if not 0.0 <= self.outlier_prob <= 1.0:
            raise ValidationError("channel outlier_prob must be in [0, 1]")

    def expected_rssi(self, distance_m: float) -> float:
        """Noiseless model value at a 3-D distance (in meters)."""
        d = max(distance_m, 1e-12)
        return self.p0_dbm - 10.0 * self.path_loss_exponent * math.log10(d / self.d0_m)


@dataclass(frozen=True)
class TrackSample:
    t: float
    position: Point
    room_id: str


@dataclass(frozen=True)
class GroundTruthTrack:
    samples: tuple[TrackSample, ...]
    wearable_id: str = "wearable-1"

    def __post_init__(self) -> None:
        times = [s.t for s in self.samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValidationError("track timestamps must be strictly increasing")

    def position_at(self, t: float) -> Point:
        """Piecewise-linear interpolation, clamped to the track's ends."""
        samples = self.samples
        if not samples:
            raise ValidationError("track is empty")
        if t <= samples[0].t:
            return samples[0].position
        if t >= samples[-1].t:
            return samples[-1].position
        lo, hi = 0, len(samples) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if samples[mid].t <= t:
                lo = mid
            else:
                hi = mid
        a, b = samples[lo], samples[hi]
        w = (t - a.t) / (b.t - a.t)
        return (
            a.position[0] + w * (b.position[0] - a.position[0]),
            a.position[1] + w * (b.position[1] - a.position[1]),
        )


@dataclass(frozen=True)
class RssiSample:
    t: float
    anchor_id: str
    wearable_id: str
    rssi_dbm: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.rssi_dbm):
            raise ValidationError("rssi_dbm must be finite")


@dataclass(frozen=True)
class ImuSample:
    t: float
    accel: tuple[float, float, float]
    gyro: tuple[float, float, float]
    orientation: tuple[float, float, float]
    heart_rate_bpm: Optional[float]
    session_id: str
    label: Optional[ActivityLabel]


@dataclass(frozen=True)
class EnvReading:
    t: float
    sensor_id: str
    parameter: str
    value: float

    def __post_init__(self) -> None:
        if self.parameter not in ENV_PARAMETERS:
            raise ValidationError(f"unknown environment parameter {self.parameter!r}")
        if not math.isfinite(self.value):
            raise ValidationError("environment reading value must be finite")
        if self.parameter == "motion_bool" and self.value not in (0.0, 1.0):
            raise ValidationError("motion_bool readings must be 0 or 1")


@dataclass(frozen=True)
class StaySegment:
    position: Point
    duration_s: float


@dataclass(frozen=True)
class WalkSegment:
    to: Point
    duration_s: float


@dataclass(frozen=True)
class TrajectoryScript:
    segments: tuple[StaySegment | WalkSegment, ...]
    wearable_id: str = "wearable-1"
    rate_hz: float = 10.0

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValidationError("trajectory needs at least one segment")
        if isinstance(self.segments[0], WalkSegment):
            raise ValidationError("trajectory must start with a stay segment")
        if self.rate_hz <= 0:
            raise ValidationError("trajectory rate_hz must be > 0")
        for seg in self.segments:
            if seg.duration_s <= 0:
                raise ValidationError("trajectory segment durations must be > 0")


@dataclass(frozen=True)
class ActivitySegment:
    label: ActivityLabel
    duration_s: float
    session_id: str

    def __post_init__(self) -> None:
        if self.duration_s <= 0:
            raise ValidationError("activity segment durations must be > 0")


@dataclass(frozen=True)
class EnvChannelScript:
    """Piecewise baseline + linear drift + seeded noise for one sensor channel."""

    sensor_id: str
    parameter: str
    duration_s: float
    baseline: float
    rate_hz: float = 1.0
    drift_per_s: float = 0.0
    noise_sigma: float = 0.0
    steps: tuple[tuple[float, float], ...] = ()  # (at_s, new baseline)

    def __post_init__(self) -> None:
        if self.parameter not in ENV_PARAMETERS:
            raise ValidationError(
                f"environment script references unknown parameter {self.parameter!r}"
            )
        if self.duration_s <= 0:
            raise ValidationError("environment channel duration_s must be > 0")
        if self.rate_hz <= 0:
            raise ValidationError("environment channel rate_hz must be > 0")
        if self.noise_sigma < 0:
            raise ValidationError("environment channel noise_sigma must be >= 0")

    def baseline_at(self, t: float) -> float:
        level = self.baseline
        for at_s, value in sorted(self.steps):
            if t >= at_s:
                level = value
        return level


@dataclass(frozen=True)
class Scenario:
    """Everything needed to reproduce one simulated recording end to end."""

    layout: RoomLayout
    channel: ChannelModel
    trajectory: TrajectoryScript
    activities: tuple[ActivitySegment, ...]
    environment: tuple[EnvChannelScript, ...]
    seed: int = 0
    rssi_rate_hz: float = 10.0
    name: str = "scenario"
    extras: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.rssi_rate_hz <= 0:
            raise ValidationError("rssi_rate_hz must be > 0")


def ensure_positions_inside(
    positions: Sequence[Point], layout: RoomLayout
) -> list[str]:
    """Map positions to containing rooms, raising when one is outside."""
    rooms = []
    for p in positions:
        for room in layout.rooms:
            if point_in_polygon(p, room.polygon):
                rooms.append(room.room_id)
                break
        else:
            raise ValidationError(f"position {p} lies outside every room")
    return rooms

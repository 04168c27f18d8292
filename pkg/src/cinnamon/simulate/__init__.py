"""Deterministic stand-in for the smart-bulb and wearable hardware."""

from .environment import emit_environment
from .imu import (
    DEFAULT_PROFILES,
    ImuGeneratorParams,
    SAMPLE_RATE_HZ,
    default_activity_script,
    emit_imu,
)
from .rssi import anchor_distance_3d, emit_rssi
from .scenario import (
    SCENARIO_SCHEMA,
    default_scenario,
    default_scenario_path,
    load_scenario,
    scenario_from_dict,
)
from .track import simulate_track
from .types import (
    ActivitySegment,
    Anchor,
    ChannelModel,
    ENV_PARAMETERS,
    EnvChannelScript,
    EnvReading,
    GRAVITY_MS2,
    GroundTruthTrack,
    ImuSample,
    Room,
    RoomLayout,
    RssiSample,
    Scenario,
    StaySegment,
    TrackSample,
    TrajectoryScript,
    WalkSegment,
)

__all__ = [
    "ActivitySegment",
    "Anchor",
    "ChannelModel",
    "DEFAULT_PROFILES",
    "ENV_PARAMETERS",
    "EnvChannelScript",
    "EnvReading",
    "GRAVITY_MS2",
    "GroundTruthTrack",
    "ImuGeneratorParams",
    "ImuSample",
    "Room",
    "RoomLayout",
    "RssiSample",
    "SAMPLE_RATE_HZ",
    "SCENARIO_SCHEMA",
    "Scenario",
    "StaySegment",
    "TrackSample",
    "TrajectoryScript",
    "WalkSegment",
    "anchor_distance_3d",
    "default_activity_script",
    "default_scenario",
    "default_scenario_path",
    "emit_environment",
    "emit_imu",
    "emit_rssi",
    "load_scenario",
    "scenario_from_dict",
    "simulate_track",
]

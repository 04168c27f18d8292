"""Scenario files: the single JSON document that drives a whole simulation."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from ..errors import ScenarioError, ValidationError
from ..labels import ActivityLabel
from .types import (
    ActivitySegment,
    Anchor,
    ChannelModel,
    EnvChannelScript,
    ENV_PARAMETERS,
    Room,
    RoomLayout,
    Scenario,
    StaySegment,
    TrajectoryScript,
    WalkSegment,
)

_POINT = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

#: JSON Schema for scenario documents (also shipped at docs/scenario-schema.json).
SCENARIO_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Simulation scenario",
    "type": "object",
    "required": ["layout", "channel", "trajectory", "activities", "environment", "seed"],
    "additionalProperties": True,
    "properties": {
        "name": {"type": "string"},
        "seed": {"type": "integer"},
        "rssi_rate_hz": {"type": "number", "exclusiveMinimum": 0},
        "layout": {
            "type": "object",
            "required": ["rooms", "anchors"],
            "properties": {
                "rooms": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["room_id", "polygon"],
                        "properties": {
                            "room_id": {"type": "string"},
                            "polygon": {"type": "array", "minItems": 3, "items": _POINT},
                        },
                    },
                },
                "anchors": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["anchor_id", "position"],
                        "properties": {
                            "anchor_id": {"type": "string"},
                            "position": _POINT,
                            "mount_height": {"type": "number", "minimum": 0},
                        },
                    },
                },
            },
        },
        "channel": {
            "type": "object",
            "properties": {
                "p0_dbm": {"type": "number"},
                "d0_m": {"type": "number", "exclusiveMinimum": 0},
                "path_loss_exponent": {"type": "number", "exclusiveMinimum": 0},
                "shadow_sigma_db": {"type": "number", "minimum": 0},
                "outlier_prob": {"type": "number", "minimum": 0, "maximum": 1},
                "outlier_max_extra_db": {"type": "number", "minimum": 0},
            },
        },
        "trajectory": {
            "type": "object",
            "required": ["segments"],
            "properties": {
                "wearable_id": {"type": "string"},
                "rate_hz": {"type": "number", "exclusiveMinimum": 0},
                "segments": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "object",
                        "required": ["kind", "duration_s"],
                        "properties": {
                            "kind": {"enum": ["stay", "walk"]},
                            "duration_s": {"type": "number", "exclusiveMinimum": 0},
                            "position": _POINT,
                            "to": _POINT,
                            "room": {"type": "string"},
                        },
                    },
                },
            },
        },
        "activities": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "duration_s", "session_id"],
                "properties": {
                    "label": {"enum": [label.value for label in ActivityLabel]},
                    "duration_s": {"type": "number", "exclusiveMinimum": 0},
                    "session_id": {"type": "string"},
                },
            },
        },
        "environment": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["sensor_id", "parameter", "duration_s", "baseline"],
                "properties": {
                    "sensor_id": {"type": "string"},
                    "parameter": {"enum": list(ENV_PARAMETERS)},
                    "duration_s": {"type": "number", "exclusiveMinimum": 0},
                    "baseline": {"type": "number"},
                    "rate_hz": {"type": "number", "exclusiveMinimum": 0},
                    "drift_per_s": {"type": "number"},
                    "noise_sigma": {"type": "number", "minimum": 0},
                    "steps": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["at_s", "to"],
                            "properties": {
                                "at_s": {"type": "number", "minimum": 0},
                                "to": {"type": "number"},
                            },
                        },
                    },
                },
            },
        },
    },
}


def _point(value: Any) -> tuple[float, float]:
    return (float(value[0]), float(value[1]))


def layout_from_dict(doc: dict[str, Any]) -> RoomLayout:
    """Build a RoomLayout from its JSON form (same schema as scenario files)."""
    return RoomLayout(
        rooms=tuple(
            Room(room_id=r["room_id"], polygon=tuple(_point(p) for p in r["polygon"]))
            for r in doc.get("rooms", [])
        ),
        anchors=tuple(
            Anchor(
                anchor_id=a["anchor_id"],
                position=_point(a["position"]),
                mount_height=float(a.get("mount_height", 2.5)),
            )
            for a in doc.get("anchors", [])
        ),
    )


def layout_to_dict(layout: RoomLayout) -> dict[str, Any]:
    return {
        "rooms": [
            {"room_id": r.room_id, "polygon": [list(p) for p in r.polygon]}
            for r in layout.rooms
        ],
        "anchors": [
            {
                "anchor_id": a.anchor_id,
                "position": list(a.position),
                "mount_height": a.mount_height,
            }
            for a in layout.anchors
        ],
    }


def scenario_from_dict(doc: dict[str, Any]) -> Scenario:
    """Build and fully validate a Scenario from a parsed JSON document."""
    try:
        jsonschema.validate(doc, SCENARIO_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ScenarioError(f"scenario failed schema validation: {exc.message}") from exc

    layout = RoomLayout(
        rooms=tuple(
            Room(room_id=r["room_id"], polygon=tuple(_point(p) for p in r["polygon"]))
            for r in doc["layout"]["rooms"]
        ),
        anchors=tuple(
            Anchor(
                anchor_id=a["anchor_id"],
                position=_point(a["position"]),
                mount_height=float(a.get("mount_height", 2.5)),
            )
            for a in doc["layout"]["anchors"]
        ),
    )
    channel = ChannelModel(**doc.get("channel", {}))

    segments: list[StaySegment | WalkSegment] = []
    for seg in doc["trajectory"]["segments"]:
        target = seg.get("room", None)
        if seg["kind"] == "stay":
            position = target if target is not None else _point(seg["position"])
            segments.append(StaySegment(position=position, duration_s=float(seg["duration_s"])))
        else:
            to = target if target is not None else _point(seg["to"])
            segments.append(WalkSegment(to=to, duration_s=float(seg["duration_s"])))
    trajectory = TrajectoryScript(
        segments=tuple(segments),
        wearable_id=doc["trajectory"].get("wearable_id", "wearable-1"),
        rate_hz=float(doc["trajectory"].get("rate_hz", 10.0)),
    )

    activities = tuple(
        ActivitySegment(
            label=ActivityLabel.from_name(a["label"]),
            duration_s=float(a["duration_s"]),
            session_id=a["session_id"],
        )
        for a in doc["activities"]
    )
    environment = tuple(
        EnvChannelScript(
            sensor_id=e["sensor_id"],
            parameter=e["parameter"],
            duration_s=float(e["duration_s"]),
            baseline=float(e["baseline"]),
            rate_hz=float(e.get("rate_hz", 1.0)),
            drift_per_s=float(e.get("drift_per_s", 0.0)),
            noise_sigma=float(e.get("noise_sigma", 0.0)),
            steps=tuple((float(s["at_s"]), float(s["to"])) for s in e.get("steps", [])),
        )
        for e in doc["environment"]
    )
    return Scenario(
        layout=layout,
        channel=channel,
        trajectory=trajectory,
        activities=activities,
        environment=environment,
        seed=int(doc["seed"]),
        rssi_rate_hz=float(doc.get("rssi_rate_hz", 10.0)),
        name=doc.get("name", "scenario"),
    )


def load_scenario(path: str | Path) -> Scenario:
    """Load, schema-check and invariant-check a scenario file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError(f"scenario file {path} must hold a JSON object")
    try:
        return scenario_from_dict(doc)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def default_scenario() -> Scenario:
    """The three-room apartment scenario shipped with the package."""
    with resources.files("cinnamon.data").joinpath("default_scenario.json").open(
        "r", encoding="utf-8"
    ) as fh:
        return scenario_from_dict(json.load(fh))


def default_scenario_path() -> Path:
    """Filesystem path of the shipped scenario (for CLI defaults and docs)."""
    return Path(str(resources.files("cinnamon.data").joinpath("default_scenario.json")))

"""Wire schemas for the JSON API. Timestamps are UTC epoch seconds."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class ApiErrorBody(BaseModel):
    """Every error response carries a stable machine code and a human message."""

    code: str
    message: str


class RegisterRequest(BaseModel):
    name: str
    email: str
    role: str
    credential: str


class LoginRequest(BaseModel):
    email: str
    credential: str


class UserOut(BaseModel):
    user_id: str
    name: str
    email: str
    role: str
    created_at: float


class LoginResponse(BaseModel):
    token: str
    user: UserOut


class LayoutRoom(BaseModel):
    room_id: str
    polygon: list[list[float]]


class LayoutAnchor(BaseModel):
    anchor_id: str
    position: list[float]
    mount_height: float = 2.5


class LayoutBody(BaseModel):
    rooms: list[LayoutRoom] = Field(default_factory=list)
    anchors: list[LayoutAnchor] = Field(default_factory=list)


class LocationBody(BaseModel):
    location_id: str
    name: str = ""
    layout: LayoutBody


class SensorBody(BaseModel):
    sensor_id: str
    kind: str = "env"
    location_id: str
    room_id: str
    position: Optional[list[float]] = None


class ProjectBody(BaseModel):
    project_id: str = ""
    patient_user_id: str
    locations: list[LocationBody] = Field(default_factory=list)
    sensors: list[SensorBody] = Field(default_factory=list)


class EnvReadingBody(BaseModel):
    sensor_id: str
    parameter: str
    t: float
    value: float


class EnvIngestRequest(BaseModel):
    readings: list[EnvReadingBody]


class RssiSampleBody(BaseModel):
    t: float
    anchor_id: str
    wearable_id: str
    rssi_dbm: float


class RssiIngestRequest(BaseModel):
    samples: list[RssiSampleBody]


class ImuSampleBody(BaseModel):
    t: float
    ax: float
    ay: float
    az: float
    gx: float
    gy: float
    gz: float
    roll: float
    pitch: float
    yaw: float
    hr: Optional[float] = None
    session_id: str = "live"
    label: Optional[str] = None


class ImuIngestRequest(BaseModel):
    wearable_id: str
    samples: list[ImuSampleBody]
    #: Route each sample's heart rate through the reading/alert path.
    ingest_heart_rate: bool = True


class ThresholdRuleBody(BaseModel):
    rule_id: str = ""
    parameter: str
    min: Optional[float] = None
    max: Optional[float] = None
    severity: str = "warning"
    enabled: bool = True


class ThresholdsPutRequest(BaseModel):
    rules: list[ThresholdRuleBody]


class GfiRequest(BaseModel):
    items: list[int]
    respondent_id: str = ""
    t: float = 0.0


class PssuqRequest(BaseModel):
    items: list[Optional[int]]
    respondent_id: str = ""
    t: float = 0.0

"""Users, patient projects, threshold rules and the alert lifecycle engine.

All committed state flows through the event store (see ``store``); the
in-memory indexes here are rebuilt from the merged event streams on
startup. Alert timestamps derive from reading timestamps, not wall clock,
so replaying a reading stream reproduces the alert log exactly.
"""

from __future__ import annotations

import hashlib
import secrets
import threading
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

from ..errors import (
    AuthError,
    AuthorizationError,
    DuplicateError,
    NotFoundError,
    ValidationError,
)
from ..geometry import Point
from ..simulate.scenario import layout_from_dict, layout_to_dict
from ..simulate.types import ENV_PARAMETERS, RoomLayout

ROLES = ("admin", "doctor", "medical_student", "designer", "patient")
SEVERITIES = ("info", "warning", "critical")
MONITORED_PARAMETERS = ENV_PARAMETERS + ("heart_rate_bpm",)

#: Consecutive in-range readings required to resolve an active alert.
RESOLVE_AFTER_IN_RANGE = 3

#: Roles granted each mutating operation (reads are open to any
#: authenticated user except the admin-only user table).
ROLE_GRANTS = {
    "upsert_project": {"admin", "designer"},
    "set_thresholds": {"admin", "doctor", "medical_student"},
    "ingest_reading": {"admin", "designer", "patient"},
    "list_users": {"admin"},
}

_PBKDF2_ITERATIONS = 20_000


@dataclass(frozen=True)
class User:
    user_id: str
    name: str
    email: str
    role: str
    credential_hash: str  # "salt_hex:digest_hex", never the clear credential
    created_at: float

    def public_dict(self) -> dict:
        return {
            "user_id": self.user_id,
            "name": self.name,
            "email": self.email,
            "role": self.role,
            "created_at": self.created_at,
        }


@dataclass(frozen=True)
class Sensor:
    sensor_id: str
    kind: str
    location_id: str
    room_id: str
    position: Optional[Point] = None


@dataclass(frozen=True)
class Location:
    location_id: str
    name: str
    layout: RoomLayout


@dataclass(frozen=True)
class Project:
    project_id: str
    patient_user_id: str
    locations: tuple[Location, ...]
    sensors: tuple[Sensor, ...]

    def validate(self) -> None:
        location_ids = [loc.location_id for loc in self.locations]
        if len(set(location_ids)) != len(location_ids):
            raise ValidationError("duplicate location_id in project")
        by_id = {loc.location_id: loc for loc in self.locations}
        seen = set()
        for sensor in self.sensors:
            if sensor.sensor_id in seen:
                raise ValidationError(f"duplicate sensor_id {sensor.sensor_id!r}")
            seen.add(sensor.sensor_id)
            location = by_id.get(sensor.location_id)
            if location is None:
                raise ValidationError(
                    f"sensor {sensor.sensor_id!r} references unknown location "
                    f"{sensor.location_id!r}"
                )
            if sensor.room_id not in location.layout.room_ids():
                raise ValidationError(
                    f"sensor {sensor.sensor_id!r} references room {sensor.room_id!r} "
                    f"missing from location {sensor.location_id!r}"
                )

    def to_dict(self) -> dict:
        return {
            "project_id": self.project_id,
            "patient_user_id": self.patient_user_id,
            "locations": [
                {
                    "location_id": loc.location_id,
                    "name": loc.name,
                    "layout": layout_to_dict(loc.layout),
                }
                for loc in self.locations
            ],
            "sensors": [
                {
                    "sensor_id": s.sensor_id,
                    "kind": s.kind,
                    "location_id": s.location_id,
                    "room_id": s.room_id,
                    "position": list(s.position) if s.position is not None else None,
                }
                for s in self.sensors
            ],
        }

    @staticmethod
    def from_dict(doc: dict) -> "Project":
        return Project(
            project_id=doc["project_id"],
            patient_user_id=doc["patient_user_id"],
            locations=tuple(
                Location(
                    location_id=loc["location_id"],
                    name=loc.get("name", loc["location_id"]),
                    layout=layout_from_dict(loc["layout"]),
                )
                for loc in doc.get("locations", [])
            ),
            sensors=tuple(
                Sensor(
                    sensor_id=s["sensor_id"],
                    kind=s.get("kind", "env"),
                    location_id=s["location_id"],
                    room_id=s["room_id"],
                    position=tuple(s["position"]) if s.get("position") else None,
                )
                for s in doc.get("sensors", [])
            ),
        )


@dataclass(frozen=True)
class ThresholdRule:
    rule_id: str
    patient_user_id: str
    parameter: str
    min_value: Optional[float] = None
    max_value: Optional[float] = None
    severity: str = "warning"
    enabled: bool = True

    def __post_init__(self) -> None:
        if self.parameter not in MONITORED_PARAMETERS:
            raise ValidationError(f"unknown monitored parameter {self.parameter!r}")
        if self.min_value is None and self.max_value is None:
            raise ValidationError("threshold rule needs at least one of min/max")
        if (
            self.min_value is not None
            and self.max_value is not None
            and not self.min_value < self.max_value
        ):
            raise ValidationError("threshold rule requires min < max")
        if self.severity not in SEVERITIES:
            raise ValidationError(f"unknown severity {self.severity!r}")

    def breached_by(self, value: float) -> bool:
        if self.min_value is not None and value < self.min_value:
            return True
        if self.max_value is not None and value > self.max_value:
            return True
        return False

    def to_dict(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "patient_user_id": self.patient_user_id,
            "parameter": self.parameter,
            "min": self.min_value,
            "max": self.max_value,
            "severity": self.severity,
            "enabled": self.enabled,
        }

    @staticmethod
    def from_dict(doc: dict) -> "ThresholdRule":
        return ThresholdRule(
            rule_id=doc["rule_id"],
            patient_user_id=doc["patient_user_id"],
            parameter=doc["parameter"],
            min_value=doc.get("min"),
            max_value=doc.get("max"),
            severity=doc.get("severity", "warning"),
            enabled=doc.get("enabled", True),
        )


@dataclass(frozen=True)
class Reading:
    sensor_id: str
    parameter: str
    t: float
    value: float

    def __post_init__(self) -> None:
        if self.parameter not in MONITORED_PARAMETERS:
            raise ValidationError(f"unknown monitored parameter {self.parameter!r}")


@dataclass(frozen=True)
class Alert:
    alert_id: str
    rule_id: str
    patient_user_id: str
    sensor_id: str
    t: float
    value: float
    severity: str
    state: str  # "active" | "resolved"
    created_at: float
    resolved_at: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "alert_id": self.alert_id,
            "rule_id": self.rule_id,
            "patient_user_id": self.patient_user_id,
            "sensor_id": self.sensor_id,
            "t": self.t,
            "value": self.value,
            "severity": self.severity,
            "state": self.state,
            "created_at": self.created_at,
            "resolved_at": self.resolved_at,
        }


@dataclass(frozen=True)
class AlertChange:
    kind: str  # "created" | "resolved"
    alert: Alert


@dataclass
class _Session:
    token: str
    user_id: str
    expires_at: float


def _hash_credential(credential: str, salt: bytes) -> str:
    digest = hashlib.pbkdf2_hmac(
        "sha256", credential.encode("utf-8"), salt, _PBKDF2_ITERATIONS
    )
    return f"{salt.hex()}:{digest.hex()}"


def _verify_credential(credential: str, stored: str) -> bool:
    salt_hex, _, digest_hex = stored.partition(":")
    candidate = _hash_credential(credential, bytes.fromhex(salt_hex))
    return secrets.compare_digest(candidate, stored) or secrets.compare_digest(
        candidate.partition(":")[2], digest_hex
    )


class TelemonitorService:
    """The stateful platform core, backed by an append-only event store."""

    def __init__(self, store, token_ttl_s: float = 3600.0, clock: Callable[[], float] = time.time):
        self.store = store
        self.token_ttl_s = token_ttl_s
        self.clock = clock
        self._users: dict[str, User] = {}
        self._users_by_email: dict[str, str] = {}
        self._projects: dict[str, Project] = {}
        self._rules: dict[str, ThresholdRule] = {}
        self._rules_by_patient: dict[str, list[str]] = {}
        self._readings: dict[tuple[str, str], list[Reading]] = {}
        self._alerts: dict[str, Alert] = {}
        self._active_alert: dict[tuple[str, str], str] = {}
        self._in_range_count: dict[tuple[str, str], int] = {}
        self._sensor_to_project: dict[str, str] = {}
        self._sessions: dict[str, _Session] = {}
        self._counters = {"user": 0, "project": 0, "rule": 0, "alert": 0}
        self._patient_locks: dict[str, threading.Lock] = {}
        self._lock = threading.Lock()
        self._replay()

    # -- id and lock helpers ----------------------------------------------

    def _next_id(self, kind: str, prefix: str) -> str:
        self._counters[kind] += 1
        return f"{prefix}-{self._counters[kind]}"

    def _note_id(self, kind: str, entity_id: str, prefix: str) -> None:
        tail = entity_id.rsplit("-", 1)[-1]
        if tail.isdigit():
            self._counters[kind] = max(self._counters[kind], int(tail))

    def _patient_lock(self, patient_user_id: str) -> threading.Lock:
        with self._lock:
            return self._patient_locks.setdefault(patient_user_id, threading.Lock())

    # -- event replay ------------------------------------------------------

    def _replay(self) -> None:
        for event in self.store.all_events_ordered():
            kind = event["type"]
            if kind == "user_registered":
                self._apply_user(User(**{k: event[k] for k in (
                    "user_id", "name", "email", "role", "credential_hash", "created_at")}))
            elif kind == "project_upserted":
                self._apply_project(Project.from_dict(event["project"]))
            elif kind == "thresholds_set":
                self._apply_rules(
                    event["patient_user_id"],
                    [ThresholdRule.from_dict(r) for r in event["rules"]],
                )
            elif kind == "reading_ingested":
                reading = Reading(
                    sensor_id=event["sensor_id"],
                    parameter=event["parameter"],
                    t=event["t"],
                    value=event["value"],
                )
                patient = event["patient_user_id"]
                self._apply_reading(patient, reading)
                self._update_counters_for_reading(patient, reading)
            elif kind == "alert_created":
                self._apply_alert(Alert(**event["alert"]))
            elif kind == "alert_resolved":
                alert = self._alerts.get(event["alert_id"])
                if alert is not None:
                    self._apply_alert(
                        replace(alert, state="resolved", resolved_at=event["resolved_at"])
                    )

    # -- state application (used both live and during replay) --------------

    def _apply_user(self, user: User) -> None:
        self._users[user.user_id] = user
        self._users_by_email[user.email] = user.user_id
        self._note_id("user", user.user_id, "u")

    def _apply_project(self, project: Project) -> None:
        previous = self._projects.get(project.project_id)
        if previous is not None:
            for sensor in previous.sensors:
                self._sensor_to_project.pop(sensor.sensor_id, None)
        self._projects[project.project_id] = project
        for sensor in project.sensors:
            self._sensor_to_project[sensor.sensor_id] = project.project_id
        self._note_id("project", project.project_id, "p")

    def _apply_rules(self, patient_user_id: str, rules: list[ThresholdRule]) -> None:
        for rule_id in self._rules_by_patient.get(patient_user_id, []):
            self._rules.pop(rule_id, None)
        self._rules_by_patient[patient_user_id] = [r.rule_id for r in rules]
        for rule in rules:
            self._rules[rule.rule_id] = rule
            self._note_id("rule", rule.rule_id, "r")

    def _apply_reading(self, patient_user_id: str, reading: Reading) -> None:
        key = (patient_user_id, reading.parameter)
        self._readings.setdefault(key, []).append(reading)

    def _apply_alert(self, alert: Alert) -> None:
        self._alerts[alert.alert_id] = alert
        key = (alert.rule_id, alert.sensor_id)
        if alert.state == "active":
            self._active_alert[key] = alert.alert_id
            self._in_range_count[key] = 0
        else:
            if self._active_alert.get(key) == alert.alert_id:
                del self._active_alert[key]
            self._in_range_count.pop(key, None)
        self._note_id("alert", alert.alert_id, "a")

    def _update_counters_for_reading(self, patient_user_id: str, reading: Reading) -> None:
        """Hysteresis bookkeeping shared by live ingestion and replay."""
        for rule_id in self._rules_by_patient.get(patient_user_id, []):
            rule = self._rules[rule_id]
            if not rule.enabled or rule.parameter != reading.parameter:
                continue
            key = (rule.rule_id, reading.sensor_id)
            if rule.breached_by(reading.value):
                self._in_range_count[key] = 0
            elif key in self._active_alert:
                self._in_range_count[key] = self._in_range_count.get(key, 0) + 1

    # -- users and auth -----------------------------------------------------

    def register_user(self, name: str, email: str, role: str, credential: str) -> User:
        if role not in ROLES:
            raise ValidationError(f"unknown role {role!r}; expected one of {ROLES}")
        if not email:
            raise ValidationError("email must be non-empty")
        with self._lock:
            if email in self._users_by_email:
                raise DuplicateError(f"email {email!r} is already registered")
            user = User(
                user_id=self._next_id("user", "u"),
                name=name,
                email=email,
                role=role,
                credential_hash=_hash_credential(credential, secrets.token_bytes(16)),
                created_at=self.clock(),
            )
            self.store.append("users", {"type": "user_registered", **user.__dict__})
            self._apply_user(user)
            return user

    def authenticate(self, email: str, credential: str) -> str:
        user_id = self._users_by_email.get(email)
        user = self._users.get(user_id) if user_id else None
        if user is None or not _verify_credential(credential, user.credential_hash):
            raise AuthError("unknown email or wrong credential")
        token = secrets.token_hex(24)
        self._sessions[token] = _Session(
            token=token, user_id=user.user_id, expires_at=self.clock() + self.token_ttl_s
        )
        return token

    def user_for_token(self, token: str) -> User:
        session = self._sessions.get(token)
        if session is None or self.clock() >= session.expires_at:
            self._sessions.pop(token, None)
            raise AuthError("invalid or expired token")
        return self._users[session.user_id]

    def get_user(self, user_id: str) -> User:
        user = self._users.get(user_id)
        if user is None:
            raise NotFoundError(f"unknown user {user_id!r}")
        return user

    def list_users(self, actor: User) -> list[User]:
        self._require_role(actor, "list_users")
        return sorted(self._users.values(), key=lambda u: (u.created_at, u.user_id))

    def _require_role(self, actor: User, operation: str) -> None:
        granted = ROLE_GRANTS.get(operation, set(ROLES))
        if actor.role not in granted:
            raise AuthorizationError(
                f"role {actor.role!r} may not perform {operation} "
                f"(granted: {sorted(granted)})"
            )

    # -- projects -----------------------------------------------------------

    def upsert_project(self, project: Project, actor: User) -> Project:
        self._require_role(actor, "upsert_project")
        if project.patient_user_id not in self._users:
            raise NotFoundError(f"unknown patient user {project.patient_user_id!r}")
        with self._lock:
            if not project.project_id:
                project = replace(project, project_id=self._next_id("project", "p"))
            project.validate()
            self.store.append(
                "projects", {"type": "project_upserted", "project": project.to_dict()}
            )
            self._apply_project(project)
            return project

    def get_project(self, project_id: str) -> Project:
        project = self._projects.get(project_id)
        if project is None:
            raise NotFoundError(f"unknown project {project_id!r}")
        return project

    def list_projects(self, patient_user_id: Optional[str] = None) -> list[Project]:
        projects = sorted(self._projects.values(), key=lambda p: p.project_id)
        if patient_user_id is not None:
            projects = [p for p in projects if p.patient_user_id == patient_user_id]
        return projects

    def project_for_sensor(self, sensor_id: str) -> Project:
        project_id = self._sensor_to_project.get(sensor_id)
        if project_id is None:
            raise NotFoundError(f"sensor {sensor_id!r} is not registered in any project")
        return self._projects[project_id]

    # -- thresholds ----------------------------------------------------------

    def set_thresholds(
        self, patient_user_id: str, rules: Sequence[ThresholdRule], actor: User
    ) -> list[ThresholdRule]:
        self._require_role(actor, "set_thresholds")
        if patient_user_id not in self._users:
            raise NotFoundError(f"unknown patient user {patient_user_id!r}")
        with self._lock:
            finalized = []
            for rule in rules:
                if rule.patient_user_id != patient_user_id:
                    raise ValidationError(
                        f"rule {rule.rule_id or '<new>'} targets a different patient"
                    )
                if not rule.rule_id:
                    rule = replace(rule, rule_id=self._next_id("rule", "r"))
                finalized.append(rule)
            self.store.append(
                "rules",
                {
                    "type": "thresholds_set",
                    "patient_user_id": patient_user_id,
                    "rules": [r.to_dict() for r in finalized],
                },
            )
            self._apply_rules(patient_user_id, finalized)
            return finalized

    def list_thresholds(self, patient_user_id: str) -> list[ThresholdRule]:
        return [self._rules[rid] for rid in self._rules_by_patient.get(patient_user_id, [])]

    # -- ingestion and alerts -------------------------------------------------

    def ingest_reading(self, reading: Reading, actor: User) -> list[AlertChange]:
        """Persist a reading and run every matching rule's alert lifecycle.

        Out-of-range with no active alert creates one; an active alert
        resolves after RESOLVE_AFTER_IN_RANGE consecutive in-range readings
        from the same sensor. Per-patient serialization makes the
        read-modify-write on alert state safe under concurrency.
        """
        self._require_role(actor, "ingest_reading")
        project = self.project_for_sensor(reading.sensor_id)
        patient = project.patient_user_id
        with self._patient_lock(patient):
            self.store.append(
                "readings",
                {
                    "type": "reading_ingested",
                    "patient_user_id": patient,
                    "sensor_id": reading.sensor_id,
                    "parameter": reading.parameter,
                    "t": reading.t,
                    "value": reading.value,
                },
            )
            self._apply_reading(patient, reading)

            changes: list[AlertChange] = []
            for rule_id in self._rules_by_patient.get(patient, []):
                rule = self._rules[rule_id]
                if not rule.enabled or rule.parameter != reading.parameter:
                    continue
                key = (rule.rule_id, reading.sensor_id)
                if rule.breached_by(reading.value):
                    self._in_range_count[key] = 0
                    if key not in self._active_alert:
                        alert = Alert(
                            alert_id=self._next_id("alert", "a"),
                            rule_id=rule.rule_id,
                            patient_user_id=patient,
                            sensor_id=reading.sensor_id,
                            t=reading.t,
                            value=reading.value,
                            severity=rule.severity,
                            state="active",
                            created_at=reading.t,
                        )
                        self.store.append(
                            "alerts", {"type": "alert_created", "alert": alert.to_dict()}
                        )
                        self._apply_alert(alert)
                        changes.append(AlertChange(kind="created", alert=alert))
                elif key in self._active_alert:
                    count = self._in_range_count.get(key, 0) + 1
                    self._in_range_count[key] = count
                    if count >= RESOLVE_AFTER_IN_RANGE:
                        alert = replace(
                            self._alerts[self._active_alert[key]],
                            state="resolved",
                            resolved_at=reading.t,
                        )
                        self.store.append(
                            "alerts",
                            {
                                "type": "alert_resolved",
                                "alert_id": alert.alert_id,
                                "resolved_at": reading.t,
                            },
                        )
                        self._apply_alert(alert)
                        changes.append(AlertChange(kind="resolved", alert=alert))
            return changes

    def list_alerts(
        self,
        state: Optional[str] = None,
        patient_user_id: Optional[str] = None,
        severity: Optional[str] = None,
    ) -> list[Alert]:
        alerts = list(self._alerts.values())
        if state is not None:
            alerts = [a for a in alerts if a.state == state]
        if patient_user_id is not None:
            alerts = [a for a in alerts if a.patient_user_id == patient_user_id]
        if severity is not None:
            alerts = [a for a in alerts if a.severity == severity]
        # Newest first; the numeric id suffix breaks created_at ties.
        alerts.sort(key=lambda a: (-a.created_at, -int(a.alert_id.rsplit("-", 1)[-1])))
        return alerts

    # -- series ----------------------------------------------------------------

    def query_series(
        self,
        patient_user_id: str,
        parameter: str,
        from_t: float,
        to_t: float,
        bucket_width_s: float,
    ) -> list[dict]:
        """Aligned time buckets with count/mean/min/max; empty buckets omitted."""
        if not from_t < to_t:
            raise ValidationError("from_t must be < to_t")
        if bucket_width_s <= 0:
            raise ValidationError("bucket_width_s must be > 0")
        readings = self._readings.get((patient_user_id, parameter), [])
        buckets: dict[int, list[float]] = {}
        for reading in readings:
            if from_t <= reading.t < to_t:
                buckets.setdefault(int((reading.t - from_t) // bucket_width_s), []).append(
                    reading.value
                )
        out = []
        for index in sorted(buckets):
            values = buckets[index]
            out.append(
                {
                    "bucket_start_t": from_t + index * bucket_width_s,
                    "bucket_width_s": bucket_width_s,
                    "count": len(values),
                    "mean": sum(values) / len(values),
                    "min": min(values),
                    "max": max(values),
                }
            )
        return out

    def flush(self) -> None:
        self.store.flush()

    def close(self) -> None:
        self.store.close()

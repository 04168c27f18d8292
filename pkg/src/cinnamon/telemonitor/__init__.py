"""Stateful patient-monitoring core: users, projects, rules, alerts, series."""

from .service import (
    Alert,
    AlertChange,
    Location,
    MONITORED_PARAMETERS,
    Project,
    Reading,
    RESOLVE_AFTER_IN_RANGE,
    ROLE_GRANTS,
    ROLES,
    SEVERITIES,
    Sensor,
    TelemonitorService,
    ThresholdRule,
    User,
)
from .store import FAMILIES, FileEventStore, MemoryEventStore

__all__ = [
    "Alert",
    "AlertChange",
    "FAMILIES",
    "FileEventStore",
    "Location",
    "MONITORED_PARAMETERS",
    "MemoryEventStore",
    "Project",
    "RESOLVE_AFTER_IN_RANGE",
    "ROLE_GRANTS",
    "ROLES",
    "Reading",
    "SEVERITIES",
    "Sensor",
    "TelemonitorService",
    "ThresholdRule",
    "User",
]

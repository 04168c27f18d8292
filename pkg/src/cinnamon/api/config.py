"""Service configuration for the HTTP facade."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..errors import ValidationError


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8765
    data_dir: str = "./data"
    token_ttl_s: float = 3600.0
    cors_origins: list[str] = field(default_factory=list)
    #: Optional scenario file; supplies the channel model and a fallback
    #: layout for position estimates when a patient project lacks anchors.
    scenario_autoload: Optional[str] = None
    #: Optional trained activity model served by the /activity endpoint.
    har_model_path: Optional[str] = None
    #: Optional directory of built web-UI assets to serve at /.
    static_dir: Optional[str] = None
    localization_window_s: float = 2.0
    kalman_enabled: bool = True

    def __post_init__(self) -> None:
        if not 1 <= self.port <= 65535:
            raise ValidationError("port must be in [1, 65535]")
        if self.localization_window_s <= 0:
            raise ValidationError("localization_window_s must be > 0")

    @staticmethod
    def from_file(path: str | Path) -> "ServiceConfig":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(doc, dict):
            raise ValidationError(f"config file {path} must hold a JSON object")
        return ServiceConfig(**doc)

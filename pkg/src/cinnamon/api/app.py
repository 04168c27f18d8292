"""JSON-over-HTTP facade in front of the platform modules.

All routes live under ``/api/v1``; every error body is
``{"code": ..., "message": ...}`` with a stable machine code. Mutating
endpoints honour the ``X-Idempotency-Key`` header: retries with the same
key replay the original response.
"""

from __future__ import annotations

import threading
from contextlib import asynccontextmanager
from typing import Optional

import numpy as np
from fastapi import Depends, FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..assessment import GfiResponse, PssuqResponse, score_gfi, score_pssuq
from ..errors import (
    AuthError,
    AuthorizationError,
    DuplicateError,
    NotFoundError,
    ValidationError,
)
from ..har import extract_features
from ..har.estimators import load_model
from ..labels import ActivityLabel
from ..localization import KalmanParams, localize_stream
from ..simulate.scenario import layout_from_dict, load_scenario
from ..simulate.types import ChannelModel, ImuSample, RoomLayout, RssiSample
from ..telemonitor import (
    FileEventStore,
    Location,
    MONITORED_PARAMETERS,
    Project,
    Reading,
    Sensor,
    TelemonitorService,
    ThresholdRule,
    User,
)
from .config import ServiceConfig
from .schemas import (
    ApiErrorBody,
    EnvIngestRequest,
    GfiRequest,
    ImuIngestRequest,
    LoginRequest,
    LoginResponse,
    ProjectBody,
    PssuqRequest,
    RegisterRequest,
    RssiIngestRequest,
    ThresholdsPutRequest,
    UserOut,
)

API_PREFIX = "/api/v1"

#: Documented error statuses and the machine codes they may carry.
ERROR_RESPONSES = {
    400: {"model": ApiErrorBody, "description": "validation_error"},
    401: {"model": ApiErrorBody, "description": "auth_required | auth_invalid"},
    403: {"model": ApiErrorBody, "description": "role_forbidden"},
    404: {"model": ApiErrorBody, "description": "not_found | no_data | model_not_loaded"},
    409: {"model": ApiErrorBody, "description": "duplicate"},
}

#: RSSI/IMU ring buffers retain at most this much trailing signal.
BUFFER_RETENTION_S = 600.0
BUFFER_MAX_SAMPLES = 20_000


class ApiException(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


class ApiState:
    """Mutable service state shared by the route handlers."""

    def __init__(self, config: ServiceConfig, store=None):
        self.config = config
        self.store = store if store is not None else FileEventStore(config.data_dir)
        self.service = TelemonitorService(self.store, token_ttl_s=config.token_ttl_s)
        self.channel = ChannelModel()
        self.fallback_layout: Optional[RoomLayout] = None
        if config.scenario_autoload:
            scenario = load_scenario(config.scenario_autoload)
            self.channel = scenario.channel
            self.fallback_layout = scenario.layout
        self.har_model = load_model(config.har_model_path) if config.har_model_path else None
        self.rssi_buffers: dict[str, list[RssiSample]] = {}
        self.imu_buffers: dict[str, list[ImuSample]] = {}
        self.idempotency_cache: dict[tuple[str, str, str], tuple[int, bytes, str]] = {}
        self.buffer_lock = threading.Lock()

    def append_buffered(self, buffers: dict, patient_id: str, samples: list) -> None:
        with self.buffer_lock:
            buf = buffers.setdefault(patient_id, [])
            buf.extend(samples)
            buf.sort(key=lambda s: s.t)
            horizon = buf[-1].t - BUFFER_RETENTION_S
            while buf and (buf[0].t < horizon or len(buf) > BUFFER_MAX_SAMPLES):
                buf.pop(0)


def create_app(config: ServiceConfig, store=None) -> FastAPI:
    state = ApiState(config, store=store)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        state.service.flush()
        state.service.close()

    app = FastAPI(
        title="Indoor telemonitoring platform API",
        version="1.0.0",
        lifespan=lifespan,
        openapi_url=f"{API_PREFIX}/openapi.json",
    )
    app.state.api_state = state

    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=config.cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )

    # -- error mapping ----------------------------------------------------

    def error_response(status: int, code: str, message: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"code": code, "message": message})

    @app.exception_handler(ApiException)
    async def handle_api_exception(request, exc: ApiException):
        return error_response(exc.status, exc.code, exc.message)

    @app.exception_handler(ValidationError)
    async def handle_validation(request, exc: ValidationError):
        return error_response(400, "validation_error", str(exc))

    @app.exception_handler(AuthError)
    async def handle_auth(request, exc: AuthError):
        return error_response(401, "auth_invalid", str(exc))

    @app.exception_handler(AuthorizationError)
    async def handle_role(request, exc: AuthorizationError):
        return error_response(403, "role_forbidden", str(exc))

    @app.exception_handler(NotFoundError)
    async def handle_missing(request, exc: NotFoundError):
        return error_response(404, "not_found", str(exc))

    @app.exception_handler(DuplicateError)
    async def handle_duplicate(request, exc: DuplicateError):
        return error_response(409, "duplicate", str(exc))

    @app.exception_handler(RequestValidationError)
    async def handle_request_validation(request, exc: RequestValidationError):
        return error_response(400, "validation_error", str(exc.errors()[:1]))

    # -- idempotent retries -------------------------------------------------

    @app.middleware("http")
    async def idempotency_replay(request: Request, call_next):
        key_header = request.headers.get("X-Idempotency-Key")
        if request.method not in ("POST", "PUT") or not key_header:
            return await call_next(request)
        key = (key_header, request.method, request.url.path)
        cached = state.idempotency_cache.get(key)
        if cached is not None:
            status, body, media_type = cached
            return Response(content=body, status_code=status, media_type=media_type)
        response = await call_next(request)
        body = b""
        async for chunk in response.body_iterator:
            body += chunk
        state.idempotency_cache[key] = (response.status_code, body, response.media_type)
        return Response(
            content=body,
            status_code=response.status_code,
            media_type=response.media_type,
        )

    # -- auth dependency ------------------------------------------------------

    def current_user(request: Request) -> User:
        header = request.headers.get("Authorization", "")
        if not header.startswith("Bearer "):
            raise ApiException(401, "auth_required", "missing bearer token")
        try:
            return state.service.user_for_token(header.removeprefix("Bearer ").strip())
        except AuthError as exc:
            raise ApiException(401, "auth_invalid", str(exc)) from exc

    # -- plumbing endpoints ----------------------------------------------------

    @app.get(f"{API_PREFIX}/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get(f"{API_PREFIX}/spec")
    def spec() -> dict:
        return app.openapi()

    # -- auth -------------------------------------------------------------------

    @app.post(f"{API_PREFIX}/auth/register", responses=ERROR_RESPONSES)
    def register(body: RegisterRequest) -> UserOut:
        user = state.service.register_user(body.name, body.email, body.role, body.credential)
        return UserOut(**user.public_dict())

    @app.post(f"{API_PREFIX}/auth/login", responses=ERROR_RESPONSES)
    def login(body: LoginRequest) -> LoginResponse:
        token = state.service.authenticate(body.email, body.credential)
        user = state.service.user_for_token(token)
        return LoginResponse(token=token, user=UserOut(**user.public_dict()))

    # -- users --------------------------------------------------------------------

    @app.get(f"{API_PREFIX}/users", responses=ERROR_RESPONSES)
    def list_users(actor: User = Depends(current_user)) -> list[UserOut]:
        return [UserOut(**u.public_dict()) for u in state.service.list_users(actor)]

    # -- projects --------------------------------------------------------------------

    def _project_from_body(body: ProjectBody) -> Project:
        return Project(
            project_id=body.project_id,
            patient_user_id=body.patient_user_id,
            locations=tuple(
                Location(
                    location_id=loc.location_id,
                    name=loc.name or loc.location_id,
                    layout=layout_from_dict(loc.layout.model_dump()),
                )
                for loc in body.locations
            ),
            sensors=tuple(
                Sensor(
                    sensor_id=s.sensor_id,
                    kind=s.kind,
                    location_id=s.location_id,
                    room_id=s.room_id,
                    position=tuple(s.position) if s.position else None,
                )
                for s in body.sensors
            ),
        )

    @app.get(f"{API_PREFIX}/projects", responses=ERROR_RESPONSES)
    def list_projects(
        patient: Optional[str] = None, actor: User = Depends(current_user)
    ) -> dict:
        return {"projects": [p.to_dict() for p in state.service.list_projects(patient)]}

    @app.post(f"{API_PREFIX}/projects", responses=ERROR_RESPONSES)
    @app.put(f"{API_PREFIX}/projects", responses=ERROR_RESPONSES)
    def upsert_project(body: ProjectBody, actor: User = Depends(current_user)) -> dict:
        project = state.service.upsert_project(_project_from_body(body), actor)
        return project.to_dict()

    @app.get(f"{API_PREFIX}/projects/{{project_id}}", responses=ERROR_RESPONSES)
    def get_project(project_id: str, actor: User = Depends(current_user)) -> dict:
        return state.service.get_project(project_id).to_dict()

    # -- ingestion --------------------------------------------------------------------

    @app.post(f"{API_PREFIX}/ingest/env", responses=ERROR_RESPONSES)
    def ingest_env(body: EnvIngestRequest, actor: User = Depends(current_user)) -> dict:
        changes = []
        for reading in body.readings:
            changes.extend(
                state.service.ingest_reading(
                    Reading(
                        sensor_id=reading.sensor_id,
                        parameter=reading.parameter,
                        t=reading.t,
                        value=reading.value,
                    ),
                    actor,
                )
            )
        return {
            "ingested": len(body.readings),
            "alert_changes": [
                {"kind": c.kind, "alert": c.alert.to_dict()} for c in changes
            ],
        }

    @app.post(f"{API_PREFIX}/ingest/rssi", responses=ERROR_RESPONSES)
    def ingest_rssi(body: RssiIngestRequest, actor: User = Depends(current_user)) -> dict:
        state.service._require_role(actor, "ingest_reading")
        by_patient: dict[str, list[RssiSample]] = {}
        for s in body.samples:
            project = state.service.project_for_sensor(s.wearable_id)
            by_patient.setdefault(project.patient_user_id, []).append(
                RssiSample(t=s.t, anchor_id=s.anchor_id, wearable_id=s.wearable_id, rssi_dbm=s.rssi_dbm)
            )
        for patient_id, samples in by_patient.items():
            state.append_buffered(state.rssi_buffers, patient_id, samples)
        return {"ingested": len(body.samples)}

    @app.post(f"{API_PREFIX}/ingest/imu", responses=ERROR_RESPONSES)
    def ingest_imu(body: ImuIngestRequest, actor: User = Depends(current_user)) -> dict:
        state.service._require_role(actor, "ingest_reading")
        project = state.service.project_for_sensor(body.wearable_id)
        patient_id = project.patient_user_id
        samples = [
            ImuSample(
                t=s.t,
                accel=(s.ax, s.ay, s.az),
                gyro=(s.gx, s.gy, s.gz),
                orientation=(s.roll, s.pitch, s.yaw),
                heart_rate_bpm=s.hr,
                session_id=s.session_id,
                label=ActivityLabel.from_name(s.label) if s.label else None,
            )
            for s in body.samples
        ]
        state.append_buffered(state.imu_buffers, patient_id, samples)
        changes = []
        if body.ingest_heart_rate:
            for s in samples:
                if s.heart_rate_bpm is not None:
                    changes.extend(
                        state.service.ingest_reading(
                            Reading(
                                sensor_id=body.wearable_id,
                                parameter="heart_rate_bpm",
                                t=s.t,
                                value=s.heart_rate_bpm,
                            ),
                            actor,
                        )
                    )
        return {
            "ingested": len(samples),
            "alert_changes": [
                {"kind": c.kind, "alert": c.alert.to_dict()} for c in changes
            ],
        }

    # -- series / thresholds / alerts ---------------------------------------------------

    @app.get(f"{API_PREFIX}/patients/{{patient_id}}/series", responses=ERROR_RESPONSES)
    def series(
        patient_id: str,
        parameter: str,
        from_t: float = Query(alias="from"),
        to_t: float = Query(alias="to"),
        bucket_s: float = Query(default=60.0),
        actor: User = Depends(current_user),
    ) -> dict:
        if parameter not in MONITORED_PARAMETERS:
            raise ApiException(400, "validation_error", f"unknown parameter {parameter!r}")
        buckets = state.service.query_series(patient_id, parameter, from_t, to_t, bucket_s)
        return {"parameter": parameter, "buckets": buckets}

    @app.get(f"{API_PREFIX}/patients/{{patient_id}}/thresholds", responses=ERROR_RESPONSES)
    def get_thresholds(patient_id: str, actor: User = Depends(current_user)) -> dict:
        return {"rules": [r.to_dict() for r in state.service.list_thresholds(patient_id)]}

    @app.put(f"{API_PREFIX}/patients/{{patient_id}}/thresholds", responses=ERROR_RESPONSES)
    def put_thresholds(
        patient_id: str, body: ThresholdsPutRequest, actor: User = Depends(current_user)
    ) -> dict:
        rules = [
            ThresholdRule(
                rule_id=r.rule_id,
                patient_user_id=patient_id,
                parameter=r.parameter,
                min_value=r.min,
                max_value=r.max,
                severity=r.severity,
                enabled=r.enabled,
            )
            for r in body.rules
        ]
        saved = state.service.set_thresholds(patient_id, rules, actor)
        return {"rules": [r.to_dict() for r in saved]}

    @app.get(f"{API_PREFIX}/alerts", responses=ERROR_RESPONSES)
    def alerts(
        alert_state: Optional[str] = Query(default=None, alias="state"),
        patient: Optional[str] = None,
        severity: Optional[str] = None,
        actor: User = Depends(current_user),
    ) -> dict:
        found = state.service.list_alerts(
            state=alert_state, patient_user_id=patient, severity=severity
        )
        return {"alerts": [a.to_dict() for a in found]}

    # -- localization / activity ---------------------------------------------------------

    def _layout_for(patient_id: str, anchor_ids: set[str]) -> Optional[RoomLayout]:
        for project in state.service.list_projects(patient_id):
            for location in project.locations:
                known = {a.anchor_id for a in location.layout.anchors}
                if len(known & anchor_ids) >= 3:
                    return location.layout
        if state.fallback_layout is not None:
            known = {a.anchor_id for a in state.fallback_layout.anchors}
            if len(known & anchor_ids) >= 3:
                return state.fallback_layout
        return None

    @app.get(f"{API_PREFIX}/patients/{{patient_id}}/position", responses=ERROR_RESPONSES)
    def position(patient_id: str, actor: User = Depends(current_user)) -> dict:
        buffer = state.rssi_buffers.get(patient_id, [])
        if not buffer:
            raise ApiException(404, "no_data", f"no RSSI samples for patient {patient_id!r}")
        window_s = state.config.localization_window_s
        t_max = buffer[-1].t
        recent = [s for s in buffer if s.t >= t_max - window_s]
        layout = _layout_for(patient_id, {s.anchor_id for s in recent})
        if layout is None:
            raise ApiException(
                404, "no_data", "no layout with at least 3 of the observed anchors"
            )
        recent = [s for s in recent if any(a.anchor_id == s.anchor_id for a in layout.anchors)]
        kalman = KalmanParams() if state.config.kalman_enabled else None
        estimates = localize_stream(recent, layout, state.channel, kalman, window_s)
        if not estimates:
            raise ApiException(404, "no_data", "not enough samples in the current window")
        est = estimates[-1]
        return {
            "t": est.t,
            "xy": list(est.xy) if est.xy is not None else None,
            "residual_rms_m": est.residual_rms_m,
            "room_id": est.room_id,
            "anchors_used": est.anchors_used,
        }

    @app.get(f"{API_PREFIX}/patients/{{patient_id}}/activity", responses=ERROR_RESPONSES)
    def activity(patient_id: str, actor: User = Depends(current_user)) -> dict:
        if state.har_model is None:
            raise ApiException(404, "model_not_loaded", "no activity model configured")
        buffer = state.imu_buffers.get(patient_id, [])
        if len(buffer) < 30:
            raise ApiException(404, "no_data", "fewer than 30 IMU samples buffered")
        window = buffer[-30:]
        fv = extract_features(window)
        scores = state.har_model.predict_scores(fv.values.reshape(1, -1))[0]
        label = str(state.har_model.classes_[int(np.argmax(scores))])
        return {
            "label": label,
            "scores": {
                str(c): float(s) for c, s in zip(state.har_model.classes_, scores)
            },
            "window_start_t": fv.window_start_t,
        }

    # -- assessments ------------------------------------------------------------------------

    @app.post(f"{API_PREFIX}/assessments/gfi", responses=ERROR_RESPONSES)
    def gfi(body: GfiRequest, actor: User = Depends(current_user)) -> dict:
        result = score_gfi(
            GfiResponse(items=tuple(body.items), respondent_id=body.respondent_id, t=body.t)
        )
        return {"total": result.total, "frail": result.frail}

    @app.post(f"{API_PREFIX}/assessments/pssuq", responses=ERROR_RESPONSES)
    def pssuq(body: PssuqRequest, actor: User = Depends(current_user)) -> dict:
        result = score_pssuq(
            PssuqResponse(items=tuple(body.items), respondent_id=body.respondent_id, t=body.t)
        )
        return result.to_dict()

    if config.static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app


def serve(config: ServiceConfig, store=None) -> None:
    """Run the service until interrupted; shutdown flushes the event log."""
    import uvicorn

    app = create_app(config, store=store)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")


class BackgroundServer:
    """Serve on a thread; used by the demo pipeline and integration tests."""

    def __init__(self, config: ServiceConfig, store=None):
        import uvicorn

        self.app = create_app(config, store=store)
        self._server = uvicorn.Server(
            uvicorn.Config(
                self.app, host=config.host, port=config.port, log_level="warning"
            )
        )
        self._thread = threading.Thread(target=self._server.run, daemon=True)

    def start(self) -> None:
        self._thread.start()

    @property
    def started(self) -> bool:
        return self._server.started

    def stop(self) -> None:
        self._server.should_exit = True
        self._thread.join(timeout=10)

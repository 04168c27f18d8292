"""Single command-line entry point for the whole platform.

Subcommands: simulate | localize | har train | har eval | gfi score |
pssuq score | serve | demo. Machine-readable outputs go where the flags
point; human summaries go to stdout. Exit codes: 0 success, 1 runtime
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import urllib.request
from pathlib import Path
from typing import Optional, Sequence

from .api.config import ServiceConfig
from .assessment import GfiResponse, PssuqResponse, score_gfi, score_pssuq
from .errors import CinnamonError
from .har import MODEL_KINDS, dataset_from_samples, evaluate, train
from .localization import (
    KalmanParams,
    evaluate_localization,
    localize_stream,
)
from .simulate import (
    default_activity_script,
    default_scenario_path,
    emit_environment,
    emit_imu,
    emit_rssi,
    load_scenario,
    simulate_track,
)
from .simulate.io import (
    read_imu_csv,
    read_rssi_csv,
    write_env_csv,
    write_imu_csv,
    write_rssi_csv,
    write_track_csv,
)
from .simulate.scenario import layout_from_dict
from .simulate.types import ChannelModel


def _load_scenario_arg(path: Optional[str]):
    return load_scenario(path if path else default_scenario_path())


def _write_json(path: Optional[str], payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_simulate(args) -> int:
    scenario = _load_scenario_arg(args.scenario)
    seed = args.seed if args.seed is not None else scenario.seed
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    track = simulate_track(scenario, seed)
    rssi = emit_rssi(track, scenario.layout, scenario.channel, scenario.rssi_rate_hz, seed)
    imu = emit_imu(scenario.activities, seed)
    env = emit_environment(scenario.environment, seed)

    write_track_csv(track, out / "track.csv")
    write_rssi_csv(rssi, out / "rssi.csv")
    write_imu_csv(imu, out / "imu.csv")
    write_env_csv(env, out / "env.csv")
    print(
        f"simulated scenario {scenario.name!r} seed {seed}: "
        f"{len(track.samples)} track samples, {len(rssi)} rssi, "
        f"{len(imu)} imu, {len(env)} env -> {out}"
    )
    return 0


def _localization_report(scenario, seed: int, use_filter: bool, window_s: float) -> dict:
    track = simulate_track(scenario, seed)
    rssi = emit_rssi(track, scenario.layout, scenario.channel, scenario.rssi_rate_hz, seed)
    kalman = KalmanParams() if use_filter else None
    estimates = localize_stream(rssi, scenario.layout, scenario.channel, kalman, window_s)
    report = evaluate_localization(estimates, track)
    return report.to_dict()


def _cmd_localize(args) -> int:
    window_s = args.window_s
    use_filter = args.filter == "kalman"
    if args.dataset:
        if not args.layout:
            raise CinnamonError("--dataset mode requires --layout")
        doc = json.loads(Path(args.layout).read_text(encoding="utf-8"))
        layout = layout_from_dict(doc)
        channel = ChannelModel(**doc.get("channel", {}))
        samples = read_rssi_csv(args.dataset)
        kalman = KalmanParams() if use_filter else None
        estimates = localize_stream(samples, layout, channel, kalman, window_s)
        payload = {
            "filter": args.filter,
            "window_s": window_s,
            "estimates": [
                {
                    "t": e.t,
                    "xy": list(e.xy) if e.xy else None,
                    "residual_rms_m": e.residual_rms_m,
                    "room_id": e.room_id,
                    "anchors_used": e.anchors_used,
                }
                for e in estimates
            ],
        }
        _write_json(args.report, payload)
        print(f"localized {len(estimates)} windows from {args.dataset}")
        return 0

    scenario = _load_scenario_arg(args.scenario)
    seed = args.seed if args.seed is not None else scenario.seed
    filtered = _localization_report(scenario, seed, use_filter, window_s)
    raw = _localization_report(scenario, seed, False, window_s)
    payload = {
        "scenario": scenario.name,
        "seed": seed,
        "window_s": window_s,
        "filter": args.filter,
        "report": filtered,
        "raw_report": raw,
    }
    _write_json(args.report, payload)
    print(
        f"localization seed {seed}: room accuracy "
        f"{filtered['room_accuracy']:.3f} ({args.filter}) vs {raw['room_accuracy']:.3f} (none)"
    )
    return 0


def _har_features(args):
    if args.dataset:
        samples = read_imu_csv(args.dataset)
    else:
        samples = emit_imu(default_activity_script(), seed=args.seed)
    return dataset_from_samples(samples)


def _cmd_har_train(args) -> int:
    features = _har_features(args)
    kinds = list(MODEL_KINDS) if args.model == "all" else [args.model]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for kind in kinds:
        model = train(features, kind, seed=args.seed)
        model.save(out / f"{kind}.json")
        print(f"trained {kind} on {len(features)} windows -> {out / (kind + '.json')}")
    return 0


def _cmd_har_eval(args) -> int:
    features = _har_features(args)
    kinds = list(MODEL_KINDS) if args.model == "all" else [args.model]
    report = evaluate(features, kinds, seed=args.seed)
    if args.report:
        _write_json(args.report, report.to_dict())
    print(f"scheme: {report.scheme}")
    print(report.format_table())
    return 0


def _cmd_gfi_score(args) -> int:
    items = json.loads(Path(args.answers).read_text(encoding="utf-8"))
    result = score_gfi(GfiResponse(items=tuple(items)))
    print(f"total={result.total} frail={'true' if result.frail else 'false'}")
    return 0


def _cmd_pssuq_score(args) -> int:
    items = json.loads(Path(args.answers).read_text(encoding="utf-8"))
    result = score_pssuq(PssuqResponse(items=tuple(items)))
    parts = []
    for name in ("overall", "sysuse", "infoqual", "interqual"):
        value = getattr(result, name)
        parts.append(f"{name}={'NA' if value is None else format(value, '.4g')}")
    print(" ".join(parts))
    return 0


def _cmd_serve(args) -> int:
    from .api.app import serve

    config = ServiceConfig.from_file(args.config) if args.config else ServiceConfig()
    if args.port is not None:
        config.port = args.port
    print(f"serving on http://{config.host}:{config.port}/api/v1 (data: {config.data_dir})")
    serve(config)
    return 0


def _http_json(url: str, payload: Optional[dict] = None, token: Optional[str] = None) -> dict:
    data = json.dumps(payload).encode() if payload is not None else None
    request = urllib.request.Request(url, data=data, method="POST" if data else "GET")
    request.add_header("Content-Type", "application/json")
    if token:
        request.add_header("Authorization", f"Bearer {token}")
    with urllib.request.urlopen(request, timeout=10) as response:
        return json.loads(response.read().decode())


def _cmd_demo(args) -> int:
    from .api.app import BackgroundServer
    from .telemonitor import MemoryEventStore

    seed = args.seed if args.seed is not None else 42
    out = Path(args.out) if args.out else Path("demo-out")
    out.mkdir(parents=True, exist_ok=True)
    scenario_path = args.scenario if args.scenario else str(default_scenario_path())
    scenario = load_scenario(scenario_path)

    print(f"[1/4] simulate (seed {seed})")
    sim_args = argparse.Namespace(scenario=scenario_path, seed=seed, out=str(out / "data"))
    _cmd_simulate(sim_args)

    print("[2/4] localize")
    loc_args = argparse.Namespace(
        scenario=scenario_path, seed=seed, filter="kalman", window_s=2.0,
        dataset=None, layout=None, report=str(out / "localization_report.json"),
    )
    _cmd_localize(loc_args)

    print("[3/4] har eval (all models)")
    eval_args = argparse.Namespace(dataset=None, model="all", seed=seed,
                                   folds="session", report=str(out / "har_metrics.json"))
    _cmd_har_eval(eval_args)
    features = dataset_from_samples(emit_imu(default_activity_script(), seed=seed))
    model = train(features, "gb", seed=seed)
    model_path = out / "gb.json"
    model.save(model_path)

    print("[4/4] serve + health check")
    config = ServiceConfig(
        port=args.port if args.port is not None else 8765,
        data_dir=str(out / "service-data"),
        scenario_autoload=scenario_path,
        har_model_path=str(model_path),
    )
    server = BackgroundServer(config, store=MemoryEventStore())
    server.start()
    base = f"http://{config.host}:{config.port}/api/v1"
    deadline = time.time() + 30
    health = None
    while time.time() < deadline:
        try:
            health = _http_json(f"{base}/health")
            break
        except OSError:
            time.sleep(0.2)
    if not health or health.get("status") != "ok":
        server.stop()
        raise CinnamonError("service health check failed")
    print(f"health: {health['status']}")

    # Seed the live service with the simulated streams so the position and
    # activity endpoints have something to show.
    _http_json(f"{base}/auth/register",
               {"name": "Demo Admin", "email": "admin@demo", "role": "admin", "credential": "demo"})
    _http_json(f"{base}/auth/register",
               {"name": "Demo Patient", "email": "patient@demo", "role": "patient", "credential": "demo"})
    token = _http_json(f"{base}/auth/login", {"email": "admin@demo", "credential": "demo"})["token"]
    users = _http_json(f"{base}/users", token=token)
    patient_id = next(u["user_id"] for u in users if u["role"] == "patient")

    from .simulate.scenario import layout_to_dict

    wearable = scenario.trajectory.wearable_id
    project = {
        "project_id": "",
        "patient_user_id": patient_id,
        "locations": [{"location_id": "home", "name": "Apartment",
                       "layout": layout_to_dict(scenario.layout)}],
        "sensors": (
            [{"sensor_id": wearable, "kind": "wearable", "location_id": "home",
              "room_id": scenario.layout.rooms[0].room_id, "position": None}]
            + [{"sensor_id": chan.sensor_id, "kind": "env", "location_id": "home",
                "room_id": scenario.layout.rooms[0].room_id, "position": None}
               for chan in {c.sensor_id: c for c in scenario.environment}.values()]
        ),
    }
    _http_json(f"{base}/projects", project, token=token)

    track = simulate_track(scenario, seed)
    rssi = emit_rssi(track, scenario.layout, scenario.channel, scenario.rssi_rate_hz, seed)
    tail = [s for s in rssi if s.t >= rssi[-1].t - 4.0]
    _http_json(f"{base}/ingest/rssi", {"samples": [
        {"t": s.t, "anchor_id": s.anchor_id, "wearable_id": s.wearable_id, "rssi_dbm": s.rssi_dbm}
        for s in tail]}, token=token)
    position = _http_json(f"{base}/patients/{patient_id}/position", token=token)
    print(f"live position: room={position['room_id']} xy={position['xy']}")

    imu = emit_imu(default_activity_script(sessions_per_label=1, session_duration_s=6.0), seed=seed)
    fast = [s for s in imu if s.label is not None and s.label.value == "FastWalk"]
    _http_json(f"{base}/ingest/imu", {"wearable_id": wearable, "ingest_heart_rate": False,
               "samples": [
                   {"t": s.t, "ax": s.accel[0], "ay": s.accel[1], "az": s.accel[2],
                    "gx": s.gyro[0], "gy": s.gyro[1], "gz": s.gyro[2],
                    "roll": s.orientation[0], "pitch": s.orientation[1], "yaw": s.orientation[2],
                    "hr": s.heart_rate_bpm, "session_id": s.session_id,
                    "label": s.label.value if s.label else None}
                   for s in fast]}, token=token)
    activity = _http_json(f"{base}/patients/{patient_id}/activity", token=token)
    print(f"live activity: {activity['label']}")

    if args.hold:
        print(f"serving on {base} until interrupted (Ctrl-C to stop)")
        try:
            while True:
                time.sleep(1)
        except KeyboardInterrupt:
            pass
    server.stop()
    print(f"demo complete; artifacts in {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cinnamon",
        description="Indoor localization, activity recognition and telemonitoring platform.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the hardware simulator, write CSV datasets")
    p.add_argument("--scenario", metavar="PATH", help="scenario JSON (default: shipped 3-room apartment)")
    p.add_argument("--seed", type=int, help="override the scenario seed")
    p.add_argument("--out", metavar="DIR", required=True, help="output directory")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("localize", help="run the localization pipeline and report accuracy")
    p.add_argument("--scenario", metavar="PATH")
    p.add_argument("--seed", type=int)
    p.add_argument("--dataset", metavar="PATH", help="rssi.csv to localize (with --layout)")
    p.add_argument("--layout", metavar="PATH", help="layout JSON for --dataset mode")
    p.add_argument("--filter", choices=["none", "kalman"], default="kalman")
    p.add_argument("--window-s", dest="window_s", type=float, default=2.0)
    p.add_argument("--report", metavar="PATH", help="write the JSON report here")
    p.set_defaults(func=_cmd_localize)

    har = sub.add_parser("har", help="activity-recognition pipelines")
    har_sub = har.add_subparsers(dest="har_command", required=True)

    p = har_sub.add_parser("train", help="fit classifiers, write model JSON files")
    p.add_argument("--dataset", metavar="PATH", help="imu.csv (default: generated dataset)")
    p.add_argument("--model", choices=list(MODEL_KINDS) + ["all"], default="gb")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", metavar="DIR", required=True)
    p.set_defaults(func=_cmd_har_train)

    p = har_sub.add_parser("eval", help="leave-one-session-out model comparison")
    p.add_argument("--dataset", metavar="PATH")
    p.add_argument("--model", choices=list(MODEL_KINDS) + ["all"], default="all")
    p.add_argument("--folds", choices=["session"], default="session")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--report", metavar="PATH")
    p.set_defaults(func=_cmd_har_eval)

    gfi = sub.add_parser("gfi", help="frailty questionnaire scoring")
    gfi_sub = gfi.add_subparsers(dest="gfi_command", required=True)
    p = gfi_sub.add_parser("score", help="score a 15-item answer file")
    p.add_argument("--answers", metavar="PATH", required=True)
    p.set_defaults(func=_cmd_gfi_score)

    pssuq = sub.add_parser("pssuq", help="usability questionnaire scoring")
    pssuq_sub = pssuq.add_subparsers(dest="pssuq_command", required=True)
    p = pssuq_sub.add_parser("score", help="score a 16-item answer file")
    p.add_argument("--answers", metavar="PATH", required=True)
    p.set_defaults(func=_cmd_pssuq_score)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", metavar="PATH", help="ServiceConfig JSON file")
    p.add_argument("--port", type=int)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("demo", help="simulate, localize, evaluate and serve in one run")
    p.add_argument("--scenario", metavar="PATH")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--port", type=int)
    p.add_argument("--hold", action="store_true", help="keep serving after the checks")
    p.set_defaults(func=_cmd_demo)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CinnamonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

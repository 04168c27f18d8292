"""CSV writers and readers for the emitted datasets.

Headers are fixed wire contracts:
  rssi:  t,anchor_id,wearable_id,rssi_dbm
  imu:   t,ax,ay,az,gx,gy,gz,roll,pitch,yaw,hr,session_id,label
  env:   t,sensor_id,parameter,value
  track: t,x,y,room_id
Floats are written with ``repr`` so files round-trip bit-exactly and two
identical runs produce byte-identical output.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import ValidationError
from ..labels import ActivityLabel
from .types import EnvReading, GroundTruthTrack, ImuSample, RssiSample, TrackSample

RSSI_HEADER = ["t", "anchor_id", "wearable_id", "rssi_dbm"]
IMU_HEADER = ["t", "ax", "ay", "az", "gx", "gy", "gz", "roll", "pitch", "yaw", "hr", "session_id", "label"]
ENV_HEADER = ["t", "sensor_id", "parameter", "value"]
TRACK_HEADER = ["t", "x", "y", "room_id"]


def _open_writer(path: str | Path):
    fh = open(path, "w", newline="", encoding="utf-8")
    return fh, csv.writer(fh)


def write_rssi_csv(samples: Iterable[RssiSample], path: str | Path) -> None:
    fh, writer = _open_writer(path)
    with fh:
        writer.writerow(RSSI_HEADER)
        for s in samples:
            writer.writerow([repr(s.t), s.anchor_id, s.wearable_id, repr(s.rssi_dbm)])


def read_rssi_csv(path: str | Path) -> list[RssiSample]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != RSSI_HEADER:
            raise ValidationError(f"{path}: expected rssi header {RSSI_HEADER}, got {header}")
        return [
            RssiSample(t=float(r[0]), anchor_id=r[1], wearable_id=r[2], rssi_dbm=float(r[3]))
            for r in reader
        ]


def write_imu_csv(samples: Iterable[ImuSample], path: str | Path) -> None:
    fh, writer = _open_writer(path)
    with fh:
        writer.writerow(IMU_HEADER)
        for s in samples:
            writer.writerow(
                [repr(s.t)]
                + [repr(v) for v in s.accel]
                + [repr(v) for v in s.gyro]
                + [repr(v) for v in s.orientation]
                + ["" if s.heart_rate_bpm is None else repr(s.heart_rate_bpm)]
                + [s.session_id, s.label.value if s.label is not None else ""]
            )


def read_imu_csv(path: str | Path) -> list[ImuSample]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != IMU_HEADER:
            raise ValidationError(f"{path}: expected imu header {IMU_HEADER}, got {header}")
        samples = []
        for r in reader:
            samples.append(
                ImuSample(
                    t=float(r[0]),
                    accel=(float(r[1]), float(r[2]), float(r[3])),
                    gyro=(float(r[4]), float(r[5]), float(r[6])),
                    orientation=(float(r[7]), float(r[8]), float(r[9])),
                    heart_rate_bpm=None if r[10] == "" else float(r[10]),
                    session_id=r[11],
                    label=ActivityLabel.from_name(r[12]) if r[12] else None,
                )
            )
        return samples


def write_env_csv(readings: Iterable[EnvReading], path: str | Path) -> None:
    fh, writer = _open_writer(path)
    with fh:
        writer.writerow(ENV_HEADER)
        for r in readings:
            writer.writerow([repr(r.t), r.sensor_id, r.parameter, repr(r.value)])


def read_env_csv(path: str | Path) -> list[EnvReading]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ENV_HEADER:
            raise ValidationError(f"{path}: expected env header {ENV_HEADER}, got {header}")
        return [
            EnvReading(t=float(r[0]), sensor_id=r[1], parameter=r[2], value=float(r[3]))
            for r in reader
        ]


def write_track_csv(track: GroundTruthTrack, path: str | Path) -> None:
    fh, writer = _open_writer(path)
    with fh:
        writer.writerow(TRACK_HEADER)
        for s in track.samples:
            writer.writerow([repr(s.t), repr(s.position[0]), repr(s.position[1]), s.room_id])


def read_track_csv(path: str | Path, wearable_id: str = "wearable-1") -> GroundTruthTrack:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != TRACK_HEADER:
            raise ValidationError(f"{path}: expected track header {TRACK_HEADER}, got {header}")
        samples: Sequence[TrackSample] = [
            TrackSample(t=float(r[0]), position=(float(r[1]), float(r[2])), room_id=r[3])
            for r in reader
        ]
    return GroundTruthTrack(samples=tuple(samples), wearable_id=wearable_id)

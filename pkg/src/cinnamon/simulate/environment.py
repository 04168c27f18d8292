"""Ambient sensor stream synthesis: baseline, steps, drift and noise."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .types import EnvChannelScript, EnvReading


def emit_environment(
    env_script: Sequence[EnvChannelScript], seed: int
) -> list[EnvReading]:
    """Readings for every scripted channel, merged and time-ordered.

    Continuous parameters follow ``baseline_at(t) + drift_per_s * t`` plus
    Gaussian noise; ``motion_bool`` treats the (clamped) baseline as the
    per-reading probability of motion. Deterministic per (script, seed).
    """
    rng = np.random.default_rng(seed)
    readings: list[EnvReading] = []
    for chan in env_script:
        n = int(round(chan.duration_s * chan.rate_hz))
        t = np.arange(n) / chan.rate_hz
        if chan.parameter == "motion_bool":
            p = min(max(chan.baseline, 0.0), 1.0)
            values = (rng.random(n) < p).astype(float)
        else:
            values = np.array([chan.baseline_at(tk) for tk in t])
            values = values + chan.drift_per_s * t
            if chan.noise_sigma > 0:
                values = values + rng.normal(0, chan.noise_sigma, n)
        for i in range(n):
            readings.append(
                EnvReading(
                    t=float(t[i]),
                    sensor_id=chan.sensor_id,
                    parameter=chan.parameter,
                    value=float(values[i]),
                )
            )
    readings.sort(key=lambda r: (r.t, r.sensor_id))
    return readings

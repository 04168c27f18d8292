"""Position from anchor ranges: linearized least squares + Gauss-Newton.

The two-stage solve handles both consistent circle intersections and the
inconsistent case where no common intersection exists: the result is the
minimizer of the sum of squared range residuals.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from ..errors import ValidationError
from ..geometry import Point
from .types import DistanceEstimate, PositionEstimate

#: Anchor triangles with less area than this are treated as collinear.
COLLINEARITY_AREA_M2 = 1e-6

#: Gauss-Newton converges only linearly on large-residual (inconsistent
#: circle) instances; the generous cap lets the step-size stop do its job.
MAX_ITERATIONS = 1000
STEP_TOLERANCE_M = 1e-9


def _max_triangle_area(anchors: np.ndarray) -> float:
    n = len(anchors)
    best = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ab = anchors[j] - anchors[i]
                ac = anchors[k] - anchors[i]
                area = 0.5 * abs(ab[0] * ac[1] - ab[1] * ac[0])
                best = max(best, area)
    return best


def range_residual_rms(point: np.ndarray, anchors: np.ndarray, distances: np.ndarray) -> float:
    ranges = np.linalg.norm(point - anchors, axis=1)
    return float(np.sqrt(np.mean((ranges - distances) ** 2)))


def _objective(point: np.ndarray, anchors: np.ndarray, distances: np.ndarray) -> float:
    ranges = np.linalg.norm(point - anchors, axis=1)
    return float(np.sum((ranges - distances) ** 2))


def _linear_init(anchors: np.ndarray, distances: np.ndarray) -> np.ndarray:
    # Subtracting the first circle equation from the rest linearizes the
    # system; the 2x2 normal equations give the starting point.
    a0 = anchors[0]
    d0 = distances[0]
    rows = anchors[1:]
    a_mat = 2.0 * (a0 - rows)
    b = (
        distances[1:] ** 2
        - d0**2
        - np.sum(rows**2, axis=1)
        + np.sum(a0**2)
    )
    ata = a_mat.T @ a_mat
    atb = a_mat.T @ b
    try:
        return np.linalg.solve(ata, atb)
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(a_mat, b, rcond=None)[0]


def solve_position(
    anchors_xy: Sequence[Sequence[float]] | np.ndarray,
    distances: Sequence[float] | np.ndarray,
) -> tuple[np.ndarray, float]:
    """Minimize sum((|p - a_i| - d_i)^2); returns (point, residual_rms).

    Raises ValidationError for fewer than 3 anchors or a collinear set.
    """
    anchors = np.asarray(anchors_xy, dtype=float)
    d = np.asarray(distances, dtype=float)
    if anchors.ndim != 2 or anchors.shape[1] != 2:
        raise ValidationError("anchors must be an (n, 2) array")
    if len(anchors) != len(d):
        raise ValidationError("one distance per anchor required")
    if len(anchors) < 3:
        raise ValidationError("trilateration needs at least 3 anchors")
    if _max_triangle_area(anchors) < COLLINEARITY_AREA_M2:
        raise ValidationError("anchors are collinear (triangle area below tolerance)")

    point = _linear_init(anchors, d)
    fx = _objective(point, anchors, d)
    for _ in range(MAX_ITERATIONS):
        diff = point - anchors
        ranges = np.maximum(np.linalg.norm(diff, axis=1), 1e-12)
        residuals = ranges - d
        jac = diff / ranges[:, None]
        jtj = jac.T @ jac + 1e-12 * np.eye(2)
        jtr = jac.T @ residuals
        try:
            step = np.linalg.solve(jtj, -jtr)
        except np.linalg.LinAlgError:
            break
        # Halve the step until the objective stops increasing.
        alpha = 1.0
        while alpha > 1e-12:
            candidate = point + alpha * step
            f_new = _objective(candidate, anchors, d)
            if f_new <= fx:
                break
            alpha *= 0.5
        point = point + alpha * step
        fx = _objective(point, anchors, d)
        if float(np.linalg.norm(alpha * step)) < STEP_TOLERANCE_M:
            break
    return point, range_residual_rms(point, anchors, d)


def trilaterate(
    distances: Sequence[DistanceEstimate],
    anchor_positions: Mapping[str, Point],
) -> PositionEstimate:
    """Typed wrapper: resolve anchor ids, solve, and stamp the latest time."""
    if len(distances) < 3:
        raise ValidationError("trilateration needs at least 3 distance estimates")
    anchors = []
    for est in distances:
        if est.anchor_id not in anchor_positions:
            raise ValidationError(f"unknown anchor_id {est.anchor_id!r}")
        anchors.append(anchor_positions[est.anchor_id])
    point, residual = solve_position(anchors, [e.distance_m for e in distances])
    return PositionEstimate(
        t=max(e.t for e in distances),
        xy=(float(point[0]), float(point[1])),
        residual_rms_m=residual,
        room_id=None,
        anchors_used=len(distances),
    )

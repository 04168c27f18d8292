"""Room assignment: the step that turns coordinates into room-level output."""

from __future__ import annotations

from typing import Optional

from ..geometry import Point, point_in_polygon
from ..simulate.types import RoomLayout


def assign_room(xy: Point, layout: RoomLayout) -> Optional[str]:
    """First room (in layout order) whose polygon contains the point.

    Boundary points count as contained, so a point on a shared wall goes to
    whichever of the touching rooms is listed first. Returns None outside
    all rooms.
    """
    for room in layout.rooms:
        if point_in_polygon(xy, room.polygon):
            return room.room_id
    return None

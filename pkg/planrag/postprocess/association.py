"""Association of wall segments with the rooms they border."""

from dataclasses import replace
from typing import List, Sequence

import shapely
from shapely.geometry import MultiLineString

from planrag.geometry.primitives import LineString, to_shapely
from planrag.postprocess.construction import WallSegment
from planrag.postprocess.rooms import RoomMerge


def associate_walls(
    segments: Sequence[WallSegment],
    rooms: RoomMerge,
    outer_id: int,
    outline: Sequence[LineString] = (),
    tol: float = 1.5,
) -> List[WallSegment]:
    """Give every segment the rooms within ``tol`` pixels of it.

    Args:
        segments: constructed wall segments.
        rooms: merged rooms.
        outer_id: id of the outer space node.
        outline: outer wall rings, see ``outer_wall``; a segment within
            ``tol`` of them also borders the outer space.
        tol: adjacency tolerance in pixels.

    Returns:
        the segments with ``room_ids`` set; a segment bordering nothing
        is assigned to the outer space.
    """
    ids = sorted(rooms.rooms)
    shapes = [to_shapely(rooms.rooms[idx].polygon) for idx in ids]
    for shape in shapes:
        shapely.prepare(shape)
    outline_shape = MultiLineString([ring.coords() for ring in outline]) if outline else None

    associated = []
    for segment in segments:
        polygon = to_shapely(segment.polygon)
        room_ids = [idx for idx, shape in zip(ids, shapes) if shape.distance(polygon) <= tol]
        if outline_shape is not None and outline_shape.distance(polygon) <= tol:
            room_ids.append(outer_id)
        if not room_ids:
            room_ids = [outer_id]
        associated.append(replace(segment, room_ids=tuple(sorted(set(room_ids)))))
    return associated

"""Room merging.

Objects, stairs, door swings and small room fragments are absorbed by the
room they touch until nothing changes. The absorbed ids stay attached to
the room.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from planrag.exceptions import GeometryError
from planrag.geometry.operations import closing, simplify_polygon, union
from planrag.geometry.primitives import PolygonWithHoles, largest_polygon, to_shapely
from planrag.postprocess.doors import DoorSplit, split_doors
from planrag.rag.labels import ClassLabel
from planrag.rag.region_graph import RegionGraph
from planrag.utils.pipeline_config import PipelineConfig

logger_postprocess = logging.getLogger("Postprocess")

ATTACHABLE_CLASSES = (ClassLabel.object, ClassLabel.stair)


@dataclass(frozen=True)
class Room:
    """A merged room.

    Attributes:
        id: id of the room region the merge started from.
        polygon: simplified and closed outline.
        members: every region id merged into the room, the seed included.
        attachments: merged regions that are not rooms (objects, stairs, door swings).
    """

    id: int
    polygon: PolygonWithHoles
    members: Tuple[int, ...]
    attachments: Tuple[int, ...]


@dataclass(frozen=True)
class RoomMerge:
    rooms: Dict[int, Room]
    iterations: int
    unmerged: Tuple[int, ...] = ()
    owner: Dict[int, int] = field(default_factory=dict)

    def room_of(self, idx: int) -> Optional[int]:
        """Id of the room that absorbed region ``idx``."""
        return self.owner.get(idx)


def clean_polygon(
    parts: Sequence[PolygonWithHoles], dp_epsilon: float, closing_radius: float, quad_segs: int
) -> PolygonWithHoles:
    """Union, Douglas-Peucker and morphological closing; the largest part is kept.

    Raises:
        GeometryError: if ``parts`` has no area.
    """
    merged = union(list(parts))
    if merged.is_empty:
        raise GeometryError("nothing to merge")
    simplified: List[PolygonWithHoles] = []
    for polygon in merged:
        simplified += simplify_polygon(polygon, dp_epsilon).polygons
    result = union(simplified) if simplified else merged
    if closing_radius > 0 and not result.is_empty:
        closed = closing(result, closing_radius, quad_segs)
        if not closed.is_empty:
            result = closed
    if result.is_empty:
        result = merged
    return largest_polygon(to_shapely(result))


def _mergeable(
    g: RegionGraph, splits: Iterable[DoorSplit], seeds: Set[int], min_room_area: float
) -> Set[int]:
    mergeable = {idx for idx in g.node_ids if g.label(idx) in ATTACHABLE_CLASSES}
    mergeable |= {s.swing for s in splits if s.swing is not None}
    for idx in g.node_ids:
        if g.label(idx) == ClassLabel.room and idx not in seeds:
            if g.region(idx).area < min_room_area:
                mergeable.add(idx)
    return mergeable


def merge_rooms(  # pylint: disable=too-many-locals
    g: RegionGraph,
    splits: Optional[Sequence[DoorSplit]] = None,
    cfg: Optional[PipelineConfig] = None,
) -> RoomMerge:
    """Merge objects, stairs, door swings and room fragments into rooms.

    Every iteration attaches each pending region to the room it shares the
    longest boundary with (lower room id on ties), using the room extents
    of the previous iteration. The loop stops at the first iteration that
    attaches nothing. Room fragments smaller than ``min_room_area`` that
    never attach are dropped with a warning.

    Args:
        g: labeled graph.
        splits: door pairing; computed from ``g`` when omitted.
        cfg: supplies ``min_room_area``, ``dp_epsilon``, ``room_closing`` and ``quad_segs``.

    Returns:
        the rooms and the number of iterations that attached something.
    """
    cfg = cfg or PipelineConfig()
    splits = split_doors(g) if splits is None else splits

    rooms = [idx for idx in g.node_ids if g.label(idx) == ClassLabel.room]
    seeds = {idx for idx in rooms if g.region(idx).area >= cfg.min_room_area}
    if rooms and not seeds:
        seeds = set(rooms)
    pending = _mergeable(g, splits, seeds, cfg.min_room_area)
    owner: Dict[int, int] = {idx: idx for idx in seeds}

    iterations = 0
    while True:
        attached: Dict[int, int] = {}
        for idx in sorted(pending):
            contact: Dict[int, int] = {}
            for other in g.neighbors(idx):
                room = owner.get(other)
                if room is not None:
                    contact[room] = contact.get(room, 0) + g.contact(idx, other)
            if contact:
                attached[idx] = min(contact, key=lambda r: (-contact[r], r))
        if not attached:
            break
        iterations += 1
        owner.update(attached)
        pending -= set(attached)
        logger_postprocess.debug(f"room merge iteration {iterations}: {len(attached)} attached")

    unmerged = tuple(sorted(pending))
    fragments = [idx for idx in unmerged if g.label(idx) == ClassLabel.room]
    if fragments:
        logger_postprocess.warning(f"room fragments {fragments} touch no room and are dropped")

    result: Dict[int, Room] = {}
    for seed in sorted(seeds):
        members = tuple(sorted(idx for idx, room in owner.items() if room == seed))
        attachments = tuple(idx for idx in members if g.label(idx) != ClassLabel.room)
        polygon = clean_polygon(
            [g.region(idx).polygon for idx in members],
            cfg.dp_epsilon,
            cfg.room_closing,
            cfg.quad_segs,
        )
        result[seed] = Room(seed, polygon, members, attachments)
    return RoomMerge(result, iterations, unmerged, owner)
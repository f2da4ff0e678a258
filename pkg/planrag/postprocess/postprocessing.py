"""Post-processing of a labeled graph: rooms, doors, connectivity and walls."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from planrag.exceptions import InputError
from planrag.geometry.primitives import MultiPolygon
from planrag.geometry.serialization import multipolygon_from_json, multipolygon_to_json
from planrag.postprocess.association import associate_walls
from planrag.postprocess.connectivity import (
    RoomConnectivityGraph,
    outer_wall,
    room_connectivity,
)
from planrag.postprocess.construction import WallSegment, construct_polygons
from planrag.postprocess.doors import DoorSplit, split_doors
from planrag.postprocess.rooms import RoomMerge, merge_rooms
from planrag.postprocess.separation import SeparationLine, separation_lines
from planrag.postprocess.walls import merge_walls
from planrag.rag.region_graph import RegionGraph
from planrag.utils.pipeline_config import PipelineConfig

logger_postprocess = logging.getLogger("Postprocess")

WALLS_FORMAT_VERSION = 1


@dataclass(frozen=True)
class WallLayout:
    wall: MultiPolygon
    lines: List[SeparationLine]
    segments: List[WallSegment]

    def to_json(self) -> Dict[str, Any]:
        return {
            "format_version": WALLS_FORMAT_VERSION,
            "wall": multipolygon_to_json(self.wall),
            "separation_lines": [line.to_json() for line in self.lines],
            "segments": [segment.to_json() for segment in self.segments],
        }

    @staticmethod
    def from_json(data: Any) -> "WallLayout":
        """Decode a wall document.

        Raises:
            InputError: on a malformed document or an unsupported version.
        """
        if not isinstance(data, dict) or data.get("format_version") != WALLS_FORMAT_VERSION:
            raise InputError("unsupported wall document")
        try:
            return WallLayout(
                multipolygon_from_json(data["wall"]),
                [SeparationLine.from_json(entry) for entry in data["separation_lines"]],
                [WallSegment.from_json(entry) for entry in data["segments"]],
            )
        except (KeyError, TypeError, ValueError) as err:
            raise InputError(f"malformed wall document: {err}") from err


@dataclass(frozen=True)
class PostprocessResult:
    doors: List[DoorSplit]
    rooms: RoomMerge
    rcg: RoomConnectivityGraph
    walls: WallLayout


def postprocess(g: RegionGraph, cfg: Optional[PipelineConfig] = None) -> PostprocessResult:
    """Run every post-processing step on a labeled graph.

    Doors are paired first; their swings then merge into rooms and their
    embedded parts into the wall.
    """
    cfg = cfg or PipelineConfig()
    doors = split_doors(g)
    rooms = merge_rooms(g, doors, cfg)
    rcg = room_connectivity(rooms, doors, g)

    wall = merge_walls(g, doors, cfg)
    lines = separation_lines(wall, cfg) if not wall.is_empty else []
    segments = construct_polygons(wall, lines, cfg.alg2_eps)
    outer = rcg.outer
    outer_id = outer.id if outer is not None else 0
    outline = outer_wall(outer.polygon) if outer is not None else []
    segments = associate_walls(segments, rooms, outer_id, outline, cfg.association_tol)

    logger_postprocess.info(
        f"{len(rooms.rooms)} rooms, {len(doors)} doors, {len(lines)} separation lines, "
        f"{len(segments)} wall segments"
    )
    return PostprocessResult(doors, rooms, rcg, WallLayout(wall, lines, segments))


def write_walls(layout: WallLayout, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(layout.to_json(), f, sort_keys=True, indent=2)


def read_walls(path: Union[str, Path]) -> WallLayout:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        raise InputError(f"cannot read walls {path}: {err}") from err
    return WallLayout.from_json(data)

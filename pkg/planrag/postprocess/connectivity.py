"""Room Connectivity Graph.

Nodes are rooms, doors and the outer space; every edge joins a door to a
room or to the outer space it opens onto. Porch regions are exterior and
belong to the outer space node.

Classes:
    NodeKind: room, door or outer_space.
    RcgNode: A node of the graph.
    RoomConnectivityGraph: The bipartite place/door graph.

Functions:
    outer_wall(outer) -> List[LineString]
    room_connectivity(rooms, doors, g) -> RoomConnectivityGraph
    write_rcg(rcg, path) -> None
    read_rcg(path) -> RoomConnectivityGraph
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from planrag.exceptions import InputError, PlanragException
from planrag.geometry.operations import union
from planrag.geometry.primitives import LineString, MultiPolygon
from planrag.geometry.serialization import multipolygon_from_json, multipolygon_to_json
from planrag.postprocess.doors import DoorSplit
from planrag.postprocess.rooms import RoomMerge
from planrag.rag.labels import ClassLabel
from planrag.rag.region_graph import RegionGraph
from planrag.utils.comparable_enum import ComparableEnum

RCG_FORMAT_VERSION = 1

OUTER_CLASSES = (ClassLabel.outer_space, ClassLabel.porch)


class NodeKind(ComparableEnum):
    room = 0
    door = 1
    outer_space = 2


@dataclass(frozen=True)
class RcgNode:
    """A room, a door or the outer space.

    Attributes:
        id: region id the node is named after (room seed, embedded door part,
            outer region).
        kind: node kind.
        polygon: area covered by the node.
        members: region ids forming the node.
        attachments: objects, stairs and door swings merged into a room.
    """

    id: int
    kind: NodeKind
    polygon: MultiPolygon
    members: Tuple[int, ...]
    attachments: Tuple[int, ...] = ()

    def to_json(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "kind": self.kind.name,
            "polygon": multipolygon_to_json(self.polygon),
            "members": list(self.members),
            "attachments": list(self.attachments),
        }

    @staticmethod
    def from_json(data: Dict[str, Any]) -> "RcgNode":
        return RcgNode(
            int(data["id"]),
            NodeKind.from_name(data["kind"]),
            multipolygon_from_json(data["polygon"]),
            tuple(int(i) for i in data["members"]),
            tuple(int(i) for i in data.get("attachments", [])),
        )


class RoomConnectivityGraph:
    """Bipartite graph between places (rooms and outer space) and doors.

    Args:
        nodes: graph nodes, exactly one of them outer space.
        edges: (place id, door id) pairs.

    Raises:
        PlanragException: if an edge does not join a place to a door.
    """

    def __init__(self, nodes: Iterable[RcgNode], edges: Iterable[Tuple[int, int]]):
        self._nodes: Dict[int, RcgNode] = {}
        for node in nodes:
            if node.id in self._nodes:
                raise PlanragException(f"duplicated node {node.id}")
            self._nodes[node.id] = node
        self._edges: List[Tuple[int, int]] = []
        for place, door in sorted(set(edges)):
            if place not in self._nodes or door not in self._nodes:
                raise PlanragException(f"edge ({place}, {door}) references an unknown node")
            if self._nodes[place].kind == NodeKind.door or self._nodes[door].kind != NodeKind.door:
                raise PlanragException(f"edge ({place}, {door}) must join a place to a door")
            self._edges.append((place, door))

    @property
    def nodes(self) -> Dict[int, RcgNode]:
        return self._nodes

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return self._edges

    def _of_kind(self, kind: NodeKind) -> List[RcgNode]:
        return [self._nodes[i] for i in sorted(self._nodes) if self._nodes[i].kind == kind]

    @property
    def rooms(self) -> List[RcgNode]:
        return self._of_kind(NodeKind.room)

    @property
    def doors(self) -> List[RcgNode]:
        return self._of_kind(NodeKind.door)

    @property
    def outer(self) -> Optional[RcgNode]:
        outer = self._of_kind(NodeKind.outer_space)
        return outer[0] if outer else None

    def places_of(self, door: int) -> List[int]:
        return [p for p, d in self._edges if d == door]

    def doors_of(self, place: int) -> List[int]:
        return [d for p, d in self._edges if p == place]

    def degree(self, idx: int) -> int:
        return sum(1 for p, d in self._edges if idx in (p, d))

    def topology(self) -> List[Tuple[int, ...]]:
        """Sorted place tuples of every door; independent of ids of the same plan."""
        return sorted(tuple(sorted(self.places_of(d.id))) for d in self.doors)

    def __repr__(self) -> str:
        return (
            f"RoomConnectivityGraph({len(self.rooms)} rooms, {len(self.doors)} doors, "
            f"{len(self._edges)} edges)"
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "format_version": RCG_FORMAT_VERSION,
            "nodes": [self._nodes[i].to_json() for i in sorted(self._nodes)],
            "edges": [[p, d] for p, d in self._edges],
        }

    @staticmethod
    def from_json(data: Any) -> "RoomConnectivityGraph":
        """Decode an RCG document.

        Raises:
            InputError: on a malformed document or an unsupported version.
        """
        if not isinstance(data, dict) or data.get("format_version") != RCG_FORMAT_VERSION:
            raise InputError("unsupported room connectivity graph document")
        try:
            nodes = [RcgNode.from_json(entry) for entry in data["nodes"]]
            edges = [(int(p), int(d)) for p, d in data["edges"]]
            return RoomConnectivityGraph(nodes, edges)
        except (KeyError, TypeError, ValueError, PlanragException) as err:
            if isinstance(err, InputError):
                raise
            raise InputError(f"malformed room connectivity graph: {err}") from err


def outer_members(g: RegionGraph) -> List[int]:
    return [idx for idx in g.node_ids if g.label(idx) in OUTER_CLASSES]


def outer_wall(outer: MultiPolygon) -> List[LineString]:
    """Building outline seen from outside: the interior rings of the outer-space polygon.

    Outer space that does not surround the building has no interior ring;
    its exterior rings stand in for the outline then.
    """
    rings = [hole for polygon in outer for hole in polygon.interiors]
    if rings:
        return rings
    return [polygon.exterior for polygon in outer]


def room_connectivity(
    rooms: RoomMerge, doors: Sequence[DoorSplit], g: RegionGraph
) -> RoomConnectivityGraph:
    """Connect every door to the rooms and outer space its parts touch.

    A door swing merged into a room connects the door to that room. A door
    reaching a single place is a closet door and keeps degree one.

    Args:
        rooms: merged rooms.
        doors: paired door regions.
        g: the labeled graph the rooms and doors come from.

    Returns:
        the room connectivity graph.
    """
    outer_ids = outer_members(g)
    outer_id = min(outer_ids) if outer_ids else 0
    if g.outer_id is not None and g.outer_id in outer_ids:
        outer_id = g.outer_id
    owner: Dict[int, int] = dict(rooms.owner)
    for idx in outer_ids:
        owner[idx] = outer_id

    nodes = [
        RcgNode(
            room.id,
            NodeKind.room,
            MultiPolygon((room.polygon,)),
            room.members,
            room.attachments,
        )
        for room in rooms.rooms.values()
    ]
    nodes.append(
        RcgNode(
            outer_id,
            NodeKind.outer_space,
            union([g.region(idx).polygon for idx in outer_ids]),
            tuple(outer_ids),
        )
    )

    edges: Set[Tuple[int, int]] = set()
    for door in doors:
        places: Set[int] = set()
        for part in door.parts:
            if part in owner:
                places.add(owner[part])
            places |= {owner[n] for n in g.neighbors(part) if n in owner}
        nodes.append(
            RcgNode(
                door.embedded,
                NodeKind.door,
                union([g.region(idx).polygon for idx in door.parts]),
                tuple(door.parts),
            )
        )
        edges |= {(place, door.embedded) for place in places}
    return RoomConnectivityGraph(nodes, edges)


def write_rcg(rcg: RoomConnectivityGraph, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(rcg.to_json(), f, sort_keys=True, indent=2)


def read_rcg(path: Union[str, Path]) -> RoomConnectivityGraph:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        raise InputError(f"cannot read room connectivity graph {path}: {err}") from err
    return RoomConnectivityGraph.from_json(data)

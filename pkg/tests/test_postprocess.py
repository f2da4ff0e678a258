import json
from pathlib import Path
from typing import List

import pytest
import shapely

from planrag.exceptions import InputError, PlanragException
from planrag.geometry.operations import area, union
from planrag.geometry.primitives import (
    MultiPolygon,
    Point,
    PolygonWithHoles,
    ring_signed_area,
    to_shapely,
)
from planrag.postprocess.association import associate_walls
from planrag.postprocess.connectivity import (
    NodeKind,
    RcgNode,
    RoomConnectivityGraph,
    outer_wall,
    read_rcg,
    room_connectivity,
    write_rcg,
)
from planrag.postprocess.construction import WallSegment, construct_polygons, is_convex
from planrag.postprocess.doors import DoorSplit, split_doors
from planrag.postprocess.postprocessing import postprocess, read_walls, write_walls
from planrag.postprocess.rooms import merge_rooms
from planrag.postprocess.separation import (
    LineKind,
    SeparationLine,
    remove_crossing_lines,
    separation_lines,
)
from planrag.postprocess.walls import merge_walls, merge_walls_detailed
from planrag.rag.labels import ClassLabel

from tests.utils import make_graph, picture_frame, rect, seg, two_room_plan


def _coverage(segments: List[WallSegment], wall: MultiPolygon) -> None:
    pieces = [to_shapely(s.polygon) for s in segments]
    covered = shapely.unary_union(pieces)
    target = to_shapely(wall)
    assert covered.intersection(target).area >= 0.99 * target.area
    # pieces overlap by less than one percent of the wall
    assert sum(p.area for p in pieces) - covered.area <= 0.01 * target.area


def test_picture_frame_separation_lines() -> None:
    lines = separation_lines(picture_frame())
    assert len(lines) == 8
    for line in lines:
        assert line.segment.length == pytest.approx(4.0)
        # every line starts at an inner corner
        assert (line.origin.x, line.origin.y) in {(4, 4), (36, 4), (36, 36), (4, 36)}
    assert sum(1 for line in lines if line.kind == LineKind.best) == 4
    assert remove_crossing_lines(lines) == lines


def test_picture_frame_construction() -> None:
    frame = picture_frame()
    segments = construct_polygons(frame, separation_lines(frame))
    assert len(segments) == 8
    assert all(is_convex(s.polygon) for s in segments)
    assert not any(s.fallback for s in segments)
    assert sorted(round(area(s.polygon)) for s in segments) == [16] * 4 + [128] * 4
    _coverage(segments, frame)


def test_t_junction_construction() -> None:
    wall = union([picture_frame().polygons[0], rect(18, 4, 22, 36)])
    lines = separation_lines(wall)
    assert remove_crossing_lines(lines) == lines
    segments = construct_polygons(wall, lines)
    assert len(segments) >= 8
    assert all(is_convex(s.polygon) or s.fallback for s in segments)
    _coverage(segments, wall)


def test_construction_without_lines() -> None:
    square = MultiPolygon((rect(0, 0, 10, 10),))
    segments = construct_polygons(square, [])
    assert len(segments) == 1
    assert area(segments[0].polygon) == pytest.approx(100.0)
    assert not construct_polygons(MultiPolygon(), [])
    assert not separation_lines(MultiPolygon())


def test_concave_wall_pieces_are_convex_or_flagged() -> None:
    ell = MultiPolygon(
        (PolygonWithHoles.from_coords([(0, 0), (40, 0), (40, 4), (4, 4), (4, 30), (0, 30)]),)
    )
    for lines in ([], separation_lines(ell)):
        segments = construct_polygons(ell, lines)
        assert segments
        assert all(is_convex(s.polygon) or s.fallback for s in segments)
        _coverage(segments, ell)


def test_remove_crossing_lines() -> None:
    long_line = SeparationLine(seg(0, 0, 10, 10), Point(0.0, 0.0), LineKind.best)
    short_line = SeparationLine(seg(0, 6, 6, 0), Point(0.0, 6.0), LineKind.best)
    apart = SeparationLine(seg(20, 0, 20, 5), Point(20.0, 0.0), LineKind.second_best)
    assert remove_crossing_lines([long_line, short_line, apart]) == [short_line, apart]
    # touching at an endpoint is no crossing
    touching = SeparationLine(seg(10, 10, 20, 10), Point(10.0, 10.0), LineKind.best)
    assert remove_crossing_lines([long_line, touching]) == [long_line, touching]


def test_is_convex() -> None:
    assert is_convex(rect(0, 0, 5, 3))
    ell = PolygonWithHoles.from_coords([(0, 0), (4, 0), (4, 1), (1, 1), (1, 4), (0, 4)])
    assert not is_convex(ell)
    assert not is_convex(picture_frame().polygons[0])


def test_split_doors() -> None:
    assert split_doors(two_room_plan()) == [DoorSplit(5, 6), DoorSplit(7)]
    assert DoorSplit(5, 6).parts == [5, 6]
    assert DoorSplit(7).parts == [7]


def test_split_doors_three_way() -> None:
    g = make_graph(
        [
            (1, rect(-5, -5, 0, 0), ClassLabel.outer_space),
            (2, rect(0, 0, 6, 5), ClassLabel.door),
            (3, rect(6, 0, 10, 5), ClassLabel.door),
            (4, rect(10, 0, 12, 5), ClassLabel.door),
        ],
        [(1, 2, 1), (2, 3, 5), (2, 4, 1), (3, 4, 5)],
    )
    assert split_doors(g) == [DoorSplit(3, 2), DoorSplit(4)]


def test_merge_rooms() -> None:
    merge = merge_rooms(two_room_plan())
    assert sorted(merge.rooms) == [3, 4]
    assert merge.iterations == 1
    assert merge.rooms[3].members == (3, 6, 11)
    assert merge.rooms[3].attachments == (6,)
    assert merge.rooms[4].members == (4, 8)
    assert merge.rooms[4].attachments == (8,)
    assert merge.room_of(8) == 4
    assert merge.room_of(5) is None
    assert not merge.unmerged
    assert area(merge.rooms[3].polygon) == pytest.approx(16 * 32, rel=1e-3)


def test_merge_rooms_follows_chains() -> None:
    g = make_graph(
        [
            (1, rect(-5, -5, 0, 0), ClassLabel.outer_space),
            (2, rect(0, 0, 20, 20), ClassLabel.room),
            (3, rect(5, 5, 8, 8), ClassLabel.object),
            (4, rect(8, 5, 10, 8), ClassLabel.object),
        ],
        [(1, 2, 20), (2, 3, 9), (3, 4, 3)],
    )
    merge = merge_rooms(g)
    # the second object only touches the first one
    assert merge.iterations == 2
    assert merge.rooms[2].members == (2, 3, 4)
    assert merge.rooms[2].attachments == (3, 4)
    assert merge_rooms(g) == merge


def test_fragment_without_room_is_dropped() -> None:
    g = make_graph(
        [
            (1, rect(-5, -5, 0, 0), ClassLabel.outer_space),
            (2, rect(0, 0, 20, 20), ClassLabel.room),
            (3, rect(30, 30, 32, 32), ClassLabel.room),
        ],
        [(1, 2, 20), (1, 3, 8)],
    )
    merge = merge_rooms(g)
    assert sorted(merge.rooms) == [2]
    assert merge.unmerged == (3,)


def test_merge_walls() -> None:
    merge = merge_walls_detailed(two_room_plan())
    assert merge.members == (2, 5, 7, 9, 12)
    assert merge.iterations == 2
    assert not merge.polygon.is_empty
    assert merge_walls(two_room_plan()) == merge.polygon


def test_room_connectivity() -> None:
    g = two_room_plan()
    doors = split_doors(g)
    rcg = room_connectivity(merge_rooms(g, doors), doors, g)
    assert [room.id for room in rcg.rooms] == [3, 4]
    assert [door.id for door in rcg.doors] == [5, 7]
    assert rcg.outer is not None and rcg.outer.members == (1, 10)
    assert rcg.edges == [(1, 5), (3, 5), (3, 7), (4, 7)]
    assert all(rcg.degree(door.id) == 2 for door in rcg.doors)
    assert rcg.topology() == [(1, 3), (3, 4)]
    assert rcg.doors_of(3) == [5, 7]
    assert rcg.places_of(7) == [3, 4]
    # bipartite: every edge joins a place to a door
    for place, door in rcg.edges:
        assert rcg.nodes[place].kind != NodeKind.door
        assert rcg.nodes[door].kind == NodeKind.door


def test_rcg_invariants(tmp_path: Path) -> None:
    empty = MultiPolygon()
    door = RcgNode(5, NodeKind.door, empty, (5,))
    room = RcgNode(3, NodeKind.room, empty, (3,))
    with pytest.raises(PlanragException):
        RoomConnectivityGraph([door, room], [(5, 3)])
    with pytest.raises(PlanragException):
        RoomConnectivityGraph([door, room], [(3, 9)])
    with pytest.raises(PlanragException):
        RoomConnectivityGraph([door, door], [])

    rcg = RoomConnectivityGraph([door, room], [(3, 5)])
    write_rcg(rcg, tmp_path / "rcg.json")
    assert read_rcg(tmp_path / "rcg.json").to_json() == rcg.to_json()
    document = rcg.to_json()
    document["edges"] = [[5, 3]]
    (tmp_path / "bad.json").write_text(json.dumps(document), encoding="utf-8")
    with pytest.raises(InputError):
        read_rcg(tmp_path / "bad.json")
    with pytest.raises(InputError):
        read_rcg(tmp_path / "missing.json")


def test_associate_walls() -> None:
    g = two_room_plan()
    rooms = merge_rooms(g)
    segments = [
        WallSegment(rect(4, 36, 36, 40)),
        WallSegment(rect(0, 0, 4, 4)),
        WallSegment(rect(100, 100, 110, 110)),
    ]
    outline = outer_wall(MultiPolygon((g.region(1).polygon,)))
    associated = associate_walls(segments, rooms, 1, outline, tol=1.5)
    assert associated[0].room_ids == (3, 4)
    assert associated[1].room_ids == (1, 3)
    # a segment bordering nothing belongs to the outer space
    assert associated[2].room_ids == (1,)


def test_outer_wall_from_surrounding_space() -> None:
    surrounding = PolygonWithHoles.from_coords(
        [(-10, -10), (50, -10), (50, 50), (-10, 50)], [[(0, 0), (40, 0), (40, 40), (0, 40)]]
    )
    outline = outer_wall(MultiPolygon((surrounding,)))
    assert len(outline) == 1
    assert abs(ring_signed_area(outline[0].coords())) == pytest.approx(1600.0)
    # the strip fixture does not enclose the building: its exterior stands in
    strip = two_room_plan().region(1).polygon
    assert outer_wall(MultiPolygon((strip,))) == [strip.exterior]
    assert not outer_wall(MultiPolygon())

    rooms = merge_rooms(two_room_plan())
    segments = [WallSegment(rect(0, 18, 4, 22)), WallSegment(rect(18, 4, 22, 36))]
    associated = associate_walls(segments, rooms, 1, outline, tol=1.5)
    assert associated[0].room_ids == (1, 3)
    # a partition between the rooms does not touch the outline
    assert associated[1].room_ids == (3, 4)


def test_postprocess(tmp_path: Path) -> None:
    g = two_room_plan()
    result = postprocess(g)
    assert result.rcg.topology() == [(1, 3), (3, 4)]
    layout = result.walls
    assert layout.segments
    places = {1, 3, 4}
    for segment in layout.segments:
        assert segment.room_ids
        assert set(segment.room_ids) <= places
    assert any(1 in segment.room_ids for segment in layout.segments)

    write_walls(layout, tmp_path / "walls.json")
    assert read_walls(tmp_path / "walls.json").to_json() == layout.to_json()
    (tmp_path / "old.json").write_text(json.dumps({"format_version": 0}), encoding="utf-8")
    with pytest.raises(InputError):
        read_walls(tmp_path / "old.json")


def test_postprocess_without_walls() -> None:
    g = make_graph(
        [
            (1, rect(-5, -5, 0, 0), ClassLabel.outer_space),
            (2, rect(0, 0, 20, 20), ClassLabel.room),
        ],
        [(1, 2, 20)],
    )
    result = postprocess(g)
    assert not result.walls.segments
    assert result.walls.wall.is_empty
    assert [room.id for room in result.rcg.rooms] == [2]
    assert not result.rcg.edges

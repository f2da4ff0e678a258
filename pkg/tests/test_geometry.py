import math
from typing import List, Optional, Tuple

import numpy as np
import pytest
import shapely

from planrag.exceptions import GeometryError
from planrag.geometry.operations import (
    angle_between,
    area,
    buffer,
    centroid,
    closing,
    contains,
    convex_hull,
    douglas_peucker,
    origin_radius,
    point_segment_distance,
    segments_cross,
    segments_intersect,
    shortest_line,
    union,
)
from planrag.geometry.primitives import (
    LineString,
    MultiPolygon,
    Point,
    PolygonWithHoles,
    Segment,
    to_shapely,
)
from planrag.geometry.serialization import polygon_from_json, polygon_to_json

from tests.utils import seg, square

UNIT_SQUARE = square(0, 0, 1)


def _random_convex(rng: np.random.Generator) -> PolygonWithHoles:
    points = rng.uniform(-10.0, 10.0, size=(12, 2))
    hull = shapely.MultiPoint(points.tolist()).convex_hull
    return PolygonWithHoles.from_coords(list(hull.exterior.coords))


def test_polygon_orientation() -> None:
    clockwise = PolygonWithHoles.from_coords(
        [(0, 0), (0, 10), (10, 10), (10, 0)], [[(2, 2), (4, 2), (4, 4), (2, 4)]]
    )
    assert area(clockwise) == pytest.approx(96.0)
    exterior = clockwise.exterior.coords()
    hole = clockwise.interiors[0].coords()
    # shoelace sign: exterior counter-clockwise, holes clockwise
    assert np.sum(exterior[:-1, 0] * exterior[1:, 1] - exterior[1:, 0] * exterior[:-1, 1]) > 0
    assert np.sum(hole[:-1, 0] * hole[1:, 1] - hole[1:, 0] * hole[:-1, 1]) < 0


def test_degenerate_primitives() -> None:
    with pytest.raises(GeometryError):
        Segment(Point(1, 1), Point(1, 1))
    with pytest.raises(GeometryError):
        Point(math.nan, 0)
    with pytest.raises(GeometryError):
        PolygonWithHoles.from_coords([(0, 0), (1, 1)])
    with pytest.raises(GeometryError):
        area(PolygonWithHoles.from_coords([(0, 0), (1, 1), (2, 2)]))


CENTROID_TESTS: List[Tuple[PolygonWithHoles, Tuple[float, float]]] = [
    (UNIT_SQUARE, (0.5, 0.5)),
    (
        PolygonWithHoles.from_coords(
            [(-1, -1), (1, -1), (1, 1), (-1, 1)],
            [[(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]],
        ),
        (0.0, 0.0),
    ),
    (PolygonWithHoles.from_coords([(0, 0), (3, 0), (0, 3)]), (1.0, 1.0)),
]


@pytest.mark.parametrize("test", CENTROID_TESTS)  # type: ignore
def test_centroid(test: Tuple[PolygonWithHoles, Tuple[float, float]]) -> None:
    polygon, expected = test
    c = centroid(polygon)
    assert c.x == pytest.approx(expected[0], abs=1e-12)
    assert c.y == pytest.approx(expected[1], abs=1e-12)


ORIGIN_RADIUS_TESTS: List[Tuple[PolygonWithHoles, float]] = [
    (PolygonWithHoles.from_coords([(-1, -1), (1, -1), (1, 1), (-1, 1)]), math.sqrt(2)),
    (PolygonWithHoles.from_coords([(-3, -2), (3, -2), (3, 2), (-3, 2)]), math.hypot(3, 2)),
    (UNIT_SQUARE, math.sqrt(2)),
]


@pytest.mark.parametrize("test", ORIGIN_RADIUS_TESTS)  # type: ignore
def test_origin_radius(test: Tuple[PolygonWithHoles, float]) -> None:
    polygon, expected = test
    assert origin_radius(polygon) == pytest.approx(expected)


@pytest.mark.parametrize("factor", [0.5, 3.0, -2.0])  # type: ignore
def test_origin_radius_scales(factor: float) -> None:
    rng = np.random.default_rng(11)
    for _ in range(20):
        polygon = _random_convex(rng)
        scaled = PolygonWithHoles.from_coords(polygon.exterior.coords() * factor)
        assert origin_radius(scaled) == pytest.approx(abs(factor) * origin_radius(polygon))


def test_buffer_closing() -> None:
    closed = closing(UNIT_SQUARE, 1.0)
    assert len(closed) == 1
    closed_area = to_shapely(closed).area
    assert closed_area >= 1.0
    assert closed_area - 1.0 <= 1e-2
    assert to_shapely(closed).contains(to_shapely(UNIT_SQUARE))
    with pytest.raises(GeometryError):
        closing(UNIT_SQUARE, 0.0)


def test_closing_contains_convex_polygons() -> None:
    rng = np.random.default_rng(5)
    for _ in range(50):
        polygon = _random_convex(rng)
        radius = float(rng.uniform(0.5, 3.0))
        closed = to_shapely(closing(polygon, radius))
        assert closed.contains(to_shapely(polygon))
        assert closed.area <= 1.02 * area(polygon)


def test_closing_contains_l_shape() -> None:
    l_shape = PolygonWithHoles.from_coords([(0, 0), (10, 0), (10, 3), (3, 3), (3, 10), (0, 10)])
    for quad_segs in (4, 8, 16):
        closed = to_shapely(closing(l_shape, 1.5, quad_segs))
        assert closed.contains(to_shapely(l_shape))


def test_closing_removes_small_hole() -> None:
    holed = PolygonWithHoles.from_coords(
        [(0, 0), (10, 0), (10, 10), (0, 10)], [[(4.5, 4.5), (5.5, 4.5), (5.5, 5.5), (4.5, 5.5)]]
    )
    reopened = closing(holed, 1.0)
    assert len(reopened) == 1
    assert not reopened.polygons[0].interiors


def test_buffer_full_erosion() -> None:
    assert buffer(square(0, 0, 2), -2.0).is_empty
    assert buffer(MultiPolygon(), 1.0).is_empty
    with pytest.raises(GeometryError):
        buffer(UNIT_SQUARE, 0.0)


def _hausdorff_within(original: LineString, simplified: LineString, eps: float) -> bool:
    coords = simplified.coords()
    segments = np.hstack([coords[:-1], coords[1:]])
    distances = point_segment_distance(original.coords(), segments)
    return bool(np.all(distances.min(axis=1) <= eps + 1e-9))


def test_douglas_peucker() -> None:
    collinear = LineString.from_coords([(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)])
    assert len(douglas_peucker(collinear, 0.1)) == 2

    wiggly = LineString.from_coords([(0, 0), (1, 0.3), (2, -0.2), (3, 0.1), (4, 0)])
    assert douglas_peucker(wiggly, 0.0) == wiggly

    staircase_coords = [(0, 0)]
    for step in range(1, 6):
        staircase_coords.append((step - 1, step))
        staircase_coords.append((step, step))
    staircase = LineString.from_coords(staircase_coords)
    simplified = douglas_peucker(staircase, 1.0)
    assert len(simplified) == 2
    assert simplified.points[0] == staircase.points[0]
    assert simplified.points[-1] == staircase.points[-1]
    assert _hausdorff_within(staircase, simplified, 1.0)

    with pytest.raises(GeometryError):
        douglas_peucker(collinear, -1.0)


def test_douglas_peucker_ring() -> None:
    # square ring with redundant midpoints on every side
    ring = LineString.from_coords(
        [(0, 0), (5, 0), (10, 0), (10, 5), (10, 10), (5, 10), (0, 10), (0, 5), (0, 0)]
    )
    simplified = douglas_peucker(ring, 0.5)
    assert simplified.closed
    assert len(simplified) == 5
    assert _hausdorff_within(ring, simplified, 0.5)


SHORTEST_LINE_TESTS: List[Tuple[Point, Segment, Optional[Segment]]] = [
    (Point(0, 1), seg(-1, 0, 1, 0), seg(0, 1, 0, 0)),
    (Point(5, 0), seg(0, 0, 1, 0), seg(5, 0, 1, 0)),
    (Point(1, 1), seg(0, 0, 2, 2), None),
]


@pytest.mark.parametrize("test", SHORTEST_LINE_TESTS)  # type: ignore
def test_shortest_line(test: Tuple[Point, Segment, Optional[Segment]]) -> None:
    pt, segment, expected = test
    result = shortest_line(pt, segment)
    if expected is None:
        assert result is None
        return
    assert result is not None
    assert result.a == expected.a
    assert result.b.x == pytest.approx(expected.b.x)
    assert result.b.y == pytest.approx(expected.b.y)


def test_shortest_line_matches_sampled_minimum() -> None:
    rng = np.random.default_rng(13)
    steps = np.linspace(0.0, 1.0, 1001)
    for _ in range(1000):
        ax, ay, bx, by, px, py = rng.uniform(-5.0, 5.0, size=6)
        segment = seg(ax, ay, bx, by)
        samples = np.column_stack([ax + steps * (bx - ax), ay + steps * (by - ay)])
        sampled = float(np.min(np.hypot(samples[:, 0] - px, samples[:, 1] - py)))
        result = shortest_line(Point(px, py), segment)
        shortest = 0.0 if result is None else result.length
        half_step = 0.5 * segment.length * (steps[1] - steps[0])
        assert shortest <= sampled + 1e-9
        assert sampled - shortest <= half_step + 1e-9


CROSS_TESTS: List[Tuple[Segment, Segment, bool, bool]] = [
    # s1, s2, crosses, intersects
    (seg(0, -1, 0, 1), seg(-1, 0, 1, 0), True, True),
    (seg(0, 0, 1, 0), seg(1, 0, 1, 1), False, True),
    (seg(0, 0, 1, 0), seg(0, 1, 1, 1), False, False),
    (seg(0, 0, 2, 0), seg(1, 0, 1, 1), False, True),
    (seg(0, 0, 2, 0), seg(1, 0, 3, 0), False, True),
]


@pytest.mark.parametrize("test", CROSS_TESTS)  # type: ignore
def test_segments_cross(test: Tuple[Segment, Segment, bool, bool]) -> None:
    s1, s2, crosses, intersects = test
    assert segments_cross(s1, s2) == crosses
    assert segments_cross(s2, s1) == crosses
    assert segments_intersect(s1, s2) == intersects
    assert segments_intersect(s2, s1) == intersects


def test_segments_cross_symmetric_random() -> None:
    rng = np.random.default_rng(3)
    for _ in range(200):
        a, b = rng.uniform(-5, 5, size=(2, 4))
        s1, s2 = seg(*a), seg(*b)
        assert segments_cross(s1, s2) == segments_cross(s2, s1)


def test_convex_hull() -> None:
    sides = [seg(0, 0, 1, 0), seg(1, 0, 1, 1), seg(1, 1, 0, 1), seg(0, 1, 0, 0)]
    assert area(convex_hull(sides)) == pytest.approx(1.0)
    diagonals = [seg(0, 0, 1, 1), seg(1, 0, 0, 1)]
    assert area(convex_hull(diagonals)) == pytest.approx(1.0)
    triangle = [seg(0, 0, 4, 0), seg(4, 0, 0, 3), seg(0, 3, 0, 0)]
    assert area(convex_hull(triangle)) == pytest.approx(6.0)
    with pytest.raises(GeometryError):
        convex_hull([seg(0, 0, 1, 1), seg(2, 2, 3, 3)])


def test_contains() -> None:
    walls = MultiPolygon((square(0, 0, 4), square(10, 0, 4)))
    assert contains(walls, seg(0, 0, 4, 0))
    assert contains(walls, seg(0, 0, 4, 4))
    assert not contains(walls, seg(2, 2, 12, 2))
    ell = MultiPolygon(
        (PolygonWithHoles.from_coords([(0, 0), (4, 0), (4, 1), (1, 1), (1, 4), (0, 4)]),)
    )
    # chord through the notch leaves the region
    assert not contains(ell, seg(3, 0.5, 0.5, 3))
    assert not contains(MultiPolygon(), seg(0, 0, 1, 1))


ANGLE_TESTS: List[Tuple[Segment, Segment, float]] = [
    (seg(0, 0, 1, 0), seg(0, 0, 0, 1), 90.0),
    (seg(0, 0, 1, 0), seg(0, 1, 5, 1), 0.0),
    (seg(0, 0, 1, 1), seg(0, 0, 1, 0), 45.0),
    (seg(0, 0, 1, 0), seg(1, 0, 0, 0), 0.0),
]


@pytest.mark.parametrize("test", ANGLE_TESTS)  # type: ignore
def test_angle_between(test: Tuple[Segment, Segment, float]) -> None:
    s1, s2, expected = test
    assert angle_between(s1, s2) == pytest.approx(expected, abs=1e-9)


def test_union_merges_touching_squares() -> None:
    merged = union([square(0, 0, 1), square(1, 0, 1), MultiPolygon()])
    assert len(merged) == 1
    assert to_shapely(merged).area == pytest.approx(2.0)
    assert union([]).is_empty


def test_polygon_json() -> None:
    holed = PolygonWithHoles.from_coords(
        [(0, 0), (10, 0), (10, 10), (0, 10)], [[(2, 2), (4, 2), (4, 4), (2, 4)]]
    )
    assert polygon_from_json(polygon_to_json(holed)) == holed

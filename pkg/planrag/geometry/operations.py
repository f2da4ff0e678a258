"""Polygon operations: measures, morphology, simplification and segment tests.

Functions:
    area(p) -> float
    centroid(p) -> Point
    origin_radius(p) -> float
    buffer(geom, radius, quad_segs=16) -> MultiPolygon
    closing(geom, radius, quad_segs=16) -> MultiPolygon
    douglas_peucker(ls, eps) -> LineString
    simplify_polygon(p, eps) -> MultiPolygon
    shortest_line(pt, seg) -> Optional[Segment]
    point_segment_distance(pts, segs) -> np.ndarray
    segments_cross(s1, s2) -> bool
    segments_intersect(s1, s2) -> bool
    convex_hull(segs) -> PolygonWithHoles
    contains(outer, seg, samples=8) -> bool
    angle_between(s1, s2) -> float

Classes:
    SegmentContainment: Reusable containment oracle for one MultiPolygon.
"""

import math
from typing import List, Optional, Sequence, Union

import numpy as np
import shapely
from shapely.geometry import MultiPoint
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.ops import unary_union

from planrag.exceptions import GeometryError
from planrag.geometry.primitives import (
    Geometry,
    LineString,
    MultiPolygon,
    Point,
    PolygonWithHoles,
    Segment,
    multipolygon_from_shapely,
    ring_signed_area,
    to_shapely,
)

DISK_QUAD_SEGMENTS = 16

# relative tolerance of the orientation predicate used by the crossing tests
_ORIENT_EPS = 1e-9

# relative margin of the closing dilation; keeps corners inside under rounding
_CLOSING_SLACK = 1e-9


def area(p: PolygonWithHoles) -> float:
    """Shoelace area of the exterior minus the holes.

    Args:
        p: polygon.

    Returns:
        the enclosed area.

    Raises:
        GeometryError: if any ring has zero area.
    """
    total = 0.0
    for idx, ring in enumerate(p.rings):
        ring_area = abs(ring_signed_area(ring.coords()))
        if ring_area == 0:
            raise GeometryError("degenerate ring with zero area")
        total += ring_area if idx == 0 else -ring_area
    return total


def _ring_moments(coords: np.ndarray) -> np.ndarray:
    origin = coords[0]
    rel = coords - origin
    x0, y0, x1, y1 = rel[:-1, 0], rel[:-1, 1], rel[1:, 0], rel[1:, 1]
    cross = x0 * y1 - x1 * y0
    signed = np.sum(cross) / 2.0
    mx = np.sum((x0 + x1) * cross) / 6.0
    my = np.sum((y0 + y1) * cross) / 6.0
    # first moments about the global origin
    return np.array([signed, mx + origin[0] * signed, my + origin[1] * signed])


def centroid(p: PolygonWithHoles) -> Point:
    """Area-weighted centroid honoring holes.

    Raises:
        GeometryError: if the polygon has zero area.
    """
    totals = np.zeros(3)
    for idx, ring in enumerate(p.rings):
        moments = _ring_moments(ring.coords())
        # exterior counts positive, holes negative, whatever their stored orientation
        sign = 1.0 if (moments[0] > 0) == (idx == 0) else -1.0
        totals += sign * moments
    if totals[0] <= 0:
        raise GeometryError("centroid of a zero-area polygon")
    return Point(float(totals[1] / totals[0]), float(totals[2] / totals[0]))


def origin_radius(p: PolygonWithHoles) -> float:
    """Radius of the smallest origin-centered circle containing the polygon."""
    coords = p.exterior.coords()
    return float(np.max(np.hypot(coords[:, 0], coords[:, 1])))


def buffer(
    geom: Union[Geometry, MultiPolygon], radius: float, quad_segs: int = DISK_QUAD_SEGMENTS
) -> MultiPolygon:
    """Minkowski sum (radius > 0) or difference (radius < 0) with a disk.

    The disk is a regular polygon with ``quad_segs`` edges per quadrant.

    Args:
        geom: polygon or multipolygon.
        radius: signed disk radius.
        quad_segs: disk discretization.

    Returns:
        the buffered geometry, possibly empty.

    Raises:
        GeometryError: if radius is zero.
    """
    if radius == 0:
        raise GeometryError("buffer radius must be non-zero")
    if isinstance(geom, MultiPolygon) and geom.is_empty:
        return MultiPolygon()
    result = to_shapely(geom).buffer(radius, quad_segs=quad_segs)
    return multipolygon_from_shapely(result)


def closing(
    geom: Union[Geometry, MultiPolygon], radius: float, quad_segs: int = DISK_QUAD_SEGMENTS
) -> MultiPolygon:
    """Morphological closing: dilation then erosion by a disk of ``radius``.

    The dilation radius is raised until every chord of the rounded corners
    stays outside the circle of ``radius`` (a corner chord spans at most one
    and a half quantum of the disk), so the erosion never cuts a corner of
    ``geom`` and the result contains ``geom``.

    Raises:
        GeometryError: if radius is not positive.
    """
    if radius <= 0:
        raise GeometryError("closing radius must be positive")
    circumscribed = radius / math.cos(3.0 * math.pi / (8 * quad_segs))
    dilated = buffer(geom, circumscribed * (1.0 + _CLOSING_SLACK), quad_segs)
    return buffer(dilated, -radius, quad_segs)


def _perpendicular_distances(points: np.ndarray, start: np.ndarray, end: np.ndarray) -> np.ndarray:
    return point_segment_distance(points, np.concatenate([start, end])[None, :])[:, 0]


def _simplify_open(coords: np.ndarray, eps: float) -> np.ndarray:
    keep = np.zeros(len(coords), dtype=bool)
    keep[0] = keep[-1] = True
    stack = [(0, len(coords) - 1)]
    while stack:
        first, last = stack.pop()
        if last - first < 2:
            continue
        inner = coords[first + 1 : last]
        distances = _perpendicular_distances(inner, coords[first], coords[last])
        farthest = int(np.argmax(distances))
        if distances[farthest] > eps:
            split = first + 1 + farthest
            keep[split] = True
            stack.append((first, split))
            stack.append((split, last))
    return coords[keep]


def douglas_peucker(ls: LineString, eps: float) -> LineString:
    """Douglas-Peucker simplification.

    Closed rings are split at two extreme vertices (the lexicographically
    smallest vertex and the vertex farthest from it), both halves are
    simplified independently and joined again. A ring that would collapse
    below three distinct vertices is returned unchanged.

    Args:
        ls: linestring or closed ring.
        eps: tolerance, >= 0. Zero returns the input unchanged.

    Returns:
        the simplified linestring.

    Raises:
        GeometryError: if eps is negative.
    """
    if eps < 0:
        raise GeometryError("douglas_peucker tolerance must be >= 0")
    if eps == 0 or len(ls) <= 2:
        return ls

    coords = ls.coords()
    if not ls.closed:
        return LineString.from_coords(_simplify_open(coords, eps))

    ring = coords[:-1]
    first = int(np.lexsort((ring[:, 1], ring[:, 0]))[0])
    ring = np.roll(ring, -first, axis=0)
    second = int(np.argmax(np.hypot(ring[:, 0] - ring[0, 0], ring[:, 1] - ring[0, 1])))
    if second == 0:
        return ls
    head = _simplify_open(ring[: second + 1], eps)
    tail = _simplify_open(np.vstack([ring[second:], ring[:1]]), eps)
    simplified = np.vstack([head, tail[1:]])
    if len(simplified) < 4:
        return ls
    return LineString.from_coords(simplified)


def simplify_polygon(p: PolygonWithHoles, eps: float) -> MultiPolygon:
    """Douglas-Peucker every ring of a polygon and repair the result.

    Rings that collapse are dropped; the repaired geometry may split into
    several polygons.
    """
    if eps == 0:
        return MultiPolygon((p,))
    exterior = douglas_peucker(p.exterior, eps).coords()
    holes = [douglas_peucker(hole, eps).coords() for hole in p.interiors]
    shp = ShapelyPolygon(exterior, [h for h in holes if len(h) >= 4])
    if not shp.is_valid:
        shp = shapely.make_valid(shp)
    return multipolygon_from_shapely(shp, min_area=1e-9)


def point_segment_distance(points: np.ndarray, segments: np.ndarray) -> np.ndarray:
    """Pairwise point-to-segment distances.

    Args:
        points: (P, 2) array.
        segments: (S, 4) array of x0, y0, x1, y1.

    Returns:
        (P, S) distance matrix.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    segments = np.asarray(segments, dtype=float).reshape(-1, 4)
    a = segments[None, :, 0:2]
    d = segments[None, :, 2:4] - a
    rel = points[:, None, :] - a
    length2 = np.sum(d * d, axis=2)
    safe = np.where(length2 > 0, length2, 1.0)
    t = np.clip(np.sum(rel * d, axis=2) / safe, 0.0, 1.0)
    t = np.where(length2 > 0, t, 0.0)
    foot = a + t[..., None] * d
    return np.hypot(points[:, None, 0] - foot[..., 0], points[:, None, 1] - foot[..., 1])


def shortest_line(pt: Point, seg: Segment) -> Optional[Segment]:
    """Segment from ``pt`` to its nearest point on ``seg``.

    Returns:
        the connecting segment, or None when ``pt`` lies on ``seg`` (the
        zero-length case).
    """
    ax, ay, bx, by = seg.a.x, seg.a.y, seg.b.x, seg.b.y
    dx, dy = bx - ax, by - ay
    t = ((pt.x - ax) * dx + (pt.y - ay) * dy) / (dx * dx + dy * dy)
    t = min(1.0, max(0.0, t))
    foot = Point(ax + t * dx, ay + t * dy)
    if pt.distance(foot) < 1e-12:
        return None
    return Segment(pt, foot)


def _orientation(  # pylint: disable=too-many-arguments
    ax: np.ndarray, ay: np.ndarray, bx: np.ndarray, by: np.ndarray, cx: np.ndarray, cy: np.ndarray
) -> np.ndarray:
    value = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    scale = (np.abs(bx - ax) + np.abs(by - ay)) * (np.abs(cx - ax) + np.abs(cy - ay))
    return np.where(np.abs(value) <= _ORIENT_EPS * np.maximum(scale, 1e-300), 0.0, np.sign(value))


def cross_matrix(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Pairwise proper-crossing test between two segment arrays.

    Args:
        first: (N, 4) segments.
        second: (M, 4) segments.

    Returns:
        (N, M) boolean matrix; True where the pair crosses at an interior
        point of both segments.
    """
    s = np.asarray(first, dtype=float).reshape(-1, 4)[:, None, :]
    t = np.asarray(second, dtype=float).reshape(-1, 4)[None, :, :]
    o1 = _orientation(s[..., 0], s[..., 1], s[..., 2], s[..., 3], t[..., 0], t[..., 1])
    o2 = _orientation(s[..., 0], s[..., 1], s[..., 2], s[..., 3], t[..., 2], t[..., 3])
    o3 = _orientation(t[..., 0], t[..., 1], t[..., 2], t[..., 3], s[..., 0], s[..., 1])
    o4 = _orientation(t[..., 0], t[..., 1], t[..., 2], t[..., 3], s[..., 2], s[..., 3])
    return (o1 * o2 < 0) & (o3 * o4 < 0)


def segments_cross(s1: Segment, s2: Segment) -> bool:
    """True iff the segments cross at a point interior to both."""
    return bool(cross_matrix(s1.as_array(), s2.as_array())[0, 0])


def intersect_matrix(first: np.ndarray, second: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Pairwise closed intersection test (touching counts)."""
    first = np.asarray(first, dtype=float).reshape(-1, 4)
    second = np.asarray(second, dtype=float).reshape(-1, 4)
    result = cross_matrix(first, second)
    # touching: an endpoint of one segment lies on the other
    ends_first = np.concatenate([first[:, 0:2], first[:, 2:4]])
    ends_second = np.concatenate([second[:, 0:2], second[:, 2:4]])
    touch_a = point_segment_distance(ends_first, second) <= tol
    touch_b = point_segment_distance(ends_second, first) <= tol
    n, m = len(first), len(second)
    result |= touch_a[:n] | touch_a[n:]
    result |= (touch_b[:m] | touch_b[m:]).T
    return result


def segments_intersect(s1: Segment, s2: Segment) -> bool:
    """True iff the closed segments share at least one point."""
    return bool(intersect_matrix(s1.as_array(), s2.as_array())[0, 0])


def convex_hull(segs: Sequence[Segment]) -> PolygonWithHoles:
    """Convex hull of all segment endpoints.

    Raises:
        GeometryError: if the endpoints are collinear or too few.
    """
    coords = [p.as_tuple() for seg in segs for p in (seg.a, seg.b)]
    hull = MultiPoint(coords).convex_hull if coords else None
    if hull is None or not isinstance(hull, ShapelyPolygon) or hull.area <= 0:
        raise GeometryError("convex hull of collinear endpoints")
    return PolygonWithHoles.from_coords(list(hull.exterior.coords))


class SegmentContainment:
    """Containment oracle for segments against a fixed MultiPolygon.

    A segment is contained when ``samples`` evenly spaced points on it lie
    in the closed region and it properly crosses no ring edge.

    Args:
        outer: the containing region.
        samples: number of sample points per segment.
        tol: distance tolerance for boundary contact.
    """

    def __init__(self, outer: MultiPolygon, samples: int = 8, tol: float = 1e-7):
        self._samples = max(samples, 1)
        self._tol = tol
        self._shape = to_shapely(outer) if not outer.is_empty else None
        if self._shape is not None:
            shapely.prepare(self._shape)
        edges: List[np.ndarray] = []
        for polygon in outer.polygons:
            for ring in polygon.rings:
                coords = ring.coords()
                edges.append(np.hstack([coords[:-1], coords[1:]]))
        self._edges = np.vstack(edges) if edges else np.zeros((0, 4))

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    def contains(self, seg: Segment) -> bool:
        if self._shape is None:
            return False
        ts = (np.arange(self._samples) + 0.5) / self._samples
        xs = seg.a.x + ts * (seg.b.x - seg.a.x)
        ys = seg.a.y + ts * (seg.b.y - seg.a.y)
        inside = shapely.intersects_xy(self._shape, xs, ys)
        if not np.all(inside):
            outside = ~inside
            points = shapely.points(xs[outside], ys[outside])
            if np.any(shapely.distance(self._shape, points) > self._tol):
                return False
        return not bool(np.any(cross_matrix(seg.as_array(), self._edges)))


def contains(outer: MultiPolygon, seg: Segment, samples: int = 8) -> bool:
    """True iff ``seg`` lies within the closed region ``outer``."""
    return SegmentContainment(outer, samples).contains(seg)


def angle_between(s1: Segment, s2: Segment) -> float:
    """Acute angle in degrees between the carrier lines of two segments."""
    d1 = (s1.b.x - s1.a.x, s1.b.y - s1.a.y)
    d2 = (s2.b.x - s2.a.x, s2.b.y - s2.a.y)
    cos = abs(d1[0] * d2[0] + d1[1] * d2[1]) / (math.hypot(*d1) * math.hypot(*d2))
    return math.degrees(math.acos(min(1.0, cos)))


def union(geoms: Sequence[Geometry]) -> MultiPolygon:
    """Union of polygons and multipolygons."""
    shapes = [to_shapely(g) for g in geoms if not (isinstance(g, MultiPolygon) and g.is_empty)]
    if not shapes:
        return MultiPolygon()
    return multipolygon_from_shapely(unary_union(shapes))

"""Immutable 2D primitives used across planrag.

All coordinates are pixel units of the source raster with the pixel-corner
convention: pixel (row i, column j) covers [j, j + 1] x [i, i + 1].

Classes:
    Point: A point with finite coordinates.
    Segment: A non-degenerate line segment.
    LineString: Ordered points, closed iff first == last.
    PolygonWithHoles: Counter-clockwise exterior ring and clockwise holes.
    MultiPolygon: Interior-disjoint collection of PolygonWithHoles.

Functions:
    to_shapely(geom) -> shapely geometry
    polygon_from_shapely(geom) -> PolygonWithHoles
    multipolygon_from_shapely(geom) -> MultiPolygon
"""

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np
from shapely.validation import explain_validity
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.geometry import MultiPolygon as ShapelyMultiPolygon
from shapely.geometry.base import BaseGeometry

from planrag.exceptions import GeometryError


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"non-finite point ({self.x}, {self.y})")

    def distance(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Segment:
    """Line segment between two distinct points."""

    a: Point
    b: Point

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise GeometryError(f"zero-length segment at {self.a.as_tuple()}")

    @property
    def length(self) -> float:
        return self.a.distance(self.b)

    @property
    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2, (self.a.y + self.b.y) / 2)

    def as_array(self) -> np.ndarray:
        return np.array([self.a.x, self.a.y, self.b.x, self.b.y], dtype=float)

    def point_at(self, t: float) -> Point:
        return Point(self.a.x + t * (self.b.x - self.a.x), self.a.y + t * (self.b.y - self.a.y))


@dataclass(frozen=True)
class LineString:
    points: Tuple[Point, ...]

    def __post_init__(self) -> None:
        if len(self.points) < 2:
            raise GeometryError("a linestring needs at least two points")
        for first, second in zip(self.points, self.points[1:]):
            if first == second:
                raise GeometryError(f"repeated consecutive point {first.as_tuple()}")

    @staticmethod
    def from_coords(coords: Iterable[Sequence[float]]) -> "LineString":
        """Build a linestring, silently dropping consecutive duplicates.

        Args:
            coords: (x, y) pairs.

        Returns:
            the linestring.
        """
        points: List[Point] = []
        for x, y in coords:
            point = Point(float(x), float(y))
            if not points or points[-1] != point:
                points.append(point)
        return LineString(tuple(points))

    @property
    def closed(self) -> bool:
        return len(self.points) >= 3 and self.points[0] == self.points[-1]

    @property
    def segments(self) -> List[Segment]:
        return [Segment(a, b) for a, b in zip(self.points, self.points[1:])]

    def coords(self) -> np.ndarray:
        return np.array([p.as_tuple() for p in self.points], dtype=float)

    def __len__(self) -> int:
        return len(self.points)


def ring_signed_area(coords: np.ndarray) -> float:
    """Shoelace signed area of a closed ring, positive when counter-clockwise.

    Coordinates are taken relative to the first vertex to limit cancellation.
    """
    rel = coords - coords[0]
    x, y = rel[:, 0], rel[:, 1]
    return float(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]) / 2.0)


def _oriented_ring(coords: Sequence[Sequence[float]], ccw: bool) -> LineString:
    array = np.asarray(coords, dtype=float)
    if len(array) == 0:
        raise GeometryError("empty ring")
    if not np.array_equal(array[0], array[-1]):
        array = np.vstack([array, array[:1]])
    ring = LineString.from_coords(array)
    if not ring.closed or len(ring) < 4:
        raise GeometryError("a ring needs at least three distinct vertices")
    if (ring_signed_area(ring.coords()) > 0) != ccw:
        ring = LineString(tuple(reversed(ring.points)))
    return ring


@dataclass(frozen=True)
class PolygonWithHoles:
    """Polygon with a counter-clockwise exterior and clockwise interiors.

    Use ``from_coords`` to build one from raw coordinates; it closes and
    orients the rings.
    """

    exterior: LineString
    interiors: Tuple[LineString, ...] = ()

    def __post_init__(self) -> None:
        if not self.exterior.closed:
            raise GeometryError("exterior ring is not closed")
        for hole in self.interiors:
            if not hole.closed:
                raise GeometryError("interior ring is not closed")

    @staticmethod
    def from_coords(
        exterior: Sequence[Sequence[float]],
        interiors: Sequence[Sequence[Sequence[float]]] = (),
    ) -> "PolygonWithHoles":
        return PolygonWithHoles(
            _oriented_ring(exterior, ccw=True),
            tuple(_oriented_ring(hole, ccw=False) for hole in interiors),
        )

    @property
    def rings(self) -> List[LineString]:
        return [self.exterior, *self.interiors]

    def validate(self) -> None:
        """Check simplicity and positive area.

        Raises:
            GeometryError: if the polygon is not valid.
        """
        shp = to_shapely(self)
        if not shp.is_valid:
            raise GeometryError(f"invalid polygon: {explain_validity(shp)}")
        if shp.area <= 0:
            raise GeometryError("polygon area is zero")


@dataclass(frozen=True)
class MultiPolygon:
    polygons: Tuple[PolygonWithHoles, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.polygons

    def __len__(self) -> int:
        return len(self.polygons)

    def __iter__(self) -> Iterator[PolygonWithHoles]:
        return iter(self.polygons)


Geometry = Union[PolygonWithHoles, MultiPolygon]


def to_shapely(geom: Geometry) -> BaseGeometry:
    """Convert a planrag polygon or multipolygon to its shapely counterpart."""
    if isinstance(geom, PolygonWithHoles):
        return ShapelyPolygon(
            geom.exterior.coords(), [hole.coords() for hole in geom.interiors]
        )
    if isinstance(geom, MultiPolygon):
        return ShapelyMultiPolygon([to_shapely(p) for p in geom.polygons])
    raise GeometryError(f"cannot convert {type(geom).__name__}")


def _shapely_polygons(geom: BaseGeometry) -> List[ShapelyPolygon]:
    if geom.is_empty:
        return []
    if isinstance(geom, ShapelyPolygon):
        return [geom]
    if hasattr(geom, "geoms"):
        polygons: List[ShapelyPolygon] = []
        for part in geom.geoms:
            polygons += _shapely_polygons(part)
        return polygons
    return []


def polygon_from_shapely(geom: ShapelyPolygon) -> PolygonWithHoles:
    """Convert a shapely polygon, dropping zero-area holes."""
    interiors = [
        hole.coords for hole in geom.interiors if ShapelyPolygon(hole).area > 0
    ]
    return PolygonWithHoles.from_coords(list(geom.exterior.coords), [list(h) for h in interiors])


def multipolygon_from_shapely(geom: BaseGeometry, min_area: float = 0.0) -> MultiPolygon:
    """Collect the polygonal parts of any shapely geometry.

    Args:
        geom: shapely geometry, possibly a collection or empty.
        min_area: parts with area not above this value are dropped.

    Returns:
        MultiPolygon of the polygonal parts, in shapely's order.
    """
    parts = [p for p in _shapely_polygons(geom) if p.area > min_area]
    return MultiPolygon(tuple(polygon_from_shapely(p) for p in parts))


def largest_polygon(geom: BaseGeometry) -> PolygonWithHoles:
    """Return the largest polygonal part of a shapely geometry.

    Raises:
        GeometryError: if the geometry has no polygonal part.
    """
    parts = [p for p in _shapely_polygons(geom) if p.area > 0]
    if not parts:
        raise GeometryError("geometry has no polygonal part")
    return polygon_from_shapely(max(parts, key=lambda p: p.area))

"""Convex wall segments from the wall polygon and its separation lines.

Every iteration picks an interior point of the remaining wall, gathers the
boundary pieces and separation lines visible from it, takes their convex
hull clipped to the remaining wall, and subtracts it. The loop ends when
less than one square pixel is left.

Classes:
    WallSegment: A piece of the wall and the rooms it belongs to.

Functions:
    construct_polygons(wall, lines, eps) -> List[WallSegment]
    is_convex(polygon) -> bool
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import shapely
from shapely.geometry import MultiLineString, MultiPoint
from shapely.geometry import Point as ShapelyPoint
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.geometry.base import BaseGeometry
from shapely.ops import polylabel

from planrag.geometry.operations import cross_matrix, intersect_matrix, point_segment_distance
from planrag.geometry.primitives import (
    MultiPolygon,
    PolygonWithHoles,
    polygon_from_shapely,
    to_shapely,
)
from planrag.geometry.serialization import polygon_from_json, polygon_to_json
from planrag.postprocess.separation import SeparationLine

logger_postprocess = logging.getLogger("Postprocess")

MIN_REMAINING_AREA = 1.0
# hull area that clipping may remove before a segment is flagged
CLIP_TOLERANCE = 0.01
_SLIVER_AREA = 1e-6


@dataclass(frozen=True)
class WallSegment:
    """A piece of the wall.

    Attributes:
        polygon: the segment, convex unless ``fallback`` is set.
        hull: convex hull the segment was clipped from.
        clipped: the hull reached outside the remaining wall by more than 1%.
        fallback: the piece is not convex, or the remaining area could not be partitioned
            further.
        room_ids: rooms (or the outer space) the segment borders.
    """

    polygon: PolygonWithHoles
    hull: Optional[PolygonWithHoles] = None
    clipped: bool = False
    fallback: bool = False
    room_ids: Tuple[int, ...] = ()

    def to_json(self) -> Dict[str, Any]:
        return {
            "polygon": polygon_to_json(self.polygon),
            "hull": polygon_to_json(self.hull) if self.hull is not None else None,
            "clipped": self.clipped,
            "fallback": self.fallback,
            "room_ids": list(self.room_ids),
        }

    @staticmethod
    def from_json(data: Dict[str, Any]) -> "WallSegment":
        hull = data.get("hull")
        return WallSegment(
            polygon_from_json(data["polygon"]),
            polygon_from_json(hull) if hull is not None else None,
            bool(data.get("clipped", False)),
            bool(data.get("fallback", False)),
            tuple(int(i) for i in data.get("room_ids", [])),
        )


def is_convex(polygon: PolygonWithHoles, tol: float = 1e-6) -> bool:
    return _convex(to_shapely(polygon), tol)


def _convex(shape: ShapelyPolygon, tol: float = 1e-6) -> bool:
    if shape.interiors:
        return False
    return bool(shape.convex_hull.area - shape.area <= tol * max(shape.area, 1.0))


def _polygons(geom: BaseGeometry) -> List[ShapelyPolygon]:
    parts = [p for p in shapely.get_parts(geom) if isinstance(p, ShapelyPolygon)]
    return [p for p in parts if p.area > _SLIVER_AREA]


def _segments(linework: BaseGeometry) -> np.ndarray:
    rows = []
    for part in shapely.get_parts(linework):
        if part.geom_type not in ("LineString", "LinearRing"):
            continue
        coords = np.asarray(part.coords)
        if len(coords) >= 2:
            rows.append(np.hstack([coords[:-1], coords[1:]]))
    if not rows:
        return np.zeros((0, 4))
    segments = np.vstack(rows)
    lengths = np.hypot(segments[:, 2] - segments[:, 0], segments[:, 3] - segments[:, 1])
    return segments[lengths > 1e-9]


def _feet(point: np.ndarray, segments: np.ndarray) -> np.ndarray:
    a = segments[:, 0:2]
    d = segments[:, 2:4] - a
    length2 = np.sum(d * d, axis=1)
    t = np.clip(np.sum((point - a) * d, axis=1) / np.where(length2 > 0, length2, 1.0), 0, 1)
    return a + t[:, None] * d


def _linework(remaining: BaseGeometry, separators: Optional[BaseGeometry]) -> BaseGeometry:
    parts = [remaining.boundary]
    if separators is not None:
        parts.append(separators.intersection(remaining))
    return shapely.unary_union(parts)


def _interior_point(
    remaining: BaseGeometry, linework: BaseGeometry, pieces: np.ndarray, eps: float
) -> Optional[Tuple[np.ndarray, ShapelyPolygon]]:
    faces = _polygons(shapely.polygonize(list(shapely.get_parts(linework))))
    faces = [f for f in faces if remaining.contains(f.representative_point())]
    faces.sort(key=lambda f: (-f.area, f.bounds))
    for face in faces:
        candidate = polylabel(face, tolerance=max(eps / 10, 1e-3))
        point = np.array([candidate.x, candidate.y])
        if point_segment_distance(point, pieces).min() > eps:
            return point, face
    return None


def _visible_lines(point: np.ndarray, pieces: np.ndarray) -> np.ndarray:
    """Pieces added by ascending distance while their connection to ``point`` stays free."""
    order = np.argsort(point_segment_distance(point, pieces)[0], kind="stable")
    feet = _feet(point, pieces)
    added: List[int] = []
    for idx in order:
        connection = np.concatenate([point, feet[idx]])
        if added and intersect_matrix(connection, pieces[added]).any():
            continue
        added.append(int(idx))
    lines = pieces[added]
    # a line whose midpoint is hidden behind another added line is dropped
    middles = (lines[:, 0:2] + lines[:, 2:4]) / 2
    sight = np.hstack([np.broadcast_to(point, middles.shape), middles])
    hidden = cross_matrix(sight, lines)
    np.fill_diagonal(hidden, False)
    return lines[~hidden.any(axis=1)]


def _piece(
    point: np.ndarray, lines: np.ndarray, face: ShapelyPolygon, remaining: BaseGeometry
) -> Tuple[ShapelyPolygon, Optional[ShapelyPolygon], bool]:
    """The clipped hull piece containing ``point``, falling back to its polygonized face."""
    hull = None
    if len(lines):
        hull = MultiPoint(np.vstack([lines[:, 0:2], lines[:, 2:4]])).convex_hull
    if not isinstance(hull, ShapelyPolygon) or hull.area <= 0:
        return face, None, False
    parts = _polygons(hull.intersection(remaining))
    inside = [p for p in parts if p.distance(ShapelyPoint(point)) <= 1e-9]
    chosen = inside[0] if inside else (max(parts, key=lambda p: p.area) if parts else None)
    if chosen is None or chosen.area < MIN_REMAINING_AREA:
        return face, hull, False
    return chosen, hull, hull.area - chosen.area > CLIP_TOLERANCE * hull.area


def construct_polygons(  # pylint: disable=too-many-locals
    wall: MultiPolygon, lines: Sequence[SeparationLine], eps: float = 0.5
) -> List[WallSegment]:
    """Partition the wall polygon into convex segments.

    Args:
        wall: the merged wall polygon.
        lines: non-crossing separation lines.
        eps: minimal distance of the interior point to every line.

    Returns:
        the segments in construction order.
    """
    if wall.is_empty:
        return []
    remaining = shapely.simplify(to_shapely(wall), 0)
    if not remaining.is_valid:
        remaining = shapely.make_valid(remaining)
    separators = None
    if lines:
        separators = MultiLineString([line.segment.as_array().reshape(2, 2) for line in lines])

    segments: List[WallSegment] = []
    limit = 4 * (len(_segments(remaining.boundary)) + len(lines)) + 16
    for _ in range(limit):
        if remaining.is_empty or remaining.area < MIN_REMAINING_AREA:
            break
        linework = _linework(remaining, separators)
        pieces = _segments(linework)
        found = _interior_point(remaining, linework, pieces, eps)
        if found is None:
            break
        point, face = found
        piece, hull, clipped = _piece(point, _visible_lines(point, pieces), face, remaining)
        piece = shapely.simplify(piece, 0)
        # a face or clipped hull taken from a concave remainder is not guaranteed convex
        fallback = not _convex(piece)
        if fallback:
            logger_postprocess.debug(f"non-convex wall piece of {piece.area:.1f} px² flagged")
        segments.append(
            WallSegment(
                polygon_from_shapely(piece),
                polygon_from_shapely(hull) if hull is not None else None,
                clipped,
                fallback,
            )
        )
        remaining = shapely.simplify(remaining.difference(piece), 0)
        remaining = shapely.unary_union(_polygons(remaining))

    if not remaining.is_empty and remaining.area >= MIN_REMAINING_AREA:
        logger_postprocess.warning(
            f"{remaining.area:.1f} px² of wall left unpartitioned, kept as fallback segments"
        )
        for part in _polygons(remaining):
            segments.append(WallSegment(polygon_from_shapely(part), fallback=True))
    logger_postprocess.debug(f"{len(segments)} wall segments")
    return segments

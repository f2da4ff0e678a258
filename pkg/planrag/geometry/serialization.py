"""JSON encoding of geometric values.

Polygons are stored as ``{"exterior": [[x, y], ...], "interiors": [[[x, y], ...], ...]}``
with closed rings; segments as ``[x0, y0, x1, y1]``.
"""

from typing import Any, Dict, List

from planrag.exceptions import InputError
from planrag.geometry.primitives import MultiPolygon, Point, PolygonWithHoles, Segment


def _ring_to_json(coords: Any) -> List[List[float]]:
    return [[float(x), float(y)] for x, y in coords]


def polygon_to_json(p: PolygonWithHoles) -> Dict[str, Any]:
    return {
        "exterior": _ring_to_json(p.exterior.coords()),
        "interiors": [_ring_to_json(hole.coords()) for hole in p.interiors],
    }


def polygon_from_json(data: Any) -> PolygonWithHoles:
    """Decode a polygon.

    Raises:
        InputError: if the object is not a polygon encoding.
    """
    try:
        return PolygonWithHoles.from_coords(data["exterior"], data.get("interiors", []))
    except (KeyError, TypeError, ValueError, AttributeError) as err:
        raise InputError(f"malformed polygon: {err}") from err


def multipolygon_to_json(m: MultiPolygon) -> List[Dict[str, Any]]:
    return [polygon_to_json(p) for p in m.polygons]


def multipolygon_from_json(data: Any) -> MultiPolygon:
    if not isinstance(data, list):
        raise InputError("malformed multipolygon: expected a list")
    return MultiPolygon(tuple(polygon_from_json(p) for p in data))


def segment_to_json(s: Segment) -> List[float]:
    return [s.a.x, s.a.y, s.b.x, s.b.y]


def segment_from_json(data: Any) -> Segment:
    try:
        x0, y0, x1, y1 = (float(v) for v in data)
    except (TypeError, ValueError) as err:
        raise InputError(f"malformed segment: {err}") from err
    return Segment(Point(x0, y0), Point(x1, y1))

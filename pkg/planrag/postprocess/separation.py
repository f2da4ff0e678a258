"""Separation lines across the wall thickness.

For every ring vertex of the wall polygon the shortest connections to all
ring edges are candidates. A candidate must lie inside the wall, run
(almost) orthogonal to the edge it ends on or to one of the two edges
meeting at the vertex, and must not run along the boundary. The shortest
candidate of a vertex is kept, together with the next one whose direction
differs by more than ``angle_min``. Of two crossing lines the longer one
is removed.

Classes:
    LineKind: best or second best line of a vertex.
    SeparationLine: A separation line and the vertex it starts at.

Functions:
    separation_lines(wall, cfg) -> List[SeparationLine]
    remove_crossing_lines(lines) -> List[SeparationLine]
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import shapely

from planrag.geometry.operations import SegmentContainment, angle_between, cross_matrix
from planrag.geometry.primitives import MultiPolygon, Point, Segment, to_shapely
from planrag.geometry.serialization import segment_from_json, segment_to_json
from planrag.utils.comparable_enum import ComparableEnum
from planrag.utils.pipeline_config import PipelineConfig

logger_postprocess = logging.getLogger("Postprocess")

# candidates shorter than this are the vertex lying on the tested edge
_MIN_LENGTH = 1e-9
# midpoints closer than this to the ring run along the boundary
_BOUNDARY_TOL = 1e-6


class LineKind(ComparableEnum):
    best = 0
    second_best = 1


@dataclass(frozen=True)
class SeparationLine:
    segment: Segment
    origin: Point
    kind: LineKind

    def to_json(self) -> Dict[str, Any]:
        return {
            "segment": segment_to_json(self.segment),
            "origin": [self.origin.x, self.origin.y],
            "kind": self.kind.name,
        }

    @staticmethod
    def from_json(data: Dict[str, Any]) -> "SeparationLine":
        ox, oy = data["origin"]
        return SeparationLine(
            segment_from_json(data["segment"]),
            Point(float(ox), float(oy)),
            LineKind.from_name(data["kind"]),
        )


@dataclass
class _Rings:
    vertices: np.ndarray  # (V, 2)
    edges: np.ndarray  # (E, 4)
    adjacent: np.ndarray  # (V, 2) indices into edges: incoming, outgoing


def _collect_rings(wall: MultiPolygon) -> _Rings:
    vertices: List[np.ndarray] = []
    edges: List[np.ndarray] = []
    adjacent: List[np.ndarray] = []
    offset = 0
    for polygon in wall:
        for ring in polygon.rings:
            coords = ring.coords()[:-1]
            count = len(coords)
            vertices.append(coords)
            edges.append(np.hstack([coords, np.roll(coords, -1, axis=0)]))
            outgoing = offset + np.arange(count)
            incoming = offset + (np.arange(count) - 1) % count
            adjacent.append(np.stack([incoming, outgoing], axis=1))
            offset += count
    if not vertices:
        return _Rings(np.zeros((0, 2)), np.zeros((0, 4)), np.zeros((0, 2), dtype=int))
    return _Rings(np.vstack(vertices), np.vstack(edges), np.vstack(adjacent))


def _directions(segments: np.ndarray) -> np.ndarray:
    d = segments[..., 2:4] - segments[..., 0:2]
    norm = np.linalg.norm(d, axis=-1, keepdims=True)
    return d / np.where(norm > 0, norm, 1.0)


def _candidates(rings: _Rings, ortho_tol: float) -> Tuple[np.ndarray, np.ndarray]:
    """Shortest connections from every vertex to every edge.

    Returns:
        (V, E, 4) candidate segments and the (V, E) mask of candidates that
        pass the length and orthogonality filters.
    """
    points = rings.vertices[:, None, :]
    a = rings.edges[None, :, 0:2]
    d = rings.edges[None, :, 2:4] - a
    length2 = np.sum(d * d, axis=2)
    safe = np.where(length2 > 0, length2, 1.0)
    t = np.clip(np.sum((points - a) * d, axis=2) / safe, 0.0, 1.0)
    foot = a + t[..., None] * d
    segments = np.concatenate([np.broadcast_to(points, foot.shape), foot], axis=2)
    lengths = np.linalg.norm(foot - points, axis=2)

    # |cos| below sin(ortho_tol) means within ortho_tol of a right angle
    limit = np.sin(np.radians(ortho_tol))
    direction = _directions(segments)
    edge_dir = _directions(rings.edges)
    to_edge = np.abs(np.einsum("vek,ek->ve", direction, edge_dir)) <= limit
    incoming = edge_dir[rings.adjacent[:, 0]][:, None, :]
    outgoing = edge_dir[rings.adjacent[:, 1]][:, None, :]
    to_incoming = np.abs(np.sum(direction * incoming, axis=2)) <= limit
    to_outgoing = np.abs(np.sum(direction * outgoing, axis=2)) <= limit

    mask = (lengths > _MIN_LENGTH) & (to_edge | to_incoming | to_outgoing)
    return segments, mask


def remove_crossing_lines(lines: List[SeparationLine]) -> List[SeparationLine]:
    """Drop the longer line of every properly crossing pair.

    Lines are visited longest first; a line is dropped when it still
    crosses a kept line. Input order is preserved in the output.
    """
    if len(lines) < 2:
        return list(lines)
    segments = np.vstack([line.segment.as_array() for line in lines])
    crossing = cross_matrix(segments, segments)
    lengths = np.array([line.segment.length for line in lines])
    alive = np.ones(len(lines), dtype=bool)
    for idx in sorted(range(len(lines)), key=lambda i: (-lengths[i], i)):
        if np.any(crossing[idx] & alive):
            alive[idx] = False
    return [line for line, keep in zip(lines, alive) if keep]


def _same_segment(first: Segment, second: Segment) -> bool:
    a, b = first.as_array(), second.as_array()
    return bool(np.allclose(a, b, atol=1e-9) or np.allclose(a, b[[2, 3, 0, 1]], atol=1e-9))


def separation_lines(
    wall: MultiPolygon, cfg: Optional[PipelineConfig] = None
) -> List[SeparationLine]:
    """Separation lines of a wall polygon.

    Args:
        wall: the merged wall polygon.
        cfg: supplies ``angle_min``, ``ortho_tol`` and ``contains_samples``.

    Returns:
        non-crossing lines in vertex order, best line first per vertex.
    """
    cfg = cfg or PipelineConfig()
    if wall.is_empty:
        return []
    rings = _collect_rings(wall)
    segments, mask = _candidates(rings, cfg.ortho_tol)
    lengths = np.linalg.norm(segments[..., 2:4] - segments[..., 0:2], axis=2)
    oracle = SegmentContainment(wall, cfg.contains_samples)
    boundary = to_shapely(wall).boundary
    shapely.prepare(boundary)

    def admissible(seg: Segment) -> bool:
        middle = seg.midpoint
        if shapely.distance(boundary, shapely.points(middle.x, middle.y)) <= _BOUNDARY_TOL:
            return False
        return oracle.contains(seg)

    lines: List[SeparationLine] = []
    for vertex in range(len(rings.vertices)):
        order = [e for e in np.argsort(lengths[vertex], kind="stable") if mask[vertex, e]]
        origin = Point(*rings.vertices[vertex])
        best: Optional[Segment] = None
        for edge in order:
            x0, y0, x1, y1 = segments[vertex, edge]
            seg = Segment(Point(x0, y0), Point(x1, y1))
            if best is not None and angle_between(seg, best) <= cfg.angle_min:
                continue
            if not admissible(seg):
                continue
            if best is None:
                best = seg
                lines.append(SeparationLine(seg, origin, LineKind.best))
            else:
                lines.append(SeparationLine(seg, origin, LineKind.second_best))
                break

    unique: List[SeparationLine] = []
    for line in lines:
        if not any(_same_segment(line.segment, kept.segment) for kept in unique):
            unique.append(line)
    result = remove_crossing_lines(unique)
    logger_postprocess.debug(
        f"{len(lines)} separation lines, {len(unique)} unique, {len(result)} without crossings"
    )
    return result

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from planrag.features.zernike import ZernikeFeatures, zernike_indices
from planrag.geometry.operations import area, centroid
from planrag.geometry.primitives import MultiPolygon, Point, PolygonWithHoles, Segment
from planrag.rag.labels import ClassLabel
from planrag.rag.region_graph import Edge, FeatureVector, Node, Region, RegionGraph
from planrag.raster.rasters import BinaryRaster, GrayRaster


def seg(x0: float, y0: float, x1: float, y1: float) -> Segment:
    return Segment(Point(float(x0), float(y0)), Point(float(x1), float(y1)))


def square(x: float, y: float, side: float) -> PolygonWithHoles:
    return rect(x, y, x + side, y + side)


def rect(x0: float, y0: float, x1: float, y1: float) -> PolygonWithHoles:
    return PolygonWithHoles.from_coords([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])


def picture_frame(outer: float = 40.0, thickness: float = 4.0) -> MultiPolygon:
    """Square ring wall: outer side ``outer``, walls ``thickness`` wide."""
    inner = [
        (thickness, thickness),
        (outer - thickness, thickness),
        (outer - thickness, outer - thickness),
        (thickness, outer - thickness),
    ]
    return MultiPolygon(
        (PolygonWithHoles.from_coords([(0, 0), (outer, 0), (outer, outer), (0, outer)], [inner]),)
    )


def binary_from_rows(rows: Sequence[str]) -> BinaryRaster:
    """Raster from strings, ``#`` marks foreground."""
    return BinaryRaster(np.array([[c == "#" for c in row] for row in rows], dtype=bool))


def filled_binary(
    width: int, height: int, boxes: Iterable[Tuple[int, int, int, int]]
) -> BinaryRaster:
    """Raster with the half-open boxes (x0, y0, x1, y1) set."""
    bits = np.zeros((height, width), dtype=bool)
    for x0, y0, x1, y1 in boxes:
        bits[y0:y1, x0:x1] = True
    return BinaryRaster(bits)


def hollow_square_gray(size: int = 60, margin: int = 10, wall: int = 4) -> GrayRaster:
    """White canvas with one black square wall ring."""
    pixels = np.full((size, size), 255, dtype=np.uint8)
    pixels[margin : size - margin, margin : size - margin] = 0
    inner = margin + wall
    pixels[inner : size - inner, inner : size - inner] = 255
    return GrayRaster(pixels)


def random_star(
    rng: np.random.Generator, vertices: int = 12, scale: float = 10.0
) -> PolygonWithHoles:
    """Simple polygon: sorted random angles with random radii around a random center."""
    angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, vertices))
    radii = rng.uniform(0.3, 1.0, vertices) * scale
    cx, cy = rng.uniform(-50.0, 50.0, 2)
    return PolygonWithHoles.from_coords(
        list(zip(cx + radii * np.cos(angles), cy + radii * np.sin(angles)))
    )


def make_graph(
    regions: Sequence[Tuple[int, PolygonWithHoles, Optional[ClassLabel]]],
    contacts: Sequence[Tuple[int, int, int]],
    outer: int = 1,
) -> RegionGraph:
    """Graph from hand-drawn regions; ``contacts`` holds (first, second, pixel contacts)."""
    zeros = ZernikeFeatures(tuple(0.0 for _ in zernike_indices(6)))
    degree = {idx: 0 for idx, _, _ in regions}
    for first, second, _ in contacts:
        degree[first] += 1
        degree[second] += 1
    nodes = []
    for idx, polygon, label in regions:
        region = Region(idx, polygon, centroid(polygon), area(polygon), idx == outer)
        nodes.append(Node(region, FeatureVector(degree[idx], region.area, zeros), label))
    edges = [Edge(min(a, b), max(a, b), 1.0, contact) for a, b, contact in contacts]
    return RegionGraph(nodes, edges)


def two_room_plan() -> RegionGraph:
    """Two rooms in a square wall.

    Room 3 opens onto the outer space through door 5/6 (6 is the swing)
    and onto room 4 through the embedded-only door 7. Room 4 holds
    object 8, room 3 the small fragment 11. Windows 9 and 12 form a chain
    from the wall.
    """
    regions = [
        (1, rect(-10, -10, 50, 0), ClassLabel.outer_space),
        (2, picture_frame().polygons[0], ClassLabel.wall),
        (3, rect(4, 4, 20, 36), ClassLabel.room),
        (4, rect(20, 4, 36, 36), ClassLabel.room),
        (5, rect(10, 0, 14, 4), ClassLabel.door),
        (6, rect(10, 4, 14, 10), ClassLabel.door),
        (7, rect(19, 18, 21, 22), ClassLabel.door),
        (8, rect(25, 25, 28, 28), ClassLabel.object),
        (9, rect(26, 0, 30, 4), ClassLabel.window),
        (10, rect(-10, -20, 50, -10), ClassLabel.porch),
        (11, rect(4, 30, 6, 32), ClassLabel.room),
        (12, rect(30, 0, 34, 4), ClassLabel.window),
    ]
    contacts = [
        (1, 2, 160),
        (1, 5, 4),
        (1, 9, 4),
        (1, 10, 60),
        (1, 12, 4),
        (2, 3, 40),
        (2, 4, 40),
        (2, 5, 8),
        (2, 7, 4),
        (2, 9, 8),
        (3, 6, 14),
        (3, 7, 4),
        (3, 11, 6),
        (4, 7, 4),
        (4, 8, 12),
        (5, 6, 4),
        (9, 12, 4),
    ]
    return make_graph(regions, contacts)

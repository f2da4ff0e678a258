"""Raster operations.

Functions:
    binarize(img, threshold) -> BinaryRaster
    dilate3x3(r) -> BinaryRaster
    mask_to_shape(mask, row0, col0) -> BaseGeometry
    trace_contours(r) -> List[LineString]
    connected_components(r, connectivity, background) -> LabelRaster
    rasterize(p, grid, window) -> BinaryRaster
    rotate_expand(img, angle) -> GrayRaster
    rotation_transform(width, height, angle) -> RotationTransform
    rotate_polygon(p, angle, center) -> PolygonWithHoles
"""

import math
from dataclasses import dataclass
from typing import List, Tuple

import cv2
import numpy as np
import shapely
from scipy import ndimage
from shapely import affinity
from shapely.geometry.base import BaseGeometry

from planrag.exceptions import PlanragException
from planrag.geometry.primitives import (
    LineString,
    Point,
    PolygonWithHoles,
    polygon_from_shapely,
    ring_signed_area,
    to_shapely,
)
from planrag.raster.rasters import BinaryRaster, GrayRaster, LabelRaster

FOUR_CONNECTIVITY = ndimage.generate_binary_structure(2, 1)
EIGHT_CONNECTIVITY = ndimage.generate_binary_structure(2, 2)


def binarize(img: GrayRaster, threshold: int = 128) -> BinaryRaster:
    """Foreground iff the intensity is strictly below ``threshold``."""
    if not 0 <= threshold <= 255:
        raise PlanragException(f"threshold {threshold} outside 0..255")
    return BinaryRaster(img.values < threshold)


def dilate(r: BinaryRaster, size: int) -> BinaryRaster:
    """Dilation with a size x size square; size must be odd."""
    if size < 1 or size % 2 == 0:
        raise PlanragException(f"dilation size must be a positive odd number, got {size}")
    structure = np.ones((size, size), dtype=bool)
    return BinaryRaster(ndimage.binary_dilation(r.bits, structure=structure))


def dilate3x3(r: BinaryRaster) -> BinaryRaster:
    return dilate(r, 3)


def mask_to_shape(mask: np.ndarray, row0: int = 0, col0: int = 0) -> BaseGeometry:
    """Union of the horizontal pixel runs of a mask, in pixel-corner world coordinates.

    Pixels touching only at a corner end up in different polygon parts.
    """
    padded = np.pad(mask, ((0, 0), (1, 1))).astype(np.int8)
    steps = np.diff(padded, axis=1)
    starts = np.argwhere(steps == 1)
    ends = np.argwhere(steps == -1)
    rows = starts[:, 0] + row0
    boxes = shapely.box(starts[:, 1] + col0, rows, ends[:, 1] + col0, rows + 1)
    return shapely.union_all(boxes).simplify(0)


def _corner_lattice(bits: np.ndarray) -> np.ndarray:
    """Pixels as closed 3 x 3 blocks of half-pixel cells, with one empty cell of padding.

    Cell (row, col) sits at world point ((col - 1) / 2, (row - 1) / 2), so
    the border cells of the lattice lie on pixel edges and corners.
    """
    height, width = bits.shape
    lattice = np.zeros((2 * height + 3, 2 * width + 3), dtype=np.uint8)
    for dy in range(3):
        for dx in range(3):
            lattice[1 + dy : 1 + dy + 2 * height : 2, 1 + dx : 1 + dx + 2 * width : 2] |= bits
    return lattice


def _axis_steps(cells: np.ndarray, lattice: np.ndarray) -> np.ndarray:
    """Route every diagonal step of an 8-connected border through its set corner cell."""
    following = np.roll(cells, -1, axis=0)
    diagonal = np.all(cells != following, axis=1)
    if not diagonal.any():
        return cells
    first = np.column_stack([following[:, 0], cells[:, 1]])
    second = np.column_stack([cells[:, 0], following[:, 1]])
    use_first = lattice[first[:, 1], first[:, 0]] > 0
    corners = np.where(use_first[:, None], first, second)[diagonal]
    return np.insert(cells, np.flatnonzero(diagonal) + 1, corners, axis=0)


def _turns(cells: np.ndarray) -> np.ndarray:
    steps = np.roll(cells, -1, axis=0) - cells
    return cells[np.any(steps != np.roll(steps, 1, axis=0), axis=1)]


def trace_contours(r: BinaryRaster) -> List[LineString]:
    """Outer borders of the 8-connected foreground components.

    Border following is done by ``cv2.findContours`` (Suzuki-Abe) on a
    lattice where every pixel is a closed square, so rings run along pixel
    corners and a hole-free component encloses exactly its pixel count.
    Diagonally touching pixels give a ring that passes their shared corner
    twice. Rings inside holes are not reported. Rings are ordered by
    descending enclosed area, ties by the raster-scan order of their
    top-left corner.

    Args:
        r: binary raster.

    Returns:
        closed rings.
    """
    if not r.bits.any():
        return []
    lattice = _corner_lattice(r.bits)
    contours, _ = cv2.findContours(lattice, cv2.RETR_EXTERNAL, cv2.CHAIN_APPROX_NONE)
    keyed: List[Tuple[float, float, float, np.ndarray]] = []
    for contour in contours:
        cells = _turns(_axis_steps(contour.reshape(-1, 2).astype(np.int64), lattice))
        coords = (np.vstack([cells, cells[:1]]) - 1) / 2.0
        top, left = min((float(y), float(x)) for x, y in coords)
        keyed.append((-abs(ring_signed_area(coords)), top, left, coords))
    keyed.sort(key=lambda item: item[:3])
    return [LineString.from_coords(coords) for _, _, _, coords in keyed]


def _renumber_by_scan_order(labels: np.ndarray) -> np.ndarray:
    flat = labels.ravel()
    ids, first = np.unique(flat, return_index=True)
    order = [int(i) for i in ids[np.argsort(first)] if i != 0]
    lookup = np.zeros(int(ids.max()) + 1 if ids.size else 1, dtype=np.int32)
    for new_id, old_id in enumerate(order, start=1):
        lookup[old_id] = new_id
    return lookup[labels]


def label_mask(mask: np.ndarray, connectivity: int = 4) -> np.ndarray:
    """Label a boolean mask; ids follow the raster-scan order of first pixels."""
    if connectivity not in (4, 8):
        raise PlanragException(f"connectivity must be 4 or 8, got {connectivity}")
    structure = FOUR_CONNECTIVITY if connectivity == 4 else EIGHT_CONNECTIVITY
    labels, _ = ndimage.label(mask, structure=structure)
    return _renumber_by_scan_order(labels)


def connected_components(
    r: BinaryRaster, connectivity: int = 4, background: bool = False
) -> LabelRaster:
    """Label connected regions of ink (or of background when asked).

    Args:
        r: binary raster.
        connectivity: 4 or 8.
        background: label the background pixels instead of the ink.

    Returns:
        label raster with deterministic ids by raster-scan order.
    """
    mask = ~r.bits if background else r.bits
    return LabelRaster(label_mask(mask, connectivity))


def rasterize(
    p: PolygonWithHoles, grid: int, window: float = 1.0, center: Tuple[float, float] = (0.0, 0.0)
) -> BinaryRaster:
    """Sample a polygon on a grid x grid lattice over a square window.

    The window is [cx - window, cx + window] x [cy - window, cy + window];
    a pixel is set iff its center lies in the interior of ``p``. Row i
    holds the pixel centers with y = cy - window + (i + 0.5) * cell.
    """
    if grid < 8:
        raise PlanragException(f"grid must be >= 8, got {grid}")
    cell = 2.0 * window / grid
    axis = (np.arange(grid) + 0.5) * cell - window
    xs, ys = np.meshgrid(axis + center[0], axis + center[1])
    inside = shapely.contains_xy(to_shapely(p), xs.ravel(), ys.ravel())
    return BinaryRaster(inside.reshape(grid, grid))


@dataclass(frozen=True)
class RotationTransform:
    """Affine map of a rotate-and-expand operation.

    Attributes:
        matrix: 2x3 affine matrix in OpenCV pixel-center coordinates.
        width: output canvas width.
        height: output canvas height.
    """

    matrix: Tuple[Tuple[float, float, float], Tuple[float, float, float]]
    width: int
    height: int

    @property
    def world_matrix(self) -> List[float]:
        """Same map in pixel-corner world coordinates, shapely ordering."""
        (a, b, tx), (d, e, ty) = self.matrix
        # x_world = x_center + 0.5 on both sides of the map
        return [a, b, d, e, tx + 0.5 - 0.5 * (a + b), ty + 0.5 - 0.5 * (d + e)]


def rotation_transform(width: int, height: int, angle: float) -> RotationTransform:
    """Rotation by ``angle`` degrees about the image center onto an expanded canvas.

    Positive angles rotate counter-clockwise as the image is displayed.
    """
    rad = math.radians(angle)
    cos, sin = round(math.cos(rad), 12), round(math.sin(rad), 12)
    new_width = int(math.ceil(abs(width * cos) + abs(height * sin) - 1e-9))
    new_height = int(math.ceil(abs(width * sin) + abs(height * cos) - 1e-9))
    cx, cy = (width - 1) / 2.0, (height - 1) / 2.0
    ncx, ncy = (new_width - 1) / 2.0, (new_height - 1) / 2.0
    # forward map: x' = cos x + sin y + tx, y' = -sin x + cos y + ty
    tx = ncx - (cos * cx + sin * cy)
    ty = ncy - (-sin * cx + cos * cy)
    return RotationTransform(((cos, sin, tx), (-sin, cos, ty)), new_width, new_height)


def rotate_expand(img: GrayRaster, angle: float) -> GrayRaster:
    """Rotate about the image center onto the rotated bounding box.

    Sampling is bilinear; pixels that fall outside the source are white.
    """
    transform = rotation_transform(img.width, img.height, angle)
    if transform.width == img.width and transform.height == img.height and angle % 360 == 0:
        return img
    rotated = cv2.warpAffine(
        np.ascontiguousarray(img.values),
        np.array(transform.matrix, dtype=np.float64),
        (transform.width, transform.height),
        flags=cv2.INTER_LINEAR,
        borderMode=cv2.BORDER_CONSTANT,
        borderValue=255,
    )
    return GrayRaster(rotated)


def transform_polygon(p: PolygonWithHoles, world_matrix: List[float]) -> PolygonWithHoles:
    """Apply a shapely-ordered affine matrix to a polygon."""
    return polygon_from_shapely(affinity.affine_transform(to_shapely(p), world_matrix))


def rotate_polygon(p: PolygonWithHoles, angle: float, center: Point) -> PolygonWithHoles:
    """Rotate a polygon about ``center`` with the same sense as ``rotate_expand``.

    Image rows grow downwards, so a counter-clockwise rotation on screen is a
    clockwise one in the (x, y) frame.
    """
    if angle % 360 == 0:
        return p
    rotated = affinity.rotate(to_shapely(p), -angle, origin=center.as_tuple())
    return polygon_from_shapely(rotated)

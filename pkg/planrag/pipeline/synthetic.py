"""Synthetic floor plans with ground truth.

A rectangular building is split recursively into rooms. Every split wall
gets one door so all rooms stay reachable, one more door leads outside.
Doors are drawn the way plans draw them: the opening in the wall closed
by two thin threshold lines, a leaf perpendicular to the wall and a
quarter-circle arc. Windows are openings closed by two thin lines,
objects and stairs are thin-stroke rectangles.

The ground truth tiles the canvas with polygons of the eight classes.
Pixel ranges are half-open and polygons use pixel-corner coordinates, so
a pixel range [x0, x1) is the polygon edge from x0 to x1.

Classes:
    SyntheticPlanSpec: Parameters of a generated plan.
    SyntheticPlan: The generated image, ground truth and door topology.

Functions:
    generate_plan(spec) -> SyntheticPlan
    generate_synthetic(spec) -> Tuple[GrayRaster, List[LabeledPolygon]]
    rotate_labeled(image, truth, angle) -> Tuple[GrayRaster, List[LabeledPolygon]]
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import cv2
import numpy as np
from shapely.geometry import Point as ShapelyPoint
from shapely.geometry import box
from shapely.geometry.base import BaseGeometry
from shapely.ops import unary_union

from planrag.exceptions import InfeasibleSpec
from planrag.geometry.operations import area
from planrag.geometry.primitives import multipolygon_from_shapely, to_shapely
from planrag.raster.operations import rotate_expand, rotation_transform, transform_polygon
from planrag.raster.rasters import GrayRaster
from planrag.rag.labels import ClassLabel
from planrag.rag.relabel import LabeledPolygon

logger_pipeline = logging.getLogger("Pipeline")

OUTSIDE = -1

Rect = Tuple[int, int, int, int]

# free pixels kept between drawn features
_CLEAR = 3
_OBJECT_CLEAR = 4
# positions tried per room and axis before the next room is considered
_SPLIT_ATTEMPTS = 40
_PORCH_FLARE = 8


@dataclass(frozen=True)
class SyntheticPlanSpec:  # pylint: disable=too-many-instance-attributes
    """Parameters of a generated plan.

    Raises:
        InfeasibleSpec: on parameters no plan can satisfy.
    """

    rooms: int = 4
    canvas: int = 320
    wall_width: int = 6
    door_width: int = 16
    window_count: int = 2
    rotation: float = 0.0
    seed: int = 7
    margin: int = 20
    objects: int = 1
    stairs: int = 0
    porch: bool = False

    def __post_init__(self) -> None:
        if self.rooms < 1:
            raise InfeasibleSpec(f"rooms must be >= 1, got {self.rooms}")
        if self.wall_width < 2:
            raise InfeasibleSpec(f"wall width must be >= 2, got {self.wall_width}")
        if self.door_width < 8:
            raise InfeasibleSpec(f"door width must be >= 8, got {self.door_width}")
        if self.margin < 12:
            raise InfeasibleSpec(f"margin must be >= 12, got {self.margin}")
        if self.canvas - 2 * (self.margin + self.wall_width) < self.min_room_side:
            raise InfeasibleSpec(f"canvas {self.canvas} is too small for a room")
        if min(self.window_count, self.objects, self.stairs) < 0:
            raise InfeasibleSpec("window, object and stair counts must be >= 0")

    @property
    def min_room_side(self) -> int:
        return self.door_width + 4 * _CLEAR

    @property
    def porch_depth(self) -> int:
        return max(8, min(16, self.margin - 6))


@dataclass
class _Room:
    rect: Rect
    keepout: List[Rect] = field(default_factory=list)


@dataclass(frozen=True)
class _Door:
    """Door or window opening in a wall band.

    ``u`` runs along the wall, ``v`` across it. ``positive`` is True when
    the swing goes towards larger ``v``.
    """

    along_x: bool
    band: Tuple[int, int]
    u0: int
    width: int
    positive: bool = True
    hinge_low: bool = True
    swing: bool = True

    def xy(self, u: float, v: float) -> Tuple[float, float]:
        return (u, v) if self.along_x else (v, u)

    def rect(self, u0: int, u1: int, v0: int, v1: int) -> Rect:
        if self.along_x:
            return (u0, v0, u1, v1)
        return (v0, u0, v1, u1)

    @property
    def opening(self) -> Rect:
        return self.rect(self.u0, self.u0 + self.width, self.band[0], self.band[1])

    @property
    def face(self) -> int:
        return self.band[1] if self.positive else self.band[0]

    @property
    def swing_square(self) -> Rect:
        if self.positive:
            return self.rect(self.u0, self.u0 + self.width, self.face, self.face + self.width)
        return self.rect(self.u0, self.u0 + self.width, self.face - self.width, self.face)

    @property
    def hinge(self) -> Tuple[float, float]:
        return self.xy(self.u0 if self.hinge_low else self.u0 + self.width, self.face)

    def swing_shape(self) -> BaseGeometry:
        disk = ShapelyPoint(*self.hinge).buffer(self.width, quad_segs=16)
        return disk.intersection(_box(self.swing_square))

    def shape(self) -> BaseGeometry:
        opening = _box(self.opening)
        return unary_union([opening, self.swing_shape()]) if self.swing else opening

    def center(self) -> Tuple[float, float]:
        x0, y0, x1, y1 = self.opening
        return ((x0 + x1) / 2, (y0 + y1) / 2)


@dataclass
class _Layout:
    rooms: List[_Room]
    doors: List[_Door] = field(default_factory=list)
    places: List[List[int]] = field(default_factory=list)
    windows: List[_Door] = field(default_factory=list)
    objects: List[Rect] = field(default_factory=list)
    stairs: List[Rect] = field(default_factory=list)
    porch: Optional[Rect] = None
    porch_door: Optional[_Door] = None


@dataclass(frozen=True)
class SyntheticPlan:
    """A generated plan.

    Attributes:
        image: grayscale drawing, black ink on white.
        truth: labeled polygons tiling the canvas.
        room_count: number of rooms.
        doors: the two places every door connects; rooms are numbered
            from 0, ``OUTSIDE`` is the outer space.
        spec: the generating parameters.
    """

    image: GrayRaster
    truth: List[LabeledPolygon]
    room_count: int
    doors: List[Tuple[int, int]]
    spec: SyntheticPlanSpec


def _box(r: Rect) -> BaseGeometry:
    return box(r[0], r[1], r[2], r[3])


def _intersects(a: Rect, b: Rect, pad: int = 0) -> bool:
    return a[0] - pad < b[2] and b[0] < a[2] + pad and a[1] - pad < b[3] and b[1] < a[3] + pad


def _inside(inner: Rect, outer: Rect) -> bool:
    inside_x = outer[0] <= inner[0] and inner[2] <= outer[2]
    return inside_x and outer[1] <= inner[1] and inner[3] <= outer[3]


def _blocked(r: Rect, keepout: List[Rect], pad: int) -> bool:
    return any(_intersects(r, k, pad) for k in keepout)


def _door_fits(door: _Door, room: _Room, others: List[Rect]) -> bool:
    square = door.swing_square
    if not _inside(square, room.rect) or _blocked(square, room.keepout, _CLEAR):
        return False
    return not _blocked(door.opening, room.keepout + others, _CLEAR)


def _split(  # pylint: disable=too-many-locals,too-many-arguments
    layout: _Layout,
    idx: int,
    axis: int,
    s: int,
    spec: SyntheticPlanSpec,
    rng: np.random.Generator,
) -> bool:
    """Split room ``idx`` with a wall starting at ``s``; False if no door fits."""
    room = layout.rooms[idx]
    x0, y0, x1, y1 = room.rect
    w = spec.wall_width
    if axis == 0:
        low, high = (x0, y0, s, y1), (s + w, y0, x1, y1)
        u_lo, u_hi = y0, y1
    else:
        low, high = (x0, y0, x1, s), (x0, s + w, x1, y1)
        u_lo, u_hi = x0, x1

    def half(r: Rect) -> bool:
        return (r[0] + r[2]) / 2 < s if axis == 0 else (r[1] + r[3]) / 2 < s

    low_room = _Room(low, [k for k in room.keepout if half(k)])
    high_room = _Room(high, [k for k in room.keepout if not half(k)])

    candidates = []
    for u0 in range(u_lo + _CLEAR, u_hi - _CLEAR - spec.door_width + 1):
        for positive in (False, True):
            target, other = (high_room, low_room) if positive else (low_room, high_room)
            for hinge_low in (True, False):
                door = _Door(axis == 1, (s, s + w), u0, spec.door_width, positive, hinge_low)
                if _door_fits(door, target, other.keepout):
                    candidates.append(door)
    if not candidates:
        return False
    door = candidates[int(rng.integers(len(candidates)))]

    new_id = len(layout.rooms)
    for existing, places in zip(layout.doors, layout.places):
        cx, cy = existing.center()
        if (cx if axis == 0 else cy) >= s:
            places[:] = [new_id if p == idx else p for p in places]
    for room_part in (low_room, high_room):
        room_part.keepout.append(door.opening)
    (high_room if door.positive else low_room).keepout.append(door.swing_square)
    layout.rooms[idx] = low_room
    layout.rooms.append(high_room)
    layout.doors.append(door)
    layout.places.append([idx, new_id])
    return True


def _split_positions(room: _Room, axis: int, spec: SyntheticPlanSpec) -> List[int]:
    x0, y0, x1, y1 = room.rect
    lo, hi = (x0, x1) if axis == 0 else (y0, y1)
    positions = []
    for s in range(lo + spec.min_room_side, hi - spec.min_room_side - spec.wall_width + 1):
        band = (s, y0, s + spec.wall_width, y1) if axis == 0 else (x0, s, x1, s + spec.wall_width)
        if not _blocked(band, room.keepout, _CLEAR):
            positions.append(s)
    return positions


def _subdivide(layout: _Layout, spec: SyntheticPlanSpec, rng: np.random.Generator) -> None:
    while len(layout.rooms) < spec.rooms:
        def size(i: int) -> int:
            x0, y0, x1, y1 = layout.rooms[i].rect
            return (x1 - x0) * (y1 - y0)

        done = False
        for idx in sorted(range(len(layout.rooms)), key=lambda i: (-size(i), i)):
            x0, y0, x1, y1 = layout.rooms[idx].rect
            for axis in ((0, 1) if x1 - x0 >= y1 - y0 else (1, 0)):
                positions = _split_positions(layout.rooms[idx], axis, spec)
                for s in rng.permutation(positions)[:_SPLIT_ATTEMPTS] if positions else []:
                    if _split(layout, idx, axis, int(s), spec, rng):
                        done = True
                        break
                if done:
                    break
            if done:
                break
        if not done:
            raise InfeasibleSpec(
                f"cannot place {spec.rooms} rooms on a {spec.canvas} px canvas "
                f"(placed {len(layout.rooms)})"
            )


def _exterior_sides(
    room: _Room, interior: Rect, spec: SyntheticPlanSpec
) -> List[Tuple[bool, Tuple[int, int], bool, int, int]]:
    """(along_x, band, positive, u_lo, u_hi) of every side on the building border."""
    x0, y0, x1, y1 = room.rect
    w = spec.wall_width
    sides = []
    if y0 == interior[1]:
        sides.append((True, (y0 - w, y0), True, x0, x1))
    if y1 == interior[3]:
        sides.append((True, (y1, y1 + w), False, x0, x1))
    if x0 == interior[0]:
        sides.append((False, (x0 - w, x0), True, y0, y1))
    if x1 == interior[2]:
        sides.append((False, (x1, x1 + w), False, y0, y1))
    return sides


def _porch_rect(door: _Door, spec: SyntheticPlanSpec) -> Rect:
    depth = spec.porch_depth
    outside = door.band[0] if door.positive else door.band[1]
    v0, v1 = (outside - depth, outside) if door.positive else (outside, outside + depth)
    return door.rect(door.u0 - _PORCH_FLARE, door.u0 + door.width + _PORCH_FLARE, v0, v1)


def _place_entrance(
    layout: _Layout,
    interior: Rect,
    building: Rect,
    spec: SyntheticPlanSpec,
    rng: np.random.Generator,
) -> None:
    candidates = []
    for idx, room in enumerate(layout.rooms):
        for along_x, band, positive, u_lo, u_hi in _exterior_sides(room, interior, spec):
            for u0 in range(u_lo + _CLEAR, u_hi - _CLEAR - spec.door_width + 1):
                for hinge_low in (True, False):
                    door = _Door(along_x, band, u0, spec.door_width, positive, hinge_low)
                    if not _door_fits(door, room, []):
                        continue
                    if spec.porch and not _porch_fits(_porch_rect(door, spec), building, spec):
                        continue
                    candidates.append((idx, door))
    if not candidates:
        raise InfeasibleSpec("no room for the entrance door")
    idx, door = candidates[int(rng.integers(len(candidates)))]
    layout.rooms[idx].keepout += [door.opening, door.swing_square]
    layout.doors.append(door)
    layout.places.append([idx, OUTSIDE])
    if spec.porch:
        layout.porch = _porch_rect(door, spec)
        layout.porch_door = door


def _porch_fits(porch: Rect, building: Rect, spec: SyntheticPlanSpec) -> bool:
    if not _inside(porch, (0, 0, spec.canvas, spec.canvas)):
        return False
    if porch[1] >= building[3] or porch[3] <= building[1]:
        return building[0] <= porch[0] and porch[2] <= building[2]
    return building[1] <= porch[1] and porch[3] <= building[3]


def _place_windows(
    layout: _Layout, interior: Rect, spec: SyntheticPlanSpec, rng: np.random.Generator
) -> None:
    length = max(8, spec.door_width)
    porch = [layout.porch] if layout.porch is not None else []
    for count in range(spec.window_count):
        candidates = []
        for idx, room in enumerate(layout.rooms):
            for along_x, band, positive, u_lo, u_hi in _exterior_sides(room, interior, spec):
                for u0 in range(u_lo + _CLEAR, u_hi - _CLEAR - length + 1):
                    window = _Door(along_x, band, u0, length, positive, swing=False)
                    if not _blocked(window.opening, room.keepout + porch, _CLEAR):
                        candidates.append((idx, window))
        if not candidates:
            logger_pipeline.warning(f"only {count} of {spec.window_count} windows fit")
            return
        idx, window = candidates[int(rng.integers(len(candidates)))]
        layout.rooms[idx].keepout.append(window.opening)
        layout.windows.append(window)


def _place_furniture(
    layout: _Layout, spec: SyntheticPlanSpec, rng: np.random.Generator
) -> None:
    wanted = [False] * spec.objects + [True] * spec.stairs
    for is_stair in wanted:
        if is_stair:
            long_side, short_side = 22, 14
        else:
            long_side, short_side = int(rng.integers(8, 15)), int(rng.integers(8, 15))
        width, height = (long_side, short_side) if rng.integers(2) else (short_side, long_side)
        candidates = []
        for room in layout.rooms:
            x0, y0, x1, y1 = room.rect
            for x in range(x0 + _OBJECT_CLEAR, x1 - _OBJECT_CLEAR - width + 1, 2):
                for y in range(y0 + _OBJECT_CLEAR, y1 - _OBJECT_CLEAR - height + 1, 2):
                    rect = (x, y, x + width, y + height)
                    if not _blocked(rect, room.keepout, _OBJECT_CLEAR):
                        candidates.append((room, rect))
        if not candidates:
            logger_pipeline.warning(f"no room left for a{' stair' if is_stair else 'n object'}")
            continue
        room, rect = candidates[int(rng.integers(len(candidates)))]
        room.keepout.append(rect)
        (layout.stairs if is_stair else layout.objects).append(rect)


def _line(img: np.ndarray, a: Tuple[float, float], b: Tuple[float, float]) -> None:
    cv2.line(img, (int(a[0]), int(a[1])), (int(b[0]), int(b[1])), 0, 1)


def _cv_angle(dx: int, dy: int) -> int:
    return {(1, 0): 0, (0, 1): 90, (-1, 0): 180, (0, -1): 270}[(dx, dy)]


def _draw_opening(img: np.ndarray, door: _Door) -> None:
    x0, y0, x1, y1 = door.opening
    img[y0:y1, x0:x1] = 255
    u_end = door.u0 + door.width - 1
    for v in (door.band[0], door.band[1] - 1):
        _line(img, door.xy(door.u0, v), door.xy(u_end, v))
    if not door.swing:
        return
    u_pix = door.u0 if door.hinge_low else u_end
    v_pix = door.face if door.positive else door.face - 1
    step = 1 if door.positive else -1
    _line(img, door.xy(u_pix, v_pix), door.xy(u_pix, v_pix + step * (door.width - 1)))
    along = door.xy(1 if door.hinge_low else -1, 0)
    across = door.xy(0, step)
    angles = sorted(
        [_cv_angle(int(along[0]), int(along[1])), _cv_angle(int(across[0]), int(across[1]))]
    )
    if angles[1] - angles[0] == 270:
        angles = [270, 360]
    cx, cy = door.xy(u_pix, v_pix)
    radius = door.width - 1
    cv2.ellipse(img, (int(cx), int(cy)), (radius, radius), 0, angles[0], angles[1], 0, 1)


def _draw(layout: _Layout, building: Rect, spec: SyntheticPlanSpec) -> np.ndarray:
    img = np.full((spec.canvas, spec.canvas), 255, dtype=np.uint8)
    x0, y0, x1, y1 = building
    img[y0:y1, x0:x1] = 0
    for room in layout.rooms:
        rx0, ry0, rx1, ry1 = room.rect
        img[ry0:ry1, rx0:rx1] = 255
    for opening in layout.doors + layout.windows:
        _draw_opening(img, opening)
    for rect in layout.objects + layout.stairs:
        cv2.rectangle(img, (rect[0], rect[1]), (rect[2] - 1, rect[3] - 1), 0, 1)
    for sx0, sy0, sx1, sy1 in layout.stairs:
        if sx1 - sx0 >= sy1 - sy0:
            for x in range(sx0 + 5, sx1 - 2, 5):
                _line(img, (x, sy0), (x, sy1 - 1))
        else:
            for y in range(sy0 + 5, sy1 - 2, 5):
                _line(img, (sx0, y), (sx1 - 1, y))
    if layout.porch_door is not None:
        # three sides; the building wall closes the fourth
        door = layout.porch_door
        u0, u1 = door.u0 - _PORCH_FLARE, door.u0 + door.width + _PORCH_FLARE - 1
        outside = door.band[0] if door.positive else door.band[1]
        if door.positive:
            far, near = outside - spec.porch_depth, outside - 1
        else:
            far, near = outside + spec.porch_depth - 1, outside
        _line(img, door.xy(u0, far), door.xy(u1, far))
        _line(img, door.xy(u0, far), door.xy(u0, near))
        _line(img, door.xy(u1, far), door.xy(u1, near))
    return img


def _truth(layout: _Layout, building: Rect, spec: SyntheticPlanSpec) -> List[LabeledPolygon]:
    canvas = box(0, 0, spec.canvas, spec.canvas)
    rooms = [_box(room.rect) for room in layout.rooms]
    openings = [_box(d.opening) for d in layout.doors + layout.windows]
    swings = [d.swing_shape() for d in layout.doors]
    contents = [_box(r) for r in layout.objects + layout.stairs]
    porch = _box(layout.porch) if layout.porch is not None else None

    shapes: List[Tuple[BaseGeometry, ClassLabel]] = []
    wall = _box(building).difference(unary_union(rooms + openings))
    shapes.append((wall, ClassLabel.wall))
    carved = unary_union(swings + contents)
    shapes += [(room.difference(carved), ClassLabel.room) for room in rooms]
    shapes += [(d.shape(), ClassLabel.door) for d in layout.doors]
    shapes += [(_box(w.opening), ClassLabel.window) for w in layout.windows]
    shapes += [(_box(r), ClassLabel.object) for r in layout.objects]
    shapes += [(_box(r), ClassLabel.stair) for r in layout.stairs]
    outside = canvas.difference(_box(building))
    if porch is not None:
        shapes.append((porch, ClassLabel.porch))
        outside = outside.difference(porch)
    shapes.append((outside, ClassLabel.outer_space))

    truth: List[LabeledPolygon] = []
    for shape, label in shapes:
        truth += [(p, label) for p in multipolygon_from_shapely(shape, min_area=1e-9)]
    return truth


def rotate_labeled(
    image: GrayRaster, truth: List[LabeledPolygon], angle: float
) -> Tuple[GrayRaster, List[LabeledPolygon]]:
    """Rotate a plan and its truth with ``rotate_expand``; outer space is rebuilt."""
    transform = rotation_transform(image.width, image.height, angle)
    rotated = [
        (transform_polygon(p, transform.world_matrix), label)
        for p, label in truth
        if label != ClassLabel.outer_space
    ]
    inside = unary_union([to_shapely(p) for p, _ in rotated])
    outside = box(0, 0, transform.width, transform.height).difference(inside)
    rotated += [
        (p, ClassLabel.outer_space) for p in multipolygon_from_shapely(outside, min_area=1e-9)
    ]
    return rotate_expand(image, angle), rotated


def generate_plan(spec: SyntheticPlanSpec) -> SyntheticPlan:
    """Generate one plan; identical specs give identical plans.

    Raises:
        InfeasibleSpec: if the rooms or the doors do not fit on the canvas.
    """
    rng = np.random.default_rng(spec.seed)
    w = spec.wall_width
    building = (spec.margin, spec.margin, spec.canvas - spec.margin, spec.canvas - spec.margin)
    interior = (building[0] + w, building[1] + w, building[2] - w, building[3] - w)
    layout = _Layout([_Room(interior)])

    _subdivide(layout, spec, rng)
    _place_entrance(layout, interior, building, spec, rng)
    _place_windows(layout, interior, spec, rng)
    _place_furniture(layout, spec, rng)

    image = GrayRaster(_draw(layout, building, spec))
    truth = _truth(layout, building, spec)
    if spec.rotation % 360 != 0:
        image, truth = rotate_labeled(image, truth, spec.rotation)
    doors = [(min(places), max(places)) for places in layout.places]
    logger_pipeline.debug(
        f"synthetic plan seed {spec.seed}: {len(layout.rooms)} rooms, {len(doors)} doors, "
        f"{len(layout.windows)} windows"
    )
    return SyntheticPlan(image, truth, len(layout.rooms), doors, spec)


def generate_synthetic(spec: SyntheticPlanSpec) -> Tuple[GrayRaster, List[LabeledPolygon]]:
    plan = generate_plan(spec)
    return plan.image, plan.truth


def truth_by_class(truth: List[LabeledPolygon]) -> Dict[ClassLabel, float]:
    """Total truth area per class."""
    areas: Dict[ClassLabel, float] = {}
    for polygon, label in truth:
        areas[label] = areas.get(label, 0.0) + area(polygon)
    return areas

"""Building filter chain.

The chain isolates the building drawn on a plan from everything around
it (legends, title blocks, dimension lines):

    binarize -> mask_text -> dilate3x3 -> largest_contour -> refine_outline -> filter_building

Functions:
    largest_contour(r) -> PolygonWithHoles
    refine_outline(p, radius, quad_segs) -> PolygonWithHoles
    filter_building(r, outline) -> BinaryRaster
    preprocess_stages(img, boxes, cfg) -> PreprocessStages
    preprocess_pipeline(img, boxes, cfg) -> BinaryRaster
    dump_stages(stages, directory) -> None
"""

import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import shapely
from shapely.geometry import Polygon as ShapelyPolygon

from planrag.exceptions import NoBuildingFound, OutlineTooThin
from planrag.geometry.operations import DISK_QUAD_SEGMENTS, buffer
from planrag.geometry.primitives import PolygonWithHoles, largest_polygon, to_shapely
from planrag.geometry.serialization import polygon_to_json
from planrag.preprocess.text_boxes import TextBox, mask_text
from planrag.raster.io import write_binary
from planrag.raster.operations import binarize, dilate3x3, trace_contours
from planrag.raster.rasters import BinaryRaster, GrayRaster
from planrag.utils.pipeline_config import PipelineConfig

logger_preprocess = logging.getLogger("Preprocess")


def largest_contour(r: BinaryRaster) -> PolygonWithHoles:
    """Hole-free polygon of the outer contour enclosing the largest area.

    The contour runs along pixel corners. Equal areas are resolved by the
    raster-scan order of the contours' top-left corners.

    Raises:
        NoBuildingFound: if the raster holds no foreground.
    """
    rings = trace_contours(r)
    if not rings:
        raise NoBuildingFound()
    shape = ShapelyPolygon(rings[0].coords())
    if not shape.is_valid:
        # diagonally touching pixels pinch the ring at a shared corner
        shape = shapely.make_valid(shape)
    return largest_polygon(shape)


def refine_outline(
    p: PolygonWithHoles, radius: float = 5.0, quad_segs: int = DISK_QUAD_SEGMENTS
) -> PolygonWithHoles:
    """Morphological opening of the outline with a disk.

    Parts narrower than the disk diameter disappear. When the erosion
    splits the outline only the largest piece survives.

    Raises:
        OutlineTooThin: if the erosion leaves nothing.
    """
    eroded = buffer(p, -radius, quad_segs)
    if eroded.is_empty:
        raise OutlineTooThin()
    opened = buffer(eroded, radius, quad_segs)
    if opened.is_empty:
        raise OutlineTooThin()
    return largest_polygon(to_shapely(opened))


def filter_building(r: BinaryRaster, outline: PolygonWithHoles) -> BinaryRaster:
    """Whiten every pixel whose center lies outside the outline."""
    shape = to_shapely(outline)
    shapely.prepare(shape)
    min_x, min_y, max_x, max_y = shape.bounds
    x0, y0 = max(int(np.floor(min_x)), 0), max(int(np.floor(min_y)), 0)
    x1, y1 = min(int(np.ceil(max_x)) + 1, r.width), min(int(np.ceil(max_y)) + 1, r.height)

    keep = np.zeros(r.shape, dtype=bool)
    if x0 < x1 and y0 < y1:
        xs, ys = np.meshgrid(np.arange(x0, x1) + 0.5, np.arange(y0, y1) + 0.5)
        inside = shapely.intersects_xy(shape, xs.ravel(), ys.ravel())
        keep[y0:y1, x0:x1] = inside.reshape(xs.shape)
    return BinaryRaster(r.bits & keep)


@dataclass(frozen=True)
class PreprocessStages:
    """Intermediate artifacts of the building filter chain."""

    binary: BinaryRaster
    masked: BinaryRaster
    dilated: BinaryRaster
    outline: PolygonWithHoles
    refined: PolygonWithHoles
    filtered: BinaryRaster


def preprocess_stages(
    img: GrayRaster, boxes: Sequence[TextBox], cfg: Optional[PipelineConfig] = None
) -> PreprocessStages:
    """Run the chain and keep every intermediate raster and outline.

    Raises:
        NoBuildingFound: if the image holds no building.
        OutlineTooThin: if the refined outline vanishes.
    """
    cfg = cfg or PipelineConfig()
    start = time.perf_counter()
    binary = binarize(img, cfg.threshold)
    masked = mask_text(binary, boxes)
    dilated = dilate3x3(masked)
    outline = largest_contour(dilated)
    refined = refine_outline(outline, cfg.refine_radius, cfg.quad_segs)
    filtered = filter_building(dilated, refined)
    logger_preprocess.debug(
        f"preprocess: {binary.count} ink px, {len(boxes)} text boxes, "
        f"{filtered.count} building px in {time.perf_counter() - start:.3f}s"
    )
    return PreprocessStages(binary, masked, dilated, outline, refined, filtered)


def preprocess_pipeline(
    img: GrayRaster, boxes: Sequence[TextBox], cfg: Optional[PipelineConfig] = None
) -> BinaryRaster:
    return preprocess_stages(img, boxes, cfg).filtered


def dump_stages(stages: PreprocessStages, directory: Path) -> None:
    """Write the intermediate rasters as PNG and both outlines as JSON."""
    directory.mkdir(parents=True, exist_ok=True)
    write_binary(stages.binary, directory / "binary.png")
    write_binary(stages.masked, directory / "masked.png")
    write_binary(stages.dilated, directory / "dilated.png")
    write_binary(stages.filtered, directory / "filtered.png")
    outline = {
        "format_version": 1,
        "outline": polygon_to_json(stages.outline),
        "refined": polygon_to_json(stages.refined),
    }
    with open(directory / "outline.json", "w", encoding="utf-8") as f:
        json.dump(outline, f, sort_keys=True, indent=2)
    logger_preprocess.info(f"stage dumps written to {directory}")

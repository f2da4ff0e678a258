import json
from pathlib import Path

import numpy as np
import pytest

from planrag.exceptions import InputError, NoBuildingFound, OutlineTooThin
from planrag.geometry.operations import area
from planrag.geometry.primitives import PolygonWithHoles, to_shapely
from planrag.preprocess.building_filter import (
    dump_stages,
    filter_building,
    largest_contour,
    preprocess_pipeline,
    preprocess_stages,
    refine_outline,
)
from planrag.preprocess.text_boxes import TextBox, detect_text_boxes, mask_text, read_text_boxes
from planrag.raster.rasters import BinaryRaster, GrayRaster
from planrag.utils.pipeline_config import PipelineConfig

from tests.utils import filled_binary, rect


def _plan_with_legend() -> GrayRaster:
    """Hollow square building plus a legend block in the lower right corner."""
    pixels = np.full((100, 140), 255, dtype=np.uint8)
    pixels[10:70, 10:70] = 0
    pixels[16:64, 16:64] = 255
    pixels[85:92, 110:130] = 0
    return GrayRaster(pixels)


def test_mask_text_keeps_other_word() -> None:
    words = filled_binary(30, 10, [(2, 2, 10, 8), (15, 2, 25, 8)])
    masked = mask_text(words, [TextBox(0, 0, 12, 10)])
    assert not masked.bits[:, :12].any()
    assert np.array_equal(masked.bits[:, 12:], words.bits[:, 12:])
    # boxes crossing the border are clamped
    assert mask_text(words, [TextBox(-5, -5, 100, 100)]).count == 0
    assert mask_text(words, []) is words


def test_read_text_boxes(tmp_path: Path) -> None:
    good = tmp_path / "boxes.json"
    good.write_text(json.dumps([{"x": 1, "y": 2, "w": 3, "h": 4}]), encoding="utf-8")
    assert read_text_boxes(good) == [TextBox(1, 2, 3, 4)]

    for content in ('{"x": 1}', '[{"x": 1, "y": 2}]', '[{"x": 1, "y": 2, "w": 0, "h": 1}]', "[1"):
        bad = tmp_path / "bad.json"
        bad.write_text(content, encoding="utf-8")
        with pytest.raises(InputError):
            read_text_boxes(bad)
    with pytest.raises(InputError):
        read_text_boxes(tmp_path / "missing.json")


def test_detect_text_boxes() -> None:
    r = filled_binary(
        120,
        60,
        [
            (0, 0, 110, 6),  # wall
            (80, 20, 84, 28),  # isolated glyph
            (30, 7, 34, 14),  # glyph next to the wall
        ],
    )
    boxes = detect_text_boxes(r)
    assert boxes == [TextBox(80, 20, 4, 8)]
    assert not detect_text_boxes(BinaryRaster.empty(10, 10))


def test_largest_contour() -> None:
    r = filled_binary(80, 40, [(2, 2, 10, 10), (20, 5, 70, 35)])
    outline = largest_contour(r)
    min_x, min_y, max_x, max_y = to_shapely(outline).bounds
    assert (min_x, min_y) == (20.0, 5.0)
    assert (max_x, max_y) == (70.0, 35.0)
    assert area(outline) == pytest.approx(50 * 30)
    # a one-pixel-wide stroke still encloses its pixels
    assert area(largest_contour(filled_binary(20, 20, [(3, 3, 15, 4)]))) == pytest.approx(12.0)
    with pytest.raises(NoBuildingFound):
        largest_contour(BinaryRaster.empty(20, 20))


def test_refine_outline_removes_spike() -> None:
    spiked = PolygonWithHoles.from_coords(
        [(0, 0), (40, 0), (40, 40), (21, 40), (21, 55), (18, 55), (18, 40), (0, 40)]
    )
    refined = refine_outline(spiked, radius=5.0)
    # the spike base leaves a bump well under a pixel high
    assert to_shapely(refined).bounds[3] <= 41.0
    # opening a square only rounds its corners
    assert area(refined) == pytest.approx(30 * 30 + 4 * 30 * 5 + np.pi * 25, rel=1e-2)


def test_refine_outline_convex_shape_preserved() -> None:
    big = rect(0, 0, 200, 120)
    refined = refine_outline(big, radius=5.0)
    assert area(refined) <= area(big)
    # only the corners lose area
    assert area(big) - area(refined) <= (4 - np.pi) * 25 + 1.0


def test_refine_outline_too_thin() -> None:
    with pytest.raises(OutlineTooThin):
        refine_outline(rect(0, 0, 100, 6), radius=5.0)


def test_filter_building() -> None:
    r = filled_binary(20, 20, [(0, 0, 20, 20)])
    kept = filter_building(r, rect(5, 5, 10, 10))
    assert kept.count == 25
    assert kept.bits[5:10, 5:10].all()


def test_preprocess_removes_legend() -> None:
    img = _plan_with_legend()
    stages = preprocess_stages(img, [], PipelineConfig())
    assert stages.binary.count > 0
    assert stages.filtered.count <= stages.dilated.count
    assert not stages.filtered.bits[80:, 100:].any()
    assert stages.filtered.bits[40, 12]
    assert not stages.filtered.bits[40, 40]
    assert preprocess_pipeline(img, [], PipelineConfig()) == stages.filtered


def test_preprocess_text_box_masks_ink() -> None:
    img = _plan_with_legend()
    stages = preprocess_stages(img, [TextBox(100, 80, 40, 20)], PipelineConfig())
    assert not stages.masked.bits[80:, 100:].any()
    assert stages.masked.count < stages.binary.count


def test_preprocess_blank_image() -> None:
    with pytest.raises(NoBuildingFound):
        preprocess_stages(GrayRaster.blank(50, 50), [], PipelineConfig())


def test_dump_stages(tmp_path: Path) -> None:
    stages = preprocess_stages(_plan_with_legend(), [], PipelineConfig())
    dump_stages(stages, tmp_path / "stages")
    for name in ("binary.png", "masked.png", "dilated.png", "filtered.png", "outline.json"):
        assert (tmp_path / "stages" / name).is_file()
    with open(tmp_path / "stages" / "outline.json", encoding="utf-8") as f:
        outline = json.load(f)
    assert outline["format_version"] == 1
    assert set(outline) == {"format_version", "outline", "refined"}

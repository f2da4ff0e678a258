"""Text boxes: sidecar loading, masking and a heuristic detector.

Text recognition is not part of planrag. Boxes come from a sidecar JSON
file holding an array of ``{"x", "y", "w", "h"}`` objects, or from
``detect_text_boxes``, a size heuristic that flags small isolated ink
components.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Sequence, Union

import numpy as np
from scipy import ndimage

from planrag.exceptions import InputError
from planrag.raster.operations import EIGHT_CONNECTIVITY
from planrag.raster.rasters import BinaryRaster


@dataclass(frozen=True)
class TextBox:
    """Axis aligned box in pixel coordinates, (x, y) is the top-left pixel."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self) -> None:
        if self.w < 1 or self.h < 1:
            raise InputError(f"text box {self} must have positive size")

    def to_json(self) -> dict:  # type: ignore[type-arg]
        return {"x": self.x, "y": self.y, "w": self.w, "h": self.h}


def _box_from_json(entry: Any, index: int) -> TextBox:
    if not isinstance(entry, dict):
        raise InputError(f"text box #{index} is not an object")
    try:
        return TextBox(int(entry["x"]), int(entry["y"]), int(entry["w"]), int(entry["h"]))
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"text box #{index} is malformed: {err}") from err


def read_text_boxes(path: Union[str, Path]) -> List[TextBox]:
    """Load a sidecar box file.

    Raises:
        InputError: if the file is missing or malformed.
    """
    try:
        with open(path, encoding="utf-8") as f:
            entries = json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        raise InputError(f"cannot read text boxes {path}: {err}") from err
    if not isinstance(entries, list):
        raise InputError(f"{path}: expected a JSON array of boxes")
    return [_box_from_json(entry, idx) for idx, entry in enumerate(entries)]


def mask_text(r: BinaryRaster, boxes: Sequence[TextBox]) -> BinaryRaster:
    """Set every pixel inside any box to background."""
    if not boxes:
        return r
    bits = r.bits.copy()
    for box in boxes:
        x0, y0 = max(box.x, 0), max(box.y, 0)
        x1, y1 = min(box.x + box.w, r.width), min(box.y + box.h, r.height)
        if x0 < x1 and y0 < y1:
            bits[y0:y1, x0:x1] = False
    return BinaryRaster(bits)


def detect_text_boxes(
    r: BinaryRaster, max_text_height: int = 20, max_text_area: int = 400, isolation: int = 2
) -> List[TextBox]:
    """Heuristic text finder.

    Flags 8-connected ink components whose bounding box is at most
    ``max_text_height`` high and ``max_text_area`` pixels large and that
    lie at least ``isolation`` pixels away from any larger component.
    This is a size heuristic, not text recognition: small furniture
    symbols are flagged as well.

    Args:
        r: binarized plan.
        max_text_height: tallest accepted glyph box.
        max_text_area: largest accepted box area.
        isolation: clearance to larger components.

    Returns:
        boxes in raster-scan order of their top-left corner.
    """
    labels, count = ndimage.label(r.bits, structure=EIGHT_CONNECTIVITY)
    if count == 0:
        return []
    slices = ndimage.find_objects(labels)
    small = np.zeros(count + 1, dtype=bool)
    for idx, window in enumerate(slices, start=1):
        height = window[0].stop - window[0].start
        width = window[1].stop - window[1].start
        small[idx] = height <= max_text_height and height * width <= max_text_area

    large_ink = (labels > 0) & ~small[labels]
    if isolation > 0 and large_ink.any():
        size = 2 * isolation + 1
        near_large = ndimage.binary_dilation(large_ink, structure=np.ones((size, size), dtype=bool))
    else:
        near_large = np.zeros_like(large_ink)

    boxes: List[TextBox] = []
    for idx, window in enumerate(slices, start=1):
        if not small[idx]:
            continue
        component = labels[window] == idx
        if np.any(near_large[window] & component):
            continue
        boxes.append(
            TextBox(
                window[1].start,
                window[0].start,
                window[1].stop - window[1].start,
                window[0].stop - window[0].start,
            )
        )
    boxes.sort(key=lambda b: (b.y, b.x))
    return boxes

"""Reading and writing raster files (PNG, PGM and anything else OpenCV reads)."""

import os
from pathlib import Path
from typing import Union

import cv2
import numpy as np

from planrag.exceptions import InputError
from planrag.raster.rasters import BinaryRaster, GrayRaster


def read_gray(path: Union[str, Path]) -> GrayRaster:
    """Read an image file as 8-bit grayscale.

    Args:
        path: image file.

    Returns:
        the gray raster.

    Raises:
        InputError: if the file is missing or cannot be decoded.
    """
    if not os.path.isfile(path):
        raise InputError(f"image not found: {path}")
    values = cv2.imread(str(path), cv2.IMREAD_GRAYSCALE)
    if values is None:
        raise InputError(f"cannot decode image: {path}")
    return GrayRaster(values)


def write_gray(img: GrayRaster, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if not cv2.imwrite(str(path), np.ascontiguousarray(img.values)):
        raise InputError(f"cannot write image: {path}")


def binary_to_gray(r: BinaryRaster) -> GrayRaster:
    """Render ink black on white."""
    return GrayRaster(np.where(r.bits, 0, 255).astype(np.uint8))


def write_binary(r: BinaryRaster, path: Union[str, Path]) -> None:
    write_gray(binary_to_gray(r), path)

"""Raster value types.

Rasters wrap read-only numpy arrays in row-major (height, width) layout.

Classes:
    BinaryRaster: boolean grid, True = ink (foreground).
    LabelRaster: integer grid, 0 = unlabeled, k >= 1 = region id.
    GrayRaster: 8-bit intensities.
"""

from typing import Any

import numpy as np

from planrag.exceptions import PlanragException


def _frozen(values: np.ndarray, dtype: Any) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
        raise PlanragException(f"raster must be a non-empty 2D grid, got shape {array.shape}")
    array.setflags(write=False)
    return array


class _Raster:
    _dtype: Any = None

    def __init__(self, values: np.ndarray):
        self._values = _frozen(values, self._dtype)

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def width(self) -> int:
        return int(self._values.shape[1])

    @property
    def height(self) -> int:
        return int(self._values.shape[0])

    @property
    def shape(self) -> tuple:  # type: ignore[type-arg]
        return self._values.shape

    def __eq__(self, other: Any) -> bool:
        if type(other) is not type(self):  # pylint: disable=unidiomatic-typecheck
            return False
        return bool(np.array_equal(self._values, other.values))

    def __hash__(self) -> int:
        return hash((self.shape, self._values.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.width}x{self.height})"


class BinaryRaster(_Raster):
    """Ink mask; True marks foreground pixels."""

    _dtype = bool

    @property
    def bits(self) -> np.ndarray:
        return self._values

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self._values))

    @staticmethod
    def empty(width: int, height: int) -> "BinaryRaster":
        return BinaryRaster(np.zeros((height, width), dtype=bool))


class LabelRaster(_Raster):
    _dtype = np.int32

    @property
    def labels(self) -> np.ndarray:
        return self._values

    @property
    def label_count(self) -> int:
        return int(self._values.max()) if self._values.size else 0


class GrayRaster(_Raster):
    _dtype = np.uint8

    @staticmethod
    def blank(width: int, height: int, value: int = 255) -> "GrayRaster":
        return GrayRaster(np.full((height, width), value, dtype=np.uint8))

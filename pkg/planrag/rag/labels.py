"""Node classes of the Region Adjacency Graph.

The integer values are the stable encoding used in every file format.
"""

from typing import Dict, List

from planrag.utils.comparable_enum import ComparableEnum


class ClassLabel(ComparableEnum):
    room = 0
    wall = 1
    door = 2
    window = 3
    stair = 4
    object = 5
    porch = 6
    outer_space = 7

    @staticmethod
    def from_index(index: int) -> "ClassLabel":
        return ClassLabel(int(index))


CLASS_COUNT = len(ClassLabel)

ALL_LABELS: List[ClassLabel] = sorted(ClassLabel)

# class -> fill color of the SVG renderings
CLASS_COLORS: Dict[ClassLabel, str] = {
    ClassLabel.room: "#f2e6a7",
    ClassLabel.wall: "#3b3b3b",
    ClassLabel.door: "#d95f02",
    ClassLabel.window: "#1f78b4",
    ClassLabel.stair: "#7570b3",
    ClassLabel.object: "#66a61e",
    ClassLabel.porch: "#e7298a",
    ClassLabel.outer_space: "#ffffff",
}

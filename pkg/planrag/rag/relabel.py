"""Ground-truth transfer by maximal intersection over union."""

from typing import Dict, List, Sequence, Tuple

from shapely.strtree import STRtree

from planrag.exceptions import PlanragException
from planrag.geometry.primitives import PolygonWithHoles, to_shapely
from planrag.rag.labels import ClassLabel
from planrag.rag.region_graph import Region

LabeledPolygon = Tuple[PolygonWithHoles, ClassLabel]


def relabel_by_iou(
    pred_regions: Sequence[Region], truth: Sequence[LabeledPolygon]
) -> Dict[int, ClassLabel]:
    """Give every region the class of the truth polygon it overlaps best.

    Ties on the IoU go to the larger truth polygon, then to the lower
    class index, so the result does not depend on the order of ``truth``.
    Regions that overlap no truth polygon are outer space.

    Args:
        pred_regions: vectorized regions.
        truth: labeled polygons covering the plan.

    Returns:
        region id -> class.

    Raises:
        PlanragException: if ``truth`` is empty.
    """
    if not truth:
        raise PlanragException("relabeling needs at least one truth polygon")
    shapes = [to_shapely(polygon) for polygon, _ in truth]
    areas = [shape.area for shape in shapes]
    tree = STRtree(shapes)

    labels: Dict[int, ClassLabel] = {}
    for region in pred_regions:
        shape = to_shapely(region.polygon)
        best_key = (0.0, 0.0, 0)
        best_label = ClassLabel.outer_space
        candidates: List[int] = [int(i) for i in tree.query(shape)]
        for idx in candidates:
            overlap = shape.intersection(shapes[idx]).area
            if overlap <= 0:
                continue
            iou = overlap / (shape.area + areas[idx] - overlap)
            label = truth[idx][1]
            # larger IoU, then larger truth area, then lower class index
            key = (iou, areas[idx], -label.value)
            if key > best_key:
                best_key, best_label = key, label
        labels[region.id] = best_label
    return labels

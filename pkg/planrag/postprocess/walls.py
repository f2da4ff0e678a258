"""Wall merging: embedded door parts and windows become part of the wall."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Set, Tuple

from planrag.geometry.operations import simplify_polygon, union
from planrag.geometry.primitives import MultiPolygon, PolygonWithHoles
from planrag.postprocess.doors import DoorSplit, split_doors
from planrag.rag.labels import ClassLabel
from planrag.rag.region_graph import RegionGraph
from planrag.utils.pipeline_config import PipelineConfig

logger_postprocess = logging.getLogger("Postprocess")


@dataclass(frozen=True)
class WallMerge:
    polygon: MultiPolygon
    members: Tuple[int, ...]
    iterations: int


def merge_walls_detailed(
    g: RegionGraph,
    splits: Optional[Sequence[DoorSplit]] = None,
    cfg: Optional[PipelineConfig] = None,
) -> WallMerge:
    """Grow the wall set with adjacent windows and embedded door parts until stable.

    Args:
        g: labeled graph.
        splits: door pairing; computed from ``g`` when omitted.
        cfg: supplies ``dp_epsilon``.

    Returns:
        the simplified wall polygon and the merged region ids.
    """
    cfg = cfg or PipelineConfig()
    splits = split_doors(g) if splits is None else splits
    walls: Set[int] = {idx for idx in g.node_ids if g.label(idx) == ClassLabel.wall}
    pending: Set[int] = {idx for idx in g.node_ids if g.label(idx) == ClassLabel.window}
    pending |= {s.embedded for s in splits}

    iterations = 0
    while walls:
        grown = {idx for idx in pending if any(o in walls for o in g.neighbors(idx))}
        if not grown:
            break
        iterations += 1
        walls |= grown
        pending -= grown
    if pending and walls:
        logger_postprocess.debug(f"regions {sorted(pending)} are not attached to a wall")

    members = tuple(sorted(walls))
    merged = union([g.region(idx).polygon for idx in members])
    simplified: List[PolygonWithHoles] = []
    for polygon in merged:
        simplified += simplify_polygon(polygon, cfg.dp_epsilon).polygons
    return WallMerge(union(simplified), members, iterations)


def merge_walls(
    g: RegionGraph,
    splits: Optional[Sequence[DoorSplit]] = None,
    cfg: Optional[PipelineConfig] = None,
) -> MultiPolygon:
    """Wall polygon of a labeled graph; empty when there is no wall."""
    return merge_walls_detailed(g, splits, cfg).polygon

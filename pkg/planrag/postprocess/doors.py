"""Door splitting.

A drawn door usually vectorizes into two neighboring door regions: the
swing area and the part embedded in the wall. The larger one is the swing.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Set

from planrag.rag.labels import ClassLabel
from planrag.rag.region_graph import RegionGraph

logger_postprocess = logging.getLogger("Postprocess")


@dataclass(frozen=True)
class DoorSplit:
    """One door.

    Attributes:
        embedded: region id of the part inside the wall.
        swing: region id of the swing area, None for an embedded-only door.
    """

    embedded: int
    swing: Optional[int] = None

    @property
    def parts(self) -> List[int]:
        return [self.embedded] if self.swing is None else [self.embedded, self.swing]


def _door_components(g: RegionGraph, doors: Set[int]) -> List[List[int]]:
    seen: Set[int] = set()
    components = []
    for start in sorted(doors):
        if start in seen:
            continue
        stack, component = [start], []
        seen.add(start)
        while stack:
            idx = stack.pop()
            component.append(idx)
            for other in g.neighbors(idx):
                if other in doors and other not in seen:
                    seen.add(other)
                    stack.append(other)
        components.append(sorted(component))
    return components


def split_doors(g: RegionGraph) -> List[DoorSplit]:
    """Pair RAG-adjacent door regions into swing and embedded parts.

    Equal areas make the lower id the swing. Door regions that touch more
    than one other door region are paired greedily: the largest region
    with its largest door neighbor; the rest become embedded-only doors
    and a warning is logged.

    Args:
        g: labeled graph.

    Returns:
        the doors ordered by embedded region id.
    """
    doors = {idx for idx in g.node_ids if g.label(idx) == ClassLabel.door}
    area: Dict[int, float] = {idx: g.region(idx).area for idx in doors}

    splits = []
    for component in _door_components(g, doors):
        if len(component) == 1:
            splits.append(DoorSplit(component[0]))
            continue
        if len(component) > 2:
            logger_postprocess.warning(
                f"door regions {component} are mutually adjacent, pairing the two largest"
            )
        swing = min(component, key=lambda i: (-area[i], i))
        embedded = min(
            (o for o in g.neighbors(swing) if o in doors), key=lambda i: (-area[i], i)
        )
        splits.append(DoorSplit(embedded, swing))
        paired = {swing, embedded}
        for idx in component:
            if idx not in paired:
                splits.append(DoorSplit(idx))
    return sorted(splits, key=lambda s: s.embedded)

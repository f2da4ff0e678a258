"""Util functions to output dot files and the artifacts printers work on.

Functions:
    rag_to_dot(graph: RegionGraph, filename: Optional[Path]=None) -> Optional[str]:
        Exports the Region Adjacency Graph in dot format, nodes filled
        with the color of their class.

    rcg_to_dot(rcg: RoomConnectivityGraph, filename: Optional[Path]=None) -> Optional[str]:
        Exports the Room Connectivity Graph in dot format.

Classes:
    PlanArtifacts: Artifacts of one plan, the input of every printer.
"""

import html
import os
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, List, Optional, Tuple

from planrag.rag.labels import CLASS_COLORS

if TYPE_CHECKING:
    from planrag.postprocess.connectivity import RoomConnectivityGraph
    from planrag.postprocess.postprocessing import WallLayout
    from planrag.rag.region_graph import RegionGraph


ROOT_OUTPUT_DIRECTORY = Path(os.getenv("PLANRAG_ROOT_OUTPUT_DIR", "planrag-export"))

_KIND_SHAPES = {"room": "box", "door": "diamond", "outer_space": "doubleoctagon"}


@dataclass(frozen=True)
class PlanArtifacts:
    """Artifacts of one plan; printers skip what is missing.

    Attributes:
        name: plan name, used for the output directory.
        graph: region adjacency graph, labeled or not.
        rcg: room connectivity graph.
        walls: wall layout.
        size: (width, height) of the canvas; derived from the graph when omitted.
    """

    name: str
    graph: Optional["RegionGraph"] = None
    rcg: Optional["RoomConnectivityGraph"] = None
    walls: Optional["WallLayout"] = None
    size: Optional[Tuple[int, int]] = None

    def canvas(self) -> Tuple[int, int]:
        if self.size is not None:
            return self.size
        if self.graph is None or not len(self.graph):
            return (0, 0)
        xs: List[float] = []
        ys: List[float] = []
        for region in self.graph.regions:
            coords = region.polygon.exterior.coords()
            xs.append(float(coords[:, 0].max()))
            ys.append(float(coords[:, 1].max()))
        return (int(round(max(xs))), int(round(max(ys))))


def _write(dot_output: str, filename: Optional[Path]) -> Optional[str]:
    if filename is None:
        return dot_output
    with open(filename, "w", encoding="utf-8") as f:
        f.write(dot_output)
    return None


def rag_to_dot(graph: "RegionGraph", filename: Optional[Path] = None) -> Optional[str]:
    """Export the region adjacency graph to a dot file.

    Nodes are placed at their region centroid (y flipped, so neato shows
    the plan upright) and filled with their class color; edges carry the
    centroid distance.

    Args:
        graph: the graph to export.
        filename: name of the file to save the dot representation in.

    Returns:
        the dot representation if filename is not given, None otherwise.
    """
    nodes: List[str] = []
    for idx in graph.node_ids:
        region = graph.region(idx)
        label = graph.labels[idx]
        color = CLASS_COLORS[label] if label is not None else "#ffffff"
        text = html.escape(f"{idx} {label.name if label is not None else '?'}", quote=True)
        nodes.append(
            f'{idx} [label="{text}", style=filled, fillcolor="{color}", '
            f'pos="{region.centroid.x:.2f},{-region.centroid.y:.2f}"];'
        )
    edges = [
        f'{edge.source} -- {edge.target} [label="{edge.weight:.1f}"];' for edge in graph.edges
    ]
    dot_output = (
        "graph rag{\n overlap = false \n"
        + "\n".join(nodes)
        + "\n"
        + "\n".join(edges)
        + "\n}"
    )
    return _write(dot_output, filename)


def rcg_to_dot(rcg: "RoomConnectivityGraph", filename: Optional[Path] = None) -> Optional[str]:
    """Export the room connectivity graph to a dot file.

    Rooms are boxes, doors diamonds and the outer space a double octagon.

    Args:
        rcg: the graph to export.
        filename: name of the file to save the dot representation in.

    Returns:
        the dot representation if filename is not given, None otherwise.
    """
    nodes: List[str] = []
    for idx in sorted(rcg.nodes):
        node = rcg.nodes[idx]
        kind = node.kind.name
        members = ", ".join(str(m) for m in node.members)
        nodes.append(
            f'{idx} [label="{kind} {idx}\\n[{members}]", shape={_KIND_SHAPES[kind]}];'
        )
    edges = [f"{place} -- {door};" for place, door in rcg.edges]
    dot_output = "graph rcg{\n" + "\n".join(nodes) + "\n" + "\n".join(edges) + "\n}"
    return _write(dot_output, filename)

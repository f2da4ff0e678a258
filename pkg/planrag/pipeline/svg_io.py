"""Labeled SVG import and layered SVG export.

The importer reads ``polygon`` and ``path`` elements carrying a class
attribute. Paths are filled with the even-odd rule, so every closed
subpath toggles the inside; rings inside rings become holes.

The exporter writes one group per layer:

- ``regions``: one path per labeled polygon, colored by class.
- ``rag``: a circle per node at its centroid and a line per edge.
- ``separation-lines``: the separation lines of the wall.
- ``wall-segments``: the constructed wall segments.

Empty layers are omitted. Only region paths carry a class attribute, so
an exported file imports back to its region polygons.

Functions:
    import_labeled_svg(path) -> List[LabeledPolygon]
    export_svg(layers, path) -> None
"""

import logging
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import shapely
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.geometry.base import BaseGeometry

from planrag.exceptions import GeometryError, InputError
from planrag.geometry.primitives import PolygonWithHoles, multipolygon_from_shapely
from planrag.postprocess.construction import WallSegment
from planrag.postprocess.separation import LineKind, SeparationLine
from planrag.rag.labels import ALL_LABELS, CLASS_COLORS, ClassLabel
from planrag.rag.region_graph import RegionGraph
from planrag.rag.relabel import LabeledPolygon

logger_pipeline = logging.getLogger("Pipeline")

SVG_NS = "http://www.w3.org/2000/svg"

IGNORED_CLASSES = ("room separation",)

CLASS_ALIASES: Dict[str, ClassLabel] = {
    "parking door": ClassLabel.door,
    "space": ClassLabel.room,
    "outer": ClassLabel.outer_space,
    "outerspace": ClassLabel.outer_space,
    "outer-space": ClassLabel.outer_space,
    "outer space": ClassLabel.outer_space,
    "stairs": ClassLabel.stair,
    "furniture": ClassLabel.object,
}

_SEGMENT_COLOR = "#b2182b"
_LINE_COLORS = {LineKind.best: "#2166ac", LineKind.second_best: "#67a9cf"}

_TOKEN = re.compile(r"[A-Za-z]|[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")
_NUMBER = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def class_label(text: str) -> Optional[ClassLabel]:
    """Class named by an SVG class attribute, None when it names none.

    The whole attribute is tried first, then every whitespace separated
    token in order. Matching is case-insensitive.
    """
    text = " ".join(text.lower().split())
    candidates = [text] + text.split(" ")
    names = {label.name: label for label in ALL_LABELS}
    names["outer_space"] = ClassLabel.outer_space
    for candidate in candidates:
        if candidate in names:
            return names[candidate]
        if candidate in CLASS_ALIASES:
            return CLASS_ALIASES[candidate]
    return None


def _is_ignored(text: str) -> bool:
    return " ".join(text.lower().split()) in IGNORED_CLASSES


def _floats(text: str) -> List[float]:
    return [float(v) for v in _NUMBER.findall(text)]


def _polygon_rings(points: str) -> List[List[Tuple[float, float]]]:
    values = _floats(points)
    if len(values) % 2:
        raise ValueError("odd number of coordinates")
    return [list(zip(values[0::2], values[1::2]))]


def _path_rings(d: str) -> Tuple[List[List[Tuple[float, float]]], bool]:
    """Subpaths of a path made of M/L/H/V/Z commands.

    Returns:
        the rings and whether a curve command was skipped.
    """
    tokens = _TOKEN.findall(d)
    rings: List[List[Tuple[float, float]]] = []
    ring: List[Tuple[float, float]] = []
    x = y = 0.0
    start = (0.0, 0.0)
    skipped = False
    command = ""
    i = 0

    def number() -> float:
        nonlocal i
        if i >= len(tokens) or tokens[i].isalpha():
            raise ValueError(f"missing coordinate after '{command}'")
        value = float(tokens[i])
        i += 1
        return value

    while i < len(tokens):
        if tokens[i].isalpha():
            command = tokens[i]
            i += 1
        elif not command:
            raise ValueError("path data does not start with a command")
        upper = command.upper()
        relative = command.islower()
        if upper == "Z":
            if ring:
                rings.append(ring)
            ring = []
            x, y = start
            command = ""
            continue
        if upper == "M":
            if ring:
                rings.append(ring)
            dx, dy = number(), number()
            x, y = (x + dx, y + dy) if relative else (dx, dy)
            start = (x, y)
            ring = [(x, y)]
            # further pairs are implicit line-tos
            command = "l" if relative else "L"
        elif upper == "L":
            dx, dy = number(), number()
            x, y = (x + dx, y + dy) if relative else (dx, dy)
            ring.append((x, y))
        elif upper == "H":
            value = number()
            x = x + value if relative else value
            ring.append((x, y))
        elif upper == "V":
            value = number()
            y = y + value if relative else value
            ring.append((x, y))
        else:
            # curves and arcs: skip their numbers, keep the current point
            skipped = True
            while i < len(tokens) and not tokens[i].isalpha():
                i += 1
            ring = []
            command = ""
    if ring:
        rings.append(ring)
    return rings, skipped


def _even_odd(rings: Sequence[Sequence[Tuple[float, float]]]) -> BaseGeometry:
    shapes = []
    for ring in rings:
        if len(set(ring)) < 3:
            continue
        shape = shapely.make_valid(ShapelyPolygon(ring))
        if not shape.is_empty:
            shapes.append(shape)
    if not shapes:
        return ShapelyPolygon()
    return reduce(lambda a, b: a.symmetric_difference(b), shapes)


def _iter_elements(root: ET.Element) -> Iterator[Tuple[int, ET.Element]]:
    for index, element in enumerate(root.iter()):
        if _local(element.tag) in ("polygon", "path"):
            yield index, element


def _location(index: int, element: ET.Element) -> str:
    ident = element.get("id")
    name = _local(element.tag)
    return f"element #{index} <{name}{f' id={ident!r}' if ident else ''}>"


def import_labeled_svg(path: Union[str, Path]) -> List[LabeledPolygon]:
    """Read the labeled polygons of an SVG file.

    Elements without a class attribute are ignored; ``room separation``
    elements are skipped silently and other unknown classes with a warning.

    Args:
        path: SVG file.

    Returns:
        (polygon, class) pairs in document order.

    Raises:
        InputError: if the file cannot be read, is not XML or holds an
            element with malformed geometry.
    """
    try:
        root = ET.parse(str(path)).getroot()
    except ET.ParseError as err:
        line, column = err.position
        raise InputError(f"{path}:{line}:{column}: malformed SVG: {err}") from err
    except OSError as err:
        raise InputError(f"cannot read {path}: {err}") from err

    polygons: List[LabeledPolygon] = []
    unknown: Dict[str, int] = {}
    for index, element in _iter_elements(root):
        classes = element.get("class")
        if classes is None or _is_ignored(classes):
            continue
        label = class_label(classes)
        if label is None:
            unknown[classes] = unknown.get(classes, 0) + 1
            continue
        try:
            if _local(element.tag) == "polygon":
                rings = _polygon_rings(element.get("points", ""))
            else:
                rings, skipped = _path_rings(element.get("d", ""))
                if skipped:
                    logger_pipeline.warning(
                        f"{path}: {_location(index, element)} has curve commands, "
                        "only its straight subpaths are kept"
                    )
            shape = _even_odd(rings)
            parts = multipolygon_from_shapely(shape, min_area=1e-9)
        except (ValueError, GeometryError) as err:
            raise InputError(f"{path}: {_location(index, element)}: {err}") from err
        if element.get("transform"):
            logger_pipeline.warning(
                f"{path}: {_location(index, element)} has a transform, it is ignored"
            )
        polygons += [(polygon, label) for polygon in parts]
    for classes, count in sorted(unknown.items()):
        logger_pipeline.warning(f"{path}: skipped {count} elements of unknown class '{classes}'")
    logger_pipeline.debug(f"{path}: {len(polygons)} labeled polygons")
    return polygons


@dataclass(frozen=True)
class SvgLayers:
    """Stage artifacts rendered by ``export_svg``.

    Attributes:
        width: canvas width in pixels.
        height: canvas height in pixels.
        regions: labeled polygons of the ``regions`` layer.
        graph: graph whose nodes and edges form the ``rag`` layer.
        lines: separation lines.
        segments: wall segments.
    """

    width: int
    height: int
    regions: Sequence[LabeledPolygon] = ()
    graph: Optional[RegionGraph] = None
    lines: Sequence[SeparationLine] = ()
    segments: Sequence[WallSegment] = ()


def layers_from_graph(
    graph: RegionGraph,
    width: int,
    height: int,
    lines: Sequence[SeparationLine] = (),
    segments: Sequence[WallSegment] = (),
) -> SvgLayers:
    """Layers of a graph; unlabeled nodes are drawn as rooms."""
    regions = [
        (region.polygon, graph.labels[region.id] or ClassLabel.room) for region in graph.regions
    ]
    return SvgLayers(width, height, regions, graph, lines, segments)


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def path_data(polygon: PolygonWithHoles) -> str:
    parts = []
    for ring in polygon.rings:
        coords = ring.coords()[:-1]
        head = f"M {_fmt(coords[0][0])},{_fmt(coords[0][1])}"
        tail = " ".join(f"L {_fmt(x)},{_fmt(y)}" for x, y in coords[1:])
        parts.append(f"{head} {tail} Z")
    return " ".join(parts)


def _group(parent: ET.Element, ident: str, **attrs: str) -> ET.Element:
    attrs = {key.replace("_", "-"): value for key, value in attrs.items()}
    return ET.SubElement(parent, f"{{{SVG_NS}}}g", {"id": ident, **attrs})


def svg_document(layers: SvgLayers) -> ET.ElementTree:
    ET.register_namespace("", SVG_NS)
    svg = ET.Element(
        f"{{{SVG_NS}}}svg",
        {
            "width": str(layers.width),
            "height": str(layers.height),
            "viewBox": f"0 0 {layers.width} {layers.height}",
        },
    )
    if layers.regions:
        group = _group(svg, "regions", stroke="#000000", stroke_width="0.2")
        for polygon, label in layers.regions:
            ET.SubElement(
                group,
                f"{{{SVG_NS}}}path",
                {
                    "class": label.name,
                    "d": path_data(polygon),
                    "fill": CLASS_COLORS[label],
                    "fill-rule": "evenodd",
                },
            )
    if layers.graph is not None and len(layers.graph):
        group = _group(svg, "rag", stroke="#e31a1c", fill="#e31a1c", stroke_width="0.5")
        for edge in layers.graph.edges:
            a = layers.graph.region(edge.source).centroid
            b = layers.graph.region(edge.target).centroid
            ET.SubElement(
                group,
                f"{{{SVG_NS}}}line",
                {"x1": _fmt(a.x), "y1": _fmt(a.y), "x2": _fmt(b.x), "y2": _fmt(b.y)},
            )
        for region in layers.graph.regions:
            ET.SubElement(
                group,
                f"{{{SVG_NS}}}circle",
                {
                    "id": f"node-{region.id}",
                    "cx": _fmt(region.centroid.x),
                    "cy": _fmt(region.centroid.y),
                    "r": "1.5",
                },
            )
    if layers.lines:
        group = _group(svg, "separation-lines", stroke_width="0.8")
        for line in layers.lines:
            segment = line.segment
            ET.SubElement(
                group,
                f"{{{SVG_NS}}}line",
                {
                    "x1": _fmt(segment.a.x),
                    "y1": _fmt(segment.a.y),
                    "x2": _fmt(segment.b.x),
                    "y2": _fmt(segment.b.y),
                    "stroke": _LINE_COLORS[line.kind],
                },
            )
    if layers.segments:
        group = _group(
            svg, "wall-segments", stroke=_SEGMENT_COLOR, fill="none", stroke_width="0.6"
        )
        for index, segment in enumerate(layers.segments):
            ET.SubElement(
                group,
                f"{{{SVG_NS}}}path",
                {
                    "id": f"segment-{index}",
                    "d": path_data(segment.polygon),
                    "fill-rule": "evenodd",
                    "stroke-dasharray": "2,1" if segment.fallback else "none",
                },
            )
    return ET.ElementTree(svg)


def export_svg(layers: SvgLayers, path: Union[str, Path]) -> None:
    """Write the layered SVG; identical layers give identical files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tree = svg_document(layers)
    ET.indent(tree)
    tree.write(str(path), encoding="utf-8", xml_declaration=True)

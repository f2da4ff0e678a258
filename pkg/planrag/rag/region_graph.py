"""Region Adjacency Graph values and their JSON encoding.

Classes:
    Region: A vectorized region of the plan.
    FeatureVector: Degree, area and Zernike amplitudes of a node.
    Edge: Undirected adjacency between two regions.
    Node: Region, features and optional class of a graph node.
    RegionGraph: The Region Adjacency Graph.

Functions:
    write_graph(graph, path) -> None
    read_graph(path) -> RegionGraph
"""

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np

from planrag.exceptions import InputError, PlanragException
from planrag.features.zernike import ZernikeFeatures
from planrag.geometry.primitives import Point, PolygonWithHoles
from planrag.geometry.serialization import polygon_from_json, polygon_to_json
from planrag.rag.labels import ClassLabel

GRAPH_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Region:
    """A connected region of ink or of enclosed background.

    Attributes:
        id: node id, >= 1, deterministic by raster-scan order.
        polygon: pixel-corner outline of the region.
        centroid: centroid of the polygon.
        area: pixel count.
        outer: True for the region outside the building.
    """

    id: int
    polygon: PolygonWithHoles
    centroid: Point
    area: float
    outer: bool = False


@dataclass(frozen=True)
class FeatureVector:
    degree: int
    area: float
    zernike: ZernikeFeatures

    def as_array(self) -> np.ndarray:
        return np.concatenate([[float(self.degree), float(self.area)], self.zernike.as_array()])

    def __len__(self) -> int:
        return 2 + len(self.zernike)


@dataclass(frozen=True)
class Edge:
    """Undirected edge, stored with ``source < target``.

    Attributes:
        source: smaller region id.
        target: larger region id.
        weight: centroid distance in pixels.
        contact: number of 4-neighbor pixel contacts between the regions.
    """

    source: int
    target: int
    weight: float
    contact: int = 1

    def __post_init__(self) -> None:
        if self.source >= self.target:
            raise PlanragException(
                f"edge ({self.source}, {self.target}) must satisfy source < target"
            )
        if not self.weight > 0:
            raise PlanragException(f"edge ({self.source}, {self.target}) has weight {self.weight}")

    @property
    def key(self) -> Tuple[int, int]:
        return (self.source, self.target)


@dataclass(frozen=True)
class Node:
    region: Region
    features: FeatureVector
    label: Optional[ClassLabel] = None

    @property
    def id(self) -> int:
        return self.region.id


class RegionGraph:
    """Undirected simple graph of regions.

    Args:
        nodes: the graph nodes.
        edges: the adjacencies; both endpoints must be nodes.

    Raises:
        PlanragException: on unknown endpoints or duplicated edges.
    """

    def __init__(self, nodes: Iterable[Node], edges: Iterable[Edge]):
        self._nodes: Dict[int, Node] = {}
        for node in nodes:
            if node.id in self._nodes:
                raise PlanragException(f"duplicated node {node.id}")
            self._nodes[node.id] = node
        self._edges: Dict[Tuple[int, int], Edge] = {}
        self._neighbors: Dict[int, List[int]] = {idx: [] for idx in self._nodes}
        for edge in sorted(edges, key=lambda e: e.key):
            if edge.source not in self._nodes or edge.target not in self._nodes:
                raise PlanragException(f"edge {edge.key} references an unknown node")
            if edge.key in self._edges:
                raise PlanragException(f"duplicated edge {edge.key}")
            self._edges[edge.key] = edge
            self._neighbors[edge.source].append(edge.target)
            self._neighbors[edge.target].append(edge.source)
        for neighbors in self._neighbors.values():
            neighbors.sort()

    @property
    def nodes(self) -> Dict[int, Node]:
        return self._nodes

    @property
    def node_ids(self) -> List[int]:
        return sorted(self._nodes)

    @property
    def edges(self) -> List[Edge]:
        return list(self._edges.values())

    def node(self, idx: int) -> Node:
        return self._nodes[idx]

    def region(self, idx: int) -> Region:
        return self._nodes[idx].region

    @property
    def regions(self) -> List[Region]:
        return [self._nodes[idx].region for idx in self.node_ids]

    def neighbors(self, idx: int) -> List[int]:
        return self._neighbors[idx]

    def degree(self, idx: int) -> int:
        return len(self._neighbors[idx])

    def edge(self, first: int, second: int) -> Optional[Edge]:
        return self._edges.get((min(first, second), max(first, second)))

    def contact(self, first: int, second: int) -> int:
        edge = self.edge(first, second)
        return edge.contact if edge is not None else 0

    @property
    def outer_id(self) -> Optional[int]:
        for idx in self.node_ids:
            if self._nodes[idx].region.outer:
                return idx
        return None

    @property
    def labels(self) -> Dict[int, Optional[ClassLabel]]:
        return {idx: self._nodes[idx].label for idx in self.node_ids}

    @property
    def is_labeled(self) -> bool:
        return all(node.label is not None for node in self._nodes.values())

    def label(self, idx: int) -> ClassLabel:
        label = self._nodes[idx].label
        if label is None:
            raise PlanragException(f"node {idx} has no label")
        return label

    def with_labels(self, labels: Mapping[int, Optional[ClassLabel]]) -> "RegionGraph":
        """Copy of the graph with the labels replaced; missing ids become unlabeled."""
        nodes = [replace(self._nodes[idx], label=labels.get(idx)) for idx in self.node_ids]
        return RegionGraph(nodes, self.edges)

    def feature_matrix(self) -> np.ndarray:
        """(N, F) features, rows ordered by node id."""
        if not self._nodes:
            return np.zeros((0, 0))
        return np.vstack([self._nodes[idx].features.as_array() for idx in self.node_ids])

    def weight_matrix(self) -> np.ndarray:
        """(N, N) symmetric centroid distances, zero where there is no edge."""
        index = {idx: row for row, idx in enumerate(self.node_ids)}
        matrix = np.zeros((len(index), len(index)))
        for edge in self._edges.values():
            i, j = index[edge.source], index[edge.target]
            matrix[i, j] = matrix[j, i] = edge.weight
        return matrix

    def label_vector(self) -> np.ndarray:
        return np.array([self.label(idx).value for idx in self.node_ids], dtype=np.int64)

    def __len__(self) -> int:
        return len(self._nodes)

    def __repr__(self) -> str:
        return f"RegionGraph({len(self._nodes)} nodes, {len(self._edges)} edges)"

    def to_json(self) -> Dict[str, Any]:
        nodes = []
        for idx in self.node_ids:
            node = self._nodes[idx]
            entry: Dict[str, Any] = {
                "id": idx,
                "degree": node.features.degree,
                "area": node.features.area,
                "zernike": list(node.features.zernike.amplitudes),
                "zernike_order": node.features.zernike.n_max,
                "centroid": [node.region.centroid.x, node.region.centroid.y],
                "polygon": polygon_to_json(node.region.polygon),
                "outer": node.region.outer,
            }
            if node.label is not None:
                entry["label"] = node.label.value
            nodes.append(entry)
        return {
            "format_version": GRAPH_FORMAT_VERSION,
            "nodes": nodes,
            "edges": [[e.source, e.target, e.weight] for e in self.edges],
            "contacts": [[e.source, e.target, e.contact] for e in self.edges],
        }

    @staticmethod
    def from_json(data: Any) -> "RegionGraph":
        """Decode a graph document.

        Raises:
            InputError: on a malformed document or an unsupported version.
        """
        if not isinstance(data, dict):
            raise InputError("graph document must be an object")
        if data.get("format_version") != GRAPH_FORMAT_VERSION:
            raise InputError(f"unsupported graph format_version {data.get('format_version')}")
        try:
            nodes = [_node_from_json(entry) for entry in data["nodes"]]
            contacts = {(int(i), int(j)): int(n) for i, j, n in data.get("contacts", [])}
            edges = [
                Edge(int(i), int(j), float(w), contacts.get((int(i), int(j)), 1))
                for i, j, w in data["edges"]
            ]
            return RegionGraph(nodes, edges)
        except (KeyError, TypeError, ValueError, PlanragException) as err:
            if isinstance(err, InputError):
                raise
            raise InputError(f"malformed graph: {err}") from err


def _node_from_json(entry: Dict[str, Any]) -> Node:
    polygon = polygon_from_json(entry["polygon"])
    cx, cy = entry["centroid"]
    region = Region(
        int(entry["id"]),
        polygon,
        Point(float(cx), float(cy)),
        float(entry["area"]),
        bool(entry.get("outer", False)),
    )
    zernike = ZernikeFeatures(
        tuple(float(v) for v in entry["zernike"]), int(entry.get("zernike_order", 6))
    )
    features = FeatureVector(int(entry["degree"]), float(entry["area"]), zernike)
    label = ClassLabel.from_index(entry["label"]) if entry.get("label") is not None else None
    return Node(region, features, label)


def write_graph(graph: RegionGraph, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(graph.to_json(), f, sort_keys=True, indent=2)


def read_graph(path: Union[str, Path]) -> RegionGraph:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        raise InputError(f"cannot read graph {path}: {err}") from err
    return RegionGraph.from_json(data)

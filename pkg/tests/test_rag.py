import json
import random
from pathlib import Path

import numpy as np
import pytest

from planrag.exceptions import InputError, PlanragException
from planrag.rag.labels import ALL_LABELS, CLASS_COUNT, ClassLabel
from planrag.rag.region_graph import Edge, RegionGraph, read_graph, write_graph
from planrag.rag.relabel import relabel_by_iou
from planrag.rag.vectorize import (
    MIN_EDGE_WEIGHT,
    adjacency,
    build_rag,
    label_regions,
    vectorize,
)
from planrag.raster.rasters import BinaryRaster
from planrag.utils.pipeline_config import PipelineConfig

from tests.utils import filled_binary, rect


def _hollow_square(size: int = 60, margin: int = 10, wall: int = 6) -> BinaryRaster:
    bits = np.zeros((size, size), dtype=bool)
    bits[margin : size - margin, margin : size - margin] = True
    bits[margin + wall : size - margin - wall, margin + wall : size - margin - wall] = False
    return BinaryRaster(bits)


def _with_stroke(r: BinaryRaster, first_row: int, last_row: int) -> BinaryRaster:
    """Vertical one pixel wide line in the room of ``_hollow_square``."""
    bits = r.bits.copy()
    bits[first_row:last_row, 30] = True
    return BinaryRaster(bits)


def test_hollow_square_regions() -> None:
    graph = build_rag(_hollow_square(), PipelineConfig())
    assert len(graph) == 3
    outer, wall, room = graph.regions
    assert outer.outer and not wall.outer and not room.outer
    assert (outer.id, wall.id, room.id) == (1, 2, 3)
    assert outer.area == 60 * 60 - 40 * 40
    assert wall.area == 40 * 40 - 28 * 28
    assert room.area == 28 * 28
    assert graph.outer_id == outer.id


def test_hollow_square_adjacency() -> None:
    graph = build_rag(_hollow_square(), PipelineConfig())
    outer, wall, room = graph.node_ids
    assert graph.edge(room, wall) is not None
    assert graph.edge(wall, outer) is not None
    assert graph.edge(room, outer) is None
    assert graph.neighbors(wall) == [outer, room]
    # concentric regions share their centroid
    assert graph.edge(wall, room).weight == pytest.approx(MIN_EDGE_WEIGHT)
    assert graph.contact(room, wall) == 4 * 28
    assert graph.contact(room, outer) == 0


def test_adjacency_counts_contacts() -> None:
    regions, labels = vectorize(_hollow_square())
    edges = adjacency(regions, labels)
    assert [(e.source, e.target) for e in edges] == [(1, 2), (2, 3)]
    assert edges[0].contact == 4 * 40
    assert edges[1].contact == 4 * 28


def test_features() -> None:
    graph = build_rag(_hollow_square(), PipelineConfig())
    matrix = graph.feature_matrix()
    assert matrix.shape == (3, 18)
    for row, idx in enumerate(graph.node_ids):
        features = graph.node(idx).features
        assert matrix[row, 0] == graph.degree(idx)
        assert matrix[row, 1] == graph.region(idx).area
        assert len(features) == 18
    assert np.all(matrix[:, 2:] >= 0)
    weights = graph.weight_matrix()
    assert np.array_equal(weights, weights.T)


def test_thin_strokes_are_dissolved() -> None:
    floating = _with_stroke(_hollow_square(), 20, 40)
    regions, labels = vectorize(floating, min_region_area=4, stroke_radius=2)
    assert len(regions) == 3
    assert labels.labels[30, 30] == labels.labels[30, 20]
    kept, _ = vectorize(floating, min_region_area=4, stroke_radius=0)
    assert len(kept) == 4


def test_thin_strokes_still_separate_rooms() -> None:
    split = _with_stroke(_hollow_square(), 16, 44)
    regions, labels = vectorize(split, min_region_area=4, stroke_radius=2)
    assert len(regions) == 4
    assert labels.labels[30, 20] != labels.labels[30, 40]
    # the stroke pixels belong to a neighboring region
    assert labels.labels[30, 30] > 0


def test_small_regions_are_dropped() -> None:
    bits = _hollow_square().bits.copy()
    bits[28:30, 28:30] = True
    labels, outer_id = label_regions(BinaryRaster(bits), min_region_area=4, stroke_radius=0)
    assert labels.labels[28, 28] == 0
    assert labels.label_count == 3
    assert outer_id == 1


def test_no_outer_space() -> None:
    full = filled_binary(20, 20, [(0, 0, 20, 20)])
    full_bits = full.bits.copy()
    full_bits[5:15, 5:15] = False
    regions, _ = vectorize(BinaryRaster(full_bits))
    assert len(regions) == 2
    assert not any(region.outer for region in regions)


def test_empty_raster() -> None:
    with pytest.raises(PlanragException):
        vectorize(BinaryRaster.empty(3, 3), min_region_area=9)


def test_graph_json(tmp_path: Path) -> None:
    graph = build_rag(_hollow_square(), PipelineConfig())
    labeled = graph.with_labels(
        {1: ClassLabel.outer_space, 2: ClassLabel.wall, 3: ClassLabel.room}
    )
    write_graph(labeled, tmp_path / "graph.json")
    loaded = read_graph(tmp_path / "graph.json")
    assert loaded.to_json() == labeled.to_json()
    assert loaded.is_labeled
    assert not graph.is_labeled
    assert loaded.label(3) == ClassLabel.room
    assert list(loaded.label_vector()) == [7, 1, 0]

    document = labeled.to_json()
    document["format_version"] = 2
    (tmp_path / "future.json").write_text(json.dumps(document), encoding="utf-8")
    with pytest.raises(InputError):
        read_graph(tmp_path / "future.json")
    document["format_version"] = 1
    document["edges"].append([1, 99, 1.0])
    (tmp_path / "dangling.json").write_text(json.dumps(document), encoding="utf-8")
    with pytest.raises(InputError):
        read_graph(tmp_path / "dangling.json")
    with pytest.raises(InputError):
        read_graph(tmp_path / "missing.json")


def test_graph_invariants() -> None:
    with pytest.raises(PlanragException):
        Edge(2, 1, 1.0)
    with pytest.raises(PlanragException):
        Edge(1, 2, 0.0)
    graph = build_rag(_hollow_square(), PipelineConfig())
    nodes = [graph.node(idx) for idx in graph.node_ids]
    with pytest.raises(PlanragException):
        RegionGraph(nodes, graph.edges + graph.edges[:1])
    with pytest.raises(PlanragException):
        RegionGraph(nodes + nodes[:1], [])
    with pytest.raises(PlanragException):
        graph.label(1)


def test_labels() -> None:
    assert CLASS_COUNT == 8
    assert [label.value for label in ALL_LABELS] == list(range(8))
    assert ClassLabel.from_name("Outer_Space") == ClassLabel.outer_space
    with pytest.raises(KeyError):
        ClassLabel.from_name("balcony")


def test_relabel_by_iou() -> None:
    graph = build_rag(_hollow_square(), PipelineConfig())
    truth = [
        (rect(10, 10, 50, 50), ClassLabel.wall),
        (rect(16, 16, 44, 44), ClassLabel.room),
        (rect(0, 0, 60, 10), ClassLabel.porch),
    ]
    labels = relabel_by_iou(graph.regions, truth)
    outer, wall, room = graph.node_ids
    assert labels[room] == ClassLabel.room
    assert labels[wall] == ClassLabel.wall
    assert labels[outer] == ClassLabel.porch

    far = relabel_by_iou(graph.regions, [(rect(100, 100, 110, 110), ClassLabel.room)])
    assert set(far.values()) == {ClassLabel.outer_space}
    with pytest.raises(PlanragException):
        relabel_by_iou(graph.regions, [])


def test_relabel_is_order_independent() -> None:
    graph = build_rag(_hollow_square(), PipelineConfig())
    # two identical truth polygons with different classes tie on IoU and area
    truth = [
        (rect(16, 16, 44, 44), ClassLabel.stair),
        (rect(16, 16, 44, 44), ClassLabel.room),
        (rect(10, 10, 50, 50), ClassLabel.wall),
    ]
    expected = relabel_by_iou(graph.regions, truth)
    assert expected[3] == ClassLabel.room
    shuffled = list(truth)
    for seed in range(5):
        random.Random(seed).shuffle(shuffled)
        assert relabel_by_iou(graph.regions, shuffled) == expected

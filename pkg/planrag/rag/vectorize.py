"""Vectorization of the filtered plan and RAG assembly.

Walls are ink regions and rooms are background regions bounded by ink,
so the connected components of both the ink and the background become
regions. Background components touching the raster border form a single
outer-space region.

Thin strokes (door leaves, swing arcs, thresholds, furniture outlines)
separate regions without being regions themselves: ink that does not
survive a binary opening with a (2k + 1) square is handed to the nearest
region after the background components have been computed.

Functions:
    label_regions(r, min_region_area, stroke_radius) -> (LabelRaster, outer id)
    vectorize(r, min_region_area, stroke_radius) -> (List[Region], LabelRaster)
    adjacency(regions, labels) -> List[Edge]
    build_rag(r, cfg) -> RegionGraph
"""

import logging
import time
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import ndimage

from planrag.exceptions import PlanragException
from planrag.features.zernike import ZernikeConfig, feature_pipeline
from planrag.geometry.operations import centroid
from planrag.geometry.primitives import largest_polygon
from planrag.raster.operations import label_mask, mask_to_shape
from planrag.raster.rasters import BinaryRaster, LabelRaster
from planrag.rag.region_graph import Edge, FeatureVector, Node, Region, RegionGraph
from planrag.utils.pipeline_config import PipelineConfig

logger_vectorize = logging.getLogger("Vectorize")
logger_features = logging.getLogger("Features")

# floor of the edge weight; a ring and the room it encloses share their centroid
MIN_EDGE_WEIGHT = 1e-6


def _border_labels(labels: np.ndarray) -> np.ndarray:
    border = np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    return np.unique(border[border > 0])


def label_regions(
    r: BinaryRaster, min_region_area: int = 4, stroke_radius: int = 0
) -> Tuple[LabelRaster, Optional[int]]:
    """Label ink and background regions of a binary plan.

    Args:
        r: filtered plan.
        min_region_area: regions with at most this many pixels are dropped
            (their pixels get label 0).
        stroke_radius: half width k of the thin strokes to dissolve; 0
            keeps every ink component.

    Returns:
        the label raster, ids renumbered by raster-scan order, and the id
        of the outer-space region (None when no background reaches the border).
    """
    ink = r.bits
    if stroke_radius > 0:
        size = 2 * stroke_radius + 1
        solid = ndimage.binary_opening(ink, structure=np.ones((size, size), dtype=bool))
    else:
        solid = ink

    ink_labels = label_mask(solid, 4)
    background_labels = label_mask(~ink, 4)
    ink_count = int(ink_labels.max()) if ink_labels.size else 0
    combined = np.where(solid, ink_labels, 0)
    combined = np.where(~ink & (background_labels > 0), background_labels + ink_count, combined)

    outer_label: Optional[int] = None
    border = _border_labels(np.where(~ink, combined, 0))
    if border.size:
        outer_label = int(border[0])
        combined[np.isin(combined, border)] = outer_label

    strokes = ink & ~solid
    if strokes.any() and (combined > 0).any():
        _, (rows, cols) = ndimage.distance_transform_edt(
            combined == 0, return_distances=True, return_indices=True
        )
        combined = np.where(strokes, combined[rows, cols], combined)

    ids, counts = np.unique(combined[combined > 0], return_counts=True)
    small = ids[counts <= min_region_area]
    if small.size:
        logger_vectorize.debug(f"dropping {small.size} regions of at most {min_region_area} px")
        combined[np.isin(combined, small)] = 0
        if outer_label is not None and outer_label in small:
            outer_label = None

    # renumber by raster-scan order of the first pixel
    flat = combined.ravel()
    present, first = np.unique(flat, return_index=True)
    order = [int(i) for i in present[np.argsort(first)] if i != 0]
    lookup = np.zeros(int(present.max()) + 1 if present.size else 1, dtype=np.int32)
    for new_id, old_id in enumerate(order, start=1):
        lookup[old_id] = new_id
    renumbered = lookup[combined]
    outer_id = int(lookup[outer_label]) if outer_label is not None else None
    return LabelRaster(renumbered), outer_id


def vectorize(
    r: BinaryRaster, min_region_area: int = 4, stroke_radius: int = 0
) -> Tuple[List[Region], LabelRaster]:
    """Regions of the plan with their pixel-exact polygons.

    Raises:
        PlanragException: if the raster yields no region.
    """
    labels, outer_id = label_regions(r, min_region_area, stroke_radius)
    values = labels.labels
    slices = ndimage.find_objects(values)
    counts = np.bincount(values.ravel(), minlength=len(slices) + 1)

    regions: List[Region] = []
    for idx, window in enumerate(slices, start=1):
        if window is None:
            continue
        shape = mask_to_shape(values[window] == idx, window[0].start, window[1].start)
        if shape.geom_type != "Polygon":
            logger_vectorize.debug(f"region {idx} is not 4-connected, keeping its largest part")
        polygon = largest_polygon(shape)
        regions.append(
            Region(idx, polygon, centroid(polygon), float(counts[idx]), idx == outer_id)
        )
    if not regions:
        raise PlanragException("vectorization found no region")
    logger_vectorize.debug(f"vectorized {len(regions)} regions")
    return regions, labels


def adjacency(regions: List[Region], labels: LabelRaster) -> List[Edge]:
    """Edges between regions with 4-neighboring pixels.

    The weight is the centroid distance; the contact is the number of
    neighboring pixel pairs.
    """
    values = labels.labels
    pairs = [
        np.stack([values[:, :-1].ravel(), values[:, 1:].ravel()], axis=1),
        np.stack([values[:-1, :].ravel(), values[1:, :].ravel()], axis=1),
    ]
    stacked = np.vstack(pairs)
    stacked = stacked[(stacked[:, 0] != stacked[:, 1]) & (stacked[:, 0] > 0) & (stacked[:, 1] > 0)]
    if not len(stacked):
        return []
    ordered = np.sort(stacked, axis=1)
    keys, contacts = np.unique(ordered, axis=0, return_counts=True)

    by_id: Dict[int, Region] = {region.id: region for region in regions}
    edges: List[Edge] = []
    for (first, second), contact in zip(keys, contacts):
        a, b = by_id.get(int(first)), by_id.get(int(second))
        if a is None or b is None:
            continue
        weight = max(a.centroid.distance(b.centroid), MIN_EDGE_WEIGHT)
        edges.append(Edge(int(first), int(second), weight, int(contact)))
    return edges


def zernike_config(cfg: PipelineConfig) -> ZernikeConfig:
    return ZernikeConfig(cfg.zernike_order, cfg.invariant_ratio_c, cfg.grid_D)


def graph_from_regions(
    regions: List[Region], labels: LabelRaster, cfg: Optional[PipelineConfig] = None
) -> RegionGraph:
    """Adjacency and per-node features for already vectorized regions."""
    cfg = cfg or PipelineConfig()
    edges = adjacency(regions, labels)
    degrees = {region.id: 0 for region in regions}
    for edge in edges:
        degrees[edge.source] += 1
        degrees[edge.target] += 1

    start = time.perf_counter()
    moments = zernike_config(cfg)
    nodes = []
    for region in regions:
        zernike = feature_pipeline(region.polygon, moments, cfg.normalize_features)
        nodes.append(Node(region, FeatureVector(degrees[region.id], region.area, zernike)))
    logger_features.debug(
        f"features of {len(nodes)} regions in {time.perf_counter() - start:.3f}s"
    )
    return RegionGraph(nodes, edges)


def build_rag(r: BinaryRaster, cfg: Optional[PipelineConfig] = None) -> RegionGraph:
    """Vectorize, connect adjacent regions and compute the node features."""
    cfg = cfg or PipelineConfig()
    regions, labels = vectorize(r, cfg.min_region_area, cfg.stroke_radius)
    return graph_from_regions(regions, labels, cfg)

"""End-to-end processing of a plan image.

Stages run in order: ``preprocess``, ``rag``, ``classify`` (the model's
prediction, or the ground truth transferred by IoU), ``postprocess`` and
``persist``. A failing stage is reported as ``PipelineStageError`` naming
the stage.

Classes:
    PlanInput: One plan to process.
    PipelineResult: Artifacts of a run.

Functions:
    run_pipeline(img, boxes, cfg, model, truth, out_dir) -> PipelineResult
    run_many(plans, cfg, model, out_dir) -> List[PipelineResult]
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, TypeVar, Union

from planrag.classifiers.abstract_classifier import AbstractClassifier
from planrag.exceptions import PipelineStageError, PlanragException
from planrag.pipeline.svg_io import export_svg, layers_from_graph
from planrag.postprocess.connectivity import RoomConnectivityGraph, write_rcg
from planrag.postprocess.postprocessing import (
    PostprocessResult,
    WallLayout,
    postprocess,
    write_walls,
)
from planrag.preprocess.building_filter import PreprocessStages, dump_stages, preprocess_stages
from planrag.preprocess.text_boxes import TextBox
from planrag.rag.labels import ClassLabel
from planrag.rag.region_graph import RegionGraph, write_graph
from planrag.rag.relabel import LabeledPolygon, relabel_by_iou
from planrag.rag.vectorize import build_rag
from planrag.raster.rasters import GrayRaster
from planrag.utils.pipeline_config import PipelineConfig

logger_pipeline = logging.getLogger("Pipeline")

T = TypeVar("T")
R = TypeVar("R")


# fields that do not change the node features
_NON_FEATURE_FIELDS = (
    "threshold",
    "refine_radius",
    "min_region_area",
    "stroke_radius",
    "dp_epsilon",
    "angle_min",
    "ortho_tol",
    "alg2_eps",
    "room_closing",
    "min_room_area",
    "association_tol",
    "quad_segs",
    "contains_samples",
    "workers",
)


@dataclass(frozen=True)
class PlanInput:
    name: str
    image: GrayRaster
    boxes: Sequence[TextBox] = ()
    truth: Optional[Sequence[LabeledPolygon]] = None


@dataclass(frozen=True)
class PipelineResult:
    """Artifacts of one run.

    Attributes:
        stages: intermediate rasters and outlines of the building filter.
        graph: the region adjacency graph with the labels used downstream.
        labels: node id -> class.
        post: rooms, doors, connectivity graph and wall layout.
    """

    stages: PreprocessStages
    graph: RegionGraph
    labels: Dict[int, ClassLabel]
    post: PostprocessResult

    @property
    def rcg(self) -> RoomConnectivityGraph:
        return self.post.rcg

    @property
    def walls(self) -> WallLayout:
        return self.post.walls


class _Stage:
    """Context manager turning a failure into ``PipelineStageError``."""

    def __init__(self, name: str):
        self.name = name
        self._start = 0.0

    def __enter__(self) -> "_Stage":
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:  # type: ignore[no-untyped-def]
        if exc is None:
            logger_pipeline.debug(f"{self.name}: {time.perf_counter() - self._start:.3f}s")
            return False
        if isinstance(exc, PipelineStageError) or not isinstance(exc, Exception):
            return False
        raise PipelineStageError(self.name, exc) from exc


def _labels(
    graph: RegionGraph,
    model: Optional[AbstractClassifier],
    truth: Optional[Sequence[LabeledPolygon]],
) -> Dict[int, ClassLabel]:
    if model is not None:
        return model.predict(graph)
    if truth is not None:
        return relabel_by_iou(graph.regions, truth)
    raise PlanragException("labels need either a model or ground-truth polygons")


def persist(result: PipelineResult, out_dir: Path) -> None:
    """Write every artifact of a run below ``out_dir``."""
    out_dir.mkdir(parents=True, exist_ok=True)
    dump_stages(result.stages, out_dir / "preprocess")
    write_graph(result.graph, out_dir / "graph.json")
    write_rcg(result.post.rcg, out_dir / "rcg.json")
    write_walls(result.post.walls, out_dir / "walls.json")
    filtered = result.stages.filtered
    layers = layers_from_graph(
        result.graph,
        filtered.width,
        filtered.height,
        result.post.walls.lines,
        result.post.walls.segments,
    )
    export_svg(layers, out_dir / "overlay.svg")


def run_pipeline(  # pylint: disable=too-many-arguments
    img: GrayRaster,
    boxes: Sequence[TextBox] = (),
    cfg: Optional[PipelineConfig] = None,
    model: Optional[AbstractClassifier] = None,
    truth: Optional[Sequence[LabeledPolygon]] = None,
    out_dir: Optional[Union[str, Path]] = None,
) -> PipelineResult:
    """Process a plan image end to end.

    Args:
        img: the plan, black ink on white.
        boxes: text boxes to erase before vectorization.
        cfg: pipeline configuration.
        model: classifier; when omitted, ``truth`` labels the graph.
        truth: ground-truth polygons, transferred to the regions by IoU.
        out_dir: directory receiving every stage artifact.

    Returns:
        the artifacts of all stages.

    Raises:
        PipelineStageError: if a stage fails; ``stage`` names it.
    """
    cfg = cfg or PipelineConfig()
    if model is not None:
        # features must be computed the way the model was trained
        cfg = model.cfg.with_overrides(
            {name: getattr(cfg, name) for name in _NON_FEATURE_FIELDS}
        )
    with _Stage("preprocess"):
        stages = preprocess_stages(img, boxes, cfg)
    with _Stage("rag"):
        graph = build_rag(stages.filtered, cfg)
    with _Stage("classify"):
        labels = _labels(graph, model, truth)
        graph = graph.with_labels(labels)
    with _Stage("postprocess"):
        post = postprocess(graph, cfg)
    result = PipelineResult(stages, graph, labels, post)
    if out_dir is not None:
        with _Stage("persist"):
            persist(result, Path(out_dir))
    logger_pipeline.info(
        f"{len(graph)} regions, {len(post.rcg.rooms)} rooms, {len(post.rcg.doors)} doors"
    )
    return result


def map_in_order(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """Apply ``fn`` to every item, on ``workers`` threads; results keep the input order."""
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results: Iterator[R] = executor.map(fn, items)
        return list(results)


def run_many(
    plans: Sequence[PlanInput],
    cfg: Optional[PipelineConfig] = None,
    model: Optional[AbstractClassifier] = None,
    out_dir: Optional[Union[str, Path]] = None,
) -> List[PipelineResult]:
    """Run the pipeline on independent plans, ``cfg.workers`` at a time.

    Artifacts of a plan go to ``out_dir / plan.name``.
    """
    cfg = cfg or PipelineConfig()

    def one(plan: PlanInput) -> PipelineResult:
        target = Path(out_dir) / plan.name if out_dir is not None else None
        logger_pipeline.debug(f"processing {plan.name}")
        return run_pipeline(plan.image, plan.boxes, cfg, model, plan.truth, target)

    return map_in_order(one, plans, cfg.workers)

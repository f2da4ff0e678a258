"""Rotation robustness experiments.

A model is scored on the test plans as drawn and again after rotating
every plan with ``rotate_expand``. The regions of the rotated plan are
vectorized anew and labeled with the truth polygon of highest IoU.

Classes:
    LabeledPlan: A plan image with its truth polygons.
    RotationReport: Scores on the original and the rotated plans.
    ArmReport: A named configuration and its rotation report.

Functions:
    labeled_graph(plan, cfg) -> RegionGraph
    rotation_experiment(plans, model, angle, cfg) -> RotationReport
    ratio_sweep(train, test, ratios, cfg, angle, compare_raw) -> List[ArmReport]
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from prettytable import PrettyTable

from planrag.classifiers.abstract_classifier import AbstractClassifier
from planrag.classifiers.metrics import MetricReport, PlanLabels, evaluate_many
from planrag.classifiers.training import train
from planrag.pipeline.orchestrator import map_in_order
from planrag.pipeline.synthetic import rotate_labeled
from planrag.preprocess.building_filter import preprocess_pipeline
from planrag.rag.labels import ALL_LABELS, ClassLabel
from planrag.rag.region_graph import RegionGraph
from planrag.rag.relabel import LabeledPolygon, relabel_by_iou
from planrag.rag.vectorize import build_rag
from planrag.raster.rasters import GrayRaster
from planrag.utils.pipeline_config import PipelineConfig

logger_pipeline = logging.getLogger("Pipeline")


@dataclass(frozen=True)
class LabeledPlan:
    image: GrayRaster
    truth: List[LabeledPolygon]


@dataclass(frozen=True)
class RotationReport:
    angle: float
    original: MetricReport
    rotated: MetricReport

    @property
    def delta(self) -> Dict[ClassLabel, Optional[float]]:
        """Per-class F1 of the original minus the rotated plans."""
        return self.original.delta(self.rotated)

    @property
    def macro_delta(self) -> float:
        return self.original.macro_f1 - self.rotated.macro_f1

    def table(self, title: Optional[str] = None) -> PrettyTable:
        table = PrettyTable(["Class", "F1", f"F1 {self.angle:g} deg", "Delta"])
        if title:
            table.title = title
        delta = self.delta
        for label in ALL_LABELS:
            table.add_row(
                [
                    label.name,
                    _fmt(self.original.f1[label]),
                    _fmt(self.rotated.f1[label]),
                    _fmt(delta[label]),
                ]
            )
        table.add_row(
            [
                "average (no outer)",
                _fmt(self.original.macro_f1),
                _fmt(self.rotated.macro_f1),
                _fmt(self.macro_delta),
            ]
        )
        return table

    def to_json(self) -> Dict[str, Any]:
        return {
            "angle": self.angle,
            "original": self.original.to_json(),
            "rotated": self.rotated.to_json(),
            "delta": {label.name: value for label, value in self.delta.items()},
            "macro_delta": self.macro_delta,
        }


@dataclass(frozen=True)
class ArmReport:
    name: str
    cfg: PipelineConfig
    report: RotationReport


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{100 * value:.2f}"


def labeled_graph(plan: LabeledPlan, cfg: PipelineConfig) -> RegionGraph:
    """Vectorize a plan and label its regions from the truth polygons."""
    graph = build_rag(preprocess_pipeline(plan.image, (), cfg), cfg)
    return graph.with_labels(relabel_by_iou(graph.regions, plan.truth))


def _scored(graph: RegionGraph, model: AbstractClassifier) -> PlanLabels:
    truth = {idx: graph.label(idx) for idx in graph.node_ids}
    areas = {region.id: region.area for region in graph.regions}
    return model.predict(graph), truth, areas


def rotation_experiment(
    plans: Sequence[LabeledPlan],
    model: AbstractClassifier,
    angle: float = 45.0,
    cfg: Optional[PipelineConfig] = None,
) -> RotationReport:
    """Score a model on the plans and on their rotated copies.

    Args:
        plans: test plans with truth polygons.
        model: trained classifier; its configuration defines the features.
        angle: rotation in degrees.
        cfg: supplies ``workers``; everything else comes from the model.

    Returns:
        both reports.
    """
    features_cfg = model.cfg
    workers = (cfg or features_cfg).workers

    def original(plan: LabeledPlan) -> PlanLabels:
        return _scored(labeled_graph(plan, features_cfg), model)

    def rotated(plan: LabeledPlan) -> PlanLabels:
        image, truth = rotate_labeled(plan.image, plan.truth, angle)
        return _scored(labeled_graph(LabeledPlan(image, truth), features_cfg), model)

    report = RotationReport(
        angle,
        evaluate_many(map_in_order(original, plans, workers)),
        evaluate_many(map_in_order(rotated, plans, workers)),
    )
    logger_pipeline.info(
        f"rotation {angle:g} deg: macro F1 {100 * report.original.macro_f1:.2f} -> "
        f"{100 * report.rotated.macro_f1:.2f}"
    )
    return report


def arm_configs(
    cfg: PipelineConfig, ratios: Sequence[float], compare_raw: bool = False
) -> List[Tuple[str, PipelineConfig]]:
    """(name, config) of every experiment arm."""
    arms = []
    for ratio in ratios:
        overrides = {"invariant_ratio_c": ratio, "normalize_features": True}
        arms.append((f"c={ratio:g}", cfg.with_overrides(overrides)))
    if compare_raw:
        arms.append(("raw", cfg.with_overrides({"normalize_features": False})))
    return arms


def ratio_sweep(  # pylint: disable=too-many-arguments
    train_plans: Sequence[LabeledPlan],
    test_plans: Sequence[LabeledPlan],
    ratios: Sequence[float],
    cfg: Optional[PipelineConfig] = None,
    angle: float = 45.0,
    compare_raw: bool = False,
    validation_plans: Sequence[LabeledPlan] = (),
) -> List[ArmReport]:
    """Train and score one model per invariant ratio.

    Args:
        train_plans: training plans.
        test_plans: plans scored unrotated and rotated.
        ratios: invariant ratios, one arm each.
        cfg: base configuration.
        angle: rotation in degrees.
        compare_raw: add an arm with raw, unnormalized moments.
        validation_plans: optional plans for model selection.

    Returns:
        one report per arm, in the order of ``ratios`` with the raw arm last.
    """
    cfg = cfg or PipelineConfig()
    reports = []
    for name, arm_cfg in arm_configs(cfg, ratios, compare_raw):
        logger_pipeline.info(f"experiment arm {name}")

        def graph(plan: LabeledPlan, arm: PipelineConfig = arm_cfg) -> RegionGraph:
            return labeled_graph(plan, arm)

        graphs = map_in_order(graph, train_plans, cfg.workers)
        validation = map_in_order(graph, validation_plans, cfg.workers) or None
        model = train(graphs, validation=validation, cfg=arm_cfg)
        reports.append(ArmReport(name, arm_cfg, rotation_experiment(test_plans, model, angle, cfg)))
    return reports

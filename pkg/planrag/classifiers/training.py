"""Training entry point shared by the CLI and the experiments."""

import logging
from typing import Optional, Sequence, Type

from planrag.classifiers.abstract_classifier import AbstractClassifier, TrainConfig
from planrag.classifiers.distance_weighted import DistanceWeightedNetwork
from planrag.exceptions import PlanragException
from planrag.rag.region_graph import RegionGraph
from planrag.utils.pipeline_config import PipelineConfig

logger_training = logging.getLogger("Training")


def train(
    graphs: Sequence[RegionGraph],
    train_cfg: Optional[TrainConfig] = None,
    validation: Optional[Sequence[RegionGraph]] = None,
    cfg: Optional[PipelineConfig] = None,
    classifier_class: Type[AbstractClassifier] = DistanceWeightedNetwork,
) -> AbstractClassifier:
    """Fit a new classifier on labeled graphs.

    Args:
        graphs: training graphs, every node labeled.
        train_cfg: optimization parameters; derived from ``cfg`` when omitted.
        validation: optional labeled graphs; the best validation epoch is kept.
        cfg: pipeline configuration holding the architecture parameters.
        classifier_class: classifier to instantiate.

    Returns:
        the trained classifier.

    Raises:
        PlanragException: if ``graphs`` is empty or contains unlabeled nodes.
    """
    if not graphs:
        raise PlanragException("training needs at least one graph")
    cfg = cfg or PipelineConfig()
    train_cfg = train_cfg or TrainConfig.from_pipeline(cfg)
    nodes = sum(len(g) for g in graphs)
    logger_training.info(
        f"training {classifier_class.NAME} on {len(graphs)} graphs ({nodes} nodes), "
        f"{train_cfg.epochs} epochs, lr {train_cfg.learning_rate}"
    )
    classifier = classifier_class(cfg)
    classifier.fit(graphs, train_cfg, validation)
    return classifier

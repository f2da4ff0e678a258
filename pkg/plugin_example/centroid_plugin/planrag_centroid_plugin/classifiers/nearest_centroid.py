"""Nearest centroid node classifier.

Every class is represented by the mean standardized feature vector of its
training nodes; a node scores each class by the negated squared distance
to its centroid. Graph structure is ignored, which makes this classifier a
baseline for the message passing one.
"""

import logging
from typing import Any, Dict, Optional, Sequence

import numpy as np

from planrag.classifiers.abstract_classifier import AbstractClassifier, TrainConfig
from planrag.classifiers.standardize import Standardizer, standardize
from planrag.exceptions import PlanragException
from planrag.rag.labels import CLASS_COUNT
from planrag.rag.region_graph import RegionGraph
from planrag.utils.pipeline_config import PipelineConfig

logger_training = logging.getLogger("Training")

# score of a class without training nodes
_ABSENT = -1e12


class NearestCentroid(AbstractClassifier):
    """Classify each node by the closest class centroid in feature space."""

    NAME = "nearest-centroid"
    DESCRIPTION = "Per-node nearest class centroid, ignores the graph edges"

    def __init__(self, cfg: Optional[PipelineConfig] = None):
        super().__init__(cfg)
        self._standardizer: Optional[Standardizer] = None
        self._centroids: Optional[np.ndarray] = None
        self._present: Optional[np.ndarray] = None

    def fit(
        self,
        graphs: Sequence[RegionGraph],
        train_cfg: TrainConfig,
        validation: Optional[Sequence[RegionGraph]] = None,
    ) -> None:
        self._standardizer, features = standardize(graphs)
        rows = np.vstack(features)
        targets = np.array(
            [g.label(idx).value for g in graphs for idx in g.node_ids]  # type: ignore[union-attr]
        )
        centroids = np.zeros((CLASS_COUNT, rows.shape[1]))
        present = np.zeros(CLASS_COUNT, dtype=bool)
        for label in range(CLASS_COUNT):
            members = rows[targets == label]
            if len(members):
                centroids[label] = members.mean(axis=0)
                present[label] = True
        self._centroids, self._present = centroids, present
        # a single pass, reported like an epoch
        self._loss_history = [float(np.mean(self._distances(rows).min(axis=1)))]
        logger_training.info(f"{int(present.sum())} class centroids from {len(rows)} nodes")

    def _distances(self, rows: np.ndarray) -> np.ndarray:
        assert self._centroids is not None
        diff = rows[:, None, :] - self._centroids[None, :, :]
        return np.einsum("ncf,ncf->nc", diff, diff)

    def logits(self, graph: RegionGraph) -> np.ndarray:
        if self._standardizer is None or self._present is None:
            raise PlanragException(f"{self.NAME} is not trained")
        if len(graph) == 0:
            return np.zeros((0, CLASS_COUNT))
        scores = -self._distances(self._standardizer.transform(graph.feature_matrix()))
        scores[:, ~self._present] = _ABSENT
        return scores

    def parameters_to_json(self) -> Dict[str, Any]:
        if self._standardizer is None or self._centroids is None or self._present is None:
            raise PlanragException(f"{self.NAME} is not trained")
        return {
            "standardizer": self._standardizer.to_json(),
            "centroids": self._centroids.tolist(),
            "present": self._present.tolist(),
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], cfg: PipelineConfig) -> "NearestCentroid":
        classifier = cls(cfg)
        classifier._standardizer = Standardizer.from_json(data["standardizer"])
        classifier._centroids = np.array(data["centroids"], dtype=float)
        classifier._present = np.array(data["present"], dtype=bool)
        return classifier

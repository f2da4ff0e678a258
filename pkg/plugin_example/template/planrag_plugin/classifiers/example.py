from typing import Any, Dict, Optional, Sequence

import numpy as np

from planrag.classifiers.abstract_classifier import AbstractClassifier, TrainConfig
from planrag.rag.region_graph import RegionGraph
from planrag.utils.pipeline_config import PipelineConfig


class Example(AbstractClassifier):
    """
    Documentation
    """

    NAME = "myclassifier"  # this is used to select the classifier and is stored in model files
    DESCRIPTION = "Description of the classifier."

    def fit(
        self,
        graphs: Sequence[RegionGraph],
        train_cfg: TrainConfig,
        validation: Optional[Sequence[RegionGraph]] = None,
    ) -> None:
        """This method will be called by `planrag train`.

        Every node of the training graphs is labeled. ``graph.feature_matrix()`` returns the
        node features, rows ordered like ``graph.node_ids``. Append the mean loss to
        ``self._loss_history`` once before training and after every epoch.

        See `centroid_plugin` for actual implementation of a plugin.
        """

    def logits(self, graph: RegionGraph) -> np.ndarray:
        """Return an (N, 8) array of class scores, rows ordered by node id."""
        return np.zeros((len(graph), 8))

    def parameters_to_json(self) -> Dict[str, Any]:
        """Return the trained parameters; they are stored in the model file."""
        return {}

    @classmethod
    def from_json(cls, data: Dict[str, Any], cfg: PipelineConfig) -> "Example":
        """Rebuild the classifier from the output of ``parameters_to_json``."""
        return cls(cfg)

"""Defines abstract base class for node classifiers in planrag.

All classifiers must inherit from ``AbstractClassifier``, set its class
attributes and implement its abstract methods. Classifiers are looked up
by ``NAME`` when a model file is loaded, so third-party classifiers
registered through the plugin entry point are read back like the
builtin ones.

Classes:
    IncorrectClassifierInitialization: Raised when a classifier misses
        a class attribute.
    TrainConfig: Optimization parameters of a training run.
    AbstractClassifier: Abstract class to represent node classifiers.

Functions:
    write_model(classifier, path) -> None
    read_model(path, classifier_classes) -> AbstractClassifier
"""

import abc
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Type, Union

import numpy as np

from planrag.exceptions import InputError, PlanragException
from planrag.rag.labels import ALL_LABELS, ClassLabel
from planrag.rag.region_graph import RegionGraph
from planrag.utils.pipeline_config import PipelineConfig

MODEL_FORMAT_VERSION = 1


class IncorrectClassifierInitialization(PlanragException):
    """Exception class to represent incorrect classifier initialization.

    This exception will be used if any of the necessary attributes of
    the AbstractClassifier are not set by the inheriting classifier class.
    """


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 40
    learning_rate: float = 0.01
    batch_size: int = 1
    seed: int = 7

    def __post_init__(self) -> None:
        if self.epochs < 1:
            raise PlanragException(f"epochs must be >= 1, got {self.epochs}")
        if not self.learning_rate > 0:
            raise PlanragException(f"learning rate must be > 0, got {self.learning_rate}")
        if self.batch_size < 1:
            raise PlanragException(f"batch size must be >= 1, got {self.batch_size}")

    @staticmethod
    def from_pipeline(cfg: PipelineConfig) -> "TrainConfig":
        return TrainConfig(cfg.epochs, cfg.learning_rate, cfg.batch_size, cfg.seed)


class AbstractClassifier(metaclass=abc.ABCMeta):
    """Abstract class to represent node classifiers.

    Attributes:
        NAME: Name of the classifier, used on the command line and stored
            in model files.
        DESCRIPTION: One line description shown by ``--list-classifiers``.

    Args:
        cfg: pipeline configuration holding the architecture parameters.

    Raises:
        IncorrectClassifierInitialization: if NAME or DESCRIPTION is not set.
    """

    NAME = ""
    DESCRIPTION = ""

    def __init__(self, cfg: Optional[PipelineConfig] = None):
        self._cfg = cfg or PipelineConfig()
        self._loss_history: List[float] = []

        if not self.NAME:
            raise IncorrectClassifierInitialization(
                f"NAME is not initialized {self.__class__.__name__}"
            )

        if not self.DESCRIPTION:
            raise IncorrectClassifierInitialization(
                f"DESCRIPTION is not initialized {self.__class__.__name__}"
            )

    @property
    def cfg(self) -> PipelineConfig:
        return self._cfg

    @property
    def loss_history(self) -> List[float]:
        """Mean training loss before training, then after every epoch."""
        return self._loss_history

    @abc.abstractmethod
    def fit(
        self,
        graphs: Sequence[RegionGraph],
        train_cfg: TrainConfig,
        validation: Optional[Sequence[RegionGraph]] = None,
    ) -> None:
        """Train on labeled graphs.

        Args:
            graphs: training graphs, every node labeled.
            train_cfg: optimization parameters.
            validation: optional labeled graphs used for model selection.
        """

    @abc.abstractmethod
    def logits(self, graph: RegionGraph) -> np.ndarray:
        """(N, 8) class scores, rows ordered by node id.

        # noqa: DAR202
        """

    def predict(self, graph: RegionGraph) -> Dict[int, ClassLabel]:
        """Highest scoring class of every node."""
        scores = self.logits(graph)
        return {
            idx: ClassLabel.from_index(int(np.argmax(row)))
            for idx, row in zip(graph.node_ids, scores)
        }

    @abc.abstractmethod
    def parameters_to_json(self) -> Dict[str, Any]:
        """Classifier specific part of the model file.

        # noqa: DAR202
        """

    @classmethod
    @abc.abstractmethod
    def from_json(cls, data: Dict[str, Any], cfg: PipelineConfig) -> "AbstractClassifier":
        """Rebuild a trained classifier from its model file.

        # noqa: DAR202
        """

    def to_json(self) -> Dict[str, Any]:
        return {
            "format_version": MODEL_FORMAT_VERSION,
            "name": self.NAME,
            "class_names": [label.name for label in ALL_LABELS],
            "config": self._cfg.to_yaml(),
            "parameters": self.parameters_to_json(),
        }


def write_model(classifier: AbstractClassifier, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(classifier.to_json(), f, sort_keys=True, indent=2)


def read_model(
    path: Union[str, Path], classifier_classes: Sequence[Type[AbstractClassifier]]
) -> AbstractClassifier:
    """Load a model file written by ``write_model``.

    Raises:
        InputError: if the file is unreadable, has an unknown version or
            names a classifier that is not available.
    """
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        raise InputError(f"cannot read model {path}: {err}") from err
    if not isinstance(data, dict) or data.get("format_version") != MODEL_FORMAT_VERSION:
        raise InputError(f"{path}: unsupported model format")
    if data.get("class_names") != [label.name for label in ALL_LABELS]:
        raise InputError(f"{path}: class encoding does not match")
    classifiers = {c.NAME: c for c in classifier_classes}
    name = data.get("name")
    if name not in classifiers:
        raise InputError(f"{path}: classifier {name} is not available")
    cfg = PipelineConfig.from_yaml(data.get("config"))
    try:
        return classifiers[name].from_json(data["parameters"], cfg)
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"{path}: malformed parameters: {err}") from err

"""Per-dimension z-score of node features."""

from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from planrag.exceptions import PlanragException
from planrag.rag.region_graph import RegionGraph

# dimensions with a smaller standard deviation are only centered
_MIN_SCALE = 1e-12


@dataclass(frozen=True)
class Standardizer:
    mean: Tuple[float, ...]
    scale: Tuple[float, ...]

    @staticmethod
    def fit(features: np.ndarray) -> "Standardizer":
        if features.ndim != 2 or features.shape[0] == 0:
            raise PlanragException("standardization needs at least one feature row")
        mean = features.mean(axis=0)
        std = features.std(axis=0)
        scale = np.where(std > _MIN_SCALE, std, 1.0)
        return Standardizer(tuple(float(v) for v in mean), tuple(float(v) for v in scale))

    @property
    def width(self) -> int:
        return len(self.mean)

    def transform(self, features: np.ndarray) -> np.ndarray:
        if features.ndim != 2 or features.shape[1] != self.width:
            raise PlanragException(
                f"expected {self.width} feature columns, got shape {features.shape}"
            )
        return (features - np.array(self.mean)) / np.array(self.scale)

    def to_json(self) -> Dict[str, Any]:
        return {"mean": list(self.mean), "scale": list(self.scale)}

    @staticmethod
    def from_json(data: Dict[str, Any]) -> "Standardizer":
        return Standardizer(
            tuple(float(v) for v in data["mean"]), tuple(float(v) for v in data["scale"])
        )


def standardize(graphs: Sequence[RegionGraph]) -> Tuple[Standardizer, List[np.ndarray]]:
    """Fit a z-score on all nodes of ``graphs`` and apply it to each graph.

    Raises:
        PlanragException: if no graph is given.
    """
    if not graphs:
        raise PlanragException("standardization needs at least one graph")
    transform = Standardizer.fit(np.vstack([g.feature_matrix() for g in graphs]))
    return transform, [transform.transform(g.feature_matrix()) for g in graphs]

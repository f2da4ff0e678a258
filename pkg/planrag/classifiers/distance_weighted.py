"""Distance-weighted mean-aggregation message passing network.

Every round concatenates a node state with the distance-weighted mean of
its neighbor states and applies a dense ReLU layer:

    h_v' = ReLU([h_v || sum_u w(u, v) h_u] W + b)

with ``w(u, v) = 1 / (1 + d_uv / mean_d)`` normalized over the neighbors
of ``v``; ``d_uv`` is the centroid distance and ``mean_d`` the mean edge
weight of the graph, so rescaling every distance leaves the weights
unchanged. A final linear layer gives the class scores. Gradients are
computed by hand and checked by ``gradient_check``.

Classes:
    GraphInput: Standardized features and aggregation matrix of a graph.
    DistanceWeightedNetwork: The reference classifier.

Functions:
    aggregation_matrix(graph) -> np.ndarray
    gradient_check(model, graph, labels) -> float
"""

import copy
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from planrag.classifiers.abstract_classifier import AbstractClassifier, TrainConfig
from planrag.classifiers.standardize import Standardizer, standardize
from planrag.exceptions import PlanragException
from planrag.rag.labels import CLASS_COUNT
from planrag.rag.region_graph import RegionGraph
from planrag.utils.pipeline_config import PipelineConfig

logger_training = logging.getLogger("Training")

Parameters = List[np.ndarray]


def aggregation_matrix(graph: RegionGraph) -> np.ndarray:
    """Row-normalized distance weights; isolated nodes get an all-zero row."""
    distances = graph.weight_matrix()
    connected = distances > 0
    if not connected.any():
        return np.zeros_like(distances)
    mean_distance = float(distances[connected].mean())
    raw = np.where(connected, 1.0 / (1.0 + distances / mean_distance), 0.0)
    totals = raw.sum(axis=1, keepdims=True)
    return np.divide(raw, totals, out=np.zeros_like(raw), where=totals > 0)


@dataclass(frozen=True)
class GraphInput:
    features: np.ndarray
    aggregation: np.ndarray
    labels: Optional[np.ndarray] = None


@dataclass
class _Cache:
    states: List[np.ndarray]
    concatenated: List[np.ndarray]
    pre_activations: List[np.ndarray]


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


class DistanceWeightedNetwork(AbstractClassifier):
    """Reference node classifier of planrag."""

    NAME = "distance-weighted"
    DESCRIPTION = "Message passing with distance-weighted mean aggregation"

    def __init__(self, cfg: Optional[PipelineConfig] = None):
        super().__init__(cfg)
        self._params: Parameters = []
        self._standardizer: Optional[Standardizer] = None

    @property
    def params(self) -> Parameters:
        return self._params

    @property
    def standardizer(self) -> Optional[Standardizer]:
        return self._standardizer

    @property
    def layer_count(self) -> int:
        return self._cfg.layer_count

    def initialize(self, input_width: int, seed: int) -> None:
        """He-initialize the weights for ``input_width`` features; biases start at zero."""
        rng = np.random.default_rng(seed)
        width = self._cfg.hidden_width
        params: Parameters = []
        fan_in = 2 * input_width
        for _ in range(self.layer_count):
            params.append(rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, width)))
            params.append(np.zeros(width))
            fan_in = 2 * width
        params.append(rng.normal(0.0, np.sqrt(2.0 / width), size=(width, CLASS_COUNT)))
        params.append(np.zeros(CLASS_COUNT))
        self._params = params

    def prepare(self, graph: RegionGraph, with_labels: bool = False) -> GraphInput:
        if self._standardizer is None:
            raise PlanragException(f"{self.NAME} classifier is not trained")
        features = self._standardizer.transform(graph.feature_matrix())
        labels = graph.label_vector() if with_labels else None
        return GraphInput(features, aggregation_matrix(graph), labels)

    def forward(
        self, inputs: GraphInput, params: Optional[Parameters] = None
    ) -> Tuple[np.ndarray, _Cache]:
        """Class scores of every node and the intermediate values for backprop.

        Raises:
            PlanragException: on a feature width that does not match the weights.
        """
        params = self._params if params is None else params
        state = inputs.features
        if state.shape[1] * 2 != params[0].shape[0]:
            raise PlanragException(
                f"feature width {state.shape[1]} does not match the first layer {params[0].shape}"
            )
        cache = _Cache([], [], [])
        for layer in range(self.layer_count):
            weight, bias = params[2 * layer], params[2 * layer + 1]
            concatenated = np.hstack([state, inputs.aggregation @ state])
            pre_activation = concatenated @ weight + bias
            cache.states.append(state)
            cache.concatenated.append(concatenated)
            cache.pre_activations.append(pre_activation)
            state = np.maximum(pre_activation, 0.0)
        cache.states.append(state)
        return state @ params[-2] + params[-1], cache

    def loss_and_gradients(
        self, inputs: GraphInput, params: Optional[Parameters] = None
    ) -> Tuple[float, Parameters]:
        """Mean cross-entropy over the nodes and its gradient for every parameter."""
        params = self._params if params is None else params
        if inputs.labels is None:
            raise PlanragException("loss needs labeled nodes")
        logits, cache = self.forward(inputs, params)
        count = logits.shape[0]
        probabilities = _softmax(logits)
        picked = probabilities[np.arange(count), inputs.labels]
        loss = float(-np.mean(np.log(np.maximum(picked, 1e-300))))

        d_logits = probabilities
        d_logits[np.arange(count), inputs.labels] -= 1.0
        d_logits /= count

        gradients: Parameters = [np.zeros_like(p) for p in params]
        gradients[-2] = cache.states[-1].T @ d_logits
        gradients[-1] = d_logits.sum(axis=0)
        d_state = d_logits @ params[-2].T
        for layer in reversed(range(self.layer_count)):
            weight = params[2 * layer]
            d_pre = d_state * (cache.pre_activations[layer] > 0)
            gradients[2 * layer] = cache.concatenated[layer].T @ d_pre
            gradients[2 * layer + 1] = d_pre.sum(axis=0)
            d_concatenated = d_pre @ weight.T
            width = cache.states[layer].shape[1]
            d_state = d_concatenated[:, :width] + inputs.aggregation.T @ d_concatenated[:, width:]
        return loss, gradients

    def loss(self, inputs: GraphInput, params: Optional[Parameters] = None) -> float:
        return self.loss_and_gradients(inputs, params)[0]

    def logits(self, graph: RegionGraph) -> np.ndarray:
        return self.forward(self.prepare(graph))[0]

    def _mean_loss(self, inputs: Sequence[GraphInput]) -> float:
        return float(np.mean([self.loss(i) for i in inputs]))

    def fit(
        self,
        graphs: Sequence[RegionGraph],
        train_cfg: TrainConfig,
        validation: Optional[Sequence[RegionGraph]] = None,
    ) -> None:
        """Plain SGD over shuffled mini-batches of graphs.

        With a validation set the parameters of the epoch with the lowest
        validation loss are kept.
        """
        if not graphs:
            raise PlanragException("training needs at least one graph")
        for graph in graphs:
            if not graph.is_labeled:
                raise PlanragException("every training node must be labeled")
        self._standardizer, _ = standardize(graphs)
        self.initialize(self._standardizer.width, train_cfg.seed)
        rng = np.random.default_rng(train_cfg.seed)

        train_inputs = [self.prepare(g, with_labels=True) for g in graphs]
        valid_inputs = [self.prepare(g, with_labels=True) for g in validation or []]
        self._loss_history = [self._mean_loss(train_inputs)]
        best_loss = self._mean_loss(valid_inputs) if valid_inputs else None
        best_params = copy.deepcopy(self._params)
        logger_training.info(f"initial loss {self._loss_history[0]:.4f}")

        for epoch in range(1, train_cfg.epochs + 1):
            order = rng.permutation(len(train_inputs))
            for start in range(0, len(order), train_cfg.batch_size):
                batch = [train_inputs[i] for i in order[start : start + train_cfg.batch_size]]
                totals = [np.zeros_like(p) for p in self._params]
                for inputs in batch:
                    _, gradients = self.loss_and_gradients(inputs)
                    for total, gradient in zip(totals, gradients):
                        total += gradient
                for param, total in zip(self._params, totals):
                    param -= train_cfg.learning_rate * total / len(batch)

            epoch_loss = self._mean_loss(train_inputs)
            self._loss_history.append(epoch_loss)
            message = f"epoch {epoch}/{train_cfg.epochs}: loss {epoch_loss:.4f}"
            if valid_inputs:
                valid_loss = self._mean_loss(valid_inputs)
                message += f", validation loss {valid_loss:.4f}"
                if best_loss is None or valid_loss < best_loss:
                    best_loss = valid_loss
                    best_params = copy.deepcopy(self._params)
            logger_training.info(message)

        if valid_inputs:
            self._params = best_params

    def parameters_to_json(self) -> Dict[str, Any]:
        if self._standardizer is None:
            raise PlanragException(f"{self.NAME} classifier is not trained")
        return {
            "shapes": [list(p.shape) for p in self._params],
            "values": [p.ravel().tolist() for p in self._params],
            "standardizer": self._standardizer.to_json(),
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], cfg: PipelineConfig) -> "DistanceWeightedNetwork":
        model = cls(cfg)
        shapes, values = data["shapes"], data["values"]
        if len(shapes) != 2 * cfg.layer_count + 2 or len(values) != len(shapes):
            raise ValueError(f"expected {2 * cfg.layer_count + 2} parameter arrays")
        model._params = [
            np.array(v, dtype=float).reshape(tuple(s)) for s, v in zip(shapes, values)
        ]
        model._standardizer = Standardizer.from_json(data["standardizer"])
        return model


def _relu_masks(
    model: DistanceWeightedNetwork, inputs: GraphInput, params: Parameters
) -> List[np.ndarray]:
    _, cache = model.forward(inputs, params)
    return [z > 0 for z in cache.pre_activations]


def gradient_check(  # pylint: disable=too-many-locals
    model: DistanceWeightedNetwork,
    graph: RegionGraph,
    labels: Optional[np.ndarray] = None,
    samples: int = 100,
    step: float = 1e-5,
    seed: int = 0,
) -> float:
    """Largest relative error between backprop and central differences.

    ``samples`` parameter entries are drawn at random. Entries whose
    perturbation flips a ReLU are skipped: the loss is not differentiable
    across the kink.

    Args:
        model: initialized model with a standardizer.
        graph: small graph, labeled unless ``labels`` is given.
        labels: optional class indices overriding the graph labels.
        samples: number of checked entries.
        step: finite difference step.
        seed: sampling seed.

    Returns:
        max over checked entries of |a - n| / max(|a| + |n|, 1e-6).
    """
    inputs = model.prepare(graph, with_labels=labels is None)
    if labels is not None:
        inputs = GraphInput(inputs.features, inputs.aggregation, np.asarray(labels))
    params = [p.copy() for p in model.params]
    _, analytic = model.loss_and_gradients(inputs, params)
    base_masks = _relu_masks(model, inputs, params)

    rng = np.random.default_rng(seed)
    sizes = np.array([p.size for p in params])
    flat_choices = rng.choice(int(sizes.sum()), size=min(samples, int(sizes.sum())), replace=False)
    offsets = np.concatenate([[0], np.cumsum(sizes)])

    worst = 0.0
    for flat in flat_choices:
        which = int(np.searchsorted(offsets, flat, side="right") - 1)
        index = np.unravel_index(int(flat - offsets[which]), params[which].shape)
        original = params[which][index]

        params[which][index] = original + step
        plus_masks = _relu_masks(model, inputs, params)
        plus = model.loss(inputs, params)
        params[which][index] = original - step
        minus_masks = _relu_masks(model, inputs, params)
        minus = model.loss(inputs, params)
        params[which][index] = original

        flipped = any(
            not np.array_equal(base, other)
            for masks in (plus_masks, minus_masks)
            for base, other in zip(base_masks, masks)
        )
        if flipped:
            continue
        numeric = (plus - minus) / (2 * step)
        exact = float(analytic[which][index])
        worst = max(worst, abs(exact - numeric) / max(abs(exact) + abs(numeric), 1e-6))
    return worst

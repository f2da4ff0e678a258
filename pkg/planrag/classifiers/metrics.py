"""Node classification metrics.

F1 is counted per node. IoU is weighted by region pixel area:
IoU_c = area(pred_c and truth_c) / area(pred_c or truth_c). A class that
appears in neither prediction nor truth has no score (``None``) and is
left out of the macro averages, which never include outer space.

Classes:
    MetricReport: Per-class and macro-averaged scores.

Functions:
    evaluate(pred, truth, areas) -> MetricReport
    evaluate_many(plans) -> MetricReport
    collapse_labels(labels, classes) -> Dict[int, ClassLabel]
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from prettytable import PrettyTable

from planrag.exceptions import PlanragException
from planrag.rag.labels import ALL_LABELS, CLASS_COUNT, ClassLabel

Labels = Mapping[int, ClassLabel]
PlanLabels = Tuple[Labels, Labels, Mapping[int, float]]


def _macro(scores: Mapping[ClassLabel, Optional[float]]) -> float:
    values = [v for c, v in scores.items() if c != ClassLabel.outer_space and v is not None]
    return float(np.mean(values)) if values else 0.0


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{100 * value:.2f}"


@dataclass(frozen=True)
class MetricReport:
    f1: Dict[ClassLabel, Optional[float]]
    iou: Dict[ClassLabel, Optional[float]]
    accuracy: float
    node_count: int

    @property
    def macro_f1(self) -> float:
        """Mean F1 over the scored classes except outer space."""
        return _macro(self.f1)

    @property
    def macro_iou(self) -> float:
        return _macro(self.iou)

    def delta(self, other: "MetricReport") -> Dict[ClassLabel, Optional[float]]:
        """Per-class F1 of ``self`` minus ``other``; None where either is unscored."""
        result: Dict[ClassLabel, Optional[float]] = {}
        for label in ALL_LABELS:
            mine, theirs = self.f1[label], other.f1[label]
            result[label] = None if mine is None or theirs is None else mine - theirs
        return result

    def table(self, title: Optional[str] = None) -> PrettyTable:
        table = PrettyTable(["Class", "F1", "IoU"])
        if title:
            table.title = title
        for label in ALL_LABELS:
            table.add_row([label.name, _fmt(self.f1[label]), _fmt(self.iou[label])])
        table.add_row(["average (no outer)", _fmt(self.macro_f1), _fmt(self.macro_iou)])
        return table

    def to_json(self) -> Dict[str, Any]:
        return {
            "f1": {label.name: self.f1[label] for label in ALL_LABELS},
            "iou": {label.name: self.iou[label] for label in ALL_LABELS},
            "macro_f1": self.macro_f1,
            "macro_iou": self.macro_iou,
            "accuracy": self.accuracy,
            "node_count": self.node_count,
        }


def evaluate_many(plans: Iterable[PlanLabels]) -> MetricReport:
    """Pool the node and area counts of several plans into one report.

    Args:
        plans: (prediction, truth, region areas) per plan, keyed by node id.

    Returns:
        the pooled report.

    Raises:
        PlanragException: if a plan's prediction and truth cover different nodes.
    """
    true_pos = np.zeros(CLASS_COUNT)
    false_pos = np.zeros(CLASS_COUNT)
    false_neg = np.zeros(CLASS_COUNT)
    inter = np.zeros(CLASS_COUNT)
    union = np.zeros(CLASS_COUNT)
    correct = 0
    total = 0

    for pred, truth, areas in plans:
        if set(pred) != set(truth):
            raise PlanragException("prediction and truth must cover the same nodes")
        for idx in sorted(truth):
            p, t = pred[idx].value, truth[idx].value
            area = float(areas[idx])
            total += 1
            if p == t:
                correct += 1
                true_pos[p] += 1
                inter[p] += area
                union[p] += area
            else:
                false_pos[p] += 1
                false_neg[t] += 1
                union[p] += area
                union[t] += area

    f1: Dict[ClassLabel, Optional[float]] = {}
    iou: Dict[ClassLabel, Optional[float]] = {}
    for label in ALL_LABELS:
        c = label.value
        if true_pos[c] + false_pos[c] + false_neg[c] == 0:
            f1[label] = None
        else:
            f1[label] = float(2 * true_pos[c] / (2 * true_pos[c] + false_pos[c] + false_neg[c]))
        iou[label] = float(inter[c] / union[c]) if union[c] > 0 else None
    return MetricReport(f1, iou, correct / total if total else 0.0, total)


def evaluate(pred: Labels, truth: Labels, areas: Mapping[int, float]) -> MetricReport:
    return evaluate_many([(pred, truth, areas)])


def collapse_labels(labels: Labels, classes: Sequence[ClassLabel]) -> Dict[int, ClassLabel]:
    """Relabel every node of ``classes`` as a room."""
    collapsed = set(classes)
    return {idx: ClassLabel.room if c in collapsed else c for idx, c in labels.items()}


def parse_class_list(text: str) -> List[ClassLabel]:
    """Comma-separated class names, e.g. ``stair,object,porch``.

    Raises:
        PlanragException: on an unknown class name.
    """
    labels = []
    for name in filter(None, (part.strip() for part in text.split(","))):
        try:
            labels.append(ClassLabel.from_name(name))
        except KeyError as err:
            raise PlanragException(f"unknown class {name}") from err
    return labels

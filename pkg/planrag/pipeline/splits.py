"""Seed-deterministic train/test/validation splits of a plan directory."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from planrag.exceptions import InputError

logger_pipeline = logging.getLogger("Pipeline")

SPLIT_FORMAT_VERSION = 1

IMAGE_SUFFIXES = (".png", ".pgm", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff")


@dataclass(frozen=True)
class Split:
    train: List[str]
    test: List[str]
    validation: List[str]
    seed: int

    def to_json(self) -> Dict[str, Any]:
        return {
            "format_version": SPLIT_FORMAT_VERSION,
            "seed": self.seed,
            "train": self.train,
            "test": self.test,
            "validation": self.validation,
        }

    @staticmethod
    def from_json(data: Any) -> "Split":
        if not isinstance(data, dict) or data.get("format_version") != SPLIT_FORMAT_VERSION:
            raise InputError("unsupported split document")
        try:
            return Split(
                [str(name) for name in data["train"]],
                [str(name) for name in data["test"]],
                [str(name) for name in data["validation"]],
                int(data["seed"]),
            )
        except (KeyError, TypeError, ValueError) as err:
            raise InputError(f"malformed split document: {err}") from err


def plan_names(directory: Union[str, Path]) -> List[str]:
    """Sorted file names of the plan images in a directory.

    Raises:
        InputError: if the directory does not exist.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise InputError(f"not a directory: {directory}")
    return sorted(
        p.name for p in directory.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    )


def resolve_count(value: str, total: int, name: str) -> int:
    """A count such as "280", or a fraction of ``total`` such as "0.7".

    Raises:
        InputError: on a malformed or negative size.
    """
    try:
        if "." in value:
            fraction = float(value)
            if not 0 <= fraction <= 1:
                raise ValueError(value)
            return int(round(fraction * total))
        count = int(value)
        if count < 0:
            raise ValueError(value)
        return count
    except ValueError as err:
        raise InputError(f"{name}: expected a count or a fraction, got {value!r}") from err


def split_plans(
    names: List[str], train: str, test: str, validation: str, seed: int
) -> Split:
    """Shuffle the names with ``seed`` and cut them into the three parts.

    Raises:
        InputError: if the parts need more plans than there are.
    """
    total = len(names)
    counts = [
        resolve_count(train, total, "train"),
        resolve_count(test, total, "test"),
        resolve_count(validation, total, "validation"),
    ]
    if sum(counts) > total:
        raise InputError(f"split needs {sum(counts)} plans, only {total} available")
    order = np.random.default_rng(seed).permutation(total)
    shuffled = [names[int(i)] for i in order]
    first, second = counts[0], counts[0] + counts[1]
    split = Split(
        sorted(shuffled[:first]),
        sorted(shuffled[first:second]),
        sorted(shuffled[second : second + counts[2]]),
        seed,
    )
    unused = total - sum(counts)
    if unused:
        logger_pipeline.warning(f"{unused} plans are in no split")
    return split


def write_split(split: Split, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(split.to_json(), f, sort_keys=True, indent=2)


def read_split(path: Union[str, Path]) -> Split:
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        raise InputError(f"cannot read split {path}: {err}") from err
    return Split.from_json(data)

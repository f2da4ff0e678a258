"""Pipeline configuration read from YAML (or JSON) files.

Every tunable of the pipeline lives in one ``PipelineConfig``. Files
hold a flat mapping of field name to value; missing keys take their
defaults, unknown keys and out-of-range values are rejected.

Classes:
    InvalidPipelineConfiguration: Raised for unknown keys or bad values.
    PipelineConfig: All parameters of a pipeline run.

Functions:
    read_config_from_file(file) -> PipelineConfig
    write_config_to_file(file, config) -> None
"""

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

import yaml

from planrag.exceptions import PlanragException

CONFIG_FORMAT_VERSION = 1


class InvalidPipelineConfiguration(PlanragException):
    pass


def check_fields_are_known(known_fields: List[str], config: Dict[str, Any]) -> List[str]:
    unknown_fields: List[str] = []
    for field in config:
        if field not in known_fields:
            unknown_fields.append(field)
    return unknown_fields


# field -> (predicate, description of the accepted range)
_RANGES: Dict[str, Tuple[Callable[[Any], bool], str]] = {
    "threshold": (lambda v: 0 <= v <= 255, "0..255"),
    "refine_radius": (lambda v: v > 0, "> 0"),
    "invariant_ratio_c": (lambda v: v > 0, "> 0"),
    "zernike_order": (lambda v: v >= 0, ">= 0"),
    "grid_D": (lambda v: v >= 32, ">= 32"),
    "dp_epsilon": (lambda v: v >= 0, ">= 0"),
    "angle_min": (lambda v: 0 < v <= 90, "0 < angle_min <= 90"),
    "ortho_tol": (lambda v: 0 <= v < 90, "0 <= ortho_tol < 90"),
    "alg2_eps": (lambda v: v > 0, "> 0"),
    "min_region_area": (lambda v: v >= 0, ">= 0"),
    "stroke_radius": (lambda v: v >= 0, ">= 0"),
    "room_closing": (lambda v: v >= 0, ">= 0"),
    "min_room_area": (lambda v: v >= 0, ">= 0"),
    "association_tol": (lambda v: v >= 0, ">= 0"),
    "quad_segs": (lambda v: v >= 1, ">= 1"),
    "contains_samples": (lambda v: v >= 1, ">= 1"),
    "layer_count": (lambda v: v >= 1, ">= 1"),
    "hidden_width": (lambda v: v >= 1, ">= 1"),
    "epochs": (lambda v: v >= 1, ">= 1"),
    "learning_rate": (lambda v: v > 0, "> 0"),
    "batch_size": (lambda v: v >= 1, ">= 1"),
    "seed": (lambda v: v >= 0, ">= 0"),
    "workers": (lambda v: v >= 1, ">= 1"),
}


@dataclass(frozen=True)
class PipelineConfig:  # pylint: disable=too-many-instance-attributes
    """Parameters of every pipeline stage.

    Attributes:
        threshold: binarization threshold, ink is darker than this.
        refine_radius: disk radius of the outline opening.
        invariant_ratio_c: target fraction of the unit disk a normalized
            polygon covers.
        zernike_order: highest Zernike order.
        grid_D: resolution of the moment integration grid.
        normalize_features: centroid/scale normalization before the
            moments; False computes raw moments on the region crop.
        dp_epsilon: Douglas-Peucker tolerance used by post-processing.
        angle_min: minimal angle between the two lines kept per vertex.
        ortho_tol: tolerance around 90 degrees of the orthogonality filter.
        alg2_eps: minimal distance of a construction seed to the lines.
        min_region_area: regions of at most this many pixels are dropped.
        stroke_radius: thin-stroke half width dissolved during vectorization.
        room_closing: buffer radius of the room hole-closing step.
        min_room_area: room fragments below this area are merged like objects.
        association_tol: wall/room association distance.
        quad_segs: disk segments per quadrant used by buffering.
        contains_samples: samples per segment of the containment test.
        layer_count: message passing rounds of the reference classifier.
        hidden_width: hidden state width of the reference classifier.
        epochs: training epochs.
        learning_rate: SGD step size.
        batch_size: graphs per gradient step.
        seed: seed of every random choice.
        workers: plans processed in parallel.
    """

    threshold: int = 128
    refine_radius: float = 5.0
    invariant_ratio_c: float = 1.0 / 80.0
    zernike_order: int = 6
    grid_D: int = 256  # pylint: disable=invalid-name
    normalize_features: bool = True
    dp_epsilon: float = 1.0
    angle_min: float = 40.0
    ortho_tol: float = 10.0
    alg2_eps: float = 0.5
    min_region_area: int = 4
    stroke_radius: int = 2
    room_closing: float = 1.5
    min_room_area: float = 40.0
    association_tol: float = 1.5
    quad_segs: int = 16
    contains_samples: int = 8
    layer_count: int = 6
    hidden_width: int = 64
    epochs: int = 40
    learning_rate: float = 0.01
    batch_size: int = 1
    seed: int = 7
    workers: int = 1

    def __post_init__(self) -> None:
        for field in fields(self):
            value = getattr(self, field.name)
            if field.name in _RANGES:
                predicate, accepted = _RANGES[field.name]
                if not predicate(value):
                    raise InvalidPipelineConfiguration(
                        f"{field.name}: {value} is out of range ({accepted})"
                    )

    @staticmethod
    def field_names() -> List[str]:
        return [field.name for field in fields(PipelineConfig)]

    @staticmethod
    def from_yaml(config: Dict[str, Any]) -> "PipelineConfig":
        if config is None:
            return PipelineConfig()
        if not isinstance(config, dict):
            raise InvalidPipelineConfiguration("configuration must be a mapping")
        config = dict(config)
        version = config.pop("format_version", CONFIG_FORMAT_VERSION)
        if version != CONFIG_FORMAT_VERSION:
            raise InvalidPipelineConfiguration(f"format_version: unsupported version {version}")

        unknown_fields = check_fields_are_known(PipelineConfig.field_names(), config)
        if unknown_fields:
            raise InvalidPipelineConfiguration(
                f'Following fields are unknown: {", ".join(unknown_fields)}'
            )
        return PipelineConfig().with_overrides(config)

    def with_overrides(self, overrides: Dict[str, Any]) -> "PipelineConfig":
        """Copy of the config with some fields replaced.

        Values are coerced to the field type; ``None`` values are ignored.

        Raises:
            InvalidPipelineConfiguration: if a value has the wrong type or range.
        """
        types = {field.name: field.type for field in fields(self)}
        coerced: Dict[str, Any] = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in types:
                raise InvalidPipelineConfiguration(f"{key}: unknown field")
            coerced[key] = _coerce(key, value, types[key])
        return replace(self, **coerced)

    def to_yaml(self) -> Dict[str, Any]:
        output: Dict[str, Any] = {"format_version": CONFIG_FORMAT_VERSION}
        for field in fields(self):
            output[field.name] = getattr(self, field.name)
        return output


def _coerce(key: str, value: Any, field_type: Any) -> Any:
    type_name = field_type if isinstance(field_type, str) else field_type.__name__
    try:
        if type_name == "bool":
            if isinstance(value, bool):
                return value
            if isinstance(value, str) and value.lower() in ("true", "false"):
                return value.lower() == "true"
            raise ValueError(value)
        if type_name == "int":
            if isinstance(value, bool) or float(value) != int(float(value)):
                raise ValueError(value)
            return int(float(value))
        if isinstance(value, bool):
            raise ValueError(value)
        return float(value)
    except (TypeError, ValueError):
        # pylint: disable=raise-missing-from
        raise InvalidPipelineConfiguration(f"{key}: expected {type_name}, got {value!r}")


def read_config_from_file(file: Path) -> PipelineConfig:
    """Parse a YAML or JSON configuration file.

    Raises:
        InvalidPipelineConfiguration: if the file cannot be parsed or holds bad values.
    """
    try:
        with open(file, encoding="utf-8") as f:
            d = yaml.safe_load(f.read())
    except (OSError, yaml.YAMLError) as err:
        raise InvalidPipelineConfiguration(f"cannot read configuration {file}: {err}") from err
    return PipelineConfig.from_yaml(d)


def write_config_to_file(file: Path, config: PipelineConfig) -> None:
    with open(file, "w", encoding="utf-8") as f:
        yaml.safe_dump(config.to_yaml(), f, sort_keys=False)

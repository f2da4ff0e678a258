import math
from typing import Callable, List, Tuple

import numpy as np
import pytest

from planrag.exceptions import PlanragException
from planrag.features.zernike import (
    NormalizedPolygon,
    ZernikeConfig,
    amplitudes,
    feature_pipeline,
    invariant_ratio,
    normalize,
    radial_polynomial,
    zernike_indices,
)
from planrag.geometry.operations import area, centroid, origin_radius
from planrag.geometry.primitives import Point, PolygonWithHoles
from planrag.raster.operations import rotate_polygon

from tests.utils import random_star, rect

RADIAL_TESTS: List[Tuple[int, int, Callable[[float], float]]] = [
    (0, 0, lambda r: 1.0),
    (1, 1, lambda r: r),
    (2, 0, lambda r: 2 * r**2 - 1),
    (2, 2, lambda r: r**2),
    (3, 1, lambda r: 3 * r**3 - 2 * r),
    (4, 0, lambda r: 6 * r**4 - 6 * r**2 + 1),
    (6, 6, lambda r: r**6),
]


@pytest.mark.parametrize("test", RADIAL_TESTS)  # type: ignore
def test_radial_polynomial(test: Tuple[int, int, Callable[[float], float]]) -> None:
    n, m, expected = test
    for rho in (0.0, 0.3, 0.75, 1.0):
        assert radial_polynomial(n, m, rho) == pytest.approx(expected(rho), abs=1e-12)
    # R_nm(1) = 1 for every valid index
    assert radial_polynomial(n, m, 1.0) == pytest.approx(1.0)


def test_radial_polynomial_invalid_index() -> None:
    for n, m in ((2, 1), (1, 2), (3, -1)):
        with pytest.raises(PlanragException):
            radial_polynomial(n, m, 0.5)


def test_zernike_indices() -> None:
    indices = zernike_indices(6)
    assert len(indices) == 16
    assert indices[:4] == [(0, 0), (1, 1), (2, 0), (2, 2)]
    assert indices == sorted(indices)
    assert all((n - m) % 2 == 0 and 0 <= m <= n for n, m in indices)


def test_zernike_config_ranges() -> None:
    for kwargs in ({"n_max": -1}, {"c": 0.0}, {"grid": 16}):
        with pytest.raises(PlanragException):
            ZernikeConfig(**kwargs)  # type: ignore[arg-type]


def test_scaling_bound_oracle() -> None:
    """Every vertex of F*M lies in the disk of radius r iff F <= r / R_M."""
    rng = np.random.default_rng(1)
    for _ in range(1000):
        polygon = random_star(rng)
        coords = polygon.exterior.coords()
        r = float(rng.uniform(0.5, 2.0))
        bound = r / origin_radius(polygon)
        factor = float(rng.uniform(0.2, 2.0)) * bound
        inside = bool(np.all(np.hypot(*(factor * coords).T) <= r * (1 + 1e-12)))
        assert inside == (factor <= bound * (1 + 1e-12))


def test_containment_oracle() -> None:
    """The normalized polygon fits the disk iff c <= invariant_ratio(p)."""
    rng = np.random.default_rng(2)
    for _ in range(1000):
        polygon = random_star(rng)
        ratio = invariant_ratio(polygon)
        c = float(rng.uniform(0.01, 1.5))
        normalized = normalize(polygon, c)
        coords = normalized.polygon.exterior.coords()
        farthest = float(np.max(np.hypot(coords[:, 0], coords[:, 1])))
        assert normalized.fully_captured == (c <= ratio)
        if abs(c - ratio) > 1e-9:
            assert (farthest <= 1.0) == (c <= ratio)


def test_containment_at_equality() -> None:
    polygon = random_star(np.random.default_rng(4))
    ratio = invariant_ratio(polygon)
    normalized = normalize(polygon, ratio)
    assert normalized.fully_captured
    coords = normalized.polygon.exterior.coords()
    assert float(np.max(np.hypot(coords[:, 0], coords[:, 1]))) == pytest.approx(1.0, abs=1e-12)


def test_normalize_centers_and_scales() -> None:
    rng = np.random.default_rng(6)
    for _ in range(50):
        polygon = random_star(rng)
        for c, r in ((1 / 80, 1.0), (0.3, 2.0)):
            normalized = normalize(polygon, c, r)
            center = centroid(normalized.polygon)
            assert math.hypot(center.x, center.y) < 1e-6 * r
            assert area(normalized.polygon) == pytest.approx(c * r * r * math.pi, rel=1e-3)
            assert normalized.scale_factor > 0


def _disk(vertices: int = 720) -> PolygonWithHoles:
    angles = np.linspace(0.0, 2.0 * np.pi, vertices, endpoint=False)
    return PolygonWithHoles.from_coords(list(zip(np.cos(angles), np.sin(angles))))


def test_unit_disk_projects_on_constant() -> None:
    features = amplitudes(NormalizedPolygon(_disk(), 1.0, True), ZernikeConfig())
    values = features.as_array()
    assert len(values) == 16
    assert values[0] == pytest.approx(1.0, abs=0.01)
    assert np.all(values[1:] <= 0.01)


def _max_deviation(first: np.ndarray, second: np.ndarray) -> float:
    return float(np.max(np.abs(first - second)))


def test_rotation_invariance() -> None:
    cfg = ZernikeConfig()
    rng = np.random.default_rng(9)
    checked = 0
    while checked < 50:
        polygon = random_star(rng)
        if invariant_ratio(polygon) < cfg.c:
            continue
        checked += 1
        reference = feature_pipeline(polygon, cfg).as_array()
        assert np.all(reference >= 0) and np.all(np.isfinite(reference))
        for angle in (13.0, 45.0, 90.0, 217.0):
            rotated = rotate_polygon(polygon, angle, centroid(polygon))
            assert _max_deviation(reference, feature_pipeline(rotated, cfg).as_array()) <= 2e-2


def test_translation_and_scale_invariance() -> None:
    cfg = ZernikeConfig()
    polygon = random_star(np.random.default_rng(12))
    coords = polygon.exterior.coords()
    moved = PolygonWithHoles.from_coords(coords + np.array([123.25, -41.5]))
    scaled = PolygonWithHoles.from_coords(coords * 3.7)

    first = normalize(polygon, cfg.c).polygon.exterior.coords()
    second = normalize(moved, cfg.c).polygon.exterior.coords()
    assert np.max(np.abs(first - second)) <= 1e-9

    reference = feature_pipeline(polygon, cfg).as_array()
    assert _max_deviation(reference, feature_pipeline(moved, cfg).as_array()) <= 1e-2
    assert _max_deviation(reference, feature_pipeline(scaled, cfg).as_array()) <= 1e-2


def test_raw_moments_depend_on_orientation() -> None:
    cfg = ZernikeConfig()
    bar = rect(-20, -10, 20, 10)
    turned = rotate_polygon(bar, 45.0, Point(0.0, 0.0))
    normalized_gap = _max_deviation(
        feature_pipeline(bar, cfg).as_array(), feature_pipeline(turned, cfg).as_array()
    )
    raw_gap = _max_deviation(
        feature_pipeline(bar, cfg, normalized=False).as_array(),
        feature_pipeline(turned, cfg, normalized=False).as_array(),
    )
    assert normalized_gap <= 2e-2
    assert raw_gap > 2e-2

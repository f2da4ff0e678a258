"""Normalized Zernike moment features.

A region polygon is made translation and scale invariant before its
moments are taken: its centroid is moved to the origin and it is scaled
so that its area equals ``c * r**2 * pi``, a fixed fraction ``c`` (the
invariant ratio target) of the disk of radius ``r``. The polygon is then
rasterized over [-r, r]^2 and projected onto the Zernike basis; the
amplitudes |Z_nm| are rotation invariant.

A polygon scaled this way lies inside the disk exactly when
``c <= invariant_ratio(p)``; otherwise the parts outside the disk are
clipped by the integration.

Classes:
    ZernikeConfig: Order, invariant ratio target and grid resolution.
    ZernikeFeatures: Amplitudes in lexicographic (n, m) order.
    NormalizedPolygon: Centered and scaled polygon.

Functions:
    zernike_indices(n_max) -> List[Tuple[int, int]]
    radial_polynomial(n, m, rho) -> float | np.ndarray
    invariant_ratio(p) -> float
    normalize(p, c, r) -> NormalizedPolygon
    amplitudes(p, cfg) -> ZernikeFeatures
    raw_amplitudes(p, cfg) -> ZernikeFeatures
    feature_pipeline(p, cfg, normalized) -> ZernikeFeatures
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple, Union

import numpy as np

from planrag.exceptions import PlanragException
from planrag.geometry.operations import area, centroid
from planrag.geometry.primitives import PolygonWithHoles, to_shapely
from planrag.raster.operations import rasterize


@dataclass(frozen=True)
class ZernikeConfig:
    n_max: int = 6
    c: float = 1.0 / 80.0
    grid: int = 256

    def __post_init__(self) -> None:
        if self.n_max < 0:
            raise PlanragException(f"n_max must be >= 0, got {self.n_max}")
        if self.c <= 0:
            raise PlanragException(f"invariant ratio target must be > 0, got {self.c}")
        if self.grid < 32:
            raise PlanragException(f"grid must be >= 32, got {self.grid}")


def zernike_indices(n_max: int) -> List[Tuple[int, int]]:
    """(n, m) pairs with 0 <= m <= n <= n_max and n - m even, lexicographic."""
    return [(n, m) for n in range(n_max + 1) for m in range(n + 1) if (n - m) % 2 == 0]


@dataclass(frozen=True)
class ZernikeFeatures:
    amplitudes: Tuple[float, ...]
    n_max: int = 6

    def __post_init__(self) -> None:
        expected = len(zernike_indices(self.n_max))
        if len(self.amplitudes) != expected:
            raise PlanragException(
                f"expected {expected} amplitudes for order {self.n_max}, got {len(self.amplitudes)}"
            )

    @property
    def indices(self) -> List[Tuple[int, int]]:
        return zernike_indices(self.n_max)

    def as_array(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=float)

    def __len__(self) -> int:
        return len(self.amplitudes)


@dataclass(frozen=True)
class NormalizedPolygon:
    """Polygon centered on the origin and scaled to the target area.

    Attributes:
        polygon: the transformed polygon.
        scale_factor: the applied scale F_P.
        fully_captured: True iff the polygon lies inside the disk.
        radius: radius of the disk the polygon was normalized for.
    """

    polygon: PolygonWithHoles
    scale_factor: float
    fully_captured: bool
    radius: float = 1.0


def radial_polynomial(
    n: int, m: int, rho: Union[float, np.ndarray]
) -> Union[float, np.ndarray]:
    """Zernike radial polynomial R_nm(rho).

    Raises:
        PlanragException: unless 0 <= m <= n and n - m is even.
    """
    if m < 0 or m > n or (n - m) % 2 != 0:
        raise PlanragException(f"invalid Zernike index (n={n}, m={m})")
    result = np.zeros_like(np.asarray(rho, dtype=float))
    for k in range((n - m) // 2 + 1):
        coefficient = (
            (-1) ** k
            * math.factorial(n - k)
            / (
                math.factorial(k)
                * math.factorial((n + m) // 2 - k)
                * math.factorial((n - m) // 2 - k)
            )
        )
        result = result + coefficient * np.power(rho, n - 2 * k)
    if np.ndim(result) == 0:
        return float(result)
    return result


def _centered_coords(p: PolygonWithHoles) -> Tuple[List[np.ndarray], float]:
    center = centroid(p)
    offset = np.array([center.x, center.y])
    rings = [ring.coords() - offset for ring in p.rings]
    radius = float(np.max(np.hypot(rings[0][:, 0], rings[0][:, 1])))
    return rings, radius


def invariant_ratio(p: PolygonWithHoles) -> float:
    """Fraction of the smallest centroid-centered enclosing disk covered by ``p``.

    Raises:
        GeometryError: if the polygon is degenerate.
    """
    _, radius = _centered_coords(p)
    return area(p) / (radius * radius * math.pi)


def normalize(p: PolygonWithHoles, c: float, r: float = 1.0) -> NormalizedPolygon:
    """Center ``p`` on the origin and scale it to area ``c * r**2 * pi``."""
    rings, radius = _centered_coords(p)
    p_area = area(p)
    factor = math.sqrt(c * r * r * math.pi / p_area)
    ratio = p_area / (radius * radius * math.pi)
    polygon = PolygonWithHoles.from_coords(rings[0] * factor, [h * factor for h in rings[1:]])
    return NormalizedPolygon(polygon, factor, c <= ratio, r)


@lru_cache(maxsize=8)
def _basis(grid: int, n_max: int) -> Tuple[np.ndarray, np.ndarray]:
    """Conjugate Zernike basis on the pixel centers of a grid over [-1, 1]^2.

    Returns:
        (inside, basis): boolean mask of the pixels with rho <= 1 and a
        (K, pixels_inside) complex matrix including (n + 1) / pi and the
        pixel area.
    """
    cell = 2.0 / grid
    axis = (np.arange(grid) + 0.5) * cell - 1.0
    xs, ys = np.meshgrid(axis, axis)
    rho = np.hypot(xs, ys)
    inside = rho <= 1.0
    rho_in, theta_in = rho[inside], np.arctan2(ys[inside], xs[inside])
    rows = []
    for n, m in zernike_indices(n_max):
        radial = radial_polynomial(n, m, rho_in)
        rows.append((n + 1) / math.pi * radial * np.exp(-1j * m * theta_in) * cell * cell)
    basis = np.vstack(rows)
    inside.setflags(write=False)
    basis.setflags(write=False)
    return inside, basis


def _project(occupancy: np.ndarray, cfg: ZernikeConfig) -> ZernikeFeatures:
    inside, basis = _basis(cfg.grid, cfg.n_max)
    moments = basis @ occupancy[inside].astype(float)
    return ZernikeFeatures(tuple(float(v) for v in np.abs(moments)), cfg.n_max)


def amplitudes(p: NormalizedPolygon, cfg: ZernikeConfig) -> ZernikeFeatures:
    """Zernike amplitudes of a normalized polygon.

    The polygon is sampled on a ``cfg.grid`` square lattice over
    [-r, r]^2; pixels outside the disk do not contribute.
    """
    occupancy = rasterize(p.polygon, cfg.grid, window=p.radius).bits
    return _project(occupancy, cfg)


def raw_amplitudes(p: PolygonWithHoles, cfg: ZernikeConfig) -> ZernikeFeatures:
    """Amplitudes without normalization.

    The disk is inscribed in the bounding box square of ``p``: centered on
    the box center with radius max(width, height) / 2. Neither the
    centroid nor the area is normalized.
    """
    min_x, min_y, max_x, max_y = to_shapely(p).bounds
    radius = max(max_x - min_x, max_y - min_y) / 2.0
    center = ((min_x + max_x) / 2.0, (min_y + max_y) / 2.0)
    occupancy = rasterize(p, cfg.grid, window=radius, center=center).bits
    return _project(occupancy, cfg)


def feature_pipeline(
    p: PolygonWithHoles, cfg: ZernikeConfig, normalized: bool = True
) -> ZernikeFeatures:
    """Normalize then take the amplitudes; ``normalized=False`` gives the raw moments."""
    if not normalized:
        return raw_amplitudes(p, cfg)
    return amplitudes(normalize(p, cfg.c), cfg)



"""Robust location statistics: weighted geodesic l1-medians and median-distance
dispersion.

The median is computed by Weiszfeld iteration in a gnomonic (tangent-plane)
projection that is re-centered on the current iterate each step. The fixed
point of that scheme satisfies the first-order optimality condition of the
spherical median exactly, and ellipsoidal corrections are negligible at the
sub-hemisphere scales these statistics are used at. Point sets spanning more
than a hemisphere fall back to the medoid, which is well defined globally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import median as _scalar_median
from typing import Iterable, Sequence

from .geodesy import MEAN_RADIUS_KM, GeoPoint, geodesic_distance

DEFAULT_TOL_KM = 0.01
DEFAULT_MAX_ITER = 1000

# Iterate-to-point coincidence threshold (1 micrometre) and the 1 m nudge used
# to escape a non-optimal data point.
_COINCIDENT_KM = 1e-9
_NUDGE_KM = 0.001

# Beyond this angle from the weighted centroid the tangent plane is useless.
_MAX_SPREAD_COS = math.cos(math.radians(88.0))


@dataclass(frozen=True)
class WeightedPointSet:
    """A non-empty multiset of points with strictly positive finite weights."""

    points: tuple[GeoPoint, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        points = tuple(self.points)
        weights = tuple(float(w) for w in self.weights)
        if not points:
            raise ValueError("point set must not be empty")
        if len(weights) != len(points):
            raise ValueError(
                f"{len(points)} points but {len(weights)} weights"
            )
        for w in weights:
            if not math.isfinite(w) or w <= 0.0:
                raise ValueError(f"weights must be positive and finite, got {w!r}")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def unweighted(cls, points: Iterable[GeoPoint]) -> "WeightedPointSet":
        pts = tuple(points)
        return cls(pts, (1.0,) * len(pts))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def weight_sum(self) -> float:
        return math.fsum(self.weights)


def weighted_distance_sum(candidate: GeoPoint, s: WeightedPointSet) -> float:
    """The l1 objective: sum of w_j * d(candidate, p_j)."""
    return math.fsum(
        w * geodesic_distance(candidate, p) for p, w in zip(s.points, s.weights)
    )


def geodesic_l1_median(
    s: WeightedPointSet,
    tol_km: float = DEFAULT_TOL_KM,
    max_iter: int = DEFAULT_MAX_ITER,
) -> GeoPoint:
    """Weighted geodesic l1-median (geometric median) of a point set.

    Returns a point whose weighted distance sum is within tol_km * total
    weight of the optimum. Degenerate inputs are handled exactly: a single
    point is returned as-is, and for two points the heavier one (first on
    ties) is returned, since any point of the connecting geodesic minimizes
    the two-point objective.
    """
    points = s.points
    weights = s.weights
    if len(points) == 1:
        return points[0]
    first = points[0]
    if all(p == first for p in points):
        return first
    if len(points) == 2:
        return points[0] if weights[0] >= weights[1] else points[1]

    vectors = [_unit_vector(p) for p in points]
    cx = math.fsum(w * v[0] for v, w in zip(vectors, weights))
    cy = math.fsum(w * v[1] for v, w in zip(vectors, weights))
    cz = math.fsum(w * v[2] for v, w in zip(vectors, weights))
    norm = math.sqrt(cx * cx + cy * cy + cz * cz)
    if norm < 1e-9 * s.weight_sum:
        return _medoid(s)
    cx, cy, cz = cx / norm, cy / norm, cz / norm
    if min(v[0] * cx + v[1] * cy + v[2] * cz for v in vectors) < _MAX_SPREAD_COS:
        return _medoid(s)

    center = GeoPoint(math.degrees(math.asin(max(-1.0, min(1.0, cz)))), math.degrees(math.atan2(cy, cx)))

    sin_lats = [math.sin(math.radians(p.lat)) for p in points]
    cos_lats = [math.cos(math.radians(p.lat)) for p in points]
    lons_rad = [math.radians(p.lon) for p in points]

    snap_km = max(tol_km, _COINCIDENT_KM)
    for _ in range(max_iter):
        lat0 = math.radians(center.lat)
        lon0 = math.radians(center.lon)
        sin0, cos0 = math.sin(lat0), math.cos(lat0)

        xs: list[float] = []
        ys: list[float] = []
        rs: list[float] = []
        for j in range(len(points)):
            dlon = lons_rad[j] - lon0
            cos_d, sin_d = math.cos(dlon), math.sin(dlon)
            cos_c = sin0 * sin_lats[j] + cos0 * cos_lats[j] * cos_d
            if cos_c <= 1e-3:
                return _medoid(s)  # iterate wandered; projection no longer valid
            x = MEAN_RADIUS_KM * cos_lats[j] * sin_d / cos_c
            y = MEAN_RADIUS_KM * (cos0 * sin_lats[j] - sin0 * cos_lats[j] * cos_d) / cos_c
            xs.append(x)
            ys.append(y)
            rs.append(math.hypot(x, y))

        near = [j for j in range(len(points)) if rs[j] < snap_km]
        suppress_stop = False
        if near:
            # Iterate is on (or within tolerance of) a data point. Return
            # that point when the pull of the remaining points is no larger
            # than its weight (first-order optimality); snapping from within
            # tolerance keeps the objective inside the tol * weight budget.
            anchored_weight = sum(weights[j] for j in near)
            free = [j for j in range(len(points)) if rs[j] >= snap_km]
            px = math.fsum(weights[j] * xs[j] / rs[j] for j in free)
            py = math.fsum(weights[j] * ys[j] / rs[j] for j in free)
            pull = math.hypot(px, py)
            if pull <= anchored_weight + 1e-12:
                return points[near[0]]
            if min(rs[j] for j in near) < _COINCIDENT_KM:
                # Exact coincidence with a non-optimal point: the plain step
                # is numerically useless, so nudge 1 m along the pull.
                center = _unproject(
                    sin0, cos0, lon0, _NUDGE_KM * px / pull, _NUDGE_KM * py / pull
                )
                continue
            # Near a non-optimal data point a small step is stagnation, not
            # convergence; keep iterating.
            suppress_stop = True

        inv = [weights[j] / rs[j] for j in range(len(points))]
        total = math.fsum(inv)
        new_x = math.fsum(inv[j] * xs[j] for j in range(len(points))) / total
        new_y = math.fsum(inv[j] * ys[j] for j in range(len(points))) / total
        move = math.hypot(new_x, new_y)
        center = _unproject(sin0, cos0, lon0, new_x, new_y)
        if move <= tol_km and not suppress_stop:
            return center
    return center


def dispersion(center: GeoPoint, s: WeightedPointSet) -> float:
    """Median geodesic distance from center to the points (weights ignored).

    Even-sized sets yield the mean of the two middle distances.
    """
    return float(_scalar_median(geodesic_distance(center, p) for p in s.points))


def mad_spread(points: Sequence[GeoPoint]) -> float:
    """Median distance of the points from their own geodesic l1-median."""
    s = WeightedPointSet.unweighted(points)
    return dispersion(geodesic_l1_median(s), s)


def _unit_vector(p: GeoPoint) -> tuple[float, float, float]:
    lat = math.radians(p.lat)
    lon = math.radians(p.lon)
    return (math.cos(lat) * math.cos(lon), math.cos(lat) * math.sin(lon), math.sin(lat))


def _unproject(sin0: float, cos0: float, lon0: float, x: float, y: float) -> GeoPoint:
    rho = math.hypot(x, y)
    if rho == 0.0:
        lat0 = math.asin(max(-1.0, min(1.0, sin0)))
        return GeoPoint(math.degrees(lat0), math.degrees(lon0))
    c = math.atan(rho / MEAN_RADIUS_KM)
    sin_c, cos_c = math.sin(c), math.cos(c)
    lat = math.asin(max(-1.0, min(1.0, cos_c * sin0 + y * sin_c * cos0 / rho)))
    lon = lon0 + math.atan2(x * sin_c, rho * cos0 * cos_c - y * sin0 * sin_c)
    return GeoPoint(math.degrees(lat), math.degrees(lon))


def _medoid(s: WeightedPointSet) -> GeoPoint:
    best_idx = 0
    best_obj = math.inf
    for k, candidate in enumerate(s.points):
        obj = weighted_distance_sum(candidate, s)
        if obj < best_obj:
            best_idx, best_obj = k, obj
    return s.points[best_idx]

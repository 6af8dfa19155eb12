"""Geodesic primitives on the WGS84 ellipsoid.

Coordinates are degrees, distances kilometers throughout. The inverse solver
is Vincenty's method (T. Vincenty, Survey Review 23(176), 1975) with a
spherical fallback for the antipodal cases where the iteration degenerates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

# WGS84 ellipsoid, kilometers.
WGS84_A_KM = 6378.137
WGS84_F = 1.0 / 298.257223563
WGS84_B_KM = WGS84_A_KM * (1.0 - WGS84_F)

# IUGG mean radius (2a + b) / 3; used only by the spherical fallback.
MEAN_RADIUS_KM = (2.0 * WGS84_A_KM + WGS84_B_KM) / 3.0

VINCENTY_MAX_ITERATIONS = 200
VINCENTY_TOLERANCE_RAD = 1e-12


@dataclass(frozen=True, slots=True)
class GeoPoint:
    """A latitude/longitude pair in degrees.

    Longitude is normalized into [-180, 180) at construction so value
    equality is well defined; out-of-range latitude is an error, never
    clamped.
    """

    lat: float
    lon: float

    def __post_init__(self) -> None:
        lat = float(self.lat)
        lon = float(self.lon)
        if not math.isfinite(lat) or not -90.0 <= lat <= 90.0:
            raise ValueError(f"latitude {self.lat!r} outside [-90, 90]")
        if not math.isfinite(lon):
            raise ValueError(f"longitude {self.lon!r} is not finite")
        lon = ((lon + 180.0) % 360.0) - 180.0
        object.__setattr__(self, "lat", lat)
        object.__setattr__(self, "lon", lon)


class Distance(NamedTuple):
    km: float
    approximate: bool  # True when the spherical fallback was used


def geodesic_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Geodesic distance in kilometers between two points.

    Accurate to well under 0.5 m for non-antipodal pairs. Antipodal and
    near-antipodal pairs (where Vincenty's iteration has no solution) fall
    back to a great-circle distance on the mean radius instead of failing;
    use geodesic_distance_detail to observe the fallback.
    """
    return geodesic_distance_detail(a, b).km


def geodesic_distance_detail(a: GeoPoint, b: GeoPoint) -> Distance:
    # Canonical argument order makes d(a, b) == d(b, a) bit-identical.
    if (b.lat, b.lon) < (a.lat, a.lon):
        a, b = b, a
    return _inverse(a.lat, a.lon, b.lat, b.lon)


def _antipodal(lat1: float, lon1: float, lat2: float, lon2: float) -> bool:
    if lat1 != -lat2:
        return False
    if abs(lat1) == 90.0:
        return True  # opposite poles; longitude is degenerate there
    return abs(lon1 - lon2) == 180.0


def _inverse(lat1: float, lon1: float, lat2: float, lon2: float) -> Distance:
    if lat1 == lat2 and lon1 == lon2:
        return Distance(0.0, False)
    if _antipodal(lat1, lon1, lat2, lon2):
        return Distance(_haversine(lat1, lon1, lat2, lon2), True)

    f = WGS84_F
    u1 = math.atan((1.0 - f) * math.tan(math.radians(lat1)))
    u2 = math.atan((1.0 - f) * math.tan(math.radians(lat2)))
    ell = math.radians(lon2 - lon1)
    sin_u1, cos_u1 = math.sin(u1), math.cos(u1)
    sin_u2, cos_u2 = math.sin(u2), math.cos(u2)

    lam = ell
    for _ in range(VINCENTY_MAX_ITERATIONS):
        sin_lam, cos_lam = math.sin(lam), math.cos(lam)
        sin_sigma = math.hypot(
            cos_u2 * sin_lam, cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lam
        )
        if sin_sigma == 0.0:
            return Distance(0.0, False)  # effectively coincident
        cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lam
        sigma = math.atan2(sin_sigma, cos_sigma)
        sin_alpha = cos_u1 * cos_u2 * sin_lam / sin_sigma
        cos_sq_alpha = 1.0 - sin_alpha * sin_alpha
        if cos_sq_alpha == 0.0:
            cos2_sigma_m = 0.0  # equatorial geodesic
        else:
            cos2_sigma_m = cos_sigma - 2.0 * sin_u1 * sin_u2 / cos_sq_alpha
        c = f / 16.0 * cos_sq_alpha * (4.0 + f * (4.0 - 3.0 * cos_sq_alpha))
        lam_prev = lam
        lam = ell + (1.0 - c) * f * sin_alpha * (
            sigma
            + c
            * sin_sigma
            * (cos2_sigma_m + c * cos_sigma * (-1.0 + 2.0 * cos2_sigma_m * cos2_sigma_m))
        )
        if abs(lam - lam_prev) < VINCENTY_TOLERANCE_RAD:
            break
    else:
        # Near-antipodal pair: no convergence, approximate on the sphere.
        return Distance(_haversine(lat1, lon1, lat2, lon2), True)

    u_sq = cos_sq_alpha * (WGS84_A_KM**2 - WGS84_B_KM**2) / WGS84_B_KM**2
    big_a = 1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)))
    big_b = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)))
    delta_sigma = (
        big_b
        * sin_sigma
        * (
            cos2_sigma_m
            + big_b
            / 4.0
            * (
                cos_sigma * (-1.0 + 2.0 * cos2_sigma_m * cos2_sigma_m)
                - big_b
                / 6.0
                * cos2_sigma_m
                * (-3.0 + 4.0 * sin_sigma * sin_sigma)
                * (-3.0 + 4.0 * cos2_sigma_m * cos2_sigma_m)
            )
        )
    )
    return Distance(WGS84_B_KM * big_a * (sigma - delta_sigma), False)


def _haversine(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = phi2 - phi1
    dlam = math.radians(lon2 - lon1)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return 2.0 * MEAN_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def destination(start: GeoPoint, bearing_deg: float, distance_km: float) -> GeoPoint:
    """Point reached from start after distance_km along the geodesic with the
    given initial bearing (Vincenty's direct method)."""
    if distance_km < 0.0:
        raise ValueError("distance must be non-negative")
    if distance_km == 0.0:
        return start

    f = WGS84_F
    alpha1 = math.radians(bearing_deg)
    sin_alpha1, cos_alpha1 = math.sin(alpha1), math.cos(alpha1)

    tan_u1 = (1.0 - f) * math.tan(math.radians(start.lat))
    cos_u1 = 1.0 / math.hypot(1.0, tan_u1)
    sin_u1 = tan_u1 * cos_u1

    sigma1 = math.atan2(tan_u1, cos_alpha1)
    sin_alpha = cos_u1 * sin_alpha1
    cos_sq_alpha = 1.0 - sin_alpha * sin_alpha
    u_sq = cos_sq_alpha * (WGS84_A_KM**2 - WGS84_B_KM**2) / WGS84_B_KM**2
    big_a = 1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)))
    big_b = u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)))

    sigma = distance_km / (WGS84_B_KM * big_a)
    for _ in range(VINCENTY_MAX_ITERATIONS):
        cos2_sigma_m = math.cos(2.0 * sigma1 + sigma)
        sin_sigma, cos_sigma = math.sin(sigma), math.cos(sigma)
        delta_sigma = (
            big_b
            * sin_sigma
            * (
                cos2_sigma_m
                + big_b
                / 4.0
                * (
                    cos_sigma * (-1.0 + 2.0 * cos2_sigma_m * cos2_sigma_m)
                    - big_b
                    / 6.0
                    * cos2_sigma_m
                    * (-3.0 + 4.0 * sin_sigma * sin_sigma)
                    * (-3.0 + 4.0 * cos2_sigma_m * cos2_sigma_m)
                )
            )
        )
        sigma_prev = sigma
        sigma = distance_km / (WGS84_B_KM * big_a) + delta_sigma
        if abs(sigma - sigma_prev) < VINCENTY_TOLERANCE_RAD:
            break

    cos2_sigma_m = math.cos(2.0 * sigma1 + sigma)
    sin_sigma, cos_sigma = math.sin(sigma), math.cos(sigma)
    lat2 = math.atan2(
        sin_u1 * cos_sigma + cos_u1 * sin_sigma * cos_alpha1,
        (1.0 - f)
        * math.hypot(sin_alpha, sin_u1 * sin_sigma - cos_u1 * cos_sigma * cos_alpha1),
    )
    lam = math.atan2(
        sin_sigma * sin_alpha1, cos_u1 * cos_sigma - sin_u1 * sin_sigma * cos_alpha1
    )
    c = f / 16.0 * cos_sq_alpha * (4.0 + f * (4.0 - 3.0 * cos_sq_alpha))
    ell = lam - (1.0 - c) * f * sin_alpha * (
        sigma
        + c * sin_sigma * (cos2_sigma_m + c * cos_sigma * (-1.0 + 2.0 * cos2_sigma_m * cos2_sigma_m))
    )
    return GeoPoint(math.degrees(lat2), start.lon + math.degrees(ell))

import math
import random

import pytest

from tvgeo.geodesy import (
    MEAN_RADIUS_KM,
    WGS84_A_KM,
    GeoPoint,
    destination,
    geodesic_distance,
    geodesic_distance_detail,
)

from oracles import meridian_quadrant_km, oracle_distance_km


def random_point(rng, max_abs_lat=90.0):
    lat = math.degrees(math.asin(rng.uniform(-1.0, 1.0)))
    return GeoPoint(max(-max_abs_lat, min(max_abs_lat, lat)), rng.uniform(-180.0, 180.0))


def angular_separation_deg(a: GeoPoint, b: GeoPoint) -> float:
    lat1, lon1 = math.radians(a.lat), math.radians(a.lon)
    lat2, lon2 = math.radians(b.lat), math.radians(b.lon)
    dot = math.sin(lat1) * math.sin(lat2) + math.cos(lat1) * math.cos(lat2) * math.cos(
        lon2 - lon1
    )
    return math.degrees(math.acos(max(-1.0, min(1.0, dot))))


class TestGeoPoint:
    def test_longitude_wraps_modulo_360(self):
        assert GeoPoint(0.0, 190.0).lon == -170.0
        assert GeoPoint(0.0, 360.0).lon == 0.0
        assert GeoPoint(0.0, 180.0).lon == -180.0
        assert GeoPoint(0.0, -180.0).lon == -180.0
        assert GeoPoint(0.0, -540.0).lon == -180.0

    def test_normalized_points_compare_equal(self):
        assert GeoPoint(10.0, 190.0) == GeoPoint(10.0, -170.0)

    def test_out_of_range_latitude_is_an_error(self):
        with pytest.raises(ValueError):
            GeoPoint(90.0001, 0.0)
        with pytest.raises(ValueError):
            GeoPoint(-91.0, 0.0)
        with pytest.raises(ValueError):
            GeoPoint(math.nan, 0.0)

    def test_non_finite_longitude_is_an_error(self):
        with pytest.raises(ValueError):
            GeoPoint(0.0, math.inf)


class TestGeodesicDistance:
    def test_identity_is_exactly_zero(self):
        assert geodesic_distance(GeoPoint(0.0, 0.0), GeoPoint(0.0, 0.0)) == 0.0

    def test_one_equatorial_degree(self):
        # One degree of equator: 2*pi*a / 360, confirmed by the oracle.
        expected = 2.0 * math.pi * WGS84_A_KM / 360.0
        got = geodesic_distance(GeoPoint(0.0, 0.0), GeoPoint(0.0, 1.0))
        assert abs(got - expected) < 0.0005
        assert abs(got - oracle_distance_km(0.0, 0.0, 0.0, 1.0)) < 0.0005

    def test_pole_to_pole_takes_flagged_fallback(self):
        result = geodesic_distance_detail(GeoPoint(90.0, 0.0), GeoPoint(-90.0, 0.0))
        assert result.approximate
        # Two quarter-meridian arcs from the oracle's closed form; the
        # spherical fallback lands within ~0.1% of that.
        true_half_meridian = 2.0 * meridian_quadrant_km()
        assert abs(result.km - true_half_meridian) < 15.0

    def test_equatorial_antipodes_take_flagged_fallback(self):
        result = geodesic_distance_detail(GeoPoint(0.0, 10.0), GeoPoint(0.0, -170.0))
        assert result.approximate
        assert abs(result.km - math.pi * MEAN_RADIUS_KM) < 1e-6

    def test_symmetry_is_bit_identical(self):
        rng = random.Random(101)
        for _ in range(300):
            a, b = random_point(rng), random_point(rng)
            assert geodesic_distance(a, b) == geodesic_distance(b, a)

    def test_zero_iff_equal_on_random_pairs(self):
        rng = random.Random(102)
        for _ in range(200):
            a, b = random_point(rng, 89.0), random_point(rng, 89.0)
            d = geodesic_distance(a, b)
            if a == b:
                assert d == 0.0
            else:
                assert d > 0.0
        assert geodesic_distance(GeoPoint(12.0, 55.0), GeoPoint(12.0, 55.0)) == 0.0

    def test_triangle_inequality_with_fallback_slack(self):
        rng = random.Random(103)
        for _ in range(300):
            a, b, c = random_point(rng), random_point(rng), random_point(rng)
            assert geodesic_distance(a, c) <= (
                geodesic_distance(a, b) + geodesic_distance(b, c) + 0.001
            )

    def test_oracle_agreement_spot_check(self):
        # 50-pair spot check; the full 1000-pair run lives in acceptance.
        rng = random.Random(104)
        checked = 0
        while checked < 50:
            a, b = random_point(rng), random_point(rng)
            if angular_separation_deg(a, b) > 179.0:
                continue
            got = geodesic_distance(a, b)
            want = oracle_distance_km(a.lat, a.lon, b.lat, b.lon)
            assert abs(got - want) < 0.0005, (a, b)
            checked += 1


class TestDestination:
    def test_zero_distance_returns_start(self):
        start = GeoPoint(12.0, 34.0)
        assert destination(start, 77.0, 0.0) == start

    def test_roundtrip_against_inverse(self):
        rng = random.Random(105)
        for _ in range(100):
            start = random_point(rng, 80.0)
            bearing = rng.uniform(0.0, 360.0)
            dist = rng.uniform(0.001, 5000.0)
            end = destination(start, bearing, dist)
            assert abs(geodesic_distance(start, end) - dist) < 1e-6

    def test_negative_distance_rejected(self):
        with pytest.raises(ValueError):
            destination(GeoPoint(0.0, 0.0), 0.0, -1.0)

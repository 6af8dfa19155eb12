"""Ground-truth home locations from GPS event streams and profile claims.

GPS users qualify with at least three events, a median spread of at most
30 km, and no consecutive-pair speed above 1000 km/h. Profile claims qualify
by exact gazetteer match when at most 90 days old. When both sources exist
for a user, GPS wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from statistics import fmean, median as _scalar_median
from typing import Iterable, Mapping, Sequence, TextIO

from . import _tsv
from .geodesy import GeoPoint, geodesic_distance
from .robust_stats import WeightedPointSet, dispersion, geodesic_l1_median

MIN_GPS_EVENTS = 3
MAX_GPS_SPREAD_KM = 30.0
MAX_SPEED_KMH = 1000.0
MAX_CLAIM_AGE_SECONDS = 90 * 86400

SOURCE_GPS = "gps"
SOURCE_GAZETTEER = "gazetteer"


@dataclass(frozen=True)
class GpsEvent:
    user: int
    point: GeoPoint
    timestamp: float  # seconds since epoch, UTC

    def __post_init__(self) -> None:
        if not math.isfinite(self.timestamp):
            raise ValueError(f"timestamp must be finite, got {self.timestamp!r}")


@dataclass(frozen=True)
class ProfileClaim:
    user: int
    text: str
    observed_at: float

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("profile claim text is empty")
        if not math.isfinite(self.observed_at):
            raise ValueError(f"observed_at must be finite, got {self.observed_at!r}")


@dataclass(frozen=True)
class GroundTruthRecord:
    user: int
    home: GeoPoint
    source: str  # SOURCE_GPS or SOURCE_GAZETTEER
    spread_km: float

    def __post_init__(self) -> None:
        if self.source not in (SOURCE_GPS, SOURCE_GAZETTEER):
            raise ValueError(f"unknown seed source {self.source!r}")
        if not math.isfinite(self.spread_km) or self.spread_km < 0.0:
            raise ValueError(f"spread must be non-negative, got {self.spread_km!r}")


@dataclass(frozen=True)
class MobilityStats:
    user: int
    mean_radius_km: float
    median_radius_km: float
    max_speed_kmh: float


def normalize_place(text: str) -> str:
    """Trim, case-fold, and collapse internal whitespace runs."""
    return " ".join(text.split()).casefold()


class Gazetteer:
    """Exact-match lookup of normalized place names."""

    def __init__(self, entries: Mapping[str, GeoPoint]):
        normalized: dict[str, GeoPoint] = {}
        for name, point in entries.items():
            key = normalize_place(name)
            if not key:
                raise ValueError("gazetteer entry with empty name")
            if key in normalized:
                raise ValueError(f"ambiguous gazetteer name {key!r}")
            normalized[key] = point
        self._entries = normalized

    @classmethod
    def from_tsv(cls, path: str | Path) -> "Gazetteer":
        entries: dict[str, GeoPoint] = {}
        for lineno, fields in _tsv.iter_rows(path):
            _tsv.require_fields(fields, 3, path, lineno)
            lat = _tsv.parse_float(fields[1], path, lineno, "latitude")
            lon = _tsv.parse_float(fields[2], path, lineno, "longitude")
            key = normalize_place(fields[0])
            if key in entries:
                raise ValueError(f"{path}:{lineno}: ambiguous gazetteer name {key!r}")
            entries[key] = GeoPoint(lat, lon)
        return cls(entries)

    def lookup(self, text: str) -> GeoPoint | None:
        return self._entries.get(normalize_place(text))

    def __len__(self) -> int:
        return len(self._entries)


def max_speed(events: Sequence[GpsEvent]) -> float:
    """Maximum geodesic speed in km/h over consecutive event pairs.

    A zero time gap counts as infinite speed when the points differ and is
    skipped when they coincide.
    """
    if len(events) < 2:
        raise ValueError("max_speed needs at least two events")
    fastest = 0.0
    for prev, cur in zip(events, events[1:]):
        dt = cur.timestamp - prev.timestamp
        if dt < 0:
            raise ValueError("events are not sorted by timestamp")
        dist = geodesic_distance(prev.point, cur.point)
        if dt == 0:
            if dist > 0.0:
                return math.inf
            continue
        fastest = max(fastest, dist / (dt / 3600.0))
    return fastest


def _sorted_single_user(events: Sequence[GpsEvent]) -> list[GpsEvent]:
    users = {e.user for e in events}
    if len(users) > 1:
        raise ValueError(f"events span multiple users: {sorted(users)}")
    return sorted(events, key=lambda e: (e.timestamp, e.point.lat, e.point.lon))


def gps_home(events: Sequence[GpsEvent]) -> GroundTruthRecord | None:
    """Static home for one user's GPS events, or None if a filter rejects
    the user (too few events, spread above 30 km, or speed above 1000 km/h).
    """
    if not events or len(events) < MIN_GPS_EVENTS:
        return None
    ordered = _sorted_single_user(events)
    if max_speed(ordered) > MAX_SPEED_KMH:
        return None
    point_set = WeightedPointSet.unweighted(e.point for e in ordered)
    home = geodesic_l1_median(point_set)
    spread = dispersion(home, point_set)
    if spread > MAX_GPS_SPREAD_KM:
        return None
    return GroundTruthRecord(ordered[0].user, home, SOURCE_GPS, spread)


def gazetteer_home(
    claims: Sequence[ProfileClaim], gazetteer: Gazetteer, now: float
) -> GroundTruthRecord | None:
    """Home from the user's most recent profile claim, when at most 90 days
    old and exactly matched in the gazetteer. Ties on observed_at break by
    claim text so the result is order-independent."""
    if not claims:
        return None
    users = {c.user for c in claims}
    if len(users) > 1:
        raise ValueError(f"claims span multiple users: {sorted(users)}")
    latest = max(claims, key=lambda c: (c.observed_at, c.text))
    if now - latest.observed_at > MAX_CLAIM_AGE_SECONDS:
        return None
    point = gazetteer.lookup(latest.text)
    if point is None:
        return None
    return GroundTruthRecord(latest.user, point, SOURCE_GAZETTEER, 0.0)


def merge_seeds(
    gps_records: Iterable[GroundTruthRecord],
    gazetteer_records: Iterable[GroundTruthRecord],
) -> dict[int, GroundTruthRecord]:
    """Per-user merge of the two seed sources; GPS wins over gazetteer."""
    merged: dict[int, GroundTruthRecord] = {r.user: r for r in gazetteer_records}
    for record in gps_records:
        merged[record.user] = record
    return dict(sorted(merged.items()))


def mobility_stats(events: Sequence[GpsEvent]) -> MobilityStats | None:
    """Activity radii (mean/median distance from home) and max speed for one
    user; None with fewer than three events."""
    if len(events) < MIN_GPS_EVENTS:
        return None
    ordered = _sorted_single_user(events)
    point_set = WeightedPointSet.unweighted(e.point for e in ordered)
    home = geodesic_l1_median(point_set)
    radii = [geodesic_distance(home, p) for p in point_set.points]
    return MobilityStats(
        user=ordered[0].user,
        mean_radius_km=fmean(radii),
        median_radius_km=float(_scalar_median(radii)),
        max_speed_kmh=max_speed(ordered),
    )


def gps_homes(events: Iterable[GpsEvent]) -> dict[int, GroundTruthRecord]:
    """Group events by user and keep those that pass gps_home."""
    by_user: dict[int, list[GpsEvent]] = {}
    for event in events:
        by_user.setdefault(event.user, []).append(event)
    out: dict[int, GroundTruthRecord] = {}
    for user in sorted(by_user):
        record = gps_home(by_user[user])
        if record is not None:
            out[user] = record
    return out


def gazetteer_homes(
    claims: Iterable[ProfileClaim], gazetteer: Gazetteer, now: float
) -> dict[int, GroundTruthRecord]:
    by_user: dict[int, list[ProfileClaim]] = {}
    for claim in claims:
        by_user.setdefault(claim.user, []).append(claim)
    out: dict[int, GroundTruthRecord] = {}
    for user in sorted(by_user):
        record = gazetteer_home(by_user[user], gazetteer, now)
        if record is not None:
            out[user] = record
    return out


def seed_points(seeds: Mapping[int, GroundTruthRecord]) -> dict[int, GeoPoint]:
    return {user: record.home for user, record in seeds.items()}


# --- file formats -----------------------------------------------------------
#
# GPS events:      user_id <TAB> lat <TAB> lon <TAB> unix_timestamp
# Profile claims:  user_id <TAB> observed_at <TAB> raw_text  (text may contain
#                  spaces but never tabs)
# Seeds:           user_id <TAB> lat <TAB> lon <TAB> source <TAB> spread_km

GPS_COLUMNS = ("user_id", "lat", "lon", "unix_timestamp")
CLAIM_COLUMNS = ("user_id", "observed_at", "raw_text")
SEED_COLUMNS = ("user_id", "lat", "lon", "source", "spread_km")


def read_gps_events_file(path: str | Path) -> list[GpsEvent]:
    events = []
    for lineno, fields in _tsv.iter_rows(path):
        _tsv.require_fields(fields, 4, path, lineno)
        user = _tsv.parse_int(fields[0], path, lineno, "user_id")
        lat = _tsv.parse_float(fields[1], path, lineno, "latitude")
        lon = _tsv.parse_float(fields[2], path, lineno, "longitude")
        ts = _tsv.parse_float(fields[3], path, lineno, "timestamp")
        events.append(GpsEvent(user, GeoPoint(lat, lon), ts))
    return events


def read_profile_claims_file(path: str | Path) -> list[ProfileClaim]:
    claims = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t", 2)
            _tsv.require_fields(fields, 3, path, lineno)
            user = _tsv.parse_int(fields[0], path, lineno, "user_id")
            observed = _tsv.parse_float(fields[1], path, lineno, "observed_at")
            if not fields[2].strip():
                raise ValueError(f"{path}:{lineno}: empty profile text")
            claims.append(ProfileClaim(user, fields[2], observed))
    return claims


def write_seeds_file(seeds: Mapping[int, GroundTruthRecord], fh: TextIO) -> None:
    _tsv.write_header(fh, SEED_COLUMNS)
    for user in sorted(seeds):
        r = seeds[user]
        fh.write(f"{user}\t{r.home.lat!r}\t{r.home.lon!r}\t{r.source}\t{r.spread_km!r}\n")


def read_seeds_file(path: str | Path) -> dict[int, GroundTruthRecord]:
    seeds: dict[int, GroundTruthRecord] = {}
    for lineno, fields in _tsv.iter_rows(path):
        _tsv.require_fields(fields, 5, path, lineno)
        user = _tsv.parse_int(fields[0], path, lineno, "user_id")
        lat = _tsv.parse_float(fields[1], path, lineno, "latitude")
        lon = _tsv.parse_float(fields[2], path, lineno, "longitude")
        source = fields[3]
        spread = _tsv.parse_float(fields[4], path, lineno, "spread_km")
        if user in seeds:
            raise ValueError(f"{path}:{lineno}: duplicate seed for user {user}")
        seeds[user] = GroundTruthRecord(user, GeoPoint(lat, lon), source, spread)
    return seeds

"""Leave-many-out evaluation: holdout splits, error metrics, per-iteration
accuracy tables, gamma sweeps, error histograms, and nearest-city accuracy."""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path
from statistics import fmean, median as _scalar_median
from typing import Mapping, Sequence, TextIO, TypeVar

from . import _tsv
from .geodesy import GeoPoint, geodesic_distance
from .graph import SocialNetwork
from .solver import EstimateState, SolverConfig, infer

T = TypeVar("T")


@dataclass(frozen=True)
class HoldoutSplit:
    train: dict[int, T]
    test: dict[int, T]
    rng_seed: int
    fraction: float


@dataclass(frozen=True)
class IterationRow:
    iteration: int
    located: int  # cumulative located test users through this iteration
    newly_located: int
    median_error_km: float  # over users located by <= iteration; NaN when none
    median_error_new_km: float  # over users first located here; NaN when none


@dataclass(frozen=True)
class EvalReport:
    coverage: float
    median_error_km: float  # NaN when no test user is located
    mean_error_km: float
    per_iteration: tuple[IterationRow, ...]
    city_accuracy: float | None = None


@dataclass(frozen=True)
class SweepRow:
    gamma_km: float
    coverage: float
    median_error_km: float
    mean_error_km: float


@dataclass(frozen=True)
class CityEntry:
    name: str
    point: GeoPoint
    population: int

    def __post_init__(self) -> None:
        if self.population < 0:
            raise ValueError(f"population must be >= 0, got {self.population}")


@dataclass(frozen=True)
class CityTable:
    entries: tuple[CityEntry, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        names = [e.name for e in entries]
        if len(set(names)) != len(names):
            raise ValueError("city names must be unique")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_tsv(cls, path: str | Path) -> "CityTable":
        entries = []
        for lineno, fields in _tsv.iter_rows(path):
            _tsv.require_fields(fields, 4, path, lineno)
            lat = _tsv.parse_float(fields[1], path, lineno, "latitude")
            lon = _tsv.parse_float(fields[2], path, lineno, "longitude")
            pop = _tsv.parse_int(fields[3], path, lineno, "population")
            entries.append(CityEntry(fields[0], GeoPoint(lat, lon), pop))
        return cls(tuple(entries))

    def write_tsv(self, fh: TextIO) -> None:
        _tsv.write_header(fh, ("name", "lat", "lon", "population"))
        for e in self.entries:
            fh.write(f"{e.name}\t{e.point.lat!r}\t{e.point.lon!r}\t{e.population}\n")


def holdout_split(
    seeds: Mapping[int, T], fraction: float, rng_seed: int
) -> HoldoutSplit:
    """Deterministically split seeds into train/test with |test| =
    round(fraction * |seeds|)."""
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"holdout fraction must be in (0, 1), got {fraction}")
    if len(seeds) < 2:
        raise ValueError("need at least two seeds to split")
    users = sorted(seeds)
    k = round(fraction * len(users))
    rng = random.Random(rng_seed)
    test_users = set(rng.sample(users, k))
    train = {u: seeds[u] for u in users if u not in test_users}
    test = {u: seeds[u] for u in users if u in test_users}
    return HoldoutSplit(train, test, rng_seed, fraction)


def evaluate(estimates: EstimateState, test: Mapping[int, GeoPoint]) -> EvalReport:
    """Error metrics over located test users; coverage is reported alongside
    so the conditioning on located users stays explicit."""
    errors_by_iteration: dict[int, list[float]] = {}
    for user in sorted(test):
        estimate = estimates.located.get(user)
        if estimate is None:
            continue
        error = geodesic_distance(estimate.point, test[user])
        errors_by_iteration.setdefault(estimate.first_located_iteration, []).append(error)

    all_errors = [e for k in sorted(errors_by_iteration) for e in errors_by_iteration[k]]
    coverage = len(all_errors) / len(test) if test else 0.0
    median_error = float(_scalar_median(all_errors)) if all_errors else math.nan
    mean_error = fmean(all_errors) if all_errors else math.nan

    rows: list[IterationRow] = []
    if errors_by_iteration:
        cumulative: list[float] = []
        for k in range(min(errors_by_iteration), max(errors_by_iteration) + 1):
            new = errors_by_iteration.get(k, [])
            cumulative.extend(new)
            rows.append(
                IterationRow(
                    iteration=k,
                    located=len(cumulative),
                    newly_located=len(new),
                    median_error_km=float(_scalar_median(cumulative)) if cumulative else math.nan,
                    median_error_new_km=float(_scalar_median(new)) if new else math.nan,
                )
            )
    return EvalReport(coverage, median_error, mean_error, tuple(rows))


def city_accuracy(
    estimates: EstimateState,
    test: Mapping[int, GeoPoint],
    cities: CityTable,
    min_population: int = 5000,
) -> float:
    """Fraction of located test users whose estimate and truth share the same
    nearest city among cities with at least min_population inhabitants.
    Distance ties break toward the larger population, then name order."""
    entries = [e for e in cities.entries if e.population >= min_population]
    if not entries:
        raise ValueError("city table is empty after the population filter")
    vectors = [(_unit_vector(e.point), e) for e in entries]
    located = 0
    correct = 0
    for user in sorted(test):
        estimate = estimates.located.get(user)
        if estimate is None:
            continue
        located += 1
        if _nearest_city(vectors, estimate.point) == _nearest_city(vectors, test[user]):
            correct += 1
    return correct / located if located else 0.0


def gamma_sweep(
    network: SocialNetwork,
    train: Mapping[int, GeoPoint],
    test: Mapping[int, GeoPoint],
    gammas: Sequence[float],
    iterations: int,
    *,
    threads: int = 1,
    median_tol_km: float = 0.01,
    median_max_iter: int = 1000,
) -> list[SweepRow]:
    """One full solver run per gamma, evaluated against the test set."""
    if not gammas:
        raise ValueError("gamma list must not be empty")
    rows = []
    for gamma in gammas:
        cfg = SolverConfig(
            gamma_km=gamma,
            iterations=iterations,
            median_tol_km=median_tol_km,
            median_max_iter=median_max_iter,
        )
        state, _ = infer(network, train, cfg, threads=threads)
        report = evaluate(state, test)
        rows.append(SweepRow(gamma, report.coverage, report.median_error_km, report.mean_error_km))
    return rows


def error_histogram(
    estimates: EstimateState,
    test: Mapping[int, GeoPoint],
    bin_edges: Sequence[float],
) -> list[int]:
    """Counts of located-test-user errors per bin. Edges must be strictly
    increasing; bin i covers [edge_{i-1}, edge_i) with an implicit overflow
    bin above the last edge."""
    edges = list(bin_edges)
    if not edges or any(b <= a for a, b in zip(edges, edges[1:])):
        raise ValueError("bin edges must be strictly increasing and non-empty")
    counts = [0] * (len(edges) + 1)
    for user in sorted(test):
        estimate = estimates.located.get(user)
        if estimate is None:
            continue
        error = geodesic_distance(estimate.point, test[user])
        counts[bisect_right(edges, error)] += 1
    return counts


def _unit_vector(p: GeoPoint) -> tuple[float, float, float]:
    lat = math.radians(p.lat)
    lon = math.radians(p.lon)
    return (math.cos(lat) * math.cos(lon), math.cos(lat) * math.sin(lon), math.sin(lat))


def _nearest_city(
    vectors: list[tuple[tuple[float, float, float], CityEntry]], point: GeoPoint
) -> str:
    # Chord-distance prefilter, exact geodesic comparison among near-ties.
    # A 2% margin comfortably covers sphere-vs-ellipsoid ranking differences.
    px, py, pz = _unit_vector(point)
    best_dot = -2.0
    dots = []
    for (vx, vy, vz), entry in vectors:
        d = px * vx + py * vy + pz * vz
        dots.append(d)
        if d > best_dot:
            best_dot = d
    best_angle = math.acos(max(-1.0, min(1.0, best_dot)))
    cutoff = math.cos(min(math.pi, best_angle * 1.02 + 1e-6))
    candidates = [
        entry for (_, entry), d in zip(vectors, dots) if d >= cutoff
    ]
    best = min(
        candidates,
        key=lambda e: (geodesic_distance(point, e.point), -e.population, e.name),
    )
    return best.name


# --- report files -------------------------------------------------------------


def _csv_cell(value: float | None) -> str:
    if value is None:
        return ""
    return repr(value)


def write_report_csv(report: EvalReport, fh: TextIO) -> None:
    fh.write("coverage,median_error_km,mean_error_km,city_accuracy\n")
    fh.write(
        f"{report.coverage!r},{report.median_error_km!r},"
        f"{report.mean_error_km!r},{_csv_cell(report.city_accuracy)}\n"
    )


def write_per_iteration_csv(report: EvalReport, fh: TextIO) -> None:
    fh.write("iteration,located,newly_located,median_error_km,median_error_new_km\n")
    for row in report.per_iteration:
        fh.write(
            f"{row.iteration},{row.located},{row.newly_located},"
            f"{row.median_error_km!r},{row.median_error_new_km!r}\n"
        )


def write_sweep_csv(rows: Sequence[SweepRow], fh: TextIO) -> None:
    fh.write("gamma_km,coverage,median_error_km,mean_error_km\n")
    for row in rows:
        fh.write(
            f"{row.gamma_km!r},{row.coverage!r},"
            f"{row.median_error_km!r},{row.mean_error_km!r}\n"
        )


def write_histogram_csv(
    bin_edges: Sequence[float], counts: Sequence[int], fh: TextIO
) -> None:
    """Plot-ready form of error_histogram output: one row per bin, the last
    row being the overflow bin."""
    if len(counts) != len(bin_edges) + 1:
        raise ValueError("counts must have one more entry than bin_edges")
    fh.write("bin_lower_km,bin_upper_km,count\n")
    lowers = [0.0, *bin_edges]
    uppers = [*bin_edges, math.inf]
    for lower, upper, count in zip(lowers, uppers, counts):
        fh.write(f"{lower!r},{upper!r},{count}\n")


def read_truth_file(path: str | Path) -> dict[int, GeoPoint]:
    """Read user->location truth from either a 3-column truth TSV or a
    5-column seeds TSV (extra columns ignored)."""
    truth: dict[int, GeoPoint] = {}
    for lineno, fields in _tsv.iter_rows(path):
        if len(fields) not in (3, 5):
            raise ValueError(
                f"{path}:{lineno}: expected 3 (truth) or 5 (seeds) fields, got {len(fields)}"
            )
        user = _tsv.parse_int(fields[0], path, lineno, "user_id")
        lat = _tsv.parse_float(fields[1], path, lineno, "latitude")
        lon = _tsv.parse_float(fields[2], path, lineno, "longitude")
        if user in truth:
            raise ValueError(f"{path}:{lineno}: duplicate truth for user {user}")
        truth[user] = GeoPoint(lat, lon)
    return truth

"""Reciprocated-mention social network: construction, adjacency, and the
total-variation objective."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, NamedTuple, TextIO

from . import _tsv
from .geodesy import GeoPoint, geodesic_distance


class MentionRecord(NamedTuple):
    """An aggregated directed mention count between two users."""

    src: int
    dst: int
    count: int


@dataclass(frozen=True)
class WeightedEdge:
    """An undirected reciprocated tie, canonically ordered u < v."""

    u: int
    v: int
    weight: int

    def __post_init__(self) -> None:
        if self.u >= self.v:
            raise ValueError(f"edge endpoints must satisfy u < v, got ({self.u}, {self.v})")
        if self.weight < 1:
            raise ValueError(f"edge weight must be >= 1, got {self.weight}")


@dataclass
class IngestReport:
    records_in: int = 0
    dropped_self_mentions: int = 0
    dropped_nonpositive: int = 0
    directed_pairs: int = 0
    edges_out: int = 0
    users_out: int = 0

    @property
    def dropped(self) -> int:
        return self.dropped_self_mentions + self.dropped_nonpositive


class SocialNetwork:
    """Immutable undirected weighted graph.

    The adjacency index is the symmetric closure of the edge set, built once
    at construction and sorted by neighbor id, so the finished network can be
    shared across workers without synchronization.
    """

    __slots__ = ("_edges", "_adjacency", "_nodes")

    def __init__(self, edges: Mapping[tuple[int, int], int]):
        canonical: dict[tuple[int, int], int] = {}
        for (u, v), w in edges.items():
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if u > v:
                u, v = v, u
            if (u, v) in canonical:
                raise ValueError(f"duplicate edge ({u}, {v})")
            w = int(w)
            if w < 1:
                raise ValueError(f"edge ({u}, {v}) has non-positive weight {w}")
            canonical[(u, v)] = w
        self._edges: dict[tuple[int, int], int] = dict(sorted(canonical.items()))
        adjacency: dict[int, list[tuple[int, int]]] = {}
        for (u, v), w in self._edges.items():
            adjacency.setdefault(u, []).append((v, w))
            adjacency.setdefault(v, []).append((u, w))
        self._adjacency: dict[int, tuple[tuple[int, int], ...]] = {
            node: tuple(sorted(neighbors)) for node, neighbors in sorted(adjacency.items())
        }
        self._nodes: tuple[int, ...] = tuple(self._adjacency)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int, int]]) -> "SocialNetwork":
        return cls({(u, v): w for u, v, w in edges})

    @property
    def num_nodes(self) -> int:
        return len(self._adjacency)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def nodes(self) -> tuple[int, ...]:
        return self._nodes

    def edges(self) -> Iterator[WeightedEdge]:
        for (u, v), w in self._edges.items():
            yield WeightedEdge(u, v, w)

    def neighbors(self, u: int) -> tuple[tuple[int, int], ...]:
        """(neighbor, weight) pairs of u, sorted by neighbor id; empty for
        unknown nodes."""
        return self._adjacency.get(u, ())

    def degree(self, u: int) -> int:
        """Neighbor count; 0 for absent nodes (check `u in net` to tell an
        absent node from a present one, which always has degree >= 1)."""
        return len(self._adjacency.get(u, ()))

    def __contains__(self, u: int) -> bool:
        return u in self._adjacency

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SocialNetwork):
            return NotImplemented
        return self._edges == other._edges

    def __repr__(self) -> str:
        return f"SocialNetwork(nodes={self.num_nodes}, edges={self.num_edges})"


def build_reciprocal_network(
    records: Iterable[tuple[int, int, int]],
) -> tuple[SocialNetwork, IngestReport]:
    """Aggregate directed mention counts and keep the reciprocated pairs.

    Edge (u, v) exists iff both directions have positive total count; its
    weight is the smaller of the two directed totals. Self-mentions and
    non-positive counts are dropped and tallied, never fatal. The result is
    invariant under permutation of the input stream.
    """
    report = IngestReport()
    totals: dict[tuple[int, int], int] = {}
    for src, dst, count in records:
        report.records_in += 1
        if src == dst:
            report.dropped_self_mentions += 1
            continue
        if count < 1:
            report.dropped_nonpositive += 1
            continue
        key = (src, dst)
        totals[key] = totals.get(key, 0) + count
    report.directed_pairs = len(totals)

    edges: dict[tuple[int, int], int] = {}
    for (src, dst), outgoing in totals.items():
        if src < dst:
            incoming = totals.get((dst, src))
            if incoming is not None:
                edges[(src, dst)] = min(outgoing, incoming)
    network = SocialNetwork(edges)
    report.edges_out = network.num_edges
    report.users_out = network.num_nodes
    return network, report


def total_variation(
    network: SocialNetwork, locations: Mapping[int, GeoPoint]
) -> tuple[float, int]:
    """Weighted sum of geodesic edge lengths over edges with both endpoints
    located. Returns (tv_km, skipped_edge_count)."""
    total = 0.0
    skipped = 0
    for edge in network.edges():
        a = locations.get(edge.u)
        b = locations.get(edge.v)
        if a is None or b is None:
            skipped += 1
            continue
        total += edge.weight * geodesic_distance(a, b)
    return total, skipped


# --- file formats -----------------------------------------------------------
#
# Mention file row:  src_id <TAB> dst_id <TAB> count
# Network file row:  u <TAB> v <TAB> weight   (u < v)

MENTION_COLUMNS = ("src_id", "dst_id", "count")
NETWORK_COLUMNS = ("u", "v", "weight")


def iter_mention_file(path: str | Path) -> Iterator[tuple[int, int, int]]:
    """Parse a mention TSV; parse failures raise ValueError with path:line."""
    for lineno, fields in _tsv.iter_rows(path):
        _tsv.require_fields(fields, 3, path, lineno)
        src = _tsv.parse_int(fields[0], path, lineno, "src_id")
        dst = _tsv.parse_int(fields[1], path, lineno, "dst_id")
        count = _tsv.parse_int(fields[2], path, lineno, "count")
        yield src, dst, count


def write_network_file(network: SocialNetwork, fh: TextIO) -> None:
    _tsv.write_header(fh, NETWORK_COLUMNS)
    for edge in network.edges():
        fh.write(f"{edge.u}\t{edge.v}\t{edge.weight}\n")


def read_network_file(path: str | Path) -> SocialNetwork:
    edges: dict[tuple[int, int], int] = {}
    for lineno, fields in _tsv.iter_rows(path):
        _tsv.require_fields(fields, 3, path, lineno)
        u = _tsv.parse_int(fields[0], path, lineno, "node id")
        v = _tsv.parse_int(fields[1], path, lineno, "node id")
        w = _tsv.parse_int(fields[2], path, lineno, "weight")
        if u == v:
            raise ValueError(f"{path}:{lineno}: self-loop on node {u}")
        key = (u, v) if u < v else (v, u)
        if key in edges:
            raise ValueError(f"{path}:{lineno}: duplicate edge {key}")
        if w < 1:
            raise ValueError(f"{path}:{lineno}: non-positive weight {w}")
        edges[key] = w
    return SocialNetwork(edges)

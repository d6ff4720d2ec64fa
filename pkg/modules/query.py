"""Distances and path listings read from an ImplicitPathSet."""
from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from config import MAX_DISTANCE
from modules.plane_graph import NcspError, reverse
from modules.solver import ChildSplice, FreshSegment, ImplicitPathSet

logger = logging.getLogger(__name__)


class QueryError(NcspError):
    pass


class UnknownPair(QueryError):
    pass


class DistanceOverflow(QueryError):
    pass


# -------------------------------------
# TYPES
# -------------------------------------
@dataclass(frozen=True)
class PairDistance:
    i: int
    s: int
    t: int
    dist: int


@dataclass(frozen=True)
class DistanceReport:
    pairs: Tuple[PairDistance, ...]
    # distance of every solver node, auxiliary pairs included
    by_node: Tuple[int, ...] = ()
    edge_visits: int = 0

    def dist(self, i: int) -> int:
        for pair in self.pairs:
            if pair.i == i:
                return pair.dist
        raise UnknownPair(f"no pair {i} in the report")

    def to_json(self) -> Dict:
        return {"pairs": [{"i": p.i, "s": p.s, "t": p.t, "dist": p.dist} for p in self.pairs]}


@dataclass
class ListingReport:
    paths: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    probes: Dict[int, int] = field(default_factory=dict)

    @property
    def total_probes(self) -> int:
        return sum(self.probes.values())


# -------------------------------------
# MARK INDEX
# -------------------------------------
class MarkIndex:
    """Marked outgoing darts of every vertex, sorted by rotation position."""

    def __init__(self, ips: ImplicitPathSet):
        self.ips = ips
        graph = ips.graph
        self.positions: Dict[int, List[int]] = {}
        self.darts: Dict[int, List[int]] = {}
        for dart, mark in enumerate(ips.marks):
            if mark < 0:
                continue
            self.darts.setdefault(graph.tail(dart), []).append(dart)
        for vertex, darts in self.darts.items():
            darts.sort(key=lambda d: graph.rotation_position[d])
            self.positions[vertex] = [graph.rotation_position[d] for d in darts]
        self.probes = 0

    def belongs(self, n: int, dart: int) -> bool:
        mark = self.ips.marks[dart]
        return self.ips.tree.low[n] <= mark <= n

    def successor(self, n: int, dart_in: int) -> int:
        """Next dart of path ``n`` after ``dart_in``.

        Marked darts are scanned clockwise starting just after the reversed
        incoming dart; the ones used by ``n`` or its descendants come first,
        so the answer is the last dart passing that test.
        """
        graph = self.ips.graph
        vertex = graph.head(dart_in)
        darts = self.darts.get(vertex, [])
        back = reverse(dart_in)
        count = len(darts)
        start = bisect_right(self.positions.get(vertex, []), graph.rotation_position[back])
        if self.ips.marks[back] >= 0:
            count -= 1
        low, high, found = 0, count - 1, -1
        while low <= high:
            middle = (low + high) // 2
            self.probes += 1
            if self.belongs(n, darts[(start + middle) % len(darts)]):
                found = middle
                low = middle + 1
            else:
                high = middle - 1
        if found < 0:
            raise QueryError(f"path {n} has no continuation at vertex {vertex}")
        return darts[(start + found) % len(darts)]

    def walk(self, n: int, dart: int):
        """Yields the darts of path ``n`` from ``dart`` on to t_n."""
        graph = self.ips.graph
        target = self.ips.pairs.pairs[n][1]
        guard = graph.vertex_count
        yield dart
        while graph.head(dart) != target:
            guard -= 1
            if guard < 0:
                raise QueryError(f"path {n} does not reach its target {target}")
            dart = self.successor(n, dart)
            yield dart


def _check_pair(ips: ImplicitPathSet, n: int) -> None:
    if not 0 <= n < ips.k:
        raise UnknownPair(f"pair {n} does not exist (have {ips.k})")


def list_path(ips: ImplicitPathSet, n: int, index: Optional[MarkIndex] = None) -> List[int]:
    """Darts of path ``n`` (solver numbering) from s_n to t_n."""
    _check_pair(ips, n)
    index = index or MarkIndex(ips)
    source = ips.pairs.pairs[n][0]
    return list(index.walk(n, ips.graph.out_darts[source][0]))


def list_all(ips: ImplicitPathSet, include_auxiliary: bool = False) -> ListingReport:
    index = MarkIndex(ips)
    report = ListingReport()
    for n in range(ips.k):
        if ips.tree.auxiliary[n] and not include_auxiliary:
            continue
        before = index.probes
        report.paths[n] = tuple(list_path(ips, n, index))
        report.probes[n] = index.probes - before
    logger.debug("listed %d paths with %d probes", len(report.paths), report.total_probes)
    return report


# -------------------------------------
# DISTANCES
# -------------------------------------
class PrefixMemo:
    """Weights of path prefixes from s_z and suffixes to t_z, extended on demand."""

    def __init__(self, index: MarkIndex):
        self.index = index
        self.prefix: Dict[int, Dict[int, int]] = {}
        self.cursor: Dict[int, Tuple[int, int]] = {}  # z -> (last dart walked, weight so far)
        self.suffix: Dict[int, Dict[int, int]] = {}
        self.edge_visits = 0

    def prefix_to(self, z: int, vertex: int) -> int:
        ips = self.index.ips
        graph = ips.graph
        known = self.prefix.setdefault(z, {ips.pairs.pairs[z][0]: 0})
        if vertex in known:
            return known[vertex]
        if z in self.cursor:
            dart, weight = self.cursor[z]
            dart = self.index.successor(z, dart)
        else:
            weight = 0
            dart = graph.out_darts[ips.pairs.pairs[z][0]][0]
        target = ips.pairs.pairs[z][1]
        while True:
            weight += graph.weight(dart)
            self.edge_visits += 1
            known[graph.head(dart)] = weight
            self.cursor[z] = (dart, weight)
            if graph.head(dart) == vertex:
                return weight
            if graph.head(dart) == target:
                raise QueryError(f"vertex {vertex} is not on path {z}")
            dart = self.index.successor(z, dart)

    def suffix_from(self, z: int, vertex: int, dart_in: int) -> int:
        known = self.suffix.setdefault(z, {})
        if vertex in known:
            return known[vertex]
        graph = self.index.ips.graph
        target = self.index.ips.pairs.pairs[z][1]
        walked = []
        if vertex != target:
            walked = list(self.index.walk(z, self.index.successor(z, dart_in)))
        self.edge_visits += len(walked)
        weight = 0
        known[target] = 0
        for dart in reversed(walked):
            weight += graph.weight(dart)
            known[graph.tail(dart)] = weight
        return known[vertex]


def all_distances(ips: ImplicitPathSet) -> DistanceReport:
    graph = ips.graph
    memo = PrefixMemo(MarkIndex(ips))
    distances: List[int] = []
    fresh_visits = 0
    for n, skeleton in enumerate(ips.skeletons):
        total = 0
        for segment in skeleton:
            if isinstance(segment, FreshSegment):
                total += sum(graph.weight(d) for d in segment.darts)
                fresh_visits += len(segment.darts)
                continue
            assert isinstance(segment, ChildSplice)
            z = segment.child
            total += (distances[z]
                      - memo.prefix_to(z, segment.entry_vertex)
                      - memo.suffix_from(z, segment.exit_vertex, segment.exit_dart))
        if total > MAX_DISTANCE:
            raise DistanceOverflow(f"distance of pair {n} exceeds 2^63 - 1")
        distances.append(total)

    pairs = []
    for n in range(ips.k):
        if ips.tree.auxiliary[n]:
            continue
        s, t = ips.pairs.pairs[n]
        if ips.pairs.swapped[n]:
            s, t = t, s
        pairs.append(PairDistance(i=ips.tree.origin[n], s=s, t=t, dist=distances[n]))
    pairs.sort(key=lambda p: p.i)
    return DistanceReport(pairs=tuple(pairs), by_node=tuple(distances),
                          edge_visits=fresh_visits + memo.edge_visits)

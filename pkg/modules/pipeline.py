"""parse -> components -> build -> instance -> solver -> query."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from modules.instance import (
    GenealogyTree,
    InstanceError,
    TerminalNotPendant,
    TerminalPairs,
    binarize,
    build_genealogy,
    choose_istar_and_orient,
    locate_terminals,
    postorder_renumber,
    require_wellformed,
)
from modules.plane_graph import (
    EmbeddingData,
    PlaneGraph,
    Restriction,
    build_from,
    connected_components,
    restrict_embedding,
)
from modules.query import DistanceReport, PairDistance, UnknownPair, all_distances, list_path
from modules.solver import ImplicitPathSet, SolverStats, run

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComponentResult:
    restriction: Restriction
    graph: PlaneGraph
    ips: ImplicitPathSet
    # local pair index -> pair index in the input
    pair_ids: Tuple[int, ...]

    def node_of(self, local_pair: int) -> int:
        tree = self.ips.tree
        for node in range(tree.size):
            if not tree.auxiliary[node] and tree.origin[node] == local_pair:
                return node
        raise UnknownPair(f"pair {local_pair} is not solved in this component")


@dataclass(frozen=True)
class SolveResult:
    components: Tuple[ComponentResult, ...]
    report: DistanceReport
    stats: SolverStats

    def component_of(self, pair: int) -> Tuple[ComponentResult, int]:
        for component in self.components:
            if pair in component.pair_ids:
                return component, component.pair_ids.index(pair)
        raise UnknownPair(f"pair {pair} does not exist")


def prepare(graph: PlaneGraph, pairs: Sequence[Tuple[int, int]],
            istar_rank: int = 0) -> Tuple[GenealogyTree, TerminalPairs]:
    """Validates the terminals and returns the binarized, postorder-numbered genealogy."""
    tp = locate_terminals(graph, pairs)
    require_wellformed(tp)
    orientation = choose_istar_and_orient(graph, tp, istar_rank)
    tree = build_genealogy(orientation)
    tree, tp = binarize(tree, orientation.pairs)
    return postorder_renumber(tree, tp)


def solve_graph(graph: PlaneGraph, pairs: Sequence[Tuple[int, int]], istar_rank: int = 0) -> ImplicitPathSet:
    tree, tp = prepare(graph, pairs, istar_rank)
    return run(graph, tree, tp)


def _stub_dart(data: EmbeddingData, vertex: int) -> int:
    for eid, edge in enumerate(data.edges):
        if edge.u == vertex:
            return 2 * eid
        if edge.v == vertex:
            return 2 * eid + 1
    raise TerminalNotPendant(f"terminal {vertex} has no incident edge")


def _split(data: EmbeddingData, pairs: Sequence[Tuple[int, int]]) -> List[Tuple[List[int], List[int]]]:
    """(edge ids, pair ids) per component that carries at least one pair."""
    components = connected_components(data)
    component_of: Dict[int, int] = {}
    for index, edge_ids in enumerate(components):
        for eid in edge_ids:
            component_of[data.edges[eid].u] = index
            component_of[data.edges[eid].v] = index
    assigned: List[List[int]] = [[] for _ in components]
    for i, (s, t) in enumerate(pairs):
        for terminal in (s, t):
            if terminal not in component_of:
                raise TerminalNotPendant(f"terminal {terminal} of pair {i} has no incident edge")
        if component_of[s] != component_of[t]:
            raise InstanceError(f"pair {i}: terminals {s} and {t} lie in different components")
        assigned[component_of[s]].append(i)
    split = []
    for edge_ids, pair_ids in zip(components, assigned):
        if not pair_ids:
            logger.info("skipping a component of %d edges without terminal pairs", len(edge_ids))
            continue
        split.append((edge_ids, pair_ids))
    return split


@dataclass(frozen=True)
class Component:
    restriction: Restriction
    graph: PlaneGraph
    pairs: Tuple[Tuple[int, int], ...]
    pair_ids: Tuple[int, ...]


def split_components(data: EmbeddingData, pairs: Sequence[Tuple[int, int]]) -> List[Component]:
    """Builds one plane graph per connected component that carries terminal pairs.

    The input's outer dart designates the external face of its own component;
    every other component uses the stub of its first terminal.
    """
    if not pairs:
        raise InstanceError("no terminal pairs given")
    components = []
    for edge_ids, pair_ids in _split(data, pairs):
        restriction = restrict_embedding(data, edge_ids)
        local_pairs = tuple((restriction.vertex_map[s], restriction.vertex_map[t]) for s, t in (pairs[i] for i in pair_ids))
        outer = restriction.data.outer_dart
        if outer is None:
            outer = _stub_dart(restriction.data, local_pairs[0][0])
        graph = build_from(restriction.data, outer)
        components.append(Component(restriction, graph, local_pairs, tuple(pair_ids)))
    if len(components) > 1:
        logger.info("instance splits into %d components", len(components))
    return components


def solve(data: EmbeddingData, pairs: Sequence[Tuple[int, int]], istar_rank: int = 0) -> SolveResult:
    results: List[ComponentResult] = []
    distances: List[PairDistance] = []
    stats = SolverStats()
    edge_visits = 0
    for component in split_components(data, pairs):
        restriction, graph, pair_ids = component.restriction, component.graph, component.pair_ids
        ips = solve_graph(graph, component.pairs, istar_rank)
        report = all_distances(ips)
        stats.merge(ips.stats)
        edge_visits += report.edge_visits
        origin = restriction.vertex_origin
        for entry in report.pairs:
            distances.append(PairDistance(i=pair_ids[entry.i], s=origin[entry.s], t=origin[entry.t], dist=entry.dist))
        results.append(ComponentResult(restriction, graph, ips, tuple(pair_ids)))
    distances.sort(key=lambda p: p.i)
    return SolveResult(tuple(results), DistanceReport(pairs=tuple(distances), edge_visits=edge_visits), stats)


def list_pair(result: SolveResult, pair: int) -> List[int]:
    """Darts of the path of ``pair`` in input ids, oriented from the pair's first terminal."""
    component, local = result.component_of(pair)
    node = component.node_of(local)
    darts = list_path(component.ips, node)
    origin = component.restriction.edge_origin
    darts = [2 * origin[d >> 1] + (d & 1) for d in darts]
    if component.ips.pairs.swapped[node]:
        darts = [d ^ 1 for d in reversed(darts)]
    return darts


def describe_darts(data: EmbeddingData, darts: Sequence[int]) -> List[Tuple[int, int, int]]:
    """(u, v, edge id) per dart."""
    rows = []
    for d in darts:
        edge = data.edges[d >> 1]
        u, v = (edge.u, edge.v) if d & 1 == 0 else (edge.v, edge.u)
        rows.append((u, v, d >> 1))
    return rows


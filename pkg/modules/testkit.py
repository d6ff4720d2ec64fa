"""Instance generators, reference oracles and property checks.

Checks work on materialized paths and raw graphs only; networkx supplies the
reference shortest paths and simple-path enumeration.
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx
import numpy as np
from scipy.spatial import Delaunay

from config import (
    BRUTE_FORCE_MAX_EDGES,
    DEFAULT_SEED,
    MAX_GEN_WEIGHT,
    MAX_SEEDED_PAIRS,
    MAX_SEEDED_VERTICES,
    MIN_GEN_WEIGHT,
    SATURATION_CHECK_MAX_EDGES,
    STUB_WEIGHT,
)
from modules.plane_graph import (
    Edge,
    EmbeddingData,
    NcspError,
    PlaneGraph,
    build,
    build_from,
    restrict_embedding,
    reverse,
)
from modules import pipeline
from modules.query import MarkIndex, all_distances, list_path
from modules.solver import ImplicitPathSet

logger = logging.getLogger(__name__)

GraphLike = Union[EmbeddingData, PlaneGraph]


# -------------------------------------
# ERRORS
# -------------------------------------
class TestkitError(NcspError):
    pass


class Unreachable(TestkitError):
    pass


class TooLarge(TestkitError):
    pass


class ParameterOutOfRange(TestkitError):
    pass


class MissingCoordinates(TestkitError):
    pass


# -------------------------------------
# TYPES
# -------------------------------------
@dataclass(frozen=True)
class GeneratedInstance:
    graph: EmbeddingData
    pairs: Tuple[Tuple[int, int], ...]
    union: EmbeddingData
    union_pairs: Tuple[Tuple[int, int], ...]
    distances: Tuple[int, ...]
    seed: int
    # the chosen shortest path of every pair, as darts of ``union``
    paths: Tuple[Tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class OracleReport:
    reference: Dict[int, int] = field(default_factory=dict)
    reported: Dict[int, int] = field(default_factory=dict)
    verdicts: Dict[str, bool] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def record(self, name: str, verdict: Verdict) -> None:
        self.verdicts[name] = self.verdicts.get(name, True) and verdict.ok
        if not verdict.ok:
            self.failures.append(f"{name}: {verdict.reason}")


# -------------------------------------
# REFERENCE SHORTEST PATHS
# -------------------------------------
def to_networkx(graph: GraphLike, allowed_edges: Optional[Set[int]] = None) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.vertex_count))
    for eid, edge in enumerate(graph.edges):
        if allowed_edges is None or eid in allowed_edges:
            g.add_edge(edge.u, edge.v, weight=edge.weight, eid=eid)
    return g


def dijkstra(graph: GraphLike, s: int, t: int) -> int:
    try:
        return nx.dijkstra_path_length(to_networkx(graph), s, t, weight="weight")
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        raise Unreachable(f"no path from {s} to {t}") from None


def _seeded_shortest_path(g: nx.Graph, s: int, t: int, rng: random.Random) -> Tuple[int, List[int]]:
    """Shortest s-t path as a vertex list, choosing uniformly among tight edges at every step."""
    try:
        distance = nx.single_source_dijkstra_path_length(g, t, weight="weight")
    except nx.NodeNotFound:
        raise Unreachable(f"no path from {s} to {t}") from None
    if s not in distance:
        raise Unreachable(f"no path from {s} to {t}")
    vertices = [s]
    while vertices[-1] != t:
        v = vertices[-1]
        tight = sorted(w for w, attrs in g[v].items()
                       if w in distance and distance[w] + attrs["weight"] == distance[v])
        vertices.append(rng.choice(tight))
    return distance[s], vertices


def _restricted_instance(graph: EmbeddingData, pairs: Sequence[Tuple[int, int]],
                         paths: Sequence[Sequence[int]], distances: Sequence[int],
                         seed: int) -> GeneratedInstance:
    """Restricts ``graph`` to the union of ``paths`` (vertex lists), one per pair."""
    g = to_networkx(graph)
    union = {g[u][v]["eid"] for vertices in paths for u, v in zip(vertices, vertices[1:])}
    restriction = restrict_embedding(graph, union)
    union_pairs = tuple((restriction.vertex_map[s], restriction.vertex_map[t]) for s, t in pairs)
    data = restriction.data
    first = union_pairs[0][0]
    stub = next(2 * e + (0 if edge.u == first else 1)
                for e, edge in enumerate(data.edges) if first in (edge.u, edge.v))
    data = EmbeddingData(data.vertex_count, data.edges, data.rotations, stub, data.coordinates)

    new_edge = {old: new for new, old in enumerate(restriction.edge_origin)}
    union_paths = []
    for vertices in paths:
        darts = []
        for u, v in zip(vertices, vertices[1:]):
            e = new_edge[g[u][v]["eid"]]
            darts.append(2 * e + (0 if data.edges[e].u == restriction.vertex_map[u] else 1))
        union_paths.append(tuple(darts))
    logger.debug("union of %d shortest paths: %d of %d edges", len(pairs), len(union), len(graph.edges))
    return GeneratedInstance(
        graph=graph,
        pairs=tuple(pairs),
        union=data,
        union_pairs=union_pairs,
        distances=tuple(distances),
        seed=seed,
        paths=tuple(union_paths),
    )


def union_of_shortest_paths(graph: EmbeddingData, pairs: Sequence[Tuple[int, int]],
                            seed: int = DEFAULT_SEED) -> GeneratedInstance:
    """Unions one seeded shortest path per pair and restricts the embedding to it.

    The paths are drawn independently, so on graphs with many ties two of them
    may cross; ``crossing_pairs`` finds those.
    """
    rng = random.Random(seed)
    g = to_networkx(graph)
    paths, distances = [], []
    for s, t in pairs:
        distance, vertices = _seeded_shortest_path(g, s, t, rng)
        distances.append(distance)
        paths.append(vertices)
    return _restricted_instance(graph, pairs, paths, distances, seed)


# -------------------------------------
# GENERATORS
# -------------------------------------
def _as_fraction(value: float) -> Fraction:
    return Fraction(value).limit_denominator(10 ** 6)


def embed(vertex_count: int, edges: Sequence[Tuple[int, int, int]],
          coordinates: Sequence[Tuple[float, float]]) -> EmbeddingData:
    """Straight-line embedding: clockwise rotations from angles, outer face of least signed area."""
    incident: List[List[Tuple[float, int]]] = [[] for _ in range(vertex_count)]
    for eid, (u, v, _) in enumerate(edges):
        for a, b in ((u, v), (v, u)):
            dx = float(coordinates[b][0]) - float(coordinates[a][0])
            dy = float(coordinates[b][1]) - float(coordinates[a][1])
            incident[a].append((-math.atan2(dy, dx), eid))
    rotations = [tuple(eid for _, eid in sorted(ring)) for ring in incident]
    edge_records = [Edge(u, v, w) for u, v, w in edges]
    points = tuple((_as_fraction(float(x)), _as_fraction(float(y))) for x, y in coordinates)

    graph = build(vertex_count, edge_records, rotations, 0, points)

    def area(face: int) -> float:
        total = 0.0
        for d in graph.orbit(face):
            (x1, y1), (x2, y2) = coordinates[graph.tail(d)], coordinates[graph.head(d)]
            total += float(x1) * float(y2) - float(x2) * float(y1)
        return total / 2

    outer = min(range(graph.faces.face_count), key=area)
    return EmbeddingData(vertex_count, tuple(edge_records), tuple(rotations),
                         graph.orbit(outer)[0], points)


def laminar_pairs(rng: random.Random, hosts: Sequence[int], k: int) -> List[Tuple[int, int]]:
    """k well-formed pairs over 2k of ``hosts`` (given in boundary order), via a random Dyck word."""
    chosen = sorted(rng.sample(range(len(hosts)), 2 * k))
    pairs = []
    stack: List[int] = []
    opened = 0
    for slot in chosen:
        remaining = 2 * k - len(pairs) * 2 - len(stack)
        must_close = len(stack) == remaining
        if stack and (must_close or opened == k or rng.random() < 0.5):
            pairs.append((stack.pop(), hosts[slot]))
        else:
            stack.append(hosts[slot])
            opened += 1
    return pairs


def attach_stubs(vertex_count: int, edges: List[Tuple[int, int, int]],
                 coordinates: List[Tuple[float, float]], hosts: Iterable[int],
                 length: float) -> Dict[int, int]:
    """Hangs a pendant terminal off every host, pointing away from the centroid; returns host -> terminal."""
    cx = sum(x for x, _ in coordinates[:vertex_count]) / vertex_count
    cy = sum(y for _, y in coordinates[:vertex_count]) / vertex_count
    terminal_of = {}
    for host in hosts:
        x, y = coordinates[host]
        dx, dy = x - cx, y - cy
        norm = math.hypot(dx, dy) or 1.0
        terminal = len(coordinates)
        coordinates.append((x + length * dx / norm, y + length * dy / norm))
        edges.append((host, terminal, STUB_WEIGHT))
        terminal_of[host] = terminal
    return terminal_of


def _terminal_instance(rng: random.Random, vertex_count: int, edges: List[Tuple[int, int, int]],
                       coordinates: List[Tuple[float, float]], boundary: Sequence[int], k: int,
                       stub_length: float) -> Tuple[EmbeddingData, List[Tuple[int, int]]]:
    host_pairs = laminar_pairs(rng, boundary, k)
    hosts = [h for pair in host_pairs for h in pair]
    terminal_of = attach_stubs(vertex_count, edges, coordinates, hosts, stub_length)
    data = embed(len(coordinates), edges, coordinates)
    return data, [(terminal_of[a], terminal_of[b]) for a, b in host_pairs]


def gen_grid(rows: int, cols: int, k: int, seed: int = DEFAULT_SEED,
             max_weight: int = MAX_GEN_WEIGHT) -> Tuple[EmbeddingData, List[Tuple[int, int]]]:
    """Grid with random weights up to ``max_weight``; max_weight 1 gives the tie-rich unit grid."""
    if rows < 2 or cols < 2:
        raise ParameterOutOfRange(f"grid needs at least 2 rows and 2 columns, got {rows}x{cols}")
    boundary = ([c for c in range(cols)]
                + [r * cols + cols - 1 for r in range(1, rows)]
                + [(rows - 1) * cols + c for c in range(cols - 2, -1, -1)]
                + [r * cols for r in range(rows - 2, 0, -1)])
    if not 1 <= k <= len(boundary) // 2:
        raise ParameterOutOfRange(f"{k} pairs do not fit on a boundary of {len(boundary)} vertices")
    rng = random.Random(seed)
    coordinates = [(float(c), float(-r)) for r in range(rows) for c in range(cols)]
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, rng.randint(MIN_GEN_WEIGHT, max_weight)))
            if r + 1 < rows:
                edges.append((v, v + cols, rng.randint(MIN_GEN_WEIGHT, max_weight)))
    return _terminal_instance(rng, rows * cols, edges, coordinates, boundary, k, 0.4)


def gen_random_triangulation(n: int, k: int, seed: int = DEFAULT_SEED) -> Tuple[EmbeddingData, List[Tuple[int, int]]]:
    """Delaunay triangulation of points on and inside the unit circle; terminals hang off the circle."""
    if k < 1:
        raise ParameterOutOfRange(f"need at least one pair, got {k}")
    b = max(3, 2 * k, int(round(math.sqrt(n))))
    if n < b:
        raise ParameterOutOfRange(f"{n} vertices cannot host {k} pairs on a boundary of {b}")
    rng = random.Random(seed)
    np_rng = np.random.default_rng(seed)
    angles = -2 * np.pi * np.arange(b) / b
    ring = np.column_stack([np.cos(angles), np.sin(angles)])
    for _ in range(8):
        radius = 0.85 * np.sqrt(np_rng.random(n - b))
        theta = 2 * np.pi * np_rng.random(n - b)
        points = np.vstack([ring, np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])])
        triangulation = Delaunay(points)
        if len(np.unique(triangulation.simplices)) == n:
            break
    else:
        raise ParameterOutOfRange(f"could not triangulate {n} points with seed {seed}")

    pairs_seen = set()
    for simplex in triangulation.simplices:
        for a, c in ((0, 1), (1, 2), (2, 0)):
            u, v = sorted((int(simplex[a]), int(simplex[c])))
            pairs_seen.add((u, v))
    edges = [(u, v, rng.randint(MIN_GEN_WEIGHT, MAX_GEN_WEIGHT)) for u, v in sorted(pairs_seen)]
    coordinates = [(float(x), float(y)) for x, y in points]
    return _terminal_instance(rng, n, edges, coordinates, list(range(b)), k, 0.25 * math.pi / b)


FIG1_NAMES = ("s1", "t1", "s2", "t2", "s3", "t3", "A", "B", "C")


def gen_fig1() -> Tuple[EmbeddingData, List[Tuple[int, int]]]:
    """Hexagon of terminals around a triangle; the union of the three shortest paths holds the triangle."""
    angles = [120, 60, 0, -60, -120, 180, 150, 30, -90]
    radii = [2, 2, 2, 2, 2, 2, 1, 1, 1]
    coordinates = [(r * math.cos(math.radians(a)), r * math.sin(math.radians(a))) for a, r in zip(angles, radii)]
    s1, t1, s2, t2, s3, t3, a, b, c = range(9)
    hexagon = [(s1, t1), (t1, s2), (s2, t2), (t2, s3), (s3, t3), (t3, s1)]
    spokes = [(s1, a), (t3, a), (t1, b), (s2, b), (t2, c), (s3, c)]
    triangle = [(a, b), (b, c), (c, a)]
    edges = [(u, v, 10) for u, v in hexagon] + [(u, v, 3) for u, v in spokes + triangle]
    return embed(9, edges, coordinates), [(s1, t1), (s2, t2), (s3, t3)]


def gen_caterpillar(m: int) -> GeneratedInstance:
    """Spine of 2m unit edges with m nested pairs hanging off it; the union is the whole tree."""
    if m < 1:
        raise ParameterOutOfRange(f"caterpillar needs at least one pair, got {m}")
    spine = 2 * m
    coordinates = [(float(j), 0.0) for j in range(spine)] + [(float(j), 1.0) for j in range(spine)]
    edges = [(j, j + 1, 1) for j in range(spine - 1)] + [(j, spine + j, STUB_WEIGHT) for j in range(spine)]
    graph = embed(2 * spine, edges, coordinates)
    pairs, paths, distances = [], [], []
    for j in range(m):
        last = spine - 1 - j
        pairs.append((spine + j, spine + last))
        paths.append([spine + j] + list(range(j, last + 1)) + [spine + last])
        distances.append(last - j + 2 * STUB_WEIGHT)
    return _restricted_instance(graph, pairs, paths, distances, DEFAULT_SEED)


def gen_ladder(m: int, seed: int = DEFAULT_SEED) -> GeneratedInstance:
    """Ladder of m unit squares; pair j runs from rung j to rung j+2 over the top or the bottom rail.

    ``seed`` picks one of the two outer shortest routes for every pair, so
    neighbouring routes close squares into faces of the union. A top route
    followed by a bottom route crosses it twice.
    """
    if m < 4:
        raise ParameterOutOfRange(f"ladder needs at least 4 squares, got {m}")
    top = list(range(m + 1))
    bottom = [m + 1 + j for j in range(m + 1)]
    coordinates = [(float(j), 1.0) for j in range(m + 1)] + [(float(j), 0.0) for j in range(m + 1)]
    edges = [(top[j], top[j + 1], 1) for j in range(m)]
    edges += [(bottom[j], bottom[j + 1], 1) for j in range(m)]
    edges += [(top[j], bottom[j], 1) for j in range(m + 1)]
    pairs, paths, distances = [], [], []
    for j in range(m - 1):
        s, t = len(coordinates), len(coordinates) + 1
        coordinates += [(float(j), 2.0), (float(j + 2), -1.0)]
        edges += [(top[j], s, STUB_WEIGHT), (bottom[j + 2], t, STUB_WEIGHT)]
        if (j + seed) % 2 == 0:
            route = [top[j], top[j + 1], top[j + 2], bottom[j + 2]]
        else:
            route = [top[j], bottom[j], bottom[j + 1], bottom[j + 2]]
        pairs.append((s, t))
        paths.append([s] + route + [t])
        distances.append(3 + 2 * STUB_WEIGHT)
    graph = embed(len(coordinates), edges, coordinates)
    return _restricted_instance(graph, pairs, paths, distances, seed)


# -------------------------------------
# PATH HELPERS
# -------------------------------------
def path_vertices(graph: PlaneGraph, darts: Sequence[int]) -> List[int]:
    return [graph.tail(darts[0])] + [graph.head(d) for d in darts]


def path_weight(graph: PlaneGraph, darts: Sequence[int]) -> int:
    return sum(graph.weight(d) for d in darts)


def check_simple(graph: PlaneGraph, darts: Sequence[int], s: int, t: int) -> Verdict:
    if not darts:
        return Verdict(False, "empty path")
    for previous, following in zip(darts, darts[1:]):
        if graph.head(previous) != graph.tail(following):
            return Verdict(False, f"darts {previous} and {following} do not connect")
    vertices = path_vertices(graph, darts)
    if vertices[0] != s or vertices[-1] != t:
        return Verdict(False, f"path runs {vertices[0]} -> {vertices[-1]}, expected {s} -> {t}")
    if len(set(vertices)) != len(vertices):
        return Verdict(False, "path repeats a vertex")
    return Verdict(True)


def left_faces(graph: PlaneGraph, darts: Sequence[int]) -> Set[int]:
    """Inner faces between the path and the external face on its left, by flooding across non-path edges."""
    on_path = {d >> 1 for d in darts}
    outer = graph.outer_face
    seeds = set()
    for din, dout in zip(darts, darts[1:]):
        d = graph.rotation_next(reverse(din))
        while True:
            seeds.add(graph.face(d))
            if d == dout:
                break
            d = graph.rotation_next(d)
    seeds.discard(outer)
    found = set(seeds)
    stack = list(seeds)
    while stack:
        face = stack.pop()
        for d in graph.orbit(face):
            if d >> 1 in on_path:
                continue
            other = graph.face(reverse(d))
            if other != outer and other not in found:
                found.add(other)
                stack.append(other)
    return found


def allowed_edges(graph: PlaneGraph, earlier: Iterable[Sequence[int]]) -> Set[int]:
    """Edges not strictly on the left of any of the ``earlier`` paths."""
    allowed = set(range(graph.edge_count))
    for darts in earlier:
        lefts = left_faces(graph, darts)
        on_path = {d >> 1 for d in darts}
        for e in range(graph.edge_count):
            if e not in on_path and (graph.face(2 * e) in lefts or graph.face(2 * e + 1) in lefts):
                allowed.discard(e)
    return allowed


def brute_force_paths(graph: PlaneGraph, pairs: Sequence[Tuple[int, int]],
                      allowed: Optional[Set[int]] = None) -> List[List[List[int]]]:
    """All minimum-weight simple s-t paths per pair, as dart lists."""
    if graph.edge_count > BRUTE_FORCE_MAX_EDGES:
        raise TooLarge(f"{graph.edge_count} edges exceed the enumeration bound of {BRUTE_FORCE_MAX_EDGES}")
    g = to_networkx(graph, allowed)
    result = []
    for s, t in pairs:
        candidates = []
        for vertices in nx.all_simple_paths(g, s, t):
            darts = [graph.dart_between(u, v) for u, v in zip(vertices, vertices[1:])]
            candidates.append((path_weight(graph, darts), darts))
        if not candidates:
            raise Unreachable(f"no path from {s} to {t}")
        best = min(w for w, _ in candidates)
        result.append([darts for w, darts in candidates if w == best])
    return result


def rightmost(graph: PlaneGraph, candidates: Sequence[Sequence[int]]) -> List[int]:
    """The candidate with the largest left region."""
    return list(max(candidates, key=lambda darts: len(left_faces(graph, darts))))


# -------------------------------------
# PROPERTY CHECKS
# -------------------------------------
def check_single_touch(graph: PlaneGraph, p: Sequence[int], q: Sequence[int]) -> Verdict:
    """The shared vertices and edges of p and q form an empty or a single path."""
    vertices = set(path_vertices(graph, p)) & set(path_vertices(graph, q))
    edges = {d >> 1 for d in p} & {d >> 1 for d in q}
    if not vertices:
        return Verdict(True)
    shared = nx.Graph()
    shared.add_nodes_from(vertices)
    shared.add_edges_from((graph.edges[e].u, graph.edges[e].v) for e in edges)
    if not nx.is_connected(shared):
        return Verdict(False, f"paths meet in {nx.number_connected_components(shared)} pieces")
    if shared.number_of_edges() != shared.number_of_nodes() - 1 or max(dict(shared.degree).values()) > 2:
        return Verdict(False, "shared part is not a path")
    return Verdict(True)


def _tour(graph: PlaneGraph, tree_edges: Set[int], start: int) -> List[int]:
    """Non-tree darts met walking around a shared component, in cyclic order."""
    if not tree_edges:
        first = graph.out_darts[start][0]
        ring, d = [first], graph.rotation_next(first)
        while d != first:
            ring.append(d)
            d = graph.rotation_next(d)
        return ring
    first = next(d for d in graph.out_darts[start] if d >> 1 in tree_edges)
    met = []
    dart = first
    while True:
        g = graph.rotation_next(reverse(dart))
        while g >> 1 not in tree_edges:
            met.append(g)
            g = graph.rotation_next(g)
        dart = g
        if dart == first:
            return met


def check_noncrossing(graph: PlaneGraph, p: Sequence[int], q: Sequence[int]) -> Verdict:
    """No shared component has the darts of p and q interleaved around it."""
    common_vertices = set(path_vertices(graph, p)) & set(path_vertices(graph, q))
    common_edges = {d >> 1 for d in p} & {d >> 1 for d in q}
    shared = nx.Graph()
    shared.add_nodes_from(common_vertices)
    shared.add_edges_from((graph.edges[e].u, graph.edges[e].v) for e in common_edges)
    for component in nx.connected_components(shared):
        tree = {e for e in common_edges if graph.edges[e].u in component}
        ring = _tour(graph, tree, min(component))
        place = {d >> 1: index for index, d in enumerate(ring)}
        ends = []
        for path in (p, q):
            touching = [place[d >> 1] for d in path if d >> 1 in place and d >> 1 not in tree]
            if len(touching) != 2:
                break
            ends.append(sorted(touching))
        else:
            (a1, a2), (b1, b2) = ends
            if (a1 < b1 < a2) != (a1 < b2 < a2):
                return Verdict(False, f"paths cross at vertices {sorted(component)[:4]}")
    return Verdict(True)


def crossing_pairs(instance: GeneratedInstance) -> List[Tuple[int, int]]:
    """Index pairs whose chosen shortest paths cross in the union."""
    graph = build_from(instance.union)
    paths = instance.paths
    return [(a, b) for a in range(len(paths)) for b in range(a + 1, len(paths))
            if not check_noncrossing(graph, paths[a], paths[b])]


def check_no_right_shortcut(graph: PlaneGraph, darts: Sequence[int], excluded: Set[int]) -> Verdict:
    """Exhaustive scan of the faces right of the path, outside ``excluded``, for a no-heavier detour."""
    vertices = path_vertices(graph, darts)
    index = {v: i for i, v in enumerate(vertices)}
    prefix = [0]
    for d in darts:
        prefix.append(prefix[-1] + graph.weight(d))
    on_path = {d >> 1 for d in darts}
    skip = excluded | left_faces(graph, darts) | {graph.outer_face}
    for face in range(graph.faces.face_count):
        if face in skip:
            continue
        orbit = graph.orbit(face)
        touching = [p for p, d in enumerate(orbit) if graph.tail(d) in index]
        for n, start in enumerate(touching):
            stop = touching[(n + 1) % len(touching)]
            size = (stop - start) % len(orbit) or len(orbit)
            run = [orbit[(start + j) % len(orbit)] for j in range(size)]
            a, b = graph.tail(run[0]), graph.head(run[-1])
            if a == b or (size == 1 and run[0] >> 1 in on_path):
                continue
            inner = [graph.head(d) for d in run[:-1]]
            if len(set(inner)) != len(inner):
                continue
            detour = path_weight(graph, run)
            section = abs(prefix[index[b]] - prefix[index[a]])
            if detour <= section:
                return Verdict(False, f"face {face}: detour {a}->{b} of weight {detour} <= {section}")
    return Verdict(True)


def check_multiplicity(ips: ImplicitPathSet) -> Verdict:
    """Each edge lies in at most two fresh sets, and all fresh sets together hold at most 2|E| darts."""
    count: Dict[int, int] = {}
    total = 0
    for i in range(ips.k):
        fresh = ips.fresh_darts(i)
        total += len(fresh)
        for e in {d >> 1 for d in fresh}:
            count[e] = count.get(e, 0) + 1
    worst = max(count.values(), default=0)
    if worst > 2:
        return Verdict(False, f"an edge is fresh in {worst} paths")
    if total > 2 * ips.graph.edge_count:
        return Verdict(False, f"{total} fresh darts exceed 2|E| = {2 * ips.graph.edge_count}")
    return Verdict(True)


def probe_budget(length: int, k: int) -> float:
    return 4 * (length + length * math.log2(max(2.0, 2 * k / max(length, 1))))


# -------------------------------------
# VERIFY
# -------------------------------------
def verify_instance(data: EmbeddingData, pairs: Sequence[Tuple[int, int]],
                    seed: Optional[int] = None) -> OracleReport:
    """Solves the instance and checks every output against the oracles."""
    report = OracleReport(seed=seed)
    result = pipeline.solve(data, pairs)
    report.verdicts["wellformed"] = True
    for entry in result.report.pairs:
        report.reported[entry.i] = entry.dist
        report.reference[entry.i] = dijkstra(data, *pairs[entry.i])
        report.record("distances", Verdict(report.reported[entry.i] == report.reference[entry.i],
                                           f"pair {entry.i}: {report.reported[entry.i]} != {report.reference[entry.i]}"))

    for component in result.components:
        ips, graph = component.ips, component.graph
        index = MarkIndex(ips)
        by_node = all_distances(ips).by_node
        paths: List[List[int]] = []
        for n in range(ips.k):
            before = index.probes
            darts = list_path(ips, n, index)
            paths.append(darts)
            s, t = ips.pairs.pairs[n]
            report.record("simple_paths", check_simple(graph, darts, s, t))
            report.record("listing_weight", Verdict(path_weight(graph, darts) == by_node[n], f"node {n}"))
            probes = index.probes - before
            report.record("probe_budget", Verdict(probes <= probe_budget(len(darts), ips.k),
                                                  f"node {n}: {probes} probes for {len(darts)} darts"))
        originals = [n for n in range(ips.k) if not ips.tree.auxiliary[n]]
        for x, n in enumerate(originals):
            for m in originals[x + 1:]:
                report.record("single_touch", check_single_touch(graph, paths[n], paths[m]))
                report.record("noncrossing", check_noncrossing(graph, paths[n], paths[m]))
        report.record("multiplicity_ok", check_multiplicity(ips))

        if graph.edge_count <= SATURATION_CHECK_MAX_EDGES:
            excluded: Set[int] = set()
            for n in range(ips.k):
                report.record("saturated", check_no_right_shortcut(graph, paths[n], excluded))
                excluded |= left_faces(graph, paths[n])
        if graph.edge_count <= BRUTE_FORCE_MAX_EDGES:
            for n in range(ips.k):
                region = allowed_edges(graph, paths[:n])
                best = brute_force_paths(graph, [ips.pairs.pairs[n]], region)[0]
                expected = rightmost(graph, best)
                report.record("rightmost", Verdict(expected == paths[n], f"node {n}"))
    return report


def seeded_instance(seed: int, max_vertices: int = 400) -> GeneratedInstance:
    """Cycles through weighted grids, triangulations and unit-weight grids by ``seed``.

    Sizes and pair counts are drawn from ``seed``. Unit-weight grids are full of
    ties, so their independently drawn paths often cross.
    """
    if not 12 <= max_vertices <= MAX_SEEDED_VERTICES:
        raise ParameterOutOfRange(f"max_vertices must lie in [12, {MAX_SEEDED_VERTICES}], got {max_vertices}")
    rng = random.Random(seed)
    kind = seed % 3
    if kind == 1:
        n = rng.randint(12, max_vertices)
        k = rng.randint(1, min(MAX_SEEDED_PAIRS, max(1, int(round(math.sqrt(n))) // 2)))
        graph, pairs = gen_random_triangulation(n, k, seed)
    else:
        side = rng.randint(3, max(3, int(math.sqrt(max_vertices))))
        rows, cols = side, rng.randint(3, max(3, min(side + 2, max_vertices // side)))
        k = rng.randint(1, min(MAX_SEEDED_PAIRS, rows + cols - 2))
        weight = MAX_GEN_WEIGHT if kind == 0 else 1
        graph, pairs = gen_grid(rows, cols, k, seed, max_weight=weight)
    logger.debug("seed %d: %d vertices, %d pairs", seed, graph.vertex_count, len(pairs))
    return union_of_shortest_paths(graph, pairs, seed)


def verify_seeds(count: int, first_seed: int = 0, max_vertices: int = 400) -> List[OracleReport]:
    reports = []
    for seed in range(first_seed, first_seed + count):
        instance = seeded_instance(seed, max_vertices)
        reports.append(verify_instance(instance.union, instance.union_pairs, seed))
    return reports

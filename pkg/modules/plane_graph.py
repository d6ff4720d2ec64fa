"""Immutable plane graphs given by a rotation system.

Darts are integers: edge ``e`` from ``edges[e].u`` to ``edges[e].v`` is dart
``2 * e`` and the opposite direction is ``2 * e + 1``. Rotations are stored
clockwise and ``face_next(d)`` is the rotation successor of ``reverse(d)`` at
``head(d)``, so every face orbit keeps its face on the left of each dart.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

from config import MAX_WEIGHT

logger = logging.getLogger(__name__)

Side = Literal["orbit", "reverse"]
Coordinate = Tuple[Fraction, Fraction]


# -------------------------------------
# ERRORS
# -------------------------------------
class NcspError(Exception):
    """Base class for every error reported by the ncsp tools."""


class EmbeddingError(NcspError):
    pass


class NonPositiveWeight(EmbeddingError):
    pass


class WeightOutOfRange(EmbeddingError):
    pass


class Disconnected(EmbeddingError):
    pass


class BadRotation(EmbeddingError):
    pass


class EulerViolation(EmbeddingError):
    pass


class PositionNotOnFace(EmbeddingError):
    pass


# -------------------------------------
# DATA
# -------------------------------------
@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: int


@dataclass(frozen=True)
class EmbeddingData:
    """Raw, unvalidated embedding records as read from disk or generated."""

    vertex_count: int
    edges: Tuple[Edge, ...]
    rotations: Tuple[Tuple[int, ...], ...]
    outer_dart: Optional[int] = None
    coordinates: Optional[Tuple[Coordinate, ...]] = None


@dataclass(frozen=True)
class FaceTable:
    orbits: Tuple[Tuple[int, ...], ...]
    face_of: Tuple[int, ...]
    position_of: Tuple[int, ...]
    # prefix[f][p] is the weight of orbit darts 0..p-1, so prefix[f][-1] == w(df)
    prefix: Tuple[Tuple[int, ...], ...]
    outer_face: int

    @property
    def face_count(self) -> int:
        return len(self.orbits)

    def total_weight(self, face: int) -> int:
        return self.prefix[face][-1]


def reverse(dart: int) -> int:
    return dart ^ 1


@dataclass(frozen=True)
class PlaneGraph:
    vertex_count: int
    edges: Tuple[Edge, ...]
    rotations: Tuple[Tuple[int, ...], ...]
    outer_dart: int
    coordinates: Optional[Tuple[Coordinate, ...]]
    # derived
    tails: Tuple[int, ...] = field(repr=False)
    heads: Tuple[int, ...] = field(repr=False)
    out_darts: Tuple[Tuple[int, ...], ...] = field(repr=False)
    rotation_position: Tuple[int, ...] = field(repr=False)
    faces: FaceTable = field(repr=False)

    # --- permutations ---
    @property
    def dart_count(self) -> int:
        return 2 * len(self.edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def tail(self, dart: int) -> int:
        return self.tails[dart]

    def head(self, dart: int) -> int:
        return self.heads[dart]

    def weight(self, dart: int) -> int:
        return self.edges[dart >> 1].weight

    def degree(self, vertex: int) -> int:
        return len(self.out_darts[vertex])

    def rotation_next(self, dart: int) -> int:
        ring = self.out_darts[self.tails[dart]]
        return ring[(self.rotation_position[dart] + 1) % len(ring)]

    def rotation_prev(self, dart: int) -> int:
        ring = self.out_darts[self.tails[dart]]
        return ring[self.rotation_position[dart] - 1]

    def face_next(self, dart: int) -> int:
        return self.rotation_next(dart ^ 1)

    def face(self, dart: int) -> int:
        return self.faces.face_of[dart]

    @property
    def outer_face(self) -> int:
        return self.faces.outer_face

    def dart_between(self, u: int, v: int) -> Optional[int]:
        for d in self.out_darts[u]:
            if self.heads[d] == v:
                return d
        return None

    def path_weight(self, darts: Iterable[int]) -> int:
        return sum(self.edges[d >> 1].weight for d in darts)

    # --- faces ---
    def boundary_subpath_weight(self, face: int, from_position: int, to_position: int,
                                side: Side = "orbit") -> int:
        """Weight of the boundary walk of ``face`` between two orbit positions in O(1).

        ``orbit`` walks along the orbit from ``from_position`` to ``to_position``;
        ``reverse`` takes the complementary walk.
        """
        prefix = self.faces.prefix[face]
        length = len(prefix) - 1
        for position in (from_position, to_position):
            if not 0 <= position < length:
                raise PositionNotOnFace(f"position {position} is not on face {face} (length {length})")
        if from_position == to_position:
            return 0
        total = prefix[-1]
        forward = prefix[to_position] - prefix[from_position]
        if to_position < from_position:
            forward += total
        if side == "orbit":
            return forward
        if side == "reverse":
            return total - forward
        raise ValueError(f"unknown side {side!r}")

    def orbit(self, face: int) -> Tuple[int, ...]:
        return self.faces.orbits[face]


# -------------------------------------
# BUILD
# -------------------------------------
def _check_records(vertex_count: int, edges: Sequence[Edge],
                   rotations: Sequence[Sequence[int]]) -> None:
    if vertex_count < 2 or not edges:
        raise Disconnected("a plane graph needs at least one edge")
    if len(rotations) != vertex_count:
        raise BadRotation(f"expected {vertex_count} rotations, got {len(rotations)}")

    seen_pairs = set()
    for eid, edge in enumerate(edges):
        if not (0 <= edge.u < vertex_count and 0 <= edge.v < vertex_count):
            raise BadRotation(f"edge {eid} has an endpoint outside 0..{vertex_count - 1}")
        if edge.u == edge.v:
            raise BadRotation(f"edge {eid} is a self-loop at vertex {edge.u}")
        key = (min(edge.u, edge.v), max(edge.u, edge.v))
        if key in seen_pairs:
            raise BadRotation(f"edge {eid} duplicates an edge between {key[0]} and {key[1]}")
        seen_pairs.add(key)
        if edge.weight <= 0:
            raise NonPositiveWeight(f"edge {eid} has weight {edge.weight}")
        if edge.weight > MAX_WEIGHT:
            raise WeightOutOfRange(f"edge {eid} has weight {edge.weight} > 2^60")

    for v, ring in enumerate(rotations):
        if len(set(ring)) != len(ring):
            raise BadRotation(f"rotation at vertex {v} lists an edge twice")
        for eid in ring:
            if not 0 <= eid < len(edges):
                raise BadRotation(f"rotation at vertex {v} names unknown edge {eid}")
            edge = edges[eid]
            if v not in (edge.u, edge.v):
                raise BadRotation(f"rotation at vertex {v} names edge {eid} which is not incident")
    for eid, edge in enumerate(edges):
        if eid not in rotations[edge.u] or eid not in rotations[edge.v]:
            raise BadRotation(f"edge {eid} is missing from a rotation at its endpoints")


def _check_connected(vertex_count: int, out_darts: Sequence[Sequence[int]],
                     heads: Sequence[int]) -> None:
    seen = [False] * vertex_count
    seen[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for d in out_darts[x]:
            y = heads[d]
            if not seen[y]:
                seen[y] = True
                queue.append(y)
    missing = [v for v in range(vertex_count) if not seen[v]]
    if missing:
        raise Disconnected(f"{len(missing)} vertices unreachable from vertex 0 (first: {missing[0]})")


def trace_faces(graph: PlaneGraph) -> FaceTable:
    """Traces the face orbits of ``graph`` under ``face_next``."""
    return _trace(graph.edges, graph.tails, graph.heads, graph.out_darts,
                  graph.rotation_position, graph.outer_dart)


def _trace(edges, tails, heads, out_darts, rotation_position, outer_dart) -> FaceTable:
    dart_count = 2 * len(edges)
    face_of = [-1] * dart_count
    position_of = [-1] * dart_count
    orbits: List[Tuple[int, ...]] = []
    prefixes: List[Tuple[int, ...]] = []

    for start in range(dart_count):
        if face_of[start] != -1:
            continue
        face = len(orbits)
        orbit = []
        prefix = [0]
        d = start
        while face_of[d] == -1:
            face_of[d] = face
            position_of[d] = len(orbit)
            orbit.append(d)
            prefix.append(prefix[-1] + edges[d >> 1].weight)
            ring = out_darts[heads[d]]
            d = ring[(rotation_position[d ^ 1] + 1) % len(ring)]
        if d != start:
            raise BadRotation(f"face walk from dart {start} does not close")
        orbits.append(tuple(orbit))
        prefixes.append(tuple(prefix))

    return FaceTable(
        orbits=tuple(orbits),
        face_of=tuple(face_of),
        position_of=tuple(position_of),
        prefix=tuple(prefixes),
        outer_face=face_of[outer_dart],
    )


def build(vertex_count: int, edges: Sequence, rotations: Sequence[Sequence[int]],
          outer_dart: int, coordinates: Optional[Sequence[Coordinate]] = None) -> PlaneGraph:
    """Validates the records and returns a PlaneGraph with its faces traced.

    ``edges`` holds ``Edge`` values or ``(edge_id, u, v, weight)`` tuples whose
    ids must be dense and in order.
    """
    normalized: List[Edge] = []
    for position, edge in enumerate(edges):
        if isinstance(edge, Edge):
            normalized.append(edge)
            continue
        eid, u, v, w = edge
        if eid != position:
            raise BadRotation(f"edge ids must be dense and ordered: expected {position}, got {eid}")
        normalized.append(Edge(u, v, w))
    edges_t = tuple(normalized)
    rotations_t = tuple(tuple(ring) for ring in rotations)
    _check_records(vertex_count, edges_t, rotations_t)

    dart_count = 2 * len(edges_t)
    tails = [0] * dart_count
    heads = [0] * dart_count
    for eid, edge in enumerate(edges_t):
        tails[2 * eid], heads[2 * eid] = edge.u, edge.v
        tails[2 * eid + 1], heads[2 * eid + 1] = edge.v, edge.u

    out_darts = []
    rotation_position = [0] * dart_count
    for v, ring in enumerate(rotations_t):
        darts = tuple(2 * eid if edges_t[eid].u == v else 2 * eid + 1 for eid in ring)
        for position, d in enumerate(darts):
            rotation_position[d] = position
        out_darts.append(darts)

    _check_connected(vertex_count, out_darts, heads)
    if not 0 <= outer_dart < dart_count:
        raise BadRotation(f"outer dart {outer_dart} does not exist")

    faces = _trace(edges_t, tails, heads, out_darts, rotation_position, outer_dart)
    euler = vertex_count - len(edges_t) + faces.face_count
    if euler != 2:
        raise EulerViolation(
            f"|V| - |E| + |F| = {vertex_count} - {len(edges_t)} + {faces.face_count} = {euler}, expected 2"
        )

    if coordinates is not None and len(coordinates) != vertex_count:
        raise BadRotation(f"expected {vertex_count} coordinates, got {len(coordinates)}")

    graph = PlaneGraph(
        vertex_count=vertex_count,
        edges=edges_t,
        rotations=rotations_t,
        outer_dart=outer_dart,
        coordinates=tuple(coordinates) if coordinates is not None else None,
        tails=tuple(tails),
        heads=tuple(heads),
        out_darts=tuple(out_darts),
        rotation_position=tuple(rotation_position),
        faces=faces,
    )
    logger.debug("built plane graph: %d vertices, %d edges, %d faces",
                 vertex_count, len(edges_t), faces.face_count)
    return graph


def build_from(data: EmbeddingData, outer_dart: Optional[int] = None) -> PlaneGraph:
    dart = data.outer_dart if outer_dart is None else outer_dart
    if dart is None:
        raise BadRotation("no outer dart designated")
    return build(data.vertex_count, data.edges, data.rotations, dart, data.coordinates)


# -------------------------------------
# RAW EMBEDDING HELPERS
# -------------------------------------
def connected_components(data: EmbeddingData) -> List[List[int]]:
    """Edge-id lists of the connected components that carry at least one edge."""
    adjacency: Dict[int, List[Tuple[int, int]]] = {}
    for eid, edge in enumerate(data.edges):
        adjacency.setdefault(edge.u, []).append((eid, edge.v))
        adjacency.setdefault(edge.v, []).append((eid, edge.u))
    seen = set()
    components = []
    for root in sorted(adjacency):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        edge_ids = set()
        while queue:
            x = queue.popleft()
            for eid, y in adjacency[x]:
                edge_ids.add(eid)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        components.append(sorted(edge_ids))
    return components


@dataclass(frozen=True)
class Restriction:
    """An embedding restricted to a subset of edges, with id maps both ways."""

    data: EmbeddingData
    vertex_map: Dict[int, int]      # old vertex -> new vertex
    vertex_origin: Tuple[int, ...]  # new vertex -> old vertex
    edge_origin: Tuple[int, ...]    # new edge -> old edge


def restrict_embedding(data: EmbeddingData, keep_edges: Iterable[int]) -> Restriction:
    """Keeps ``keep_edges``, inheriting the cyclic order of the surviving rotations."""
    keep = sorted(set(keep_edges))
    keep_set = set(keep)
    vertex_origin = sorted({data.edges[e].u for e in keep} | {data.edges[e].v for e in keep})
    vertex_map = {old: new for new, old in enumerate(vertex_origin)}
    edge_map = {old: new for new, old in enumerate(keep)}

    edges = tuple(
        Edge(vertex_map[data.edges[e].u], vertex_map[data.edges[e].v], data.edges[e].weight)
        for e in keep
    )
    rotations = tuple(
        tuple(edge_map[e] for e in data.rotations[old] if e in keep_set)
        for old in vertex_origin
    )
    coordinates = None
    if data.coordinates is not None:
        coordinates = tuple(data.coordinates[old] for old in vertex_origin)
    outer = None
    if data.outer_dart is not None and (data.outer_dart >> 1) in keep_set:
        outer = 2 * edge_map[data.outer_dart >> 1] + (data.outer_dart & 1)

    restricted = EmbeddingData(
        vertex_count=len(vertex_origin),
        edges=edges,
        rotations=rotations,
        outer_dart=outer,
        coordinates=coordinates,
    )
    return Restriction(restricted, vertex_map, tuple(vertex_origin), tuple(keep))

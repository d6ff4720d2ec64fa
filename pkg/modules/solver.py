"""Computes the implicit set of non-crossing single-touch shortest paths.

Pairs are processed in postorder of the genealogy tree. Each path starts as
the leftmost i-path of the region not yet enclosed by earlier paths and is
moved right by face-boundary shortcuts until none applies. The final path is
stored as fresh darts plus references into its children, its fresh darts are
marked with the pair index, and the region on its left is sealed.

Path vertices are ``PathNode`` objects kept in one global order list, so a
finished child path is adopted by its parent without copying: the parent's
walk jumps onto the child's nodes and keeps the stretch it needs. Each node
registers the corners of its right wedge in ``FaceTouches``; a face is tested
again only when its pieces change.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Deque, Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from config import full_checks
from modules.instance import GenealogyTree, TerminalPairs
from modules.order import OrderList, OrderNode
from modules.plane_graph import NcspError, PlaneGraph, reverse
from modules.touch import FaceTouches, Piece

logger = logging.getLogger(__name__)


# -------------------------------------
# ERRORS
# -------------------------------------
class SolverError(NcspError):
    pass


class InternalInvariantViolation(SolverError):
    pass


class StaleShortcut(SolverError):
    pass


# -------------------------------------
# TYPES
# -------------------------------------
@dataclass(frozen=True)
class FreshSegment:
    darts: Tuple[int, ...]


@dataclass(frozen=True)
class ChildSplice:
    child: int
    entry_vertex: int
    exit_vertex: int
    entry_dart: int
    exit_dart: int


Segment = Union[FreshSegment, ChildSplice]


@dataclass(frozen=True)
class Shortcut:
    face: int
    entry: int
    exit: int
    darts: Tuple[int, ...]
    weight: int
    replaced_weight: int

    @property
    def delta(self) -> int:
        return self.weight - self.replaced_weight


@dataclass
class SolverStats:
    darts_visited: int = 0
    faces_tested: int = 0
    shortcuts_applied: int = 0
    edges_sealed: int = 0
    fresh_darts: int = 0
    shortcuts_per_pair: List[int] = field(default_factory=list)

    def merge(self, other: "SolverStats") -> None:
        self.darts_visited += other.darts_visited
        self.faces_tested += other.faces_tested
        self.shortcuts_applied += other.shortcuts_applied
        self.edges_sealed += other.edges_sealed
        self.fresh_darts += other.fresh_darts
        self.shortcuts_per_pair.extend(other.shortcuts_per_pair)


def expand(skeletons: Sequence[Tuple[Segment, ...]], i: int) -> List[int]:
    """Expands the skeleton of pair ``i`` into its full dart sequence.

    Children carry smaller postorder indices, so the subtree is expanded
    bottom-up and each child list is dropped once its parent has used it.
    """
    needed, stack = set(), [i]
    while stack:
        n = stack.pop()
        needed.add(n)
        stack.extend(segment.child for segment in skeletons[n] if isinstance(segment, ChildSplice))
    done: Dict[int, List[int]] = {}
    for n in sorted(needed):
        darts: List[int] = []
        for segment in skeletons[n]:
            if isinstance(segment, FreshSegment):
                darts.extend(segment.darts)
                continue
            child = done.pop(segment.child)
            start = child.index(segment.entry_dart)
            stop = child.index(segment.exit_dart)
            darts.extend(child[start:stop + 1])
        done[n] = darts
    return done[i]


def _frontier(graph: PlaneGraph, darts: List[int], unsealed: Callable[[int], bool]) -> List[int]:
    """Unsealed darts leaving the path on its right towards vertices off the path, in path order."""
    on_path = {graph.tail(d) for d in darts}
    on_path.add(graph.head(darts[-1]))
    listed = []
    for d_in, d_out in zip(darts, darts[1:]):
        d = graph.rotation_prev(reverse(d_in))
        while d != d_out:
            if unsealed(d >> 1) and graph.head(d) not in on_path:
                listed.append(d)
            d = graph.rotation_prev(d)
    return listed


@dataclass(frozen=True)
class ImplicitPathSet:
    graph: PlaneGraph
    tree: GenealogyTree
    pairs: TerminalPairs
    skeletons: Tuple[Tuple[Segment, ...], ...]
    # edge -> pair after which it was sealed, k when never sealed
    sealed_after: Tuple[int, ...]
    # dart -> pair that used it first, -1 when unused
    marks: Tuple[int, ...]
    stats: SolverStats

    @property
    def k(self) -> int:
        return len(self.skeletons)

    def fresh_darts(self, i: int) -> List[int]:
        return [d for segment in self.skeletons[i] if isinstance(segment, FreshSegment) for d in segment.darts]

    def materialize(self, i: int) -> List[int]:
        return expand(self.skeletons, i)

    def frontier(self, i: int) -> List[int]:
        """Right frontier of path ``i`` among the edges still unsealed while it was built."""
        return _frontier(self.graph, self.materialize(i), lambda edge: self.sealed_after[edge] >= i)


# -------------------------------------
# WORKING PATH
# -------------------------------------
class PathNode(OrderNode):
    """One vertex of a path; ``dart_in`` arrives from ``pred``.

    ``key`` is the pair that created the node. ``corners`` lists the right-wedge
    corners registered in the face touches, None while unregistered; ``link``
    is the face position that joins them with ``pred``'s corners.
    """

    __slots__ = ("vertex", "dart_in", "key", "alive", "pred", "succ", "corners", "link")

    def __init__(self, vertex: int, dart_in: Optional[int], key: int):
        super().__init__()
        self.vertex = vertex
        self.dart_in = dart_in
        self.key = key
        self.alive = True
        self.pred: Optional[PathNode] = None
        self.succ: Optional[PathNode] = None
        self.corners: Optional[List[Tuple[int, int]]] = None
        self.link: Optional[Tuple[int, int]] = None

    def __repr__(self) -> str:
        return f"PathNode(vertex={self.vertex}, dart_in={self.dart_in}, key={self.key})"


@dataclass(eq=False)
class Chunk:
    """Adopted stretch of a child path: the darts into ``first`` through ``last``."""

    child: int
    first: PathNode
    last: PathNode


class WorkingPath:
    def __init__(self, pair: int, head: PathNode, state: "SolverState"):
        self.pair = pair
        self.head = head
        self.tail = head
        self.state = state

    def __contains__(self, vertex: int) -> bool:
        return self.state.current_node(vertex, self.pair) is not None

    def node(self, vertex: int) -> PathNode:
        node = self.state.current_node(vertex, self.pair)
        if node is None:
            raise KeyError(vertex)
        return node

    def iter_nodes(self) -> Iterator[PathNode]:
        node: Optional[PathNode] = self.head
        while node is not None:
            yield node
            node = node.succ

    def darts(self) -> List[int]:
        return [node.dart_in for node in self.iter_nodes() if node.dart_in is not None]

    def frontier(self) -> List[int]:
        sealed = self.state.sealed
        return _frontier(self.state.graph, self.darts(), lambda edge: not sealed[edge])


# -------------------------------------
# STATE
# -------------------------------------
class SolverState:
    """Mutable bookkeeping shared by all iterations of one run."""

    def __init__(self, graph: PlaneGraph, tree: GenealogyTree, tp: TerminalPairs):
        self.graph = graph
        self.tree = tree
        self.pairs = tp
        self.sealed = bytearray(graph.edge_count)
        self.sealed_count = [0] * graph.faces.face_count
        self.sealed_after = [tree.size] * graph.edge_count
        self.marks = [-1] * graph.dart_count
        self.stats = SolverStats()
        self.checks = full_checks()

        self.order = OrderList()
        # pair -> pair that adopted it, union-find style
        self.owner = list(range(tree.size))
        self.nodes_at: List[List[PathNode]] = [[] for _ in range(graph.vertex_count)]
        # node pairs sharing a vertex across two lineages, kept at the pair that adopts both
        self.pending: List[List[Tuple[PathNode, PathNode]]] = [[] for _ in range(tree.size)]
        self.pending_faces: List[Set[int]] = [set() for _ in range(tree.size)]
        self.touches = FaceTouches([len(orbit) for orbit in graph.faces.orbits], self.find)
        self.simple_face = [len({graph.tail(d) for d in orbit}) == len(orbit) for orbit in graph.faces.orbits]
        self.finals: List[Optional[Tuple[PathNode, PathNode]]] = [None] * tree.size
        self.skeletons: List[Tuple[Segment, ...]] = []

        self.pair = -1
        self.chunks: List[Chunk] = []
        self.queue: Deque[int] = deque()
        self.queued: Set[int] = set()

    def find(self, key: int) -> int:
        owner = self.owner
        while owner[key] != key:
            owner[key] = owner[owner[key]]
            key = owner[key]
        return key

    def current_node(self, vertex: int, pair: int) -> Optional[PathNode]:
        for node in self.nodes_at[vertex]:
            if self.find(node.key) == pair:
                return node
        return None

    def live(self, face: int) -> bool:
        return face != self.graph.outer_face and self.sealed_count[face] == 0

    def seal(self, edge: int, pair: int) -> None:
        self.sealed[edge] = 1
        self.sealed_after[edge] = pair
        self.sealed_count[self.graph.face(2 * edge)] += 1
        self.sealed_count[self.graph.face(2 * edge + 1)] += 1
        self.stats.edges_sealed += 1

    def enqueue(self, face: int) -> None:
        if face not in self.queued and self.live(face):
            self.queued.add(face)
            self.queue.append(face)


# -------------------------------------
# NODES AND TOUCHES
# -------------------------------------
def _new_node(state: SolverState, vertex: int, dart_in: Optional[int], pair: int) -> PathNode:
    node = PathNode(vertex, dart_in, pair)
    for other in state.nodes_at[vertex]:
        holder = state.find(other.key)
        if holder == pair:
            raise InternalInvariantViolation(f"pair {pair}: vertex {vertex} repeats on the working path")
        parent = state.tree.parent[holder]
        if parent is not None:
            state.pending[parent].append((other, node))
    state.nodes_at[vertex].append(node)
    return node


def _append(state: SolverState, path: WorkingPath, node: PathNode) -> None:
    tail = path.tail
    state.order.insert_after(tail, node)
    tail.succ, node.pred = node, tail
    path.tail = node


def _kill(state: SolverState, node: PathNode) -> None:
    if node.corners is not None:
        _unregister(state, node)
    state.order.unlink(node)
    state.nodes_at[node.vertex].remove(node)
    node.alive = False
    state.stats.darts_visited += 1


def _unlink(state: SolverState, node: Optional[PathNode]) -> None:
    if node is not None and node.link is not None:
        face, position = node.link
        state.touches.unlink(face, position, node.key)
        node.link = None


def _touched(state: SolverState, face: int, key: int) -> None:
    for holder in state.touches.foreign(face, key):
        parent = state.tree.parent[holder]
        if parent is not None:
            state.pending_faces[parent].add(face)
    state.enqueue(face)


def _register(state: SolverState, node: PathNode) -> None:
    """Adds the corners of the node's right wedge to the touches of their faces."""
    node.corners = []
    if node.pred is None or node.succ is None:
        return
    g = state.graph
    stop = reverse(node.dart_in)
    d = g.rotation_next(node.succ.dart_in)
    while True:
        state.stats.darts_visited += 1
        face = g.face(d)
        if state.live(face):
            position = g.faces.position_of[d]
            state.touches.add(face, position, node.key)
            node.corners.append((face, position))
            _touched(state, face, node.key)
        if d == stop:
            return
        d = g.rotation_next(d)


def _unregister(state: SolverState, node: PathNode) -> None:
    _unlink(state, node)
    _unlink(state, node.succ)
    for face, position in node.corners:
        state.touches.remove(face, position, node.key)
        state.enqueue(face)
    node.corners = None


def _join(state: SolverState, node: PathNode) -> None:
    """Joins the node's corner with its predecessor's across ``dart_in`` when both are registered."""
    pred = node.pred
    if pred is None or node.corners is None or pred.corners is None or node.link is not None:
        return
    g = state.graph
    back = reverse(node.dart_in)
    face = g.face(back)
    position = g.faces.position_of[back]
    upper = (position + 1) % len(g.orbit(face))
    if (face, position) in node.corners and (face, upper) in pred.corners:
        state.touches.link(face, position, node.key)
        node.link = (face, position)


def _refresh(state: SolverState, nodes: Sequence[PathNode]) -> None:
    for node in nodes:
        if node.corners is not None:
            _unregister(state, node)
    for node in nodes:
        _register(state, node)
    for node in nodes:
        _join(state, node)
        if node.succ is not None:
            _join(state, node.succ)


# -------------------------------------
# SURGERY
# -------------------------------------
def _trim_chunks(state: SolverState, first: PathNode, last: PathNode) -> None:
    """Shrinks the adopted chunks so that none keeps a node from ``first`` to ``last``."""
    kept = []
    for chunk in state.chunks:
        if last.label < chunk.first.label or first.label > chunk.last.label:
            kept.append(chunk)
            continue
        keeps_head = chunk.first.label < first.label
        keeps_tail = chunk.last.label > last.label
        if keeps_head and keeps_tail:
            raise InternalInvariantViolation(f"pair {state.pair}: child {chunk.child} is cut in the middle")
        if keeps_head:
            chunk.last = first.pred
            kept.append(chunk)
        elif keeps_tail:
            chunk.first = last.succ
            kept.append(chunk)
    state.chunks = kept


def _cut(state: SolverState, path: WorkingPath, a: PathNode, b: Optional[PathNode],
         darts: Optional[Tuple[int, ...]] = None) -> List[PathNode]:
    """Drops the nodes strictly between ``a`` and ``b``, or everything after ``a`` when b is None.

    With ``darts`` the gap is refilled by new nodes at their heads and the last
    dart becomes ``b``'s incoming dart. Returns the new nodes.
    """
    first = a.succ
    if b is None:
        last = path.tail
    elif darts is None:
        last = b.pred
    else:
        last = b
    if first is not None and last is not None and first.label <= last.label:
        _trim_chunks(state, first, last)

    node = a.succ
    while node is not None and node is not b:
        following = node.succ
        _kill(state, node)
        node = following
    if b is None:
        a.succ = None
        path.tail = a
        return []

    _unlink(state, b)
    created = []
    previous = a
    if darts:
        g = state.graph
        for dart in darts[:-1]:
            node = _new_node(state, g.head(dart), dart, path.pair)
            state.order.insert_after(previous, node)
            previous.succ, node.pred = node, previous
            previous = node
            created.append(node)
        b.dart_in = darts[-1]
    previous.succ, b.pred = b, previous
    return created


# -------------------------------------
# LEFTMOST WALK
# -------------------------------------
def _begin(i: int, state: SolverState) -> None:
    state.pair = i
    state.chunks = []
    state.queue.clear()
    state.queued.clear()


def _child_start(state: SolverState, i: int, vertex: int, dart: int) -> Optional[PathNode]:
    """Node of a not yet adopted child path at ``vertex`` that leaves along ``dart``."""
    target = state.pairs.pairs[i][1]
    for node in state.nodes_at[vertex]:
        holder = state.find(node.key)
        if holder == i or state.tree.parent[holder] != i:
            continue
        following = node.succ
        if following is not None and following.dart_in == dart \
                and (following.succ is not None or following.vertex == target):
            return node
    return None


def _jump(path: WorkingPath, start: PathNode, state: SolverState) -> Optional[int]:
    """Adopts the child path from ``start`` on and returns the dart arriving back at its end.

    The child's pendant target is never part of the parent path unless it is
    the parent's own target; the walk bounces off it instead.
    """
    i = path.pair
    child = state.find(start.key)
    head, last = state.finals[child]
    node = head
    while node is not start:
        following = node.succ
        _kill(state, node)
        node = following
    entry = start.succ
    _kill(state, start)
    if not state.order.precedes(path.tail, entry):
        raise InternalInvariantViolation(f"pair {i}: child {child} is met out of boundary order")
    path.tail.succ, entry.pred = entry, path.tail

    arrived: Optional[int] = None
    end = last
    if last.vertex != state.pairs.pairs[i][1]:
        end = last.pred
        arrived = reverse(last.dart_in)
        _kill(state, last)
        end.succ = None
    state.chunks.append(Chunk(child, entry, end))
    path.tail = end
    _merge_touching(path, child, state)
    state.owner[child] = i
    return arrived


def _merge_touching(path: WorkingPath, child: int, state: SolverState) -> None:
    """Cuts the loop closed where the adopted child revisits a vertex already on the path."""
    i = path.pair
    best: Optional[Tuple[PathNode, PathNode]] = None
    kept = []
    for a, b in state.pending[i]:
        if not (a.alive and b.alive):
            continue
        kept.append((a, b))
        holders = (state.find(a.key), state.find(b.key))
        if holders == (child, i):
            on_path, inside = b, a
        elif holders == (i, child):
            on_path, inside = a, b
        else:
            continue
        if best is None or on_path.label < best[0].label:
            best = (on_path, inside)
    state.pending[i] = kept
    if best is not None:
        on_path, inside = best
        _cut(state, path, on_path, inside.succ)


def _drop_unadopted(i: int, state: SolverState) -> None:
    for child in state.tree.children[i]:
        if state.find(child) == i:
            continue
        node = state.finals[child][0]
        while node is not None:
            following = node.succ
            _kill(state, node)
            node = following
        state.owner[child] = i


def _outline(path: WorkingPath, state: SolverState) -> Iterator[Tuple[PathNode, Optional[Chunk]]]:
    """Path nodes outside the interior of adopted chunks, each with the chunk that follows it."""
    chunk_at = {chunk.first: chunk for chunk in state.chunks}
    node = path.head
    while node is not path.tail:
        chunk = chunk_at.get(node.succ)
        yield node, chunk
        node = chunk.last if chunk is not None else node.succ
    yield node, None


def leftmost_initial_path(i: int, state: SolverState) -> WorkingPath:
    """Leftmost i-path among unsealed edges, by always turning as far left as possible.

    The walk follows the boundary of the unsealed region from s_i; revisiting a
    vertex cuts the loop just closed, so the result is simple. Stepping onto a
    child path in its own direction adopts the child's nodes instead of walking
    them again.
    """
    _begin(i, state)
    g = state.graph
    source, target = state.pairs.pairs[i]
    children = state.tree.children[i]
    head = _new_node(state, source, None, i)
    state.order.insert_before(state.finals[children[0]][0] if children else None, head)
    path = WorkingPath(i, head, state)

    arrived: Optional[int] = None
    guard = 2 * g.dart_count + 2
    steps = 0
    while path.tail.vertex != target:
        if arrived is None:
            dart = g.out_darts[source][0]
        else:
            dart = g.rotation_next(reverse(arrived))
            while state.sealed[dart >> 1]:
                state.stats.darts_visited += 1
                dart = g.rotation_next(dart)
        state.stats.darts_visited += 1
        steps += 1
        if steps > guard:
            raise InternalInvariantViolation(f"pair {i}: boundary walk from {source} never reaches {target}")

        start = _child_start(state, i, path.tail.vertex, dart)
        if start is not None:
            arrived = _jump(path, start, state)
            continue
        w = g.head(dart)
        node = state.current_node(w, i)
        if node is not None:
            _cut(state, path, node, None)
        else:
            _append(state, path, _new_node(state, w, dart, i))
        arrived = dart

    _drop_unadopted(i, state)
    _refresh(state, [node for node, _ in _outline(path, state)])
    for face in state.pending_faces[i]:
        state.enqueue(face)
    logger.debug("pair %d: initial path after %d steps, %d children adopted", i, steps, len(state.chunks))
    return path


# -------------------------------------
# SHORTCUTS
# -------------------------------------
def find_right_shortcut(path: WorkingPath, face: int, state: SolverState) -> Optional[Shortcut]:
    """Returns a boundary subpath of ``face`` on the right of the path that is no heavier
    than the path section it bypasses, or None.

    When the path meets the face in several separate stretches, the boundary
    between two consecutive stretches is tried first. Otherwise the rest of the
    boundary is compared with the one stretch using the face's prefix sums.
    """
    if not state.live(face):
        return None
    state.stats.faces_tested += 1
    pieces = state.touches.current(face, path.pair)
    if not pieces:
        return None
    g = state.graph
    touches = state.touches
    orbit = g.orbit(face)
    length = len(orbit)

    def top(piece: Piece) -> PathNode:
        return path.node(g.tail(orbit[touches.hi(face, piece)]))

    def bottom(piece: Piece) -> PathNode:
        return path.node(g.tail(orbit[piece.lo]))

    # along the path the touched positions descend
    ranked = sorted(pieces, key=lambda piece: piece.lo, reverse=True)
    keys = [(top(piece).label, bottom(piece).label) for piece in ranked]
    lowest = min(keys)
    if len(ranked) > 1:
        starts = [j for j in range(len(ranked)) if keys[j] == lowest and keys[j - 1] != lowest]
        if not starts:
            return None
        ranked = ranked[starts[0]:] + ranked[:starts[0]]

    separate = False
    for upper, lower in zip(ranked, ranked[1:]):
        leave, back = bottom(upper), top(lower)
        if leave is back:
            continue
        separate = True
        if back.label < leave.label:
            continue
        stop = touches.hi(face, lower)
        darts = tuple(reverse(orbit[(upper.lo - 1 - j) % length]) for j in range((upper.lo - stop) % length))
        state.stats.darts_visited += len(darts)
        if not _detour_is_clear(path, darts, state):
            continue
        replaced = 0
        node = leave
        while node is not back:
            node = node.succ
            replaced += g.weight(node.dart_in)
            state.stats.darts_visited += 1
        weight = g.boundary_subpath_weight(face, stop, upper.lo, "orbit")
        if weight <= replaced:
            return Shortcut(face, leave.vertex, back.vertex, darts, weight, replaced)
    if separate:
        return None

    entry, exit = top(ranked[0]), bottom(ranked[-1])
    if entry is exit:
        return None
    start = touches.hi(face, ranked[0])
    replaced = sum(g.boundary_subpath_weight(face, piece.lo, touches.hi(face, piece), "orbit") for piece in ranked)
    weight = g.boundary_subpath_weight(face, start, ranked[-1].lo, "orbit")
    if weight > replaced:
        return None
    darts = tuple(orbit[(start + j) % length] for j in range((ranked[-1].lo - start) % length))
    state.stats.darts_visited += len(darts)
    if not _detour_is_clear(path, darts, state):
        return None
    return Shortcut(face, entry.vertex, exit.vertex, darts, weight, replaced)


def _detour_is_clear(path: WorkingPath, darts: Tuple[int, ...], state: SolverState) -> bool:
    """True when the inner vertices of ``darts`` are distinct and off the path."""
    g = state.graph
    inner = [g.head(d) for d in darts[:-1]]
    if len(set(inner)) != len(inner):
        return False
    return all(v not in path for v in inner)


def apply_shortcut(path: WorkingPath, shortcut: Shortcut) -> WorkingPath:
    state = path.state
    g = state.graph
    entry = state.current_node(shortcut.entry, path.pair)
    exit = state.current_node(shortcut.exit, path.pair)
    if entry is None or exit is None:
        raise StaleShortcut(f"shortcut on face {shortcut.face} no longer attaches to the path")
    if entry.label >= exit.label:
        raise StaleShortcut(f"shortcut on face {shortcut.face} runs against the path")
    for d in shortcut.darts[:-1]:
        if g.head(d) in path:
            raise StaleShortcut(f"shortcut on face {shortcut.face} meets the path at {g.head(d)}")
    created = _cut(state, path, entry, exit, shortcut.darts)
    _refresh(state, [entry, *created, exit])
    state.stats.shortcuts_applied += 1
    state.enqueue(shortcut.face)
    return path


def _saturate(path: WorkingPath, state: SolverState) -> int:
    """Tests queued faces until the queue drains; every change to a face's pieces requeues it."""
    applied = 0
    while state.queue:
        face = state.queue.popleft()
        state.queued.discard(face)
        shortcut = find_right_shortcut(path, face, state)
        if shortcut is None:
            continue
        apply_shortcut(path, shortcut)
        applied += 1
    return applied


# -------------------------------------
# FINISHING A PAIR
# -------------------------------------
def _skeleton(path: WorkingPath, state: SolverState) -> Tuple[Tuple[Segment, ...], List[PathNode]]:
    segments: List[Segment] = []
    fresh: List[int] = []
    outline = []
    for node, chunk in _outline(path, state):
        outline.append(node)
        if node is path.tail:
            break
        if chunk is None:
            fresh.append(node.succ.dart_in)
            continue
        if fresh:
            segments.append(FreshSegment(tuple(fresh)))
            fresh = []
        segments.append(ChildSplice(chunk.child, node.vertex, chunk.last.vertex,
                                    chunk.first.dart_in, chunk.last.dart_in))
    if fresh:
        segments.append(FreshSegment(tuple(fresh)))
    return tuple(segments), outline


def _seal_left(i: int, outline: List[PathNode], state: SolverState) -> None:
    """Seals every edge strictly on the left of the finished path.

    Adopted chunks keep their wedges, and the child already sealed their left
    side, so only the outline nodes start the search.
    """
    g = state.graph
    seen: Set[int] = set()
    queue: Deque[int] = deque()

    def visit(d: int) -> None:
        state.stats.darts_visited += 1
        edge = d >> 1
        if state.sealed[edge]:
            return
        state.seal(edge, i)
        w = g.head(d)
        if w not in seen and state.current_node(w, i) is None:
            seen.add(w)
            queue.append(w)

    for node in outline:
        if node.pred is None or node.succ is None:
            continue
        stop = node.succ.dart_in
        d = g.rotation_next(reverse(node.dart_in))
        while d != stop:
            visit(d)
            d = g.rotation_next(d)
    while queue:
        for d in g.out_darts[queue.popleft()]:
            visit(d)


def _in_right_wedge(graph: PlaneGraph, d_in: int, d_out: int, dart: int) -> bool:
    degree = graph.degree(graph.tail(d_out))
    position = graph.rotation_position
    out = position[d_out]
    back = position[reverse(d_in)]
    return (position[dart] - out - 1) % degree <= (back - out - 1) % degree


def _check_iteration(i: int, darts: List[int], state: SolverState) -> None:
    """Re-derives from scratch that the final path of pair ``i`` is sound and saturated."""
    g = state.graph
    source, target = state.pairs.pairs[i]
    if not darts or g.tail(darts[0]) != source or g.head(darts[-1]) != target:
        raise InternalInvariantViolation(f"pair {i}: path does not join {source} and {target}")
    for child in state.tree.children[i]:
        index = {d: n for n, d in enumerate(expand(state.skeletons, child))}
        shared = sorted(index[d] for d in darts if d in index)
        if shared and shared[-1] - shared[0] + 1 != len(shared):
            raise InternalInvariantViolation(f"pair {i} touches child {child} more than once")

    vertices = [source] + [g.head(d) for d in darts]
    at = {v: n for n, v in enumerate(vertices)}
    if len(at) != len(vertices):
        raise InternalInvariantViolation(f"pair {i}: path is not simple")
    prefix = [0]
    for d in darts:
        prefix.append(prefix[-1] + g.weight(d))
    used = {d >> 1 for d in darts}

    for face in range(g.faces.face_count):
        if not state.live(face):
            continue
        orbit = g.orbit(face)
        length = len(orbit)
        touching = [p for p, d in enumerate(orbit) if g.tail(d) in at]
        right = [p for p in touching if 0 < at[g.tail(orbit[p])] < len(darts)
                 and _in_right_wedge(g, darts[at[g.tail(orbit[p])] - 1], darts[at[g.tail(orbit[p])]], orbit[p])]
        if not right:
            continue
        for index, start in enumerate(touching):
            stop = touching[(index + 1) % len(touching)]
            size = (stop - start) % length or length
            a, b = at[g.tail(orbit[start])], at[g.tail(orbit[stop])]
            if a == b or (size == 1 and orbit[start] >> 1 in used):
                continue
            inner = [g.head(orbit[(start + j) % length]) for j in range(size - 1)]
            if len(set(inner)) != len(inner):
                continue
            detour = g.boundary_subpath_weight(face, start, stop, "orbit")
            if detour <= abs(prefix[b] - prefix[a]):
                raise InternalInvariantViolation(f"pair {i}: right shortcut left on face {face}")


def solve_pair(i: int, state: SolverState) -> WorkingPath:
    """Runs one iteration: leftmost walk, saturation, skeleton, marks and sealing."""
    path = leftmost_initial_path(i, state)
    applied = _saturate(path, state)
    state.stats.shortcuts_per_pair.append(applied)
    skeleton, outline = _skeleton(path, state)
    if state.checks:
        _check_iteration(i, path.darts(), state)

    # only darts fresh on the final path are marked, and a mark is never overwritten
    for segment in skeleton:
        if isinstance(segment, FreshSegment):
            state.stats.fresh_darts += len(segment.darts)
            for d in segment.darts:
                if state.marks[d] == -1:
                    state.marks[d] = i
    state.skeletons.append(skeleton)
    if i != state.tree.root:
        _seal_left(i, outline, state)
    state.finals[i] = (path.head, path.tail)
    state.pending[i] = []
    state.pending_faces[i] = set()
    logger.debug("pair %d: %d shortcuts, %d segments", i, applied, len(skeleton))
    return path


def run(graph: PlaneGraph, tree: GenealogyTree, tp: TerminalPairs) -> ImplicitPathSet:
    """Solves every pair of a binarized, postorder-numbered instance."""
    state = SolverState(graph, tree, tp)
    for i in range(tree.size):
        solve_pair(i, state)

    stats = state.stats
    logger.info("solved %d pairs: %d shortcuts, %d faces tested, %d darts visited",
                tree.size, stats.shortcuts_applied, stats.faces_tested, stats.darts_visited)
    return ImplicitPathSet(
        graph=graph,
        tree=tree,
        pairs=tp,
        skeletons=tuple(state.skeletons),
        sealed_after=tuple(state.sealed_after),
        marks=tuple(state.marks),
        stats=stats,
    )

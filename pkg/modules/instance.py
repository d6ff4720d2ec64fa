"""Terminal pairs on the external face and their genealogy tree."""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

from modules.plane_graph import NcspError, PlaneGraph

logger = logging.getLogger(__name__)


# -------------------------------------
# ERRORS
# -------------------------------------
class InstanceError(NcspError):
    pass


class TerminalNotOnOuterFace(InstanceError):
    pass


class TerminalNotPendant(InstanceError):
    pass


class DuplicateTerminal(InstanceError):
    pass


class IllFormedPairs(InstanceError):
    def __init__(self, pair: Tuple[int, int]):
        self.pair = pair
        super().__init__(f"terminal pairs {pair[0]} and {pair[1]} cross on the external face")


# -------------------------------------
# TYPES
# -------------------------------------
@dataclass(frozen=True)
class TerminalPairs:
    pairs: Tuple[Tuple[int, int], ...]
    # external-orbit position of each terminal's stub dart T -> T'
    positions: Tuple[Tuple[int, int], ...]
    orbit_length: int
    # terminal vertices in orbit order, starting from the outer dart
    boundary_order: Tuple[int, ...]
    scan_start: int
    auxiliary: Tuple[bool, ...] = ()
    swapped: Tuple[bool, ...] = ()
    # position right after e*, i.e. where linear coordinates start; None until oriented
    cut: Optional[int] = None

    @property
    def k(self) -> int:
        return len(self.pairs)

    def lin(self, position: int) -> int:
        base = self.scan_start if self.cut is None else self.cut
        return (position - base) % self.orbit_length

    def gamma(self, i: int) -> Tuple[int, int]:
        """Half-open orbit interval [pos(s_i), pos(t_i)) walked forward."""
        return self.positions[i]

    def original_pairs(self) -> List[int]:
        return [i for i in range(self.k) if not self.auxiliary[i]]


@dataclass(frozen=True)
class WellFormedness:
    ok: bool
    crossing: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class Orientation:
    istar: int
    e_star: int
    pairs: TerminalPairs


@dataclass(frozen=True)
class GenealogyTree:
    parent: Tuple[Optional[int], ...]
    children: Tuple[Tuple[int, ...], ...]
    root: int
    auxiliary: Tuple[bool, ...]
    e_star: int
    # node -> index in the pair list it was built from (identity until renumbered)
    origin: Tuple[int, ...]
    # node -> smallest postorder index in its subtree; empty until renumbered
    low: Tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.parent)


# -------------------------------------
# OPERATIONS
# -------------------------------------
def locate_terminals(graph: PlaneGraph, pairs: Sequence[Tuple[int, int]]) -> TerminalPairs:
    if not pairs:
        raise InstanceError("no terminal pairs given")
    outer = graph.outer_face
    seen: Dict[int, int] = {}
    positions = []
    for i, pair in enumerate(pairs):
        located = []
        for terminal in pair:
            if not 0 <= terminal < graph.vertex_count:
                raise TerminalNotOnOuterFace(f"pair {i}: terminal {terminal} is not a vertex")
            if terminal in seen:
                raise DuplicateTerminal(f"vertex {terminal} is a terminal of pairs {seen[terminal]} and {i}")
            seen[terminal] = i
            if graph.degree(terminal) != 1:
                raise TerminalNotPendant(f"terminal {terminal} has degree {graph.degree(terminal)}")
            stub = graph.out_darts[terminal][0]
            if graph.face(stub) != outer:
                raise TerminalNotOnOuterFace(f"terminal {terminal} does not lie on the external face")
            located.append(graph.faces.position_of[stub])
        positions.append(tuple(located))

    length = len(graph.orbit(outer))
    scan_start = graph.faces.position_of[graph.outer_dart]
    by_position = sorted(seen, key=lambda v: (graph.faces.position_of[graph.out_darts[v][0]] - scan_start) % length)
    return TerminalPairs(
        pairs=tuple((int(s), int(t)) for s, t in pairs),
        positions=tuple(positions),
        orbit_length=length,
        boundary_order=tuple(by_position),
        scan_start=scan_start,
        auxiliary=tuple(False for _ in pairs),
        swapped=tuple(False for _ in pairs),
    )


def _terminal_events(tp: TerminalPairs) -> List[Tuple[int, int]]:
    """(linear position, pair) for every terminal, sorted along the boundary."""
    events = []
    for i, (ps, pt) in enumerate(tp.positions):
        events.append((tp.lin(ps), i))
        events.append((tp.lin(pt), i))
    events.sort()
    return events


def check_wellformed(tp: TerminalPairs) -> WellFormedness:
    """Balanced-parenthesis test of the terminals cut at any boundary point."""
    stack: List[int] = []
    open_pairs = set()
    for _, i in _terminal_events(tp):
        if i not in open_pairs:
            open_pairs.add(i)
            stack.append(i)
            continue
        if stack[-1] != i:
            return WellFormedness(False, (min(i, stack[-1]), max(i, stack[-1])))
        stack.pop()
    return WellFormedness(True)


def require_wellformed(tp: TerminalPairs) -> None:
    verdict = check_wellformed(tp)
    if not verdict.ok:
        raise IllFormedPairs(verdict.crossing)


def choose_istar_and_orient(graph: PlaneGraph, tp: TerminalPairs, istar_rank: int = 0) -> Orientation:
    """Picks the root pair and e*, then swaps terminals so that no gamma interval contains e*.

    Scanning the boundary from the outer dart, a pair qualifies when its two
    terminals are consecutive; ``istar_rank`` selects which qualifying pair.
    """
    order = tp.boundary_order
    pair_of = {}
    for i, (s, t) in enumerate(tp.pairs):
        pair_of[s] = i
        pair_of[t] = i
    qualifying = []
    for index, terminal in enumerate(order):
        following = order[(index + 1) % len(order)]
        if pair_of[terminal] == pair_of[following] and terminal != following:
            qualifying.append((index, terminal, following))
    if not qualifying:
        raise IllFormedPairs((0, 0))
    if not 0 <= istar_rank < len(qualifying):
        raise InstanceError(f"istar rank {istar_rank} out of range (only {len(qualifying)} qualifying pairs)")
    _, last, first = qualifying[istar_rank]
    istar = pair_of[last]
    e_star = graph.out_darts[last][0]
    cut = (graph.faces.position_of[e_star] + 1) % tp.orbit_length
    oriented = replace(tp, cut=cut)

    positions = list(oriented.positions)
    pairs = list(oriented.pairs)
    swapped = list(oriented.swapped)
    for i, (ps, pt) in enumerate(positions):
        if oriented.lin(ps) > oriented.lin(pt):
            positions[i] = (pt, ps)
            pairs[i] = (pairs[i][1], pairs[i][0])
            swapped[i] = not swapped[i]
    oriented = replace(oriented, positions=tuple(positions), pairs=tuple(pairs), swapped=tuple(swapped))
    logger.debug("root pair %d, e* dart %d, cut at orbit position %d", istar, e_star, cut)
    return Orientation(istar=istar, e_star=e_star, pairs=oriented)


def build_genealogy(orientation: Orientation) -> GenealogyTree:
    tp = orientation.pairs
    parent: List[Optional[int]] = [None] * tp.k
    children: List[List[int]] = [[] for _ in range(tp.k)]
    stack: List[int] = []
    opened = set()
    for _, i in _terminal_events(tp):
        if i in opened:
            stack.pop()
            continue
        opened.add(i)
        if stack:
            parent[i] = stack[-1]
            children[stack[-1]].append(i)
        stack.append(i)
    roots = [i for i in range(tp.k) if parent[i] is None]
    if roots != [orientation.istar]:
        raise IllFormedPairs((roots[0], roots[-1]))
    return GenealogyTree(
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        root=orientation.istar,
        auxiliary=tuple(tp.auxiliary),
        e_star=orientation.e_star,
        origin=tuple(range(tp.k)),
    )


def binarize(tree: GenealogyTree, tp: TerminalPairs) -> Tuple[GenealogyTree, TerminalPairs]:
    """Adds auxiliary pairs until every node has at most two children.

    A node with children c1..cr (r >= 3) keeps c1 and a new pair from s(c2)
    to t(cr) whose children are c2..cr; the new pair is binarized in turn.
    """
    parent = list(tree.parent)
    children = [list(c) for c in tree.children]
    pairs = list(tp.pairs)
    positions = list(tp.positions)
    auxiliary = list(tp.auxiliary)
    swapped = list(tp.swapped)
    origin = list(tree.origin)

    work = [i for i in range(len(children)) if len(children[i]) >= 3]
    while work:
        node = work.pop()
        kids = children[node]
        first, rest = kids[0], kids[1:]
        aux = len(pairs)
        pairs.append((pairs[rest[0]][0], pairs[rest[-1]][1]))
        positions.append((positions[rest[0]][0], positions[rest[-1]][1]))
        auxiliary.append(True)
        swapped.append(False)
        origin.append(aux)
        parent.append(node)
        children.append(rest)
        for child in rest:
            parent[child] = aux
        children[node] = [first, aux]
        if len(rest) >= 3:
            work.append(aux)

    added = len(pairs) - tp.k
    if added:
        logger.debug("binarization added %d auxiliary pairs", added)
    new_tp = replace(tp, pairs=tuple(pairs), positions=tuple(positions),
                     auxiliary=tuple(auxiliary), swapped=tuple(swapped))
    new_tree = replace(tree, parent=tuple(parent), children=tuple(tuple(c) for c in children),
                       auxiliary=tuple(auxiliary), origin=tuple(origin))
    return new_tree, new_tp


def postorder_renumber(tree: GenealogyTree, tp: TerminalPairs) -> Tuple[GenealogyTree, TerminalPairs]:
    """Renumbers nodes so that every index equals its postorder rank."""
    order: List[int] = []
    stack: List[Tuple[int, bool]] = [(tree.root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        stack.append((node, True))
        for child in reversed(tree.children[node]):
            stack.append((child, False))
    new_of = {old: new for new, old in enumerate(order)}

    size = [1] * len(order)
    for old in order:
        for child in tree.children[old]:
            size[new_of[old]] += size[new_of[child]]

    parent = tuple(None if tree.parent[old] is None else new_of[tree.parent[old]] for old in order)
    children = tuple(tuple(new_of[c] for c in tree.children[old]) for old in order)
    renumbered = GenealogyTree(
        parent=parent,
        children=children,
        root=new_of[tree.root],
        auxiliary=tuple(tree.auxiliary[old] for old in order),
        e_star=tree.e_star,
        origin=tuple(tree.origin[old] for old in order),
        low=tuple(new - size[new] + 1 for new in range(len(order))),
    )
    new_tp = replace(
        tp,
        pairs=tuple(tp.pairs[old] for old in order),
        positions=tuple(tp.positions[old] for old in order),
        auxiliary=tuple(tp.auxiliary[old] for old in order),
        swapped=tuple(tp.swapped[old] for old in order),
    )
    return renumbered, new_tp


# -------------------------------------
# PRINTING
# -------------------------------------
def _label(tree: GenealogyTree, tp: TerminalPairs, node: int) -> str:
    s, t = tp.pairs[node]
    tag = "aux" if tree.auxiliary[node] else f"pair {tree.origin[node]}"
    return f"{node} ({tag}: {s} -> {t})"


def to_text(tree: GenealogyTree, tp: TerminalPairs) -> str:
    lines = []
    stack = [(tree.root, 0)]
    while stack:
        node, depth = stack.pop()
        lines.append("  " * depth + _label(tree, tp, node))
        for child in reversed(tree.children[node]):
            stack.append((child, depth + 1))
    return "\n".join(lines)


def to_dot(tree: GenealogyTree, tp: TerminalPairs) -> str:
    lines = ["digraph genealogy {"]
    for node in range(tree.size):
        style = ", style=dashed" if tree.auxiliary[node] else ""
        lines.append(f'  n{node} [label="{_label(tree, tp, node)}"{style}];')
    for node in range(tree.size):
        for child in tree.children[node]:
            lines.append(f"  n{node} -> n{child};")
    lines.append("}")
    return "\n".join(lines)

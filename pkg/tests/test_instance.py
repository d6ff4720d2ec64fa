import pytest

from helpers import ring, terminal_pairs
from modules.instance import (
    DuplicateTerminal,
    IllFormedPairs,
    TerminalNotOnOuterFace,
    TerminalNotPendant,
    binarize,
    build_genealogy,
    check_wellformed,
    choose_istar_and_orient,
    locate_terminals,
    postorder_renumber,
    require_wellformed,
    to_dot,
    to_text,
)
from modules.pipeline import prepare
from modules.plane_graph import build_from
from modules.testkit import embed


def oriented_ring(n, corner_pairs, istar_rank=0):
    graph = build_from(ring(n))
    tp = locate_terminals(graph, terminal_pairs(n, *corner_pairs))
    require_wellformed(tp)
    return graph, choose_istar_and_orient(graph, tp, istar_rank)


def test_fig1_boundary_order(fig1, fig1_graph):
    tp = locate_terminals(fig1_graph, fig1.pairs)
    assert tp.boundary_order == (0, 1, 2, 3, 4, 5)
    assert check_wellformed(tp).ok


def test_ring_boundary_order_starts_after_the_outer_dart():
    graph = build_from(ring(4))
    tp = locate_terminals(graph, terminal_pairs(4, (0, 3), (1, 2)))
    assert tp.boundary_order == (5, 6, 7, 4)


def test_crossing_pairs_are_named():
    graph = build_from(ring(4))
    tp = locate_terminals(graph, terminal_pairs(4, (0, 2), (1, 3)))
    verdict = check_wellformed(tp)
    assert not verdict.ok
    assert verdict.crossing == (0, 1)
    with pytest.raises(IllFormedPairs) as excinfo:
        require_wellformed(tp)
    assert excinfo.value.pair == (0, 1)


def test_nested_pairs_are_wellformed():
    graph = build_from(ring(4))
    tp = locate_terminals(graph, terminal_pairs(4, (0, 3), (1, 2)))
    assert check_wellformed(tp).ok


def test_first_qualifying_root_is_the_pair_with_consecutive_terminals():
    _, orientation = oriented_ring(4, [(0, 3), (1, 2)])
    assert orientation.istar == 1
    # both pairs had to be flipped to keep e* outside every gamma interval
    assert orientation.pairs.swapped == (True, True)
    assert orientation.pairs.pairs == ((7, 4), (6, 5))


def test_istar_rank_selects_the_next_qualifying_pair():
    _, orientation = oriented_ring(4, [(0, 3), (1, 2)], istar_rank=1)
    assert orientation.istar == 0
    tp = orientation.pairs
    assert tp.swapped == (False, False)
    outer_s, outer_t = (tp.lin(p) for p in tp.gamma(0))
    inner_s, inner_t = (tp.lin(p) for p in tp.gamma(1))
    assert outer_s < inner_s < inner_t < outer_t


def test_single_pair_is_its_own_root(path1):
    graph = build_from(path1.data)
    tp = locate_terminals(graph, path1.pairs)
    orientation = choose_istar_and_orient(graph, tp)
    tree = build_genealogy(orientation)
    assert orientation.istar == 0
    assert tree.root == 0
    assert tree.children == ((),)


def test_genealogy_parent_is_the_tightest_enclosing_pair():
    _, orientation = oriented_ring(4, [(0, 3), (1, 2)])
    tree = build_genealogy(orientation)
    assert tree.root == 1
    assert tree.parent == (1, None)


def test_binarize_adds_one_auxiliary_pair_under_a_root_of_three_children():
    _, orientation = oriented_ring(8, [(0, 7), (1, 2), (3, 4), (5, 6)])
    tree = build_genealogy(orientation)
    assert len(tree.children[tree.root]) == 3
    binary, tp = binarize(tree, orientation.pairs)
    assert binary.size == 5
    assert sum(binary.auxiliary) == 1
    assert all(len(children) <= 2 for children in binary.children)
    aux = binary.auxiliary.index(True)
    assert binary.parent[aux] == binary.root
    first, second = tree.children[tree.root][1:]
    assert tp.pairs[aux] == (tp.pairs[first][0], tp.pairs[second][1])


def test_postorder_renumbering_makes_subtrees_intervals():
    graph = build_from(ring(8))
    tree, tp = prepare(graph, terminal_pairs(8, (0, 7), (1, 2), (3, 4), (5, 6)))
    assert tree.root == tree.size - 1
    for node in range(tree.size):
        assert tree.low[node] <= node
        for child in tree.children[node]:
            assert child < node
            assert tree.low[node] <= tree.low[child]
    leaves = [n for n in range(tree.size) if not tree.children[n]]
    assert tree.low[tree.root] == 0
    assert all(tree.low[leaf] == leaf for leaf in leaves)
    assert sorted(tree.origin[n] for n in range(tree.size) if not tree.auxiliary[n]) == [0, 1, 2, 3]


def test_nine_nested_pairs_are_accepted_and_binarized():
    layout = [(0, 17), (1, 8), (2, 3), (4, 7), (5, 6), (9, 16), (10, 11), (12, 15), (13, 14)]
    graph = build_from(ring(18))
    tree, tp = prepare(graph, terminal_pairs(18, *layout))
    assert tree.size >= 9
    assert all(len(children) <= 2 for children in tree.children)


def test_fig1_genealogy_has_the_root_pair_above_both_leaves(fig1, fig1_graph):
    tree, tp = prepare(fig1_graph, fig1.pairs)
    assert tree.size == 3
    assert tree.root == 2
    assert tree.origin == (1, 2, 0)
    assert tp.pairs[2] == (1, 0)
    assert tree.children[2] == (0, 1)


def test_tree_printing():
    graph = build_from(ring(8))
    tree, tp = prepare(graph, terminal_pairs(8, (0, 7), (1, 2), (3, 4), (5, 6)))
    text = to_text(tree, tp)
    assert text.splitlines()[0].startswith(f"{tree.root} ")
    assert "aux" in text
    dot = to_dot(tree, tp)
    assert dot.startswith("digraph genealogy {")
    assert "style=dashed" in dot


def test_duplicate_terminal_is_rejected():
    graph = build_from(ring(4))
    with pytest.raises(DuplicateTerminal):
        locate_terminals(graph, terminal_pairs(4, (0, 1), (0, 2)))


def test_non_pendant_terminal_is_rejected():
    graph = build_from(ring(4))
    with pytest.raises(TerminalNotPendant):
        locate_terminals(graph, [(0, 6)])


def test_terminal_inside_an_inner_face_is_rejected(fig1):
    edges = [(e.u, e.v, e.weight) for e in fig1.data.edges] + [(6, 9, 1)]
    coordinates = [(float(x), float(y)) for x, y in fig1.data.coordinates] + [(0.0, 0.0)]
    graph = build_from(embed(10, edges, coordinates))
    with pytest.raises(TerminalNotOnOuterFace):
        locate_terminals(graph, [(9, 1)])

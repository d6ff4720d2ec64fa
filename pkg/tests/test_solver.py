import pytest

from helpers import ring, terminal_pairs
from modules import pipeline
from modules.pipeline import prepare, solve_graph
from modules.plane_graph import build_from
from modules.solver import (
    ChildSplice,
    FreshSegment,
    InternalInvariantViolation,
    SolverState,
    SolverStats,
    StaleShortcut,
    _check_iteration,
    apply_shortcut,
    expand,
    find_right_shortcut,
    leftmost_initial_path,
    solve_pair,
)
from modules.testkit import check_multiplicity, gen_caterpillar, gen_ladder


def square_state(square):
    graph = build_from(square.data)
    tree, tp = prepare(graph, square.pairs)
    return graph, SolverState(graph, tree, tp)


def inner_face(graph):
    return next(f for f in range(graph.faces.face_count) if f != graph.outer_face)


def test_leftmost_path_hugs_the_outer_side(square):
    graph, state = square_state(square)
    path = leftmost_initial_path(0, state)
    # sa -> a -> u -> b -> sb
    assert path.darts() == [0, 2, 4, 10]
    assert path.frontier() == [9, 6]
    assert 3 in path and 4 not in path


def test_leftmost_walk_cuts_pendant_excursions(fig1, fig1_graph):
    tree, tp = prepare(fig1_graph, fig1.pairs)
    state = SolverState(fig1_graph, tree, tp)
    for n in range(tree.root):
        solve_pair(n, state)
    path = leftmost_initial_path(tree.root, state)
    # t1 -> B -> C -> A -> s1 after dropping the visits to s2, t2, s3 and t3
    assert path.darts() == [4, 14, 16, 1]


def test_tied_detour_on_the_right_is_a_shortcut(square):
    graph, state = square_state(square)
    path = leftmost_initial_path(0, state)
    shortcut = find_right_shortcut(path, inner_face(graph), state)
    assert shortcut is not None
    assert (shortcut.entry, shortcut.exit) == (1, 3)
    assert shortcut.darts == (9, 7)
    assert shortcut.weight == shortcut.replaced_weight == 2
    assert shortcut.delta == 0

    apply_shortcut(path, shortcut)
    assert path.darts() == [0, 9, 7, 10]
    assert find_right_shortcut(path, inner_face(graph), state) is None
    with pytest.raises(StaleShortcut):
        apply_shortcut(path, shortcut)


def test_unsaturated_path_fails_the_iteration_check(square):
    graph, state = square_state(square)
    with pytest.raises(InternalInvariantViolation):
        _check_iteration(0, [0, 2, 4, 10], state)


def test_square_ends_on_the_rightmost_side(square):
    ips = solve_graph(build_from(square.data), square.pairs)
    assert ips.materialize(0) == [0, 9, 7, 10]
    assert ips.stats.shortcuts_applied == 1


def test_fig1_paths_share_the_triangle(fig1, fig1_graph):
    ips = solve_graph(fig1_graph, fig1.pairs)
    assert ips.materialize(0) == [6, 14, 9]
    assert ips.materialize(1) == [10, 16, 3]
    assert ips.materialize(2) == [4, 13, 1]
    assert ips.stats.shortcuts_per_pair == [0, 0, 1]
    used = {d >> 1 for n in range(ips.k) for d in ips.materialize(n)}
    # every triangle edge is used, so the union of the paths holds a cycle
    assert {6, 7, 8} <= used


def test_fig1_marks_record_first_use(fig1, fig1_graph):
    ips = solve_graph(fig1_graph, fig1.pairs)
    for n in range(ips.k):
        for d in ips.materialize(n):
            assert ips.marks[d] == n
    assert sum(1 for mark in ips.marks if mark >= 0) == 9
    assert check_multiplicity(ips)


def test_parent_path_splices_its_child():
    graph = build_from(ring(6))
    # the pair on corners 0 and 3 ties between both arcs and settles on the one through corners 1 and 2
    ips = solve_graph(graph, terminal_pairs(6, (0, 3), (1, 2)))
    root = ips.tree.root
    assert ips.k == 2
    for n in range(ips.k):
        darts = ips.materialize(n)
        s, t = ips.pairs.pairs[n]
        assert graph.tail(darts[0]) == s and graph.head(darts[-1]) == t
    fresh = sum(len(ips.fresh_darts(n)) for n in range(ips.k))
    assert fresh <= 2 * graph.edge_count
    assert all(isinstance(segment, FreshSegment) or segment.child in ips.tree.children[root]
               for segment in ips.skeletons[root])
    assert any(isinstance(segment, ChildSplice) for segment in ips.skeletons[root])
    assert graph.path_weight(ips.materialize(root)) == 3


def test_full_checks_run_every_iteration(monkeypatch, fig1, fig1_graph):
    monkeypatch.setenv("NCSP_CHECK", "full")
    ips = solve_graph(fig1_graph, fig1.pairs)
    assert ips.materialize(2) == [4, 13, 1]


def test_frontier_of_a_finished_path(square):
    ips = solve_graph(build_from(square.data), square.pairs)
    # the rightmost side has nothing unsealed on its right
    assert ips.frontier(0) == []


def test_expand_follows_child_splices():
    skeletons = [
        (FreshSegment((2, 4, 6)),),
        (FreshSegment((0,)), ChildSplice(0, 1, 3, 4, 6), FreshSegment((9,))),
    ]
    assert expand(skeletons, 1) == [0, 4, 6, 9]
    assert expand(skeletons, 0) == [2, 4, 6]


@pytest.mark.parametrize("m", [50, 200])
def test_caterpillar_work_is_linear(m):
    instance = gen_caterpillar(m)
    result = pipeline.solve(instance.union, instance.union_pairs)
    edges = len(instance.union.edges)
    assert edges == 4 * m - 1
    assert result.stats.darts_visited <= 8 * edges
    assert result.report.edge_visits <= 4 * edges
    assert [result.report.dist(n) for n in range(m)] == list(instance.distances)


@pytest.mark.parametrize("m, seed", [(50, 0), (50, 1), (200, 0), (200, 1)])
def test_ladder_work_is_linear(m, seed):
    instance = gen_ladder(m, seed)
    result = pipeline.solve(instance.union, instance.union_pairs)
    edges = len(instance.union.edges)
    assert result.stats.faces_tested > 0
    assert result.stats.darts_visited <= 8 * edges
    assert result.report.edge_visits <= 4 * edges
    assert [result.report.dist(n) for n in range(m - 1)] == list(instance.distances)


def test_stats_merge_adds_counters():
    total = SolverStats(darts_visited=3, shortcuts_per_pair=[1])
    total.merge(SolverStats(darts_visited=4, faces_tested=2, shortcuts_per_pair=[0, 2]))
    assert total.darts_visited == 7
    assert total.faces_tested == 2
    assert total.shortcuts_per_pair == [1, 0, 2]

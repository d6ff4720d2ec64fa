import pytest

from helpers import ring, terminal_pairs
from modules.pipeline import solve_graph
from modules.plane_graph import build, build_from
from modules.query import DistanceOverflow, MarkIndex, UnknownPair, all_distances, list_all, list_path
from modules.testkit import check_simple, probe_budget


def test_fig1_distances_are_nine(fig1, fig1_graph):
    report = all_distances(solve_graph(fig1_graph, fig1.pairs))
    assert report.to_json() == {"pairs": [
        {"i": 0, "s": 0, "t": 1, "dist": 9},
        {"i": 1, "s": 2, "t": 3, "dist": 9},
        {"i": 2, "s": 4, "t": 5, "dist": 9},
    ]}
    assert report.dist(2) == 9
    with pytest.raises(UnknownPair):
        report.dist(3)


def test_single_path_distance(path1):
    report = all_distances(solve_graph(build_from(path1.data), path1.pairs))
    assert report.dist(0) == 5


def test_spliced_child_contributes_its_section():
    graph = build_from(ring(6))
    ips = solve_graph(graph, terminal_pairs(6, (0, 3), (1, 2)))
    report = all_distances(ips)
    assert report.dist(0) == 5
    assert report.dist(1) == 3
    assert list(report.by_node) == [graph.path_weight(ips.materialize(n)) for n in range(ips.k)]


def test_listing_matches_the_materialized_paths(fig1, fig1_graph):
    ips = solve_graph(fig1_graph, fig1.pairs)
    for n in range(ips.k):
        assert list_path(ips, n) == ips.materialize(n)


def test_listing_stays_within_the_probe_budget():
    graph = build_from(ring(8))
    ips = solve_graph(graph, terminal_pairs(8, (0, 7), (1, 2), (3, 4), (5, 6)))
    report = list_all(ips)
    assert sorted(report.paths) == [n for n in range(ips.k) if not ips.tree.auxiliary[n]]
    for n, darts in report.paths.items():
        s, t = ips.pairs.pairs[n]
        assert check_simple(graph, darts, s, t)
        assert list(darts) == ips.materialize(n)
        assert report.probes[n] <= probe_budget(len(darts), ips.k)
    assert report.total_probes == sum(report.probes.values())


def test_auxiliary_pairs_can_be_listed_too():
    graph = build_from(ring(8))
    ips = solve_graph(graph, terminal_pairs(8, (0, 7), (1, 2), (3, 4), (5, 6)))
    report = list_all(ips, include_auxiliary=True)
    assert len(report.paths) == ips.k == 5
    aux = ips.tree.auxiliary.index(True)
    s, t = ips.pairs.pairs[aux]
    assert check_simple(graph, report.paths[aux], s, t)


def test_successor_counts_probes(square):
    ips = solve_graph(build_from(square.data), square.pairs)
    index = MarkIndex(ips)
    assert index.successor(0, 0) == 9
    assert index.probes >= 1
    assert index.belongs(0, 9)
    assert not index.belongs(0, 2)


def test_unknown_pair_is_rejected(fig1, fig1_graph):
    ips = solve_graph(fig1_graph, fig1.pairs)
    with pytest.raises(UnknownPair):
        list_path(ips, ips.k)


def test_distance_above_signed_64_bits_overflows():
    n = 10
    edges = [(i, i, i + 1, 2 ** 60) for i in range(n - 1)]
    rotations = [(0,)] + [(i - 1, i) for i in range(1, n - 1)] + [(n - 2,)]
    graph = build(n, edges, rotations, 0)
    with pytest.raises(DistanceOverflow):
        all_distances(solve_graph(graph, [(0, n - 1)]))

import pytest

from modules.plane_graph import (
    BadRotation,
    Disconnected,
    Edge,
    EmbeddingData,
    EulerViolation,
    NonPositiveWeight,
    PositionNotOnFace,
    build,
    connected_components,
    restrict_embedding,
    reverse,
)


def triangle():
    return build(3, [(0, 0, 1, 1), (1, 1, 2, 1), (2, 2, 0, 1)], [(0, 2), (0, 1), (1, 2)], 0)


def weighted_square():
    # 0-1-2-3-0 with weights 1, 2, 3, 4
    return build(4, [(0, 0, 1, 1), (1, 1, 2, 2), (2, 2, 3, 3), (3, 3, 0, 4)],
                 [(3, 0), (0, 1), (1, 2), (2, 3)], 0)


def test_single_edge_has_one_face_walking_the_edge_twice():
    graph = build(2, [(0, 0, 1, 5)], [(0,), (0,)], 0)
    assert graph.faces.face_count == 1
    assert len(graph.orbit(0)) == 2
    assert graph.faces.total_weight(0) == 10


def test_triangle_has_two_faces_of_three_darts():
    graph = triangle()
    assert graph.faces.face_count == 2
    assert sorted(len(orbit) for orbit in graph.faces.orbits) == [3, 3]
    assert graph.vertex_count - graph.edge_count + graph.faces.face_count == 2


def test_face_next_closes_around_the_triangle():
    graph = triangle()
    for start in range(graph.dart_count):
        d = start
        for _ in range(3):
            d = graph.face_next(d)
            assert graph.face(d) == graph.face(start)
        assert d == start


def test_path_graph_has_one_orbit_of_four_darts():
    graph = build(3, [(0, 0, 1, 1), (1, 1, 2, 1)], [(0,), (0, 1), (1,)], 0)
    assert graph.faces.face_count == 1
    assert len(graph.orbit(0)) == 4


def test_square_cycle_has_two_orbits_of_four():
    graph = weighted_square()
    assert sorted(len(orbit) for orbit in graph.faces.orbits) == [4, 4]


def test_orbits_partition_the_darts(fig1_graph):
    seen = sorted(d for orbit in fig1_graph.faces.orbits for d in orbit)
    assert seen == list(range(fig1_graph.dart_count))
    for face, orbit in enumerate(fig1_graph.faces.orbits):
        for position, d in enumerate(orbit):
            assert fig1_graph.face(d) == face
            assert fig1_graph.faces.position_of[d] == position


def test_reverse_and_rotation_laws(fig1_graph):
    graph = fig1_graph
    for d in range(graph.dart_count):
        assert reverse(reverse(d)) == d
        assert graph.tail(d) == graph.head(reverse(d))
        assert graph.rotation_prev(graph.rotation_next(d)) == d
        assert graph.tail(graph.rotation_next(d)) == graph.tail(d)
    assert reverse(6) == 7


def test_boundary_subpath_weight_both_sides():
    graph = weighted_square()
    face = graph.face(0)
    start = graph.faces.position_of[0]
    corner2 = graph.faces.position_of[4]
    assert graph.boundary_subpath_weight(face, start, corner2, "orbit") == 3
    assert graph.boundary_subpath_weight(face, start, corner2, "reverse") == 7
    assert graph.boundary_subpath_weight(face, start, start, "orbit") == 0
    assert graph.boundary_subpath_weight(face, start, start, "reverse") == 0


def test_boundary_subpath_weights_are_complementary(fig1_graph):
    graph = fig1_graph
    for face in range(graph.faces.face_count):
        total = graph.faces.total_weight(face)
        length = len(graph.orbit(face))
        for a in range(length):
            for b in range(length):
                if a == b:
                    continue
                forward = graph.boundary_subpath_weight(face, a, b, "orbit")
                backward = graph.boundary_subpath_weight(face, a, b, "reverse")
                assert forward + backward == total
                assert forward == sum(graph.weight(graph.orbit(face)[(a + j) % length])
                                      for j in range((b - a) % length))


def test_position_off_the_face_is_rejected():
    graph = triangle()
    with pytest.raises(PositionNotOnFace):
        graph.boundary_subpath_weight(0, 0, 3)


def test_fig1_union_is_connected_with_two_faces(fig1_graph):
    assert fig1_graph.edge_count == 9
    assert fig1_graph.faces.face_count == 2
    assert {e.weight for e in fig1_graph.edges} == {3}


def test_fig1_outer_orbit_meets_the_stubs_in_order(fig1_graph):
    graph = fig1_graph
    orbit = graph.orbit(graph.outer_face)
    start = orbit.index(graph.outer_dart)
    tails = [graph.tail(orbit[(start + j) % len(orbit)]) for j in range(len(orbit))]
    assert [v for v in tails if graph.degree(v) == 1] == [0, 1, 2, 3, 4, 5]


def test_fig1_inner_triangle_orbit_repeats_after_three(fig1_graph):
    graph = fig1_graph
    inner = next(f for f in range(graph.faces.face_count) if f != graph.outer_face)
    d = graph.orbit(inner)[0]
    visited = [d]
    for _ in range(3):
        d = graph.face_next(d)
        visited.append(d)
    assert visited[3] == visited[0]
    assert {graph.tail(x) for x in visited} == {6, 7, 8}


def test_zero_weight_is_rejected():
    with pytest.raises(NonPositiveWeight):
        build(2, [(0, 0, 1, 0)], [(0,), (0,)], 0)


def test_edge_missing_from_a_rotation_is_rejected():
    with pytest.raises(BadRotation):
        build(3, [(0, 0, 1, 1), (1, 1, 2, 1)], [(0,), (0,), (1,)], 0)


def test_disconnected_graph_is_rejected():
    with pytest.raises(Disconnected):
        build(4, [(0, 0, 1, 1), (1, 2, 3, 1)], [(0,), (0,), (1,), (1,)], 0)


def test_toroidal_rotation_of_k4_violates_euler():
    edges = [(0, 0, 1, 1), (1, 0, 2, 1), (2, 0, 3, 1), (3, 1, 2, 1), (4, 1, 3, 1), (5, 2, 3, 1)]
    rotations = [(0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5)]
    with pytest.raises(EulerViolation):
        build(4, edges, rotations, 0)


def test_restriction_keeps_rotation_order_and_maps_ids():
    data = EmbeddingData(
        vertex_count=4,
        edges=(Edge(0, 1, 1), Edge(1, 2, 1), Edge(2, 3, 1)),
        rotations=((0,), (0, 1), (1, 2), (2,)),
        outer_dart=5,
    )
    restricted = restrict_embedding(data, [1, 2])
    assert restricted.vertex_origin == (1, 2, 3)
    assert restricted.edge_origin == (1, 2)
    assert restricted.data.rotations == ((0,), (0, 1), (1,))
    assert restricted.data.outer_dart == 3


def test_connected_components_lists_edges_per_component():
    data = EmbeddingData(
        vertex_count=5,
        edges=(Edge(0, 1, 1), Edge(2, 3, 1), Edge(3, 4, 1)),
        rotations=((0,), (0,), (1,), (1, 2), (2,)),
    )
    assert connected_components(data) == [[0], [1, 2]]

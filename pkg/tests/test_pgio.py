from fractions import Fraction

import pytest

import pgio
from helpers import fixture_path
from modules.testkit import gen_grid, union_of_shortest_paths

HEADER = "ncsp-pg v1\n"


def test_reads_the_path_fixture(path1):
    data = path1.data
    assert data.vertex_count == 3
    assert [(e.u, e.v, e.weight) for e in data.edges] == [(0, 1, 2), (1, 2, 3)]
    assert data.rotations == ((0,), (0, 1), (1,))
    assert data.outer_dart == 0
    assert path1.pairs == ((0, 2),)
    assert data.coordinates[2] == (Fraction(2), Fraction(0))


def test_outer_record_picks_the_dart_leaving_the_tail(square):
    # O 5 5: edge 5 runs b -> sb, so the dart leaving sb is the reversed one
    assert square.data.outer_dart == 11


def test_decimal_coordinates_are_exact(fig1):
    assert fig1.data.coordinates[6] == (Fraction("-0.866"), Fraction("0.5"))


def test_comments_and_blank_lines_are_ignored():
    pg = pgio.parse(HEADER + "# a comment\n\nV 2  # two vertices\ne 0 0 1 7\nR 0 0\nR 1 0\nK 1\np 0 1\n")
    assert pg.data.edges[0].weight == 7
    assert pg.data.outer_dart is None


@pytest.mark.parametrize("text, message", [
    ("e 0 0 1 1\n", "before V"),
    ("V 2\ne 1 0 1 1\n", "dense"),
    ("V 2\ne 0 0 5 1\n", "out of range"),
    ("V 2\nV 2\n", "duplicate V"),
    ("V 2\ne 0 0 1 x\n", "expected integers"),
    ("V 2\ne 0 0 1 1\nO 0 7\n", "not an endpoint"),
    ("V 2\nK 2\np 0 1\n", "declares 2 pairs"),
    ("V 2\nz 1\n", "unknown record"),
    ("V 2\nc 0 1 1\n", "coordinates given for 1 of 2"),
    ("V 2\nc 0 0 0\nc 5 1 1\n", "vertex 5 out of range"),
    ("V 2\nc -1 0 0\n", "vertex -1 out of range"),
    ("V 2\nc 0 0 0\nc 0 1 1\n", "duplicate coordinates"),
])
def test_malformed_input_is_reported_with_its_reason(text, message):
    with pytest.raises(pgio.FormatError) as excinfo:
        pgio.parse(HEADER + text, "bad.pg")
    assert message in str(excinfo.value)
    assert str(excinfo.value).startswith("bad.pg:")


def test_error_carries_the_line_number():
    with pytest.raises(pgio.FormatError) as excinfo:
        pgio.parse(HEADER + "V 2\ne 0 0 1 1\ne 0 0 1 1\n")
    assert excinfo.value.line == 4


def test_missing_file_is_a_format_error(tmp_path):
    with pytest.raises(pgio.FormatError):
        pgio.read(tmp_path / "absent.pg")


def test_generated_union_survives_a_write(tmp_path):
    graph, pairs = gen_grid(4, 4, 2, 3)
    instance = union_of_shortest_paths(graph, pairs, 3)
    target = tmp_path / "grid.pg"
    pgio.write(target, instance.union, instance.union_pairs, "grid 4x4\nseed 3")
    text = target.read_text()
    assert text.startswith(HEADER + "# grid 4x4\n# seed 3\n")
    pg = pgio.read(target)
    assert pg.data == instance.union
    assert pg.pairs == instance.union_pairs


def test_fixture_files_exist():
    for name in ("fig1.pg", "path1.pg", "square.pg", "crossing_terminals.pg"):
        assert fixture_path(name).is_file()

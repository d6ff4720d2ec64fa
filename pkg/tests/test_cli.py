import json

import pgio
from app import main
from helpers import fixture_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_fig1_as_json(capsys):
    code, out, _ = run(capsys, "solve", fixture_path("fig1.pg"), "--json")
    assert code == 0
    assert [p["dist"] for p in json.loads(out)["pairs"]] == [9, 9, 9]


def test_solve_path_as_text(capsys):
    code, out, _ = run(capsys, "solve", fixture_path("path1.pg"))
    assert code == 0
    assert "pair 0: 0 -> 2  dist 5" in out


def test_solve_lists_a_path(capsys):
    code, out, _ = run(capsys, "solve", fixture_path("square.pg"), "--json", "--list", "0")
    assert code == 0
    listing = json.loads(out)["list"]
    assert [(d["u"], d["v"]) for d in listing["darts"]] == [(0, 1), (1, 4), (4, 3), (3, 5)]


def test_crossing_terminals_exit_2_naming_the_pairs(capsys):
    code, out, err = run(capsys, "solve", fixture_path("crossing_terminals.pg"))
    assert code == 2
    assert out == ""
    assert err.startswith("error: ")
    assert "terminal pairs 0 and 1 cross" in err


def test_unknown_pair_exits_2(capsys):
    code, _, err = run(capsys, "solve", fixture_path("fig1.pg"), "--list", "7")
    assert code == 2
    assert "pair 7" in err


def test_validate_prints_the_genealogy(capsys):
    code, out, _ = run(capsys, "validate", fixture_path("fig1.pg"))
    assert code == 0
    assert "component 0: 9 edges" in out
    assert "2 (pair 0: 1 -> 0)" in out

    code, out, _ = run(capsys, "validate", fixture_path("fig1.pg"), "--dot")
    assert code == 0
    assert out.startswith("digraph genealogy {")


def test_gen_then_verify(capsys, tmp_path):
    target = tmp_path / "grid.pg"
    code, _, _ = run(capsys, "gen", "grid", "--rows", 4, "--cols", 5, "--pairs", 3, "--seed", 2, "-o", target)
    assert code == 0
    pg = pgio.read(target)
    assert len(pg.pairs) == 3

    code, out, _ = run(capsys, "verify", target)
    assert code == 0
    assert "ok" in out.splitlines()[0]


def test_gen_fig1_writes_the_union(capsys, tmp_path):
    target = tmp_path / "fig1.pg"
    assert run(capsys, "gen", "fig1", "-o", target)[0] == 0
    pg = pgio.read(target)
    assert len(pg.data.edges) == 9
    assert "distances 9 9 9" in target.read_text()


def test_gen_ladder_then_verify(capsys, tmp_path):
    target = tmp_path / "ladder.pg"
    assert run(capsys, "gen", "ladder", "--pairs", 5, "--seed", 1, "-o", target)[0] == 0
    pg = pgio.read(target)
    assert len(pg.pairs) == 5
    assert "distances 5 5 5 5 5" in target.read_text()
    code, out, _ = run(capsys, "verify", target)
    assert code == 0
    assert "ok" in out.splitlines()[0]


def test_gen_rejects_bad_parameters(capsys, tmp_path):
    code, _, err = run(capsys, "gen", "grid", "--rows", 1, "-o", tmp_path / "x.pg")
    assert code == 2
    assert "error:" in err


def test_verify_seeds(capsys):
    code, out, _ = run(capsys, "verify", "--seeds", 3, "--max-vertices", 40)
    assert code == 0
    assert "3/3 instances passed" in out


def test_render_fig1(capsys, tmp_path):
    target = tmp_path / "fig1.svg"
    code, _, _ = run(capsys, "render", fixture_path("fig1.pg"), "-o", target)
    assert code == 0
    svg = target.read_text()
    assert svg.count('<g id="path-') == 3
    # every union edge carries exactly one path; only the triangle closes a cycle
    assert svg.count("stroke-linecap") == 9
    assert svg.count('stroke-width="5.00"') == 3
    assert svg.count('stroke-width="2.50"') == 6


def test_render_without_coordinates_fails(capsys, tmp_path):
    bare = tmp_path / "bare.pg"
    text = fixture_path("path1.pg").read_text()
    bare.write_text("".join(line for line in text.splitlines(keepends=True) if not line.startswith("c ")))
    code, _, err = run(capsys, "render", bare, "-o", tmp_path / "x.svg")
    assert code == 2
    assert "coordinates" in err

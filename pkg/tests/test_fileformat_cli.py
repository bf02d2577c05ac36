from dataclasses import replace
from pathlib import Path

import pytest

from lgvx.aztec import aztec_diamond, build_mixed_aztec, punch_holes
from lgvx.cli import main
from lgvx.drawing import MarkedConfig
from lgvx.fileformat import (FileFormatError, ValidationFailed, emit_graph, emit_region, is_region_text,
                             parse_graph_file, parse_region_file)
from lgvx.lattices import ClosedFormParams, build_grid, build_tri_grid, build_tri_rhombus, marked_config_thm51

DATA = Path(__file__).resolve().parent.parent / "data"
EXAMPLE = DATA / "grid6_two_pairs.graph"


# -- graph files ----------------------------------------------------------------------


@pytest.mark.parametrize("drawing", [build_grid(3, 2), build_tri_rhombus(3), build_tri_grid(2, 3, offset=(-1, 2))])
def test_graph_round_trip(drawing):
    d, m = parse_graph_file(emit_graph(drawing))
    assert d == drawing
    assert m.n == 0


def test_graph_round_trip_with_marked_points():
    d0, m0 = marked_config_thm51(ClosedFormParams(1, 2, 1))
    d, m = parse_graph_file(emit_graph(d0, m0))
    assert d == d0 and m == m0
    assert emit_graph(d, m) == emit_graph(d0, m0)


def test_supergraph_only_edges_survive_round_trip():
    d0 = build_grid(2, 2)
    edges = tuple(replace(e, in_subgraph=not e.id.startswith("n")) for e in d0.edges)
    d0 = replace(d0, edges=edges)
    text = emit_graph(d0)
    assert "supergraph_only" in text
    assert parse_graph_file(text)[0] == d0


def test_comments_and_blank_lines():
    text = "# header\n\nvariables x\nvertex s 0 0  # low\nvertex t 0 1\nedge s t 2*x\nsource s\nsink t\n"
    d, _ = parse_graph_file(text)
    assert len(d.edges) == 1 and str(d.edges[0].weight) == "2*x"


@pytest.mark.parametrize("text,line,column", [
    ("variables x y\nvertex a 0 0\nvertex a 1 0\n", 3, 8),
    ("variables x y\nvertex a 0 0\nvertex b 0 1\nedge a b x+\nsource a\nsink b\n", 4, 12),
    ("variables x\nvertex a 0 0\nedge a z x\n", 3, 8),
    ("variables x\nbogus 1\n", 2, 1),
    ("variables x\nvertex a zero 0\n", 2, 10),
])
def test_graph_errors_report_positions(text, line, column):
    with pytest.raises(FileFormatError) as info:
        parse_graph_file(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}:")


def test_downward_edge_fails_validation():
    text = "variables x\nvertex s 0 0\nvertex t 0 1\nedge t s x\nsource t\nsink s\n"
    with pytest.raises(ValidationFailed) as info:
        parse_graph_file(text)
    assert any(v.startswith("upwardness") for v in info.value.violations)
    d, _ = parse_graph_file(text, validate=False)
    assert len(d.vertices) == 2


# -- region files ---------------------------------------------------------------------


def test_region_round_trip():
    for r in (build_mixed_aztec(3, 5), aztec_diamond(2), punch_holes(build_mixed_aztec(3, 3), [(2, 3), (1, 2)])):
        text = emit_region(r)
        assert is_region_text(text)
        assert parse_region_file(text) == r


def test_region_errors():
    with pytest.raises(FileFormatError) as info:
        parse_region_file("aztec 2 2\nhole 9 9\n")
    assert info.value.line == 2
    with pytest.raises(FileFormatError):
        parse_region_file("hole 1 2\n")
    with pytest.raises(FileFormatError):
        parse_region_file("aztec 2 two\n")
    assert not is_region_text(EXAMPLE.read_text())


# -- command line ---------------------------------------------------------------------


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_count_example_file(capsys):
    code, out = run(capsys, "count", EXAMPLE, "--brute", "--no-timing")
    assert code == 0
    assert "count = 40*x^5*y^5" in out.out
    assert "agree = true" in out.out


def test_count_with_lgv_and_evaluation(capsys):
    code, out = run(capsys, "count", EXAMPLE, "--lgv", "--eval", "x=1", "y=1", "--no-timing")
    assert code == 0
    assert "det h = 0" in out.out
    assert "count at x=1 y=1: 40" in out.out.splitlines()


def test_count_output_is_deterministic(capsys):
    first = run(capsys, "count", EXAMPLE, "--lgv", "--no-timing")[1].out
    second = run(capsys, "count", EXAMPLE, "--lgv", "--no-timing")[1].out
    assert first == second


def test_formula_commands(capsys):
    assert run(capsys, "delannoy", 2, 2, "--eval", "x=1", "y=1", "z=1")[1].out.strip() == "13"
    assert run(capsys, "schroder", 3, "--eval", "x=1", "y=1", "z=1")[1].out.strip() == "22"
    assert run(capsys, "aztec", 1, 1, 1)[1].out.strip() == "36"
    assert run(capsys, "thm51", 1, 0, 1)[1].out.strip() == "2*x^2*y^2 + 2*x*y*z"
    assert run(capsys, "cor52", 1, 1, 1, "--eval", "x=1", "y=1", "z=1")[1].out.strip() == "8"


def test_tile_commands(capsys, tmp_path):
    mixed = tmp_path / "mixed.region"
    mixed.write_text("aztec 3 5 mixed\n")
    code, out = run(capsys, "tile", mixed, "--both")
    assert code == 0 and "brute force = 1" in out.out and "paths = 1" in out.out
    assert "brute force = 8" in run(capsys, "tile", DATA / "aztec_diamond_2.region", "--brute")[1].out
    holed = tmp_path / "holed.region"
    holed.write_text("aztec 3 3\nhole 2 3\n")
    code, out = run(capsys, "tile", holed, "--both")
    assert code == 0 and "brute force = 0" in out.out and "paths = 0" in out.out


def test_emit_round_trips_through_count(capsys, tmp_path):
    code, out = run(capsys, "emit", "thm51", 1, 1, 1)
    assert code == 0
    d, m = parse_graph_file(out.out)
    assert m == MarkedConfig(("0,0", "1,1"), ("2,2", "3,3"))
    f = tmp_path / "thm.graph"
    f.write_text(out.out)
    code, out = run(capsys, "count", f, "--eval", "x=1", "y=1", "z=1", "--no-timing")
    assert code == 0 and out.out.strip().endswith("36")


def test_emit_aztec_with_holes(capsys):
    code, out = run(capsys, "emit", "aztec", 3, 3, "2,3", "1,2")
    assert code == 0
    assert parse_region_file(out.out) == punch_holes(build_mixed_aztec(3, 3), [(2, 3), (1, 2)])


def test_validate(capsys, tmp_path):
    code, out = run(capsys, "validate", EXAMPLE)
    assert code == 0 and "49 vertices" in out.out
    assert run(capsys, "validate", DATA / "aztec_diamond_2.region")[0] == 0
    bad = tmp_path / "bad.graph"
    bad.write_text("variables x y\nvertex a 0 0\nvertex a 1 0\n")
    code, out = run(capsys, "validate", bad)
    assert code == 2 and "line 3, column 8" in out.err


def test_input_errors_exit_with_two(capsys, tmp_path):
    assert run(capsys, "count", tmp_path / "missing.graph")[0] == 2
    assert run(capsys, "emit", "grid", 2)[0] == 2
    assert run(capsys, "thm51", 0, 1, 1)[0] == 2
    assert run(capsys, "tile", DATA / "aztec_diamond_2.region", "--paths")[0] == 2


def test_selftest_command(capsys):
    code, out = run(capsys, "selftest", "--seed", 3, "--instances", 2)
    assert code == 0
    assert out.out.strip().endswith("PASS")


def test_mixed_sign_determinant_exits_with_one(capsys, tmp_path):
    f = tmp_path / "mixed.graph"
    f.write_text("variables x y\nvertex s 0 0\nvertex t 0 1\nedge s t x - y\nsource s\nsink t\nstarts s\nends t\n")
    code, out = run(capsys, "count", f, "--no-timing")
    assert code == 1
    assert "both signs" in out.err

import json

import pytest

from rainbowsat.cli import run
from rainbowsat.cnf import parse_dimacs


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_c5(capsys):
    code, out, _ = call(capsys, "construct", "--target", "c5", "--n", "9")
    data = json.loads(out)
    assert code == 0 and data["edges"] == 18 and data["edge_count_matches"]


def test_construct_graph6_and_dot(capsys):
    code, out, _ = call(capsys, "construct", "--fixture", "core", "--format", "graph6")
    assert code == 0 and out.startswith("G")
    code, out, _ = call(capsys, "construct", "--target", "c4", "--n", "7", "--format", "dot")
    assert out.startswith("graph G {") and out.count("--") == 11


def test_max_free_core(capsys):
    code, out, _ = call(capsys, "max-free", "--k", "6", "--fixture", "core", "--deterministic")
    assert code == 0 and json.loads(out)["best_count"] == 15


def test_export_cnf_direct(tmp_path, capsys):
    path = tmp_path / "k4.cnf"
    code, out, _ = call(capsys, "export-cnf", "--graph6", "C~", "--k", "4", "--colors", "3", "--exact", "-o", str(path))
    summary = json.loads(out)
    nv, clauses = parse_dimacs(path.read_text())
    assert code == 0 and summary["num_clauses"] == summary["expected_clauses"] == len(clauses)


def test_export_cnf_h13_compact(tmp_path, capsys):
    path = tmp_path / "h.cnf"
    code, out, _ = call(
        capsys, "export-cnf", "--fixture", "H", "--k", "6", "--colors", "13", "--exact",
        "--encoding", "compact", "-o", str(path),
    )
    summary = json.loads(out)
    header = path.read_text().splitlines()[0].split()
    assert code == 0 and int(header[3]) == summary["expected_clauses"]


def test_export_cnf_direct_too_large(capsys):
    code, _, err = call(capsys, "export-cnf", "--fixture", "H", "--k", "6", "--colors", "13", "--exact")
    assert code == 1 and "compact" in err


def test_export_then_decode(tmp_path, capsys):
    from rainbowsat.cnf import solve_dimacs_text

    cnf, side, model = tmp_path / "f.cnf", tmp_path / "f.json", tmp_path / "f.model"
    call(capsys, "export-cnf", "--fixture", "core", "--k", "6", "--colors", "6", "--exact",
         "--encoding", "compact", "-o", str(cnf), "--sidecar", str(side))
    res = solve_dimacs_text(cnf.read_text())
    model.write_text("s SATISFIABLE\nv " + " ".join(map(str, res.model)) + " 0\n")
    code, out, _ = call(capsys, "decode-model", "--sidecar", str(side), "--model", str(model))
    data = json.loads(out)
    assert code == 0 and data["colors"] == 6 and data["verified"]


def test_color_unknown_exit_code(capsys):
    code, out, _ = call(capsys, "color", "--graph6", "DN{", "--k", "4", "--budget-nodes", "1")
    assert code == 2 and json.loads(out)["status"] == "UNKNOWN"


@pytest.mark.parametrize(
    "argv",
    [
        ["color", "--graph6", "C~x", "--k", "4"],
        ["color", "--graph6", "C~", "--k", "2"],
        ["construct", "--target", "c5", "--n", "9", "--k", "4"],
        ["color", "--k", "4"],
        ["no-such-command"],
        ["color", "--graph6", "C~", "--k", "4", "--palette", "0"],
    ],
)
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 1


def test_deterministic_output_is_byte_identical(capsys):
    argv = ["check-saturated", "--target", "c4", "--n", "7", "--k", "4", "--deterministic"]
    a = call(capsys, *argv)
    b = call(capsys, *argv)
    assert a == b and json.loads(a[1])["is_saturated"] == "true"


def test_sat_star_graph6(capsys):
    code, out, _ = call(capsys, "sat-star", "--n", "4", "--k", "4", "--format", "graph6")
    assert code == 0 and out == "C~\n"


def test_patterns_traps(capsys):
    code, out, _ = call(capsys, "patterns", "--traps", "--deterministic")
    traps = json.loads(out)["traps"]
    assert code == 0 and len(traps) == 4
    assert all(t["status"] == "INFEASIBLE" for t in traps)


def test_verify_coloring(tmp_path, capsys):
    path = tmp_path / "c.json"
    from rainbowsat.graph import Graph, to_graph6

    path.write_text(json.dumps({"0": 0, "1": 1, "2": 2, "3": 3}))
    c4 = to_graph6(Graph.cycle(4))
    code, out, _ = call(capsys, "verify-coloring", "--graph6", c4, "--k", "4", "--coloring", str(path))
    assert code == 1 and json.loads(out)["rainbow_cycles"] == [[0, 1, 2, 3]]
    path.write_text(json.dumps({"0": 0, "1": 1, "2": 1, "3": 0}))
    code, out, _ = call(capsys, "verify-coloring", "--graph6", c4, "--k", "4", "--coloring", str(path))
    assert code == 0 and json.loads(out)["valid"]


def test_color_interval_core(capsys):
    code, out, _ = call(capsys, "color-interval", "--fixture", "core", "--k", "6", "--c-max", "8", "--deterministic")
    assert code == 0 and json.loads(out)["K"] == [6, 7]


def test_audit_and_patterns(capsys):
    code, out, _ = call(capsys, "audit", "--graph6", "Esa?")
    assert code == 0 and json.loads(out)["violations"][0]["condition"] == "degree_one"
    code, out, _ = call(capsys, "patterns", "--graph6", "EFz_", "--apex", "0")
    assert code == 0 and "hits" in json.loads(out)

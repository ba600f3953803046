import math

import pytest

from rainbowsat.cnf import (
    CnfError,
    compact_clause_count,
    decode_assignment,
    encode_compact,
    encode_exact_colors,
    encode_feasibility,
    expected_clause_count,
    parse_dimacs,
    parse_model,
    solve_dimacs_text,
    solve_formula,
    write_dimacs,
    run_external_solver,
)
from rainbowsat.coloring import EdgeColoring
from rainbowsat.constructions import core_coloring, core_graph
from rainbowsat.graph import Graph


def test_triangle_header():
    f = encode_feasibility(Graph.complete(3), 6, 3)
    assert write_dimacs(f).splitlines()[0] == "p cnf 9 12"


def test_c4_rainbow_block():
    f = encode_feasibility(Graph.cycle(4), 4, 4)
    assert f.groups["no_rainbow_cycle"] == 24
    assert f.num_clauses == 4 + 4 * 4 + 24 == expected_clause_count(Graph.cycle(4), 4, 4)


def test_variable_layout():
    f = encode_feasibility(Graph.path(3), 4, 3)
    assert [f.var(e, c) for e in range(2) for c in range(3)] == [1, 2, 3, 4, 5, 6]
    assert f.var_map()[5] == (1, 1)


def test_single_edge_two_colors_exact_is_unsat():
    f = encode_exact_colors(Graph.path(2), 4, 2)
    assert f.groups["at_most_one_color"] == 1
    assert solve_formula(f).satisfiable is False


def test_empty_formula():
    f = encode_feasibility(Graph(3), 4, 2)
    assert write_dimacs(f) == "p cnf 0 0\n"
    assert parse_dimacs("p cnf 0 0\n") == (0, [])


def test_palette_zero_rejected():
    with pytest.raises(CnfError):
        encode_feasibility(Graph.path(2), 4, 0)


def test_clause_limit():
    with pytest.raises(CnfError):
        encode_feasibility(Graph.complete(6), 6, 15, max_clauses=1000)


def test_dimacs_round_trip(k4):
    f = encode_exact_colors(k4, 4, 3)
    text = write_dimacs(f)
    nv, clauses = parse_dimacs(text)
    assert nv == f.num_vars and clauses == f.clauses
    assert write_dimacs(encode_exact_colors(k4, 4, 3)) == text


@pytest.mark.parametrize(
    "text", ["p cnf 2 1\n1 3 0\n", "1 2 0\n", "p cnf 2 2\n1 0\n", "p dnf 1 1\n1 0\n"]
)
def test_parse_dimacs_errors(text):
    with pytest.raises(CnfError):
        parse_dimacs(text)


def test_core_coloring_model_decodes():
    g = core_graph()
    f = encode_exact_colors(g, 6, 6)
    inc = sum(math.comb(len(i), 2) for i in g.incident)
    assert f.num_clauses == 24 + inc * 6 + 640 * 720 + 6 + 24 * 15
    coloring = EdgeColoring.from_map(g, core_coloring())
    model = [f.var(e, c) if coloring[e] == c else -f.var(e, c) for e in range(g.m) for c in range(6)]
    truth = set(model)
    assert all(any(lit in truth for lit in cl) for cl in f.iter_clauses())
    text = "s SATISFIABLE\nv " + " ".join(map(str, model)) + " 0\n"
    assert decode_assignment(f, parse_model(text)) == coloring


def test_decode_rejects_bad_models(k4):
    f = encode_exact_colors(k4, 4, 3)
    with pytest.raises(CnfError):
        decode_assignment(f, [1])
    with pytest.raises(CnfError):
        decode_assignment(f, [-v for v in range(1, f.num_vars + 1)])
    with pytest.raises(CnfError):
        decode_assignment(f, list(range(1, f.num_vars + 1)))


def test_compact_count_formula(k4):
    for exact in (False, True):
        f = encode_compact(k4, 4, 4, exact=exact)
        assert f.num_clauses == compact_clause_count(k4, 4, 4, exact=exact)
        assert sum(f.groups.values()) == f.num_clauses


def test_compact_and_direct_agree_on_k5():
    g = Graph.complete(5)
    assert solve_formula(encode_compact(g, 4, 10)).satisfiable is False
    assert solve_dimacs_text(write_dimacs(encode_feasibility(g, 4, 6))).satisfiable is False


def test_external_solver_round_trip(k4):
    import sys

    f = encode_exact_colors(k4, 4, 3)
    res = run_external_solver(f, [sys.executable, "-m", "rainbowsat.dimacs_solver"])
    assert res.satisfiable is True
    coloring = decode_assignment(f, res.model)
    assert coloring.num_colors() == 3


def test_sidecar_lists_every_variable(k4):
    side = encode_compact(k4, 4, 3).sidecar()
    assert side["graph6"] == "C~"
    assert len(side["variables"]) == 18
    assert side["variables"]["1"] == {"edge": 0, "color": 0, "pair": [0, 1]}

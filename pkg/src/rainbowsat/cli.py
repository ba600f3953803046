"""Command-line interface.

Exit codes: 0 for a definitive answer, 2 when a budget ran out and some
verdict is UNKNOWN, 1 for usage or input errors (including a rejected
coloring in ``verify-coloring``).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cnf import (
    CnfError,
    CnfFormula,
    compact_clause_count,
    decode_assignment,
    encode_compact,
    encode_exact_colors,
    encode_feasibility,
    expected_clause_count,
    iter_dimacs_lines,
    parse_model,
)
from .coloring import ColoringError, EdgeColoring, is_rainbow_free
from .colorer import ENGINES, Budget, Status, color_interval, find_rainbow_free_coloring
from .constructions import (
    FIXTURES,
    ConstructionError,
    build_construction,
    build_named_fixture,
    c4_edge_count,
    c5_edge_count,
    c6_edge_count,
)
from .graph import Graph, Graph6Error, parse_graph6, to_graph6
from .maxfree import max_cycle_free_subgraph
from .patterns import detect_forbidden_patterns
from .saturation import Verdict, audit_structural_conditions, check_rainbow_saturated, sat_star, verify_lemma_traps

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2

EXPECTED_EDGES = {"c4": c4_edge_count, "c5": c5_edge_count, "c6": c6_edge_count}


class UsageError(Exception):
    pass


# -- argument helpers ----------------------------------------------------------


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_graph_source(p: argparse.ArgumentParser, k_default: int | None = None, k_required: bool = True) -> None:
    src = p.add_argument_group("graph source (exactly one)")
    src.add_argument("--graph6", help="graph in graph6 form")
    src.add_argument("--input", type=Path, help="file whose first non-empty line is a graph6 string")
    src.add_argument("--fixture", choices=FIXTURES, help="named C6 fixture")
    src.add_argument("--target", choices=("c4", "c5", "c6"), help="extremal construction (needs --n)")
    p.add_argument("--n", type=_positive_int, help="vertex count for --target")
    p.add_argument("--k", type=int, default=k_default, required=k_required and k_default is None, help="cycle length")


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-seconds", type=_positive_float, help="wall-time limit per decision")
    p.add_argument("--budget-nodes", type=_positive_int, help="search-node limit per decision")
    p.add_argument("--engine", choices=ENGINES, default="search", help="decision procedure")
    p.add_argument("--solver", help="pysat solver name for the sat/dimacs engines")


def _budget(args) -> Budget:
    return Budget(args.budget_nodes, args.budget_seconds)


def _load_graph(args) -> tuple[Graph, dict]:
    """The selected graph and extra metadata (construction witness etc.)."""
    chosen = [x for x in ("graph6", "input", "fixture", "target") if getattr(args, x, None) is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --graph6, --input, --fixture, --target")
    meta: dict = {}
    if args.graph6 is not None:
        return parse_graph6(args.graph6), meta
    if args.input is not None:
        lines = [ln.strip() for ln in args.input.read_text().splitlines() if ln.strip()]
        if not lines:
            raise UsageError(f"{args.input} holds no graph6 line")
        return parse_graph6(lines[0]), meta
    if args.fixture is not None:
        res = build_named_fixture(args.fixture)
    else:
        if args.n is None:
            raise UsageError("--target needs --n")
        res = build_construction(args.target, args.n)
        meta["expected_edges"] = EXPECTED_EDGES[args.target](args.n)
    meta["construction"] = res
    return res.graph, meta


def _emit(args, payload: dict, text: str | None = None) -> None:
    """Write JSON (default) or an alternative text rendering."""
    out = text if text is not None else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _to_dot(g: Graph, coloring: EdgeColoring | None = None, roles: dict[int, str] | None = None) -> str:
    lines = ["graph G {"]
    for v in range(g.n):
        label = f"{v}" if not roles else f"{v}:{roles[v]}"
        lines.append(f'  {v} [label="{label}"];')
    for i, (u, v) in enumerate(g.edges):
        attr = f' [label="{coloring[i]}"]' if coloring is not None else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _status_exit(*statuses: Status) -> int:
    return EXIT_UNKNOWN if Status.UNKNOWN in statuses else EXIT_OK


# -- subcommands ---------------------------------------------------------------


def cmd_construct(args) -> int:
    if args.fixture is None and args.target is None:
        raise UsageError("construct needs --target with --n, or --fixture")
    g, meta = _load_graph(args)
    res = meta["construction"]
    if args.k is not None and args.k != res.k:
        raise UsageError(f"{res.name} is a C{res.k} construction, not C{args.k}")
    if args.format == "graph6":
        _emit(args, {}, to_graph6(g) + "\n")
        return EXIT_OK
    if args.format == "dot":
        _emit(args, {}, _to_dot(g, res.witness, res.role_labels))
        return EXIT_OK
    payload = {
        "name": res.name,
        "graph6": to_graph6(g),
        "n": g.n,
        "edges": g.m,
        "k": res.k,
        "witness": res.witness.to_json() if res.witness else None,
        "witness_colors": res.witness.num_colors() if res.witness else None,
        "witness_verified": True,
        "roles": {str(v): r for v, r in sorted(res.role_labels.items())},
    }
    if "expected_edges" in meta:
        payload["expected_edges"] = meta["expected_edges"]
        payload["edge_count_matches"] = meta["expected_edges"] == g.m
    _emit(args, payload)
    return EXIT_OK


def cmd_verify_coloring(args) -> int:
    g, _ = _load_graph(args)
    data = json.loads(Path(args.coloring).read_text())
    if isinstance(data, dict) and "witness" in data:
        data = data["witness"]
    coloring = EdgeColoring.from_json(data)
    check = is_rainbow_free(g, coloring, args.k)
    valid = check.proper and check.rainbow_free
    _emit(
        args,
        {
            "valid": valid,
            "proper": check.proper,
            "rainbow_free": check.rainbow_free,
            "colors": coloring.num_colors(),
            "rainbow_cycles": [list(c.vertices) for c in check.violations],
        },
    )
    return EXIT_OK if valid else EXIT_ERROR


def cmd_color(args) -> int:
    g, _ = _load_graph(args)
    if args.exact and args.palette is None:
        raise UsageError("--exact needs --palette")
    v = find_rainbow_free_coloring(
        g, args.k, _budget(args), palette=args.palette, exact=args.exact, engine=args.engine, solver=args.solver
    )
    if args.format == "dot" and v.witness is not None:
        _emit(args, {}, _to_dot(g, v.witness))
    else:
        _emit(args, {"graph6": to_graph6(g), "k": args.k, **v.to_json(args.deterministic)})
    return _status_exit(v.status)


def cmd_color_interval(args) -> int:
    g, _ = _load_graph(args)
    if args.c_max < g.max_degree():
        raise UsageError(f"--c-max {args.c_max} is below the maximum degree {g.max_degree()}")
    res = color_interval(g, args.k, args.c_max, _budget(args), c_min=args.c_min, engine=args.engine)
    _emit(args, {"graph6": to_graph6(g), **res.to_json(args.deterministic)})
    return EXIT_OK if res.complete else EXIT_UNKNOWN


def cmd_check_saturated(args) -> int:
    g, _ = _load_graph(args)
    rep = check_rainbow_saturated(
        g, args.k, _budget(args), engine=args.engine, workers=args.threads, audit=args.audit
    )
    _emit(args, rep.to_json(args.deterministic))
    return EXIT_UNKNOWN if rep.is_saturated is Verdict.UNKNOWN else EXIT_OK


def cmd_sat_star(args) -> int:
    res = sat_star(args.n, args.k, _budget(args), engine=args.engine)
    payload = res.to_json()
    if args.k == 4:
        payload["audit"] = {
            w: [v.to_json() for v in audit_structural_conditions(g)]
            for w, g in zip(res.witnesses, res.witness_graphs())
        }
    if args.format == "graph6":
        _emit(args, {}, "".join(w + "\n" for w in res.witnesses))
    else:
        _emit(args, payload)
    return EXIT_UNKNOWN if res.value is None else EXIT_OK


def cmd_patterns(args) -> int:
    if args.traps:
        traps = verify_lemma_traps(4, _budget(args))
        _emit(args, {"traps": [t.to_json(args.deterministic) for t in traps]})
        return _status_exit(*(t.verdict.status for t in traps))
    g, _ = _load_graph(args)
    apexes = range(g.n) if args.apex is None else [args.apex]
    hits = [h.to_json() for v in apexes for h in detect_forbidden_patterns(g, v)]
    _emit(args, {"graph6": to_graph6(g), "hits": hits})
    return EXIT_OK


def cmd_max_free(args) -> int:
    g, _ = _load_graph(args)
    res = max_cycle_free_subgraph(g, args.k, allow_large=args.allow_large)
    if args.format == "graph6":
        _emit(args, {}, to_graph6(res.witness) + "\n")
    else:
        _emit(args, {"graph6": to_graph6(g), "k": args.k, **res.to_json(args.deterministic)})
    return EXIT_OK


def _encode(args, g: Graph) -> CnfFormula:
    if args.encoding == "compact":
        return encode_compact(g, args.k, args.colors, exact=args.exact, symmetry=not args.no_symmetry)
    expected = expected_clause_count(g, args.k, args.colors, exact=args.exact)
    if expected > args.max_clauses:
        raise UsageError(
            f"direct encoding would have {expected} clauses (limit {args.max_clauses}); "
            "use --encoding compact or raise --max-clauses"
        )
    enc = encode_exact_colors if args.exact else encode_feasibility
    return enc(g, args.k, args.colors, max_clauses=args.max_clauses)


def cmd_export_cnf(args) -> int:
    g, _ = _load_graph(args)
    f = _encode(args, g)
    if args.encoding == "compact":
        expected = compact_clause_count(g, args.k, args.colors, exact=args.exact, symmetry=not args.no_symmetry)
    else:
        expected = expected_clause_count(g, args.k, args.colors, exact=args.exact)
    if args.sidecar:
        Path(args.sidecar).write_text(json.dumps(f.sidecar(), indent=2, sort_keys=True) + "\n")
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.writelines(iter_dimacs_lines(f))
        summary = {
            "encoding": f.encoding,
            "num_vars": f.num_vars,
            "num_clauses": f.num_clauses,
            "expected_clauses": expected,
            "clause_groups": f.groups,
        }
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        sys.stdout.writelines(iter_dimacs_lines(f))
    if f.num_clauses != expected:
        print(f"clause count {f.num_clauses} differs from closed form {expected}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_decode_model(args) -> int:
    side = json.loads(Path(args.sidecar).read_text())
    g = parse_graph6(side["graph6"])
    f = CnfFormula(
        side["num_vars"], side["palette"], side["num_edges"], g, side["k"], side["exact"], side["encoding"]
    )
    text = Path(args.model).read_text()
    if any(line.strip().split()[:2] == ["s", "UNSATISFIABLE"] for line in text.splitlines() if line.strip()):
        _emit(args, {"status": Status.INFEASIBLE.value, "witness": None})
        return EXIT_OK
    coloring = decode_assignment(f, parse_model(text))
    if args.format == "dot":
        _emit(args, {}, _to_dot(g, coloring))
    else:
        _emit(
            args,
            {
                "status": Status.FEASIBLE.value,
                "witness": coloring.to_json(),
                "colors": coloring.num_colors(),
                "verified": True,
            },
        )
    return EXIT_OK


def cmd_audit(args) -> int:
    g, _ = _load_graph(args)
    violations = audit_structural_conditions(g, args.k)
    _emit(args, {"graph6": to_graph6(g), "violations": [v.to_json() for v in violations]})
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the result here instead of stdout")
    common.add_argument("--deterministic", action="store_true", help="omit timings so reruns are byte-identical")
    common.add_argument("--threads", type=_positive_int, default=1, help="worker processes (default 1)")

    parser = argparse.ArgumentParser(prog="rainbowsat", description="Rainbow cycle saturation toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build an extremal construction or fixture")
    _add_graph_source(p, k_required=False)
    p.add_argument("--format", choices=("json", "graph6", "dot"), default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-coloring", parents=[common], help="check a coloring is proper and rainbow-free")
    _add_graph_source(p)
    p.add_argument("--coloring", required=True, help="JSON edge-index -> color map (or construct output)")
    p.set_defaults(func=cmd_verify_coloring)

    p = sub.add_parser("color", parents=[common], help="decide rainbow-free colorability")
    _add_graph_source(p)
    _add_budget(p)
    p.add_argument("--palette", type=_positive_int, help="number of available colors")
    p.add_argument("--exact", action="store_true", help="use every color of the palette")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("color-interval", parents=[common], help="exact color counts admitting a coloring")
    _add_graph_source(p)
    _add_budget(p)
    p.add_argument("--c-max", type=_positive_int, required=True)
    p.add_argument("--c-min", type=_positive_int)
    p.set_defaults(func=cmd_color_interval)

    p = sub.add_parser("check-saturated", parents=[common], help="decide rainbow C_k-saturation")
    _add_graph_source(p)
    _add_budget(p)
    p.add_argument("--audit", action="store_true", help="re-check pattern certificates by search")
    p.set_defaults(func=cmd_check_saturated)

    p = sub.add_parser("sat-star", parents=[common], help="exact sat*(n, C_k) by enumeration (n <= 7)")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_budget(p)
    p.add_argument("--format", choices=("json", "graph6"), default="json")
    p.set_defaults(func=cmd_sat_star)

    p = sub.add_parser("patterns", parents=[common], help="neighbourhood obstructions for rainbow C4")
    _add_graph_source(p, k_default=4)
    _add_budget(p)
    p.add_argument("--apex", type=int, help="only this apex")
    p.add_argument("--traps", action="store_true", help="decide apex+pattern trap graphs and probe minimality")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("max-free", parents=[common], help="largest C_k-free subgraph")
    _add_graph_source(p)
    p.add_argument("--allow-large", action="store_true", help="run beyond the 30-edge guard")
    p.add_argument("--format", choices=("json", "graph6"), default="json")
    p.set_defaults(func=cmd_max_free)

    p = sub.add_parser("export-cnf", parents=[common], help="write the CNF instance in DIMACS form")
    _add_graph_source(p)
    p.add_argument("--colors", type=_positive_int, required=True, help="palette size")
    p.add_argument("--exact", action="store_true", help="every color must be used")
    p.add_argument("--encoding", choices=("direct", "compact"), default="direct")
    p.add_argument("--no-symmetry", action="store_true", help="compact encoding without symmetry breaking")
    p.add_argument("--max-clauses", type=_positive_int, default=20_000_000)
    p.add_argument("--sidecar", help="write the variable map JSON here")
    p.add_argument("--format", choices=("dimacs",), default="dimacs")
    p.set_defaults(func=cmd_export_cnf)

    p = sub.add_parser("decode-model", parents=[common], help="turn a solver model into a verified coloring")
    p.add_argument("--sidecar", required=True, help="variable map written by export-cnf")
    p.add_argument("--model", required=True, help="solver output (v lines or bare literals)")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_decode_model)

    p = sub.add_parser("audit", parents=[common], help="structural conditions for rainbow C4-saturated graphs")
    _add_graph_source(p, k_default=4)
    p.set_defaults(func=cmd_audit)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        if getattr(args, "k", None) is not None and args.k < 3:
            raise UsageError("cycle length k must be at least 3")
        return args.func(args)
    except (UsageError, Graph6Error, ConstructionError, ColoringError, CnfError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

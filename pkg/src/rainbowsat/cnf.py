"""CNF encodings of rainbow-free proper edge coloring, DIMACS I/O and model decoding.

Two encodings share the variable layout ``x(e, c) = e * C + c + 1`` over
canonical edge indices ``e`` and colors ``c in [0, C)``:

``direct``
    One clause per forbidden assignment: every edge has a color,
    incident edges differ, and for each ``C_k`` copy one clause per ordered
    tuple of ``k`` distinct colors forbidding exactly that rainbow
    assignment. The exact-colors variant adds "every color is used" and
    "every edge has at most one color". The rainbow block has
    ``C!/(C-k)!`` clauses per cycle, so this is only practical for small
    palettes.

``compact``
    Polynomial size. Each edge gets exactly one color; for every pair of
    non-incident edges on a common ``C_k`` copy an auxiliary variable
    ``s(a, b)`` implies equal colors, and each copy needs one of its pairs
    to be equal. Optionally the edges at a maximum-degree vertex are fixed
    to colors ``0, 1, ...``, which is sound because color names are
    interchangeable.
"""

from __future__ import annotations

import itertools
import math
import re
import shlex
import subprocess
import tempfile
import threading
from array import array
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .coloring import EdgeColoring, verify_witness
from .graph import Graph, cycle_edge_sets


class CnfError(ValueError):
    pass


@dataclass
class CnfFormula:
    """A CNF instance together with its ``(edge, color)`` variable layout.

    Clauses are stored flat and zero-terminated, as in DIMACS, to keep
    large rainbow blocks affordable.
    """

    num_vars: int
    palette: int
    num_edges: int
    graph: Graph | None = None
    k: int = 0
    exact: bool = False
    encoding: str = "direct"
    groups: dict[str, int] = field(default_factory=dict)
    aux: dict[int, tuple[int, int]] = field(default_factory=dict)
    _flat: array = field(default_factory=lambda: array("i"), repr=False)
    _count: int = 0

    def add(self, clause: Iterable[int]) -> None:
        self._flat.extend(clause)
        self._flat.append(0)
        self._count += 1

    @property
    def num_clauses(self) -> int:
        return self._count

    def iter_clauses(self) -> Iterator[list[int]]:
        cur: list[int] = []
        for lit in self._flat:
            if lit:
                cur.append(lit)
            else:
                yield cur
                cur = []

    @property
    def clauses(self) -> list[list[int]]:
        return list(self.iter_clauses())

    def var(self, edge: int, color: int) -> int:
        return edge * self.palette + color + 1

    def var_map(self) -> dict[int, tuple[int, int]]:
        """Variable id -> ``(edge, color)`` for the coloring variables."""
        return {self.var(e, c): (e, c) for e in range(self.num_edges) for c in range(self.palette)}

    def sidecar(self) -> dict:
        """JSON-ready description of what every variable means."""
        from .graph import to_graph6

        out = {
            "graph6": to_graph6(self.graph) if self.graph is not None else None,
            "num_edges": self.num_edges,
            "encoding": self.encoding,
            "exact": self.exact,
            "k": self.k,
            "palette": self.palette,
            "num_vars": self.num_vars,
            "num_clauses": self.num_clauses,
            "clause_groups": dict(self.groups),
            "variables": {
                str(v): {"edge": e, "color": c, "pair": list(self.graph.edges[e]) if self.graph else None}
                for v, (e, c) in self.var_map().items()
            },
        }
        if self.aux:
            out["same_color_variables"] = {str(v): list(p) for v, p in sorted(self.aux.items())}
        return out


def incident_pairs(g: Graph) -> list[tuple[int, int]]:
    """Unordered pairs of distinct edges sharing an endpoint, sorted."""
    pairs = set()
    for inc in g.incident:
        for a, b in itertools.combinations(inc, 2):
            pairs.add((min(a, b), max(a, b)))
    return sorted(pairs)


def falling_factorial(c: int, k: int) -> int:
    return math.perm(c, k) if 0 <= k <= c else 0


def expected_clause_count(g: Graph, k: int, c: int, exact: bool = False, num_cycles: int | None = None) -> int:
    """Closed-form clause count of the direct encoding."""
    if num_cycles is None:
        num_cycles = len(cycle_edge_sets(g, k))
    total = g.m + len(incident_pairs(g)) * c + num_cycles * falling_factorial(c, k)
    if exact:
        total += c + g.m * math.comb(c, 2)
    return total


def compact_clause_count(
    g: Graph, k: int, c: int, exact: bool = False, symmetry: bool = True, num_cycles: int | None = None
) -> int:
    """Closed-form clause count of the compact encoding.

    Every pair of edges on a common ``C_k`` copy that share no endpoint
    gets one same-color variable with ``2c`` implication clauses.
    """
    cycles = cycle_edge_sets(g, k)
    if num_cycles is None:
        num_cycles = len(cycles)
    far = set()
    for cyc in cycles:
        for a, b in itertools.combinations(cyc, 2):
            if not set(g.edges[a]) & set(g.edges[b]):
                far.add((min(a, b), max(a, b)))
    total = g.m * (1 + math.comb(c, 2)) + len(incident_pairs(g)) * c + 2 * c * len(far) + num_cycles
    if exact:
        total += c
    if symmetry and g.m and c:
        total += min(c, g.max_degree())
    return total


def _check_palette(g: Graph, c: int) -> None:
    if c < 0:
        raise CnfError("palette size must be non-negative")
    if c == 0 and g.m:
        raise CnfError("palette size 0 with a non-empty edge set")


def encode_feasibility(
    g: Graph,
    k: int,
    c: int,
    max_clauses: int | None = 20_000_000,
    cycles: Sequence[tuple[int, ...]] | None = None,
) -> CnfFormula:
    """The published feasibility formula for palette size ``c``."""
    _check_palette(g, c)
    cycles = cycle_edge_sets(g, k) if cycles is None else cycles
    expected = expected_clause_count(g, k, c, num_cycles=len(cycles))
    if max_clauses is not None and expected > max_clauses:
        raise CnfError(f"formula would have {expected} clauses (limit {max_clauses}); use the compact encoding")
    f = CnfFormula(g.m * c, c, g.m, g, k)
    for e in range(g.m):
        f.add(f.var(e, col) for col in range(c))
    f.groups["edge_has_color"] = g.m
    pairs = incident_pairs(g)
    for a, b in pairs:
        for col in range(c):
            f.add((-f.var(a, col), -f.var(b, col)))
    f.groups["adjacent_differ"] = len(pairs) * c
    n_rainbow = 0
    for cyc in cycles:
        for tup in itertools.permutations(range(c), len(cyc)):
            f.add(-f.var(e, col) for e, col in zip(cyc, tup))
            n_rainbow += 1
    f.groups["no_rainbow_cycle"] = n_rainbow
    return f


def encode_exact_colors(
    g: Graph,
    k: int,
    c: int,
    max_clauses: int | None = 20_000_000,
    cycles: Sequence[tuple[int, ...]] | None = None,
) -> CnfFormula:
    """Feasibility formula plus "every color used" and "at most one color per edge"."""
    f = encode_feasibility(g, k, c, max_clauses, cycles)
    f.exact = True
    for col in range(c):
        f.add(f.var(e, col) for e in range(g.m))
    f.groups["every_color_used"] = c
    for e in range(g.m):
        for c1, c2 in itertools.combinations(range(c), 2):
            f.add((-f.var(e, c1), -f.var(e, c2)))
    f.groups["at_most_one_color"] = g.m * math.comb(c, 2)
    return f


def encode_compact(
    g: Graph,
    k: int,
    c: int,
    exact: bool = False,
    symmetry: bool = True,
    cycles: Sequence[tuple[int, ...]] | None = None,
) -> CnfFormula:
    """Polynomial-size equivalent of the direct encoding (see module docstring)."""
    _check_palette(g, c)
    cycles = cycle_edge_sets(g, k) if cycles is None else cycles
    f = CnfFormula(g.m * c, c, g.m, g, k, exact=exact, encoding="compact")
    for e in range(g.m):
        f.add(f.var(e, col) for col in range(c))
        for c1, c2 in itertools.combinations(range(c), 2):
            f.add((-f.var(e, c1), -f.var(e, c2)))
    f.groups["exactly_one_color"] = g.m * (1 + math.comb(c, 2))
    pairs = incident_pairs(g)
    for a, b in pairs:
        for col in range(c):
            f.add((-f.var(a, col), -f.var(b, col)))
    f.groups["adjacent_differ"] = len(pairs) * c
    same: dict[tuple[int, int], int] = {}
    for cyc in cycles:
        lits = []
        klen = len(cyc)
        for i in range(klen):
            for j in range(i + 2, klen):
                if i == 0 and j == klen - 1:
                    continue  # consecutive around the cycle: incident edges
                pair = (min(cyc[i], cyc[j]), max(cyc[i], cyc[j]))
                s = same.get(pair)
                if s is None:
                    f.num_vars += 1
                    s = same[pair] = f.num_vars
                    f.aux[s] = pair
                    a, b = pair
                    for col in range(c):
                        f.add((-s, -f.var(a, col), f.var(b, col)))
                        f.add((-s, -f.var(b, col), f.var(a, col)))
                lits.append(s)
        f.add(lits)
    f.groups["same_color_links"] = 2 * c * len(same)
    f.groups["cycle_has_repeat"] = len(cycles)
    if exact:
        for col in range(c):
            f.add(f.var(e, col) for e in range(g.m))
        f.groups["every_color_used"] = c
    if symmetry and g.m and c:
        hub = max(range(g.n), key=lambda v: (len(g.incident[v]), -v))
        fixed = g.incident[hub][:c]
        for col, e in enumerate(fixed):
            f.add((f.var(e, col),))
        f.groups["symmetry_breaking"] = len(fixed)
    return f


# -- DIMACS ----------------------------------------------------------------


def iter_dimacs_lines(f: CnfFormula) -> Iterator[str]:
    yield f"p cnf {f.num_vars} {f.num_clauses}\n"
    for cl in f.iter_clauses():
        yield " ".join(map(str, cl)) + (" 0\n" if cl else "0\n")


def write_dimacs(f: CnfFormula) -> str:
    """Standard DIMACS CNF text; byte-identical for identical formulas."""
    return "".join(iter_dimacs_lines(f))


def save_dimacs(f: CnfFormula, path: str | Path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.writelines(iter_dimacs_lines(f))


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    """Parse DIMACS CNF text into ``(num_vars, clauses)``."""
    num_vars = None
    declared = None
    clauses: list[list[int]] = []
    cur: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("c") or s.startswith("%"):
            continue
        if s.startswith("p"):
            parts = s.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"bad problem line at line {lineno}: {s!r}")
            num_vars, declared = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise CnfError(f"clause before problem line at line {lineno}")
        for tok in s.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                if abs(lit) > num_vars:
                    raise CnfError(f"literal {lit} exceeds declared variable count at line {lineno}")
                cur.append(lit)
    if cur:
        clauses.append(cur)
    if num_vars is None:
        raise CnfError("missing problem line")
    if declared != len(clauses):
        raise CnfError(f"header declares {declared} clauses, found {len(clauses)}")
    return num_vars, clauses


def parse_model(text: str) -> list[int]:
    """Signed literals from solver output; accepts ``v`` lines, line breaks, a trailing 0."""
    lits = []
    for line in text.splitlines():
        s = line.strip()
        if not s or s[0] in "cs":
            continue
        if s[0] == "v":
            s = s[1:]
        for tok in s.split():
            lit = int(tok)
            if lit:
                lits.append(lit)
    return lits


def decode_assignment(f: CnfFormula, model: Sequence[int]) -> EdgeColoring:
    """Read the edge coloring off a model of ``f``.

    In exact mode each edge must have exactly one true color variable; in
    feasibility mode the lowest true color is taken. The decoded coloring
    is re-verified when the formula knows its graph.
    """
    truth = {}
    for lit in model:
        truth[abs(lit)] = lit > 0
    colors = []
    for e in range(f.num_edges):
        missing = [f.var(e, c) for c in range(f.palette) if f.var(e, c) not in truth]
        if missing:
            raise CnfError(f"model does not assign variable {missing[0]} (edge {e})")
        true_cols = [c for c in range(f.palette) if truth[f.var(e, c)]]
        if not true_cols:
            raise CnfError(f"invalid model: edge {e} has no color")
        if f.exact and len(true_cols) > 1:
            raise CnfError(f"invalid model: edge {e} has colors {true_cols}")
        colors.append(true_cols[0])
    coloring = EdgeColoring(tuple(colors))
    if f.graph is not None and not verify_witness(f.graph, coloring, f.k):
        raise CnfError("decoded coloring is not proper and rainbow-free")
    if f.exact and coloring.num_colors() != f.palette:
        raise CnfError("decoded coloring does not use every color")
    return coloring


# -- solving -----------------------------------------------------------------

DEFAULT_SOLVER = "cadical153"


@dataclass
class SolveResult:
    satisfiable: bool | None  # None: interrupted / unknown
    model: list[int] | None
    solver: str
    seconds: float = 0.0


def solve_clauses(
    num_vars: int,
    clauses: Iterable[Sequence[int]],
    solver: str = DEFAULT_SOLVER,
    max_seconds: float | None = None,
) -> SolveResult:
    """Solve with an in-process CDCL solver from PySAT."""
    import time

    from pysat.solvers import Solver

    start = time.monotonic()
    with Solver(name=solver) as s:
        for cl in clauses:
            s.add_clause(cl)
        if max_seconds is None:
            sat = s.solve()
        else:
            timer = threading.Timer(max_seconds, s.interrupt)
            timer.start()
            try:
                sat = s.solve_limited(expect_interrupt=True)
            finally:
                timer.cancel()
        model = s.get_model() if sat else None
    if model is not None:
        present = {abs(l) for l in model}
        model = list(model) + [-v for v in range(1, num_vars + 1) if v not in present]
    return SolveResult(sat, model, solver, time.monotonic() - start)


def solve_formula(f: CnfFormula, solver: str = DEFAULT_SOLVER, max_seconds: float | None = None) -> SolveResult:
    return solve_clauses(f.num_vars, f.iter_clauses(), solver, max_seconds)


def solve_dimacs_text(text: str, solver: str = DEFAULT_SOLVER, max_seconds: float | None = None) -> SolveResult:
    num_vars, clauses = parse_dimacs(text)
    return solve_clauses(num_vars, clauses, solver, max_seconds)


_STATUS_RE = re.compile(r"^s\s+(SATISFIABLE|UNSATISFIABLE|UNKNOWN)", re.M)


def run_external_solver(f: CnfFormula, command: str | Sequence[str], timeout: float | None = None) -> SolveResult:
    """Write ``f`` to a temporary DIMACS file and run a competition-style solver.

    ``command`` receives the file path as its last argument and must print
    an ``s ...`` status line and, when satisfiable, ``v`` lines.
    """
    import time

    argv = shlex.split(command) if isinstance(command, str) else list(command)
    start = time.monotonic()
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "instance.cnf"
        save_dimacs(f, path)
        try:
            proc = subprocess.run([*argv, str(path)], capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            return SolveResult(None, None, argv[0], time.monotonic() - start)
    m = _STATUS_RE.search(proc.stdout)
    if m is None:
        raise CnfError(f"solver produced no status line (exit {proc.returncode})")
    status = m.group(1)
    if status == "UNKNOWN":
        return SolveResult(None, None, argv[0], time.monotonic() - start)
    if status == "UNSATISFIABLE":
        return SolveResult(False, None, argv[0], time.monotonic() - start)
    return SolveResult(True, parse_model(proc.stdout), argv[0], time.monotonic() - start)

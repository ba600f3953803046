"""Exhaustive search for proper edge colorings with no rainbow ``C_k``.

The search colors one edge at a time. Colors are introduced in order: an
edge may take any color already in use or the single next unused color,
which removes the symmetry between color names without losing
completeness. For every ``C_k`` copy the search tracks which colors its
colored edges carry; once ``k - 1`` of them are pairwise distinct, the last
edge is restricted to those colors.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coloring import EdgeColoring, verify_witness
from .graph import Graph, cycle_edge_sets


class Status(str, enum.Enum):
    FEASIBLE = "FEASIBLE"
    INFEASIBLE = "INFEASIBLE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Budget:
    """Search limits; ``None`` means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None

    def __post_init__(self) -> None:
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise ValueError("node budget must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("time budget must be positive")

    def to_json(self) -> dict:
        return {"max_nodes": self.max_nodes, "max_seconds": self.max_seconds}


UNLIMITED = Budget()


@dataclass
class FeasibilityVerdict:
    status: Status
    witness: EdgeColoring | None = None
    nodes_explored: int = 0
    seconds: float = 0.0
    budget: Budget = field(default_factory=Budget)
    palette: int = 0
    method: str = "search"

    def __post_init__(self) -> None:
        if self.status is Status.FEASIBLE and self.witness is None:
            raise ValueError("FEASIBLE verdict requires a witness")

    def to_json(self, deterministic: bool = False) -> dict:
        out = {
            "status": self.status.value,
            "method": self.method,
            "palette": self.palette,
            "nodes_explored": self.nodes_explored,
            "budget": self.budget.to_json(),
            "witness": None if self.witness is None else self.witness.to_json(),
        }
        if not deterministic:
            out["seconds"] = round(self.seconds, 6)
        return out


class _BudgetExceeded(Exception):
    pass


class _Search:
    def __init__(
        self,
        g: Graph,
        k: int,
        palette: int,
        exact: bool,
        cycles: Sequence[tuple[int, ...]] | None,
        budget: Budget,
    ) -> None:
        self.g = g
        self.k = k
        self.m = m = g.m
        self.palette = palette
        self.exact = exact
        self.cycles = list(cycle_edge_sets(g, k) if cycles is None else cycles)
        self.edge_cycles: list[list[int]] = [[] for _ in range(m)]
        for ci, cyc in enumerate(self.cycles):
            for e in cyc:
                self.edge_cycles[e].append(ci)
        inc = g.incident
        self.nbr_edges = [
            tuple(f for f in set(inc[u]) | set(inc[v]) if f != e) for e, (u, v) in enumerate(g.edges)
        ]
        # ties in the fail-first choice: most cycle copies first, then canonical order
        order = sorted(range(m), key=lambda e: (-len(self.edge_cycles[e]), e))
        self.rank = [0] * m
        for r, e in enumerate(order):
            self.rank[e] = r
        self.order = order

        self.color = [-1] * m
        self.dom = [(1 << palette) - 1] * m
        self.cmask = [0] * len(self.cycles)
        self.ccnt = [0] * len(self.cycles)
        self.dead = [False] * len(self.cycles)
        self.used = 0
        self.uncolored = m

        self.nodes = 0
        self.budget = budget
        self.deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds

    def _tick(self) -> None:
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise _BudgetExceeded
        if self.deadline is not None and self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExceeded

    def _assign(self, e: int, col: int, dom_trail: list, cyc_trail: list) -> bool:
        """Color ``e`` and propagate; returns False on a wipe-out (trail still valid)."""
        bit = 1 << col
        color = self.color
        dom = self.dom
        color[e] = col
        ok = True
        for f in self.nbr_edges[e]:
            if color[f] < 0:
                d = dom[f]
                if d & bit:
                    dom_trail.append((f, d))
                    d &= ~bit
                    dom[f] = d
                    if not d:
                        ok = False
        if not ok:
            return False
        cmask, ccnt, dead = self.cmask, self.ccnt, self.dead
        last = self.k - 1
        for ci in self.edge_cycles[e]:
            if dead[ci]:
                continue
            mk = cmask[ci]
            cyc_trail.append((ci, mk, ccnt[ci]))
            if mk & bit:
                dead[ci] = True
                continue
            mk |= bit
            cmask[ci] = mk
            cnt = ccnt[ci] + 1
            ccnt[ci] = cnt
            if cnt == last:
                for f in self.cycles[ci]:
                    if color[f] < 0:
                        d = dom[f]
                        nd = d & mk
                        if nd != d:
                            dom_trail.append((f, d))
                            dom[f] = nd
                            if not nd:
                                return False
                        break
        return True

    def _undo(self, e: int, dom_trail: list, cyc_trail: list) -> None:
        self.color[e] = -1
        dom = self.dom
        for f, d in reversed(dom_trail):
            dom[f] = d
        cmask, ccnt, dead = self.cmask, self.ccnt, self.dead
        for ci, mk, cnt in reversed(cyc_trail):
            cmask[ci] = mk
            ccnt[ci] = cnt
            dead[ci] = False

    def _choose(self) -> int:
        used = self.used
        used_mask = (1 << used) - 1
        has_fresh = used < self.palette
        best = -1
        best_key = None
        color, dom, rank = self.color, self.dom, self.rank
        for e in self.order:
            if color[e] >= 0:
                continue
            d = dom[e]
            size = (d & used_mask).bit_count() + (1 if has_fresh and d >> used & 1 else 0)
            if size <= 1:
                return e
            key = (size, rank[e])
            if best_key is None or key < best_key:
                best_key = key
                best = e
        return best

    def _solve(self) -> bool:
        self._tick()
        if self.uncolored == 0:
            return not self.exact or self.used == self.palette
        if self.exact and self.palette - self.used > self.uncolored:
            return False
        e = self._choose()
        d = self.dom[e]
        used = self.used
        cands = [c for c in range(used) if d >> c & 1]
        if used < self.palette and d >> used & 1:
            cands.append(used)
        for col in cands:
            dom_trail: list = []
            cyc_trail: list = []
            fresh = col == used
            if fresh:
                self.used += 1
            self.uncolored -= 1
            if self._assign(e, col, dom_trail, cyc_trail) and self._solve():
                return True
            self._undo(e, dom_trail, cyc_trail)
            self.uncolored += 1
            if fresh:
                self.used -= 1
        return False

    def run(self) -> tuple[Status, EdgeColoring | None]:
        if self.m == 0:
            ok = not self.exact or self.palette == 0
            return (Status.FEASIBLE, EdgeColoring(())) if ok else (Status.INFEASIBLE, None)
        if self.palette <= 0:
            return Status.INFEASIBLE, None
        try:
            found = self._solve()
        except _BudgetExceeded:
            return Status.UNKNOWN, None
        if found:
            return Status.FEASIBLE, EdgeColoring(tuple(self.color))
        return Status.INFEASIBLE, None


ENGINES = ("search", "sat", "dimacs")


def find_rainbow_free_coloring(
    g: Graph,
    k: int,
    budget: Budget = UNLIMITED,
    palette: int | None = None,
    exact: bool = False,
    cycles: Sequence[tuple[int, ...]] | None = None,
    engine: str = "search",
    solver: str | None = None,
) -> FeasibilityVerdict:
    """Decide whether ``g`` has a proper edge coloring without a rainbow ``C_k``.

    ``palette`` defaults to ``|E(g)|``, which loses nothing: a proper
    coloring never needs more colors than edges. With ``exact=True`` the
    coloring must use every one of the ``palette`` colors.

    ``engine`` selects the decision procedure: ``"search"`` is the
    backtracking search in this module, ``"sat"`` the compact CNF encoding
    handed to a CDCL solver, ``"dimacs"`` the published clause set written
    out as DIMACS text, parsed back and solved. A FEASIBLE verdict carries
    a witness that has been re-verified; INFEASIBLE is only returned when
    the search space was exhausted or the solver proved unsatisfiability.
    """
    pal = g.m if palette is None else palette
    if exact and palette is None:
        raise ValueError("exact mode needs an explicit palette size")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    start = time.monotonic()
    if engine == "search":
        search = _Search(g, k, pal, exact, cycles, budget)
        status, witness = search.run()
        nodes = search.nodes
    else:
        status, witness = _solve_with_cnf(g, k, pal, exact, cycles, budget, engine, solver)
        nodes = 0
    elapsed = time.monotonic() - start
    if witness is not None:
        if not verify_witness(g, witness, k):
            raise AssertionError("engine produced a coloring that fails verification")
        if exact and witness.num_colors() != pal:
            raise AssertionError("exact-mode witness does not use every color")
    return FeasibilityVerdict(status, witness, nodes, elapsed, budget, pal, engine)


def _solve_with_cnf(g, k, pal, exact, cycles, budget, engine, solver):
    from . import cnf

    if g.m == 0:
        ok = not exact or pal == 0
        return (Status.FEASIBLE, EdgeColoring(())) if ok else (Status.INFEASIBLE, None)
    if pal == 0:
        return Status.INFEASIBLE, None
    if engine == "sat":
        formula = cnf.encode_compact(g, k, pal, exact=exact, cycles=cycles)
        res = cnf.solve_formula(formula, solver or cnf.DEFAULT_SOLVER, budget.max_seconds)
    else:
        enc = cnf.encode_exact_colors if exact else cnf.encode_feasibility
        formula = enc(g, k, pal, cycles=cycles)
        res = cnf.solve_dimacs_text(cnf.write_dimacs(formula), solver or cnf.DEFAULT_SOLVER, budget.max_seconds)
    if res.satisfiable is None:
        return Status.UNKNOWN, None
    if not res.satisfiable:
        return Status.INFEASIBLE, None
    return Status.FEASIBLE, cnf.decode_assignment(formula, res.model)


def brute_force_feasible(g: Graph, k: int, palette: int | None = None, exact: bool = False) -> bool:
    """Reference oracle: try every coloring up to renaming of colors.

    Enumerates restricted-growth strings (each edge takes a color already
    used or the next new one), with no pruning beyond the palette size.
    Exponential; meant for graphs with at most about 9 edges.
    """
    pal = g.m if palette is None else palette
    m = g.m
    cycles = cycle_edge_sets(g, k)
    pairs = [
        (a, b)
        for inc in g.incident
        for i, a in enumerate(inc)
        for b in inc[i + 1 :]
    ]
    colors = [0] * m

    def ok() -> bool:
        if any(colors[a] == colors[b] for a, b in pairs):
            return False
        return all(len({colors[e] for e in cyc}) < len(cyc) for cyc in cycles)

    def rec(i: int, used: int) -> bool:
        if i == m:
            if exact and used != pal:
                return False
            return ok()
        for c in range(min(used + 1, pal)):
            colors[i] = c
            if rec(i + 1, max(used, c + 1)):
                return True
        return False

    if m == 0:
        return not exact or pal == 0
    return rec(0, 0)


@dataclass
class ColorInterval:
    """The set of color counts realisable by a rainbow-free coloring."""

    k: int
    c_max: int
    members: set[int]
    verdicts: dict[int, FeasibilityVerdict]
    unknown: set[int]

    @property
    def complete(self) -> bool:
        return not self.unknown

    def to_json(self, deterministic: bool = False) -> dict:
        return {
            "k": self.k,
            "c_max": self.c_max,
            "K": sorted(self.members),
            "unknown": sorted(self.unknown),
            "complete": self.complete,
            "verdicts": {str(c): v.to_json(deterministic) for c, v in sorted(self.verdicts.items())},
        }


def color_interval(
    g: Graph,
    k: int,
    c_max: int,
    budget: Budget = UNLIMITED,
    c_min: int | None = None,
    engine: str = "search",
) -> ColorInterval:
    """All ``c <= c_max`` for which some proper coloring uses exactly ``c``
    colors and has no rainbow ``C_k``.

    Counts below the maximum degree are skipped (no proper coloring
    exists); counts above ``|E|`` are impossible. The result is a set;
    nothing assumes it is an interval.
    """
    lo = max(g.max_degree(), 1) if c_min is None else c_min
    if c_max < g.max_degree():
        raise ValueError("c_max is below the maximum degree")
    cycles = cycle_edge_sets(g, k)
    members: set[int] = set()
    unknown: set[int] = set()
    verdicts: dict[int, FeasibilityVerdict] = {}
    for c in range(lo, c_max + 1):
        if c > g.m:
            verdicts[c] = FeasibilityVerdict(Status.INFEASIBLE, palette=c, method="counting")
            continue
        v = find_rainbow_free_coloring(g, k, budget, palette=c, exact=True, cycles=cycles, engine=engine)
        verdicts[c] = v
        if v.status is Status.FEASIBLE:
            members.add(c)
        elif v.status is Status.UNKNOWN:
            unknown.add(c)
    return ColorInterval(k, c_max, members, verdicts, unknown)


def palette_ceiling_by_peeling(
    g: Graph,
    k: int,
    base: Graph | None = None,
    base_ceiling: int | None = None,
) -> int:
    """Upper bound on the number of colors in any rainbow-``C_k``-free coloring.

    Peeling repeatedly deletes, from some remaining ``C_k`` copy, an edge
    whose color also appears elsewhere on that copy; the color set never
    shrinks and the survivor is ``C_k``-free, so the count is at most the
    size of a largest ``C_k``-free subgraph. When ``base`` (a subgraph of
    ``g``) is known to admit at most ``base_ceiling`` colors, the bound
    ``base_ceiling + |E(g) - E(base)|`` is also applied.
    """
    from .maxfree import max_cycle_free_subgraph

    bound = max_cycle_free_subgraph(g, k, allow_large=True).best_count
    if base is not None:
        if base_ceiling is None:
            base_ceiling = palette_ceiling_by_peeling(base, k)
        extra = set(g.edges) - set(base.edges)
        if not set(base.edges) <= set(g.edges):
            raise ValueError("base must be a subgraph of g")
        bound = min(bound, base_ceiling + len(extra))
    return bound

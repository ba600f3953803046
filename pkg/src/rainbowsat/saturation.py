"""Rainbow ``C_k``-saturation checks, exact ``sat*`` for tiny ``n`` and structural audits.

A graph ``G`` is rainbow ``C_k``-saturated when it has a proper edge
coloring with no rainbow ``C_k`` but, for every non-edge ``e``, every
proper coloring of ``G + e`` contains one. A complete graph has no
non-edges and is saturated as soon as it is colorable (the second
condition holds vacuously); such witnesses are flagged.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .colorer import UNLIMITED, Budget, FeasibilityVerdict, Status, find_rainbow_free_coloring
from .graph import Graph, to_graph6
from .patterns import PatternHit, PatternKind, apex_plus, detect_forbidden_patterns, pattern_graph

AUDIT_MAX_EDGES = 20


class Verdict(str, enum.Enum):
    """Three-valued answer used where a budget may cut a decision short."""

    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "UNKNOWN"


@dataclass
class SaturationReport:
    graph: Graph
    k: int
    host_verdict: FeasibilityVerdict
    per_nonedge: dict[tuple[int, int], FeasibilityVerdict]
    is_saturated: Verdict
    pattern_log: dict[tuple[int, int], PatternHit] = field(default_factory=dict)
    complete_check: bool = True  # False when the scan stopped at the first refutation

    @property
    def vacuous(self) -> bool:
        return self.graph.m == self.graph.n * (self.graph.n - 1) // 2

    def to_json(self, deterministic: bool = False) -> dict:
        return {
            "graph6": to_graph6(self.graph),
            "k": self.k,
            "is_saturated": self.is_saturated.value,
            "vacuous": self.vacuous,
            "complete_check": self.complete_check,
            "host_verdict": self.host_verdict.to_json(deterministic),
            "per_nonedge": [
                {"nonedge": list(e), **v.to_json(deterministic)} for e, v in sorted(self.per_nonedge.items())
            ],
            "pattern_log": [{"nonedge": list(e), **h.to_json()} for e, h in sorted(self.pattern_log.items())],
        }


def _pattern_certificate(h: Graph, u: int, v: int) -> PatternHit | None:
    # apexes whose neighbourhood gained something come first: u, v, then common neighbours
    common = sorted(h.adj[u] & h.adj[v])
    order = [u, v, *common]
    seen = set(order)
    order += [x for x in range(h.n) if x not in seen]
    for apex in order:
        hits = detect_forbidden_patterns(h, apex)
        if hits:
            return hits[0]
    return None


def _check_nonedge(args) -> tuple[FeasibilityVerdict, PatternHit | None]:
    g, k, e, budget, engine, audit = args
    h = g.add_edge(*e)
    if k == 4:
        hit = _pattern_certificate(h, *e)
        if hit is not None:
            if audit and h.m <= AUDIT_MAX_EDGES:
                check = find_rainbow_free_coloring(h, k, budget, engine=engine)
                if check.status is Status.FEASIBLE:
                    raise AssertionError(f"pattern certificate {hit} contradicted by a feasible coloring of G+{e}")
            return FeasibilityVerdict(Status.INFEASIBLE, budget=budget, palette=h.m, method="pattern"), hit
    return find_rainbow_free_coloring(h, k, budget, engine=engine), None


def check_rainbow_saturated(
    g: Graph,
    k: int,
    budget: Budget = UNLIMITED,
    engine: str = "search",
    workers: int = 1,
    stop_early: bool = False,
    audit: bool = False,
) -> SaturationReport:
    """Decide whether ``g`` is rainbow ``C_k``-saturated.

    For ``k = 4`` every non-edge first tries a pattern certificate: one of
    the four neighbourhood obstructions in ``G + e`` proves infeasibility
    without search. ``audit=True`` re-checks those certificates with the
    exhaustive solver on instances of at most 20 edges.

    With ``stop_early`` the scan ends at the first feasible non-edge; the
    answer is unaffected but ``per_nonedge`` is then partial. A definitive
    refutation wins over UNKNOWN sub-verdicts; otherwise any UNKNOWN makes
    the answer UNKNOWN.
    """
    host = find_rainbow_free_coloring(g, k, budget, engine=engine)
    per: dict[tuple[int, int], FeasibilityVerdict] = {}
    log: dict[tuple[int, int], PatternHit] = {}
    nonedges = g.non_edges()
    complete = True
    if host.status is Status.INFEASIBLE:
        return SaturationReport(g, k, host, per, Verdict.FALSE, log, complete_check=not nonedges)
    jobs = [(g, k, e, budget, engine, audit) for e in nonedges]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_check_nonedge, jobs))
        pairs = list(zip(nonedges, results))
    else:
        pairs = []
        for e, job in zip(nonedges, jobs):
            res = _check_nonedge(job)
            pairs.append((e, res))
            if stop_early and res[0].status is Status.FEASIBLE:
                complete = len(pairs) == len(nonedges)
                break
    for e, (verdict, hit) in pairs:
        per[e] = verdict
        if hit is not None:
            log[e] = hit
    statuses = [host.status, *(v.status for v in per.values())]
    if any(v.status is Status.FEASIBLE for v in per.values()):
        answer = Verdict.FALSE
    elif Status.UNKNOWN in statuses:
        answer = Verdict.UNKNOWN
    else:
        answer = Verdict.TRUE
    return SaturationReport(g, k, host, per, answer, log, complete)


# -- sat* by exhaustive enumeration --------------------------------------------


@dataclass
class LevelSummary:
    edges: int
    classes: int
    saturated: int
    unknown: int

    def to_json(self) -> dict:
        return {"edges": self.edges, "classes": self.classes, "saturated": self.saturated, "unknown": self.unknown}


@dataclass
class SatStarResult:
    n: int
    k: int
    value: int | None  # None when an UNKNOWN blocks the minimum
    witnesses: list[str]
    levels: list[LevelSummary]
    vacuous: bool = False  # every witness is a complete graph

    @property
    def status(self) -> Status:
        return Status.UNKNOWN if self.value is None else Status.FEASIBLE

    def witness_graphs(self) -> list[Graph]:
        from .graph import parse_graph6

        return [parse_graph6(w) for w in self.witnesses]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "value": "UNKNOWN" if self.value is None else self.value,
            "witnesses": self.witnesses,
            "vacuous": self.vacuous,
            "levels": [lv.to_json() for lv in self.levels],
        }


SAT_STAR_MAX_N = 7


def sat_star(n: int, k: int, budget: Budget = UNLIMITED, engine: str = "search") -> SatStarResult:
    """Exact ``sat*(n, C_k)`` over all isomorphism classes on ``n <= 7`` vertices.

    Levels are scanned by increasing edge count. The first level holding a
    saturated graph is completed so every witness at the minimum is listed.
    A level with an UNKNOWN class and no saturated class leaves the minimum
    undetermined, and the result is UNKNOWN.
    """
    from .enumerate import graphs_by_edge_count

    if n > SAT_STAR_MAX_N:
        raise ValueError(f"exhaustive sat* is limited to n <= {SAT_STAR_MAX_N}")
    levels: list[LevelSummary] = []
    for m, level in enumerate(graphs_by_edge_count(n)):
        witnesses = []
        unknown = 0
        for g in level:
            rep = check_rainbow_saturated(g, k, budget, engine=engine, stop_early=True)
            if rep.is_saturated is Verdict.TRUE:
                witnesses.append(to_graph6(g))
            elif rep.is_saturated is Verdict.UNKNOWN:
                unknown += 1
        levels.append(LevelSummary(m, len(level), len(witnesses), unknown))
        if witnesses:
            return SatStarResult(n, k, m, witnesses, levels, vacuous=m == n * (n - 1) // 2)
        if unknown:
            return SatStarResult(n, k, None, [], levels)
    raise AssertionError("the complete graph is always saturated once colorable")


# -- structural audit ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: str
    detail: dict

    def to_json(self) -> dict:
        return {"condition": self.condition, **self.detail}


def audit_structural_conditions(g: Graph, k: int = 4) -> list[Violation]:
    """Necessary conditions for a rainbow ``C_4``-saturated graph.

    At most one vertex of degree one, every pair of vertices at distance at
    most three, and no pair with four or more common neighbours.
    """
    if k != 4:
        raise ValueError("the structural conditions are stated for C4 only")
    out: list[Violation] = []
    leaves = [v for v in range(g.n) if g.degree(v) == 1]
    if len(leaves) > 1:
        out.append(Violation("degree_one", {"vertices": leaves}))
    far = []
    for s in range(g.n):
        dist = g.distances_from(s)
        for t in range(s + 1, g.n):
            if dist[t] > 3:
                far.append([s, t, "inf" if math.isinf(dist[t]) else int(dist[t])])
    if far:
        out.append(Violation("distance", {"pairs": far}))
    crowded = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            c = (g.adj_mask[u] & g.adj_mask[v]).bit_count()
            if c >= 4:
                crowded.append([u, v, c])
    if crowded:
        out.append(Violation("common_neighbors", {"pairs": crowded}))
    return out


# -- obstruction traps ----------------------------------------------------------------


@dataclass
class TrapResult:
    kind: PatternKind
    graph: Graph
    verdict: FeasibilityVerdict
    detected: bool
    # pattern edge (apex graph labels) -> status after deleting it
    deletions: dict[tuple[int, int], Status]

    @property
    def minimal(self) -> bool:
        return all(s is Status.FEASIBLE for s in self.deletions.values())

    def to_json(self, deterministic: bool = False) -> dict:
        return {
            "pattern_kind": self.kind.value,
            "graph6": to_graph6(self.graph),
            "status": self.verdict.status.value,
            "detected": self.detected,
            "minimal": self.minimal,
            "deletions": [{"edge": list(e), "status": s.value} for e, s in sorted(self.deletions.items())],
            "verdict": self.verdict.to_json(deterministic),
        }


def trap_graphs() -> dict[PatternKind, Graph]:
    """Apex joined to the smallest instance of each obstruction."""
    return {kind: apex_plus(pattern_graph(kind)) for kind in PatternKind}


def verify_lemma_traps(k: int = 4, budget: Budget = UNLIMITED) -> list[TrapResult]:
    """Confirm every obstruction forces a rainbow ``C_4`` and probe its minimality.

    Each trap is decided by exhaustive search (no pattern short-cut). The
    minimality probe deletes one pattern edge at a time and records the
    resulting status; it is reported, not asserted.
    """
    if k != 4:
        raise ValueError("the neighbourhood obstructions concern C4 only")
    out = []
    for kind, g in trap_graphs().items():
        verdict = find_rainbow_free_coloring(g, k, budget)
        hits = detect_forbidden_patterns(g, 0)
        detected = any(h.pattern_kind is kind for h in hits)
        deletions = {}
        for a, b in pattern_graph(kind).edges:
            e = (a + 1, b + 1)
            h = g.remove_edges([g.edge_id(*e)])
            deletions[e] = find_rainbow_free_coloring(h, k, budget).status
        out.append(TrapResult(kind, g, verdict, detected, deletions))
    return out

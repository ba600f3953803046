"""Largest ``C_k``-free spanning subgraph by branch and bound."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .graph import Graph, cycle_edge_sets

MAX_EXACT_EDGES = 30


@dataclass
class MaxFreeResult:
    best_count: int
    witness: Graph
    optimal: bool
    nodes: int = 0
    pruned_by_bound: int = 0
    pruned_by_cycle: int = 0
    seconds: float = 0.0
    selected: tuple[int, ...] = field(default=())

    def to_json(self, deterministic: bool = False) -> dict:
        from .graph import to_graph6

        out = {
            "best_count": self.best_count,
            "optimal": self.optimal,
            "selected_edges": list(self.selected),
            "witness_graph6": to_graph6(self.witness),
            "nodes": self.nodes,
            "pruned_by_bound": self.pruned_by_bound,
            "pruned_by_cycle": self.pruned_by_cycle,
        }
        if not deterministic:
            out["seconds"] = round(self.seconds, 6)
        return out


def max_cycle_free_subgraph(g: Graph, k: int, allow_large: bool = False) -> MaxFreeResult:
    """Maximum number of edges of ``g`` that can be kept without a ``C_k``.

    Edges are decided in canonical order, keeping before dropping, so the
    first optimum found is the lexicographically smallest optimal edge
    set. A branch is cut when it closes a ``C_k`` or when even keeping
    every undecided edge (less one per edge-disjoint cycle that is still
    entirely undecided-or-kept) cannot beat the incumbent.
    """
    if g.m > MAX_EXACT_EDGES and not allow_large:
        raise ValueError(f"{g.m} edges exceeds the exhaustive limit of {MAX_EXACT_EDGES}")
    start = time.monotonic()
    m = g.m
    cycles = cycle_edge_sets(g, k)
    edge_cycles: list[list[int]] = [[] for _ in range(m)]
    for ci, cyc in enumerate(cycles):
        for e in cyc:
            edge_cycles[e].append(ci)
    kept_in = [0] * len(cycles)
    broken = [False] * len(cycles)  # some edge already dropped
    state = [0] * m  # 0 undecided, 1 kept, -1 dropped
    best = [-1, ()]
    stats = {"nodes": 0, "bound": 0, "cycle": 0}

    def packing_bound(i: int) -> int:
        # edge-disjoint live cycles among the undecided suffix each lose an edge
        used = set()
        loss = 0
        for ci, cyc in enumerate(cycles):
            if broken[ci]:
                continue
            und = [e for e in cyc if e >= i]
            if not und or any(e in used for e in und):
                continue
            used.update(und)
            loss += 1
        return loss

    def rec(i: int, kept: int) -> None:
        stats["nodes"] += 1
        if i == m:
            if kept > best[0]:
                best[0] = kept
                best[1] = tuple(e for e in range(m) if state[e] == 1)
            return
        remaining = m - i
        if kept + remaining <= best[0]:
            stats["bound"] += 1
            return
        if kept + remaining - packing_bound(i) <= best[0]:
            stats["bound"] += 1
            return
        # keep edge i
        closes = False
        for ci in edge_cycles[i]:
            if not broken[ci] and kept_in[ci] == k - 1:
                closes = True
                break
        if closes:
            stats["cycle"] += 1
        else:
            state[i] = 1
            for ci in edge_cycles[i]:
                kept_in[ci] += 1
            rec(i + 1, kept + 1)
            for ci in edge_cycles[i]:
                kept_in[ci] -= 1
        # drop edge i
        state[i] = -1
        newly = [ci for ci in edge_cycles[i] if not broken[ci]]
        for ci in newly:
            broken[ci] = True
        rec(i + 1, kept)
        for ci in newly:
            broken[ci] = False
        state[i] = 0

    rec(0, 0)
    witness = g.edge_subgraph(best[1])
    if cycle_edge_sets(witness, k):
        raise AssertionError("branch and bound returned a subgraph containing a cycle copy")
    return MaxFreeResult(
        best[0], witness, True, stats["nodes"], stats["bound"], stats["cycle"], time.monotonic() - start, best[1]
    )


def brute_force_max_free(g: Graph, k: int) -> int:
    """Reference: scan all ``2^m`` edge subsets (``m <= 16`` advisable)."""
    cycles = cycle_edge_sets(g, k)
    masks = [sum(1 << e for e in cyc) for cyc in cycles]
    best = 0
    for sub in range(1 << g.m):
        size = sub.bit_count()
        if size <= best:
            continue
        if all(sub & cm != cm for cm in masks):
            best = size
    return best

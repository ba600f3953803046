"""Exhaustive generation of small graphs, one per isomorphism class.

Canonical forms come from colour refinement followed by individualisation
and backtracking; the certificate is the lexicographically smallest
adjacency bit string over all leaves of the search tree. Pairwise twin
vertices in a cell are interchangeable, so only one of them is branched on.
"""

from __future__ import annotations

from typing import Iterator

from .graph import Graph

MAX_EXHAUSTIVE_N = 8


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition (cell order is preserved)."""
    changed = True
    while changed:
        changed = False
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {v: tuple((adj[v] & m).bit_count() for m in masks) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                out.append(cell)
                continue
            changed = True
            for key in keys:
                out.append([v for v in cell if sig[v] == key])
        cells = out
    return cells


def _are_twins(adj: tuple[int, ...], cell: list[int]) -> bool:
    base = cell[0]
    for v in cell[1:]:
        if adj[base] & ~(1 << v) != adj[v] & ~(1 << base):
            return False
    return True


def _certificate(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    n = len(order)
    return tuple(adj[order[i]] >> order[j] & 1 for j in range(1, n) for i in range(j))


def canonical_form(g: Graph) -> tuple[tuple[int, ...], list[int]]:
    """``(certificate, order)``: equal certificates iff isomorphic graphs.

    ``order[i]`` is the original vertex placed at canonical position ``i``.
    """
    adj = g.adj_mask
    if g.n == 0:
        return (), []
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            cert = _certificate(adj, order)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            return
        cell = cells[target]
        choices = cell[:1] if _are_twins(adj, cell) else cell
        for v in choices:
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    degree_cells: dict[int, list[int]] = {}
    for v in range(g.n):
        degree_cells.setdefault(adj[v].bit_count(), []).append(v)
    search([degree_cells[d] for d in sorted(degree_cells)])
    return best[0], best[1]


def canonical_graph(g: Graph) -> Graph:
    _, order = canonical_form(g)
    pos = {v: i for i, v in enumerate(order)}
    return g.relabel([pos[v] for v in range(g.n)])


def certificate(g: Graph) -> tuple[int, ...]:
    return canonical_form(g)[0]


def graphs_by_edge_count(n: int) -> Iterator[list[Graph]]:
    """Isomorphism-class representatives on ``n`` vertices, level by level.

    Level ``m`` holds every class with ``m`` edges, each as its canonical
    relabelling, in certificate order. Each level is generated from the
    previous one by adding a single edge and deduplicating.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_EXHAUSTIVE_N:
        raise ValueError(f"exhaustive generation refused for n={n} > {MAX_EXHAUSTIVE_N}")
    level = {certificate(Graph(n)): Graph(n)}
    max_edges = n * (n - 1) // 2
    for _m in range(max_edges + 1):
        ordered = [level[c] for c in sorted(level)]
        yield ordered
        nxt: dict[tuple[int, ...], Graph] = {}
        for g in ordered:
            for u, v in g.non_edges():
                h = g.add_edge(u, v)
                cert, order = canonical_form(h)
                if cert not in nxt:
                    pos = {x: i for i, x in enumerate(order)}
                    nxt[cert] = h.relabel([pos[x] for x in range(n)])
        level = nxt


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """Every graph on ``n`` vertices up to isomorphism, by increasing edge count."""
    for level in graphs_by_edge_count(n):
        yield from level

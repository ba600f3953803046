"""Detection of the four neighbourhood obstructions for rainbow-C4-free colorings.

If ``G[N(v)]`` contains (not necessarily induced) any of

* a triangle with pendant edges at two different triangle vertices,
* a 4-cycle,
* a cycle of length at least 5 with a pendant edge,
* a double star ``D_{2,2}`` or a subdivision of it (a path with at least
  one edge whose two ends each carry two further leaves, all distinct),

then no proper edge coloring of ``G`` avoids a rainbow ``C_4``.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass

from .graph import Graph, enumerate_cycles, iter_cycles


class PatternKind(str, enum.Enum):
    TRIANGLE_TWO_PENDANTS = "TRIANGLE_TWO_PENDANTS"
    C4 = "C4"
    LONG_CYCLE_PENDANT = "LONG_CYCLE_PENDANT"
    D22_SUBDIVISION = "D22_SUBDIVISION"


@dataclass(frozen=True)
class PatternHit:
    """One occurrence of a pattern inside ``N(apex)``.

    ``embedding`` lists host vertices in a kind-specific order:

    * triangle: ``(t1, t2, t3, p1, p2)`` with pendants ``t1p1`` and ``t2p2``;
    * C4: the cycle;
    * long cycle: the cycle vertices followed by the pendant vertex, which
      hangs off the last cycle vertex;
    * D22: ``(a1, a2, path..., b1, b2)`` where ``a1, a2`` are leaves of the
      first path vertex and ``b1, b2`` leaves of the last.
    """

    pattern_kind: PatternKind
    apex: int
    embedding: tuple[int, ...]

    def to_json(self) -> dict:
        return {"pattern_kind": self.pattern_kind.value, "apex": self.apex, "embedding": list(self.embedding)}


def _triangle_hit(adj: dict[int, set[int]], verts: list[int]) -> tuple[int, ...] | None:
    for a, b, c in itertools.combinations(verts, 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            tri = {a, b, c}
            for t1, t2 in itertools.permutations((a, b, c), 2):
                for p1 in adj[t1] - tri:
                    for p2 in adj[t2] - tri - {p1}:
                        return (t1, t2, ({a, b, c} - {t1, t2}).pop(), p1, p2)
    return None


def _long_cycle_hit(sub: Graph, labels: list[int]) -> tuple[int, ...] | None:
    for length in range(5, sub.n):
        for cyc in iter_cycles(sub, length):
            on = set(cyc)
            for i, x in enumerate(cyc):
                extra = sub.adj[x] - on
                if extra:
                    # rotate so the pendant hangs off the last listed cycle vertex
                    rot = cyc[i + 1 :] + cyc[: i + 1]
                    return tuple(labels[y] for y in rot) + (labels[min(extra)],)
    return None


def _shortest_path(adj: dict[int, set[int]], a: int, b: int, banned: set[int]) -> tuple[int, ...] | None:
    prev = {a: a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            path = [b]
            while path[-1] != a:
                path.append(prev[path[-1]])
            return tuple(reversed(path))
        for y in sorted(adj[x]):
            if y not in prev and y not in banned:
                prev[y] = x
                queue.append(y)
    return None


def _d22_hit(adj: dict[int, set[int]], verts: list[int]) -> tuple[int, ...] | None:
    rich = [x for x in verts if len(adj[x]) >= 3]
    for a, b in itertools.combinations(rich, 2):
        for a1, a2 in itertools.combinations(sorted(adj[a] - {b}), 2):
            for b1, b2 in itertools.combinations(sorted(adj[b] - {a, a1, a2}), 2):
                path = _shortest_path(adj, a, b, {a1, a2, b1, b2})
                if path is not None:
                    return (a1, a2) + path + (b1, b2)
    return None


def detect_forbidden_patterns(g: Graph, v: int) -> list[PatternHit]:
    """At most one hit per pattern kind present in ``G[N(v)]``."""
    verts = sorted(g.adj[v])
    vs = set(verts)
    adj = {x: set(g.adj[x]) & vs for x in verts}
    sub, labels = g.induced(verts)
    hits = []
    tri = _triangle_hit(adj, verts)
    if tri:
        hits.append(PatternHit(PatternKind.TRIANGLE_TWO_PENDANTS, v, tri))
    c4 = enumerate_cycles(sub, 4)
    if c4:
        hits.append(PatternHit(PatternKind.C4, v, tuple(labels[x] for x in c4[0].vertices)))
    long_cyc = _long_cycle_hit(sub, labels)
    if long_cyc:
        hits.append(PatternHit(PatternKind.LONG_CYCLE_PENDANT, v, long_cyc))
    d22 = _d22_hit(adj, verts)
    if d22:
        hits.append(PatternHit(PatternKind.D22_SUBDIVISION, v, d22))
    return hits


def find_any_pattern(g: Graph) -> PatternHit | None:
    """First hit over all apexes in vertex order, or None."""
    for v in range(g.n):
        hits = detect_forbidden_patterns(g, v)
        if hits:
            return hits[0]
    return None


def pattern_edges(hit: PatternHit) -> list[tuple[int, int]]:
    """Edges of the pattern occurrence (inside ``N(apex)``)."""
    emb = hit.embedding
    kind = hit.pattern_kind
    if kind is PatternKind.TRIANGLE_TWO_PENDANTS:
        t1, t2, t3, p1, p2 = emb
        return [(t1, t2), (t2, t3), (t1, t3), (t1, p1), (t2, p2)]
    if kind is PatternKind.C4:
        return [(emb[i], emb[(i + 1) % 4]) for i in range(4)]
    if kind is PatternKind.LONG_CYCLE_PENDANT:
        cyc = emb[:-1]
        return [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))] + [(cyc[-1], emb[-1])]
    a1, a2, *path, b1, b2 = emb
    return (
        [(path[0], a1), (path[0], a2)]
        + [(path[i], path[i + 1]) for i in range(len(path) - 1)]
        + [(path[-1], b1), (path[-1], b2)]
    )


def validate_hit(g: Graph, hit: PatternHit) -> bool:
    """The embedding is inside ``N(apex)``, injective, and every pattern edge exists."""
    emb = hit.embedding
    if len(set(emb)) != len(emb) or not set(emb) <= g.adj[hit.apex]:
        return False
    return all(g.has_edge(a, b) for a, b in pattern_edges(hit))


# -- obstruction fixtures -------------------------------------------------------


def apex_plus(pattern: Graph) -> Graph:
    """Join a new apex vertex ``0`` to every vertex of ``pattern`` (shifted by one)."""
    edges = [(0, v + 1) for v in range(pattern.n)] + [(a + 1, b + 1) for a, b in pattern.edges]
    return Graph.from_edges(pattern.n + 1, edges)


def pattern_graph(kind: PatternKind, size: int | None = None) -> Graph:
    """Smallest instance of each kind (``size`` picks the cycle length or path edges).

    * triangle ``v1v2v3`` with pendants ``v2v4``, ``v3v5``;
    * ``C_4``;
    * ``C_size`` (default 5) with one pendant edge;
    * ``D_{2,2}`` subdivided so the centre path has ``size`` edges (default 1,
      the double star itself).
    """
    if kind is PatternKind.TRIANGLE_TWO_PENDANTS:
        return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)])
    if kind is PatternKind.C4:
        return Graph.cycle(4)
    if kind is PatternKind.LONG_CYCLE_PENDANT:
        k = size or 5
        return Graph.from_edges(k + 1, [(i, (i + 1) % k) for i in range(k)] + [(k - 1, k)])
    plen = size or 1
    path = list(range(plen + 1))
    a, b = path[0], path[-1]
    nxt = plen + 1
    edges = [(path[i], path[i + 1]) for i in range(plen)]
    edges += [(a, nxt), (a, nxt + 1), (b, nxt + 2), (b, nxt + 3)]
    return Graph.from_edges(nxt + 4, edges)


def spider(legs: tuple[int, int, int]) -> Graph:
    """Spider ``S_{a,b,c}`` with centre 0."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)

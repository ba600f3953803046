"""The three extremal constructions and their witness colorings.

* ``build_c4_construction``: a universal vertex whose neighbourhood is a
  disjoint union of spiders (mostly ``S_{1,2,2}``).
* ``build_c5_construction``: two universal vertices plus a maximum matching.
* ``build_c6_construction``: an 8-vertex core (``K_8`` minus a perfect
  matching) with pendant triangles, and one or two extra degree-2 vertices
  when ``n`` is not 2 mod 3.

Every witness is checked with :func:`verify_witness` before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .coloring import EdgeColoring, verify_witness
from .graph import Graph


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class SpiderSpec:
    """Three paths of the given lengths glued at a common centre."""

    leg_lengths: tuple[int, int, int]

    def __post_init__(self) -> None:
        if len(self.leg_lengths) != 3 or min(self.leg_lengths) < 1:
            raise ValueError("a spider needs three legs of positive length")

    @property
    def num_vertices(self) -> int:
        return 1 + sum(self.leg_lengths)

    @property
    def num_edges(self) -> int:
        return sum(self.leg_lengths)


@dataclass
class ConstructionResult:
    graph: Graph
    role_labels: dict[int, str]
    k: int
    witness: EdgeColoring | None = None
    name: str = ""
    notes: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if sorted(self.role_labels) != list(range(self.graph.n)):
            raise ConstructionError("role labels must cover every vertex exactly once")
        if self.witness is not None and not verify_witness(self.graph, self.witness, self.k):
            raise ConstructionError(f"witness for {self.name or 'construction'} fails verification")

    def vertices_with_role(self, prefix: str) -> list[int]:
        return [v for v, r in sorted(self.role_labels.items()) if r.startswith(prefix)]


# -- C4 -----------------------------------------------------------------------


def c4_spider_specs(n: int) -> list[SpiderSpec]:
    """Spiders in ``N(u)``: ``m - 1`` copies of ``S_{1,2,2}`` and one residual.

    ``m = (n - 1) // 6``; the residual spider takes the remaining
    ``r = (n - 1) - 6(m - 1)`` vertices (``6 <= r <= 11``) with legs
    ``(1, ceil((r - 2) / 2), floor((r - 2) / 2))``.
    """
    if n < 7:
        raise ConstructionError("the C4 construction needs n >= 7")
    m = (n - 1) // 6
    r = (n - 1) - 6 * (m - 1)
    specs = [SpiderSpec((1, 2, 2)) for _ in range(m - 1)]
    specs.append(SpiderSpec((1, -(-(r - 2) // 2), (r - 2) // 2)))
    return specs


def c4_edge_count(n: int) -> int:
    return 2 * (n - 1) - (n - 1) // 6


def _spider_edges(spec: SpiderSpec, first: int) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """Edges of a spider whose centre is ``first``; legs listed outward."""
    centre = first
    nxt = first + 1
    edges = []
    legs = []
    for length in spec.leg_lengths:
        prev = centre
        leg = []
        for _ in range(length):
            edges.append((prev, nxt))
            leg.append(nxt)
            prev = nxt
            nxt += 1
        legs.append(leg)
    return edges, legs


def _s122_coloring(u: int, centre: int, legs: list[list[int]]) -> dict[tuple[int, int], int]:
    """The printed coloring of ``u`` plus one ``S_{1,2,2}``, colors 1..6."""
    (a1,), (b1, b2), (d1, d2) = legs
    return {
        (u, b2): 1,
        (u, b1): 2,
        (u, centre): 3,
        (u, a1): 4,
        (u, d1): 5,
        (u, d2): 6,
        (centre, a1): 2,
        (b2, b1): 3,
        (b1, centre): 5,
        (centre, d1): 4,
        (d1, d2): 3,
    }


def _solve_component(u: int, verts: list[int], edges: list[tuple[int, int]]) -> dict[tuple[int, int], int]:
    from .colorer import Status, find_rainbow_free_coloring

    local = {v: i + 1 for i, v in enumerate(verts)}
    local[u] = 0
    back = {i: v for v, i in local.items()}
    sub = Graph.from_edges(len(local), [(0, local[v]) for v in verts] + [(local[a], local[b]) for a, b in edges])
    verdict = find_rainbow_free_coloring(sub, 4)
    if verdict.status is not Status.FEASIBLE:
        raise ConstructionError("residual spider has no rainbow-C4-free coloring")
    return {(back[a], back[b]): c + 1 for (a, b), c in zip(sub.edges, verdict.witness.colors)}


def build_c4_construction(n: int) -> ConstructionResult:
    """Universal vertex ``u = 0`` over a disjoint union of spiders."""
    specs = c4_spider_specs(n)
    u = 0
    roles = {u: "universal"}
    edges: list[tuple[int, int]] = []
    coloring: dict[tuple[int, int], int] = {}
    nxt = 1
    stride = 0
    for idx, spec in enumerate(specs):
        sp_edges, legs = _spider_edges(spec, nxt)
        verts = list(range(nxt, nxt + spec.num_vertices))
        roles[nxt] = f"spider{idx}-centre"
        for li, leg in enumerate(legs):
            for depth, v in enumerate(leg, start=1):
                roles[v] = f"spider{idx}-leg{li}-{depth}"
        edges += [(u, v) for v in verts] + sp_edges
        if spec.leg_lengths == (1, 2, 2):
            local = _s122_coloring(u, nxt, legs)
        else:
            local = _solve_component(u, verts, sp_edges)
        width = max(local.values())
        for e, c in local.items():
            coloring[e] = c + stride
        stride += width
        nxt += spec.num_vertices
    g = Graph.from_edges(n, edges)
    witness = EdgeColoring.from_map(g, coloring)
    return ConstructionResult(g, roles, 4, witness, f"C4(n={n})", {"spiders": [s.leg_lengths for s in specs]})


# -- C5 -----------------------------------------------------------------------


def c5_edge_count(n: int) -> int:
    return 5 * n // 2 - 4


def build_c5_construction(n: int) -> ConstructionResult:
    """Universal ``u = 0``, ``v = 1``; matching ``x_i y_i`` on the rest.

    Vertices ``x_i = 2i``, ``y_i = 2i + 1`` for ``i >= 1``; for odd ``n``
    the last vertex is the unmatched ``z``.
    """
    if n < 8:
        raise ConstructionError("the C5 construction needs n >= 8")
    u, v = 0, 1
    roles = {u: "universal-u", v: "universal-v"}
    coloring: dict[tuple[int, int], int] = {(u, v): 0}
    pairs = (n - 2) // 2
    for i in range(1, pairs + 1):
        x, y = 2 * i, 2 * i + 1
        roles[x] = f"matching-x{i}"
        roles[y] = f"matching-y{i}"
        coloring[(u, x)] = coloring[(v, y)] = 2 * i - 1
        coloring[(u, y)] = coloring[(v, x)] = 2 * i
        coloring[(x, y)] = 0
    if n % 2:
        z = n - 1
        roles[z] = "extra-z"
        coloring[(u, z)] = n - 2
        coloring[(v, z)] = n - 1
    g = Graph.from_edges(n, coloring)
    return ConstructionResult(g, roles, 5, EdgeColoring.from_map(g, coloring), f"C5(n={n})")


# -- C6 -----------------------------------------------------------------------

# v1..v8 are vertices 0..7
CORE_MISSING = ((0, 2), (1, 7), (3, 5), (4, 6))

# six perfect matchings of the core, colors 0..5 (vertex labels 1-based)
_CORE_COLORS_1BASED = {
    0: [(2, 3), (1, 8), (5, 4), (6, 7)],
    1: [(2, 7), (1, 4), (8, 5), (3, 6)],
    2: [(2, 6), (1, 5), (7, 3), (8, 4)],
    3: [(2, 1), (6, 5), (8, 3), (7, 4)],
    4: [(2, 5), (1, 6), (7, 8), (3, 4)],
    5: [(5, 3), (6, 8), (2, 4), (1, 7)],
}


def core_coloring() -> dict[tuple[int, int], int]:
    return {
        (min(a, b) - 1, max(a, b) - 1): c
        for c, pairs in _CORE_COLORS_1BASED.items()
        for a, b in pairs
    }


def core_graph() -> Graph:
    return Graph.from_edges(8, [e for e in itertools.combinations(range(8), 2) if e not in CORE_MISSING])


def _c6_build(triangles: int, extras: int) -> ConstructionResult:
    v1, v2, v3 = 0, 1, 2
    roles = {i: f"core-v{i + 1}" for i in range(8)}
    coloring = core_coloring()
    nxt = 8
    for i in range(1, triangles + 1):
        x, y, z = nxt, nxt + 1, nxt + 2
        nxt += 3
        roles.update({x: f"T{i}-x", y: f"T{i}-y", z: f"T{i}-z"})
        coloring[(v1, x)] = 3 + 3 * i
        coloring[(v1, y)] = 4 + 3 * i
        coloring[(v2, z)] = 3 + 3 * i
        coloring[(v3, y)] = 3 + 3 * i
        coloring[(y, z)] = 0
        coloring[(x, z)] = 4 + 3 * i
        coloring[(x, y)] = 5 + 3 * i
    fresh = 6 + 3 * triangles
    if extras == 1:
        s = nxt
        roles[s] = "extra-s"
        coloring[(v1, s)] = fresh
        coloring[(v3, s)] = fresh + 1
        nxt += 1
    elif extras == 2:
        s, t = nxt, nxt + 1
        roles[s] = "extra-s"
        roles[t] = "extra-t"
        coloring[(v1, s)] = coloring[(v3, t)] = fresh
        coloring[(v1, t)] = coloring[(v3, s)] = fresh + 1
        coloring[(s, t)] = fresh + 2
        nxt += 2
    g = Graph.from_edges(nxt, coloring)
    return ConstructionResult(g, roles, 6, EdgeColoring.from_map(g, coloring))


def c6_layout(n: int) -> tuple[int, int]:
    """``(triangles, extra vertices)`` for ``n`` vertices.

    ``n = 8 + 3t + e`` with ``e = (n - 2) mod 3``, so ``n - e`` is 2 mod 3.
    """
    if n < 14:
        raise ConstructionError("the C6 construction needs n >= 14")
    extras = (n - 2) % 3
    return (n - 8 - extras) // 3, extras


def c6_edge_count(n: int) -> int:
    t, extras = c6_layout(n)
    return 24 + 7 * t + {0: 0, 1: 2, 2: 5}[extras]


def build_c6_construction(n: int) -> ConstructionResult:
    t, extras = c6_layout(n)
    res = _c6_build(t, extras)
    res.name = f"C6(n={n})"
    return res


FIXTURES = ("core", "core+T1", "H", "F")


def build_named_fixture(name: str) -> ConstructionResult:
    """The four graphs behind the C6 computer check."""
    layouts = {"core": (0, 0), "core+T1": (1, 0), "H": (2, 0), "F": (1, 1)}
    if name not in layouts:
        raise ConstructionError(f"unknown fixture {name!r}; expected one of {', '.join(FIXTURES)}")
    res = _c6_build(*layouts[name])
    res.name = name
    return res


def build_construction(target: str, n: int) -> ConstructionResult:
    builders = {"c4": build_c4_construction, "c5": build_c5_construction, "c6": build_c6_construction}
    try:
        builder = builders[target.lower()]
    except KeyError:
        raise ConstructionError(f"unknown target {target!r}; expected c4, c5 or c6") from None
    return builder(n)

"""Simple undirected graphs, graph6 I/O, cycle enumeration and structure probes."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class Graph6Error(ValueError):
    """Raised for malformed graph6 input; ``offset`` is the offending byte index."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` with ``u < v`` in strictly increasing
    lexicographic order. That order is the canonical edge order: edge
    indices everywhere in the package refer to positions in ``edges``.
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise ValueError(f"invalid edge {e} for n={self.n}")
            if prev is not None and e <= prev:
                raise ValueError("edges must be strictly increasing (no duplicates)")
            prev = e

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from an arbitrary edge iterable, normalising order."""
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            norm.add((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(norm)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, n: int) -> "Graph":
        """Star with centre 0 and ``n - 1`` leaves."""
        return cls(n, tuple((0, i) for i in range(1, n)))

    # -- basic structure -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident to each vertex."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj_mask[u] >> v & 1)

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[(min(u, v), max(u, v))]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def non_edges(self) -> list[Edge]:
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if not self.adj_mask[u] >> v & 1
        ]

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v or self.has_edge(u, v):
            raise ValueError(f"cannot add edge ({u}, {v})")
        return Graph.from_edges(self.n, [*self.edges, (u, v)])

    def remove_edges(self, drop: Iterable[int]) -> "Graph":
        gone = set(drop)
        return Graph(self.n, tuple(e for i, e in enumerate(self.edges) if i not in gone))

    def edge_subgraph(self, keep: Iterable[int]) -> "Graph":
        """Spanning subgraph on the given edge indices."""
        kept = sorted(set(keep))
        return Graph(self.n, tuple(self.edges[i] for i in kept))

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` plus the label map back."""
        verts = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(verts)}
        sub = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph.from_edges(len(verts), sub), verts

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def distances_from(self, s: int) -> list[float]:
        dist = [math.inf] * self.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if dist[y] == math.inf:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def is_connected(self) -> bool:
        return self.n <= 1 or all(d < math.inf for d in self.distances_from(0))

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)


# -- graph6 ---------------------------------------------------------------


def _bits_upper_triangle(g: Graph) -> Iterator[int]:
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    for v in range(1, g.n):
        row = g.adj_mask[v]
        for u in range(v):
            yield row >> u & 1


def to_graph6(g: Graph) -> str:
    """Encode ``g`` in the short graph6 form (``n <= 62``)."""
    if g.n > 62:
        raise ValueError("short graph6 form supports n <= 62")
    out = [chr(63 + g.n)]
    bits = list(_bits_upper_triangle(g))
    bits += [0] * (-len(bits) % 6)
    for i in range(0, len(bits), 6):
        chunk = 0
        for b in bits[i : i + 6]:
            chunk = chunk << 1 | b
        out.append(chr(63 + chunk))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode a short-form graph6 string (optional trailing newline allowed)."""
    s = text.rstrip("\r\n")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside the graph6 range 63..126", i)
    head = ord(s[0]) - 63
    if head == 63:
        raise Graph6Error("long-form header (n > 62) is not supported", 0)
    n = head
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = s[1:]
    if len(body) < nbytes:
        raise Graph6Error(f"truncated bit vector: expected {nbytes} data bytes, got {len(body)}", len(s))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after bit vector", 1 + nbytes)
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((u, v))
            k += 1
    if nbits % 6 and nbytes:
        pad = (ord(body[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("non-zero padding bits", nbytes)
    return Graph.from_edges(n, edges)


# -- cycles -----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CycleEmbedding:
    """A k-cycle given by its vertex sequence in canonical form.

    Canonical form starts at the smallest vertex and its second entry is
    smaller than its last, i.e. the lexicographic minimum over all
    rotations and both orientations.
    """

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...] = field(default=(), compare=False)

    @property
    def length(self) -> int:
        return len(self.vertices)

    @staticmethod
    def canonical(seq: Sequence[int]) -> tuple[int, ...]:
        k = len(seq)
        i = min(range(k), key=seq.__getitem__)
        fwd = tuple(seq[(i + j) % k] for j in range(k))
        bwd = tuple(seq[(i - j) % k] for j in range(k))
        return min(fwd, bwd)


def _cycle_edge_ids(g: Graph, verts: Sequence[int]) -> tuple[int, ...]:
    k = len(verts)
    return tuple(g.edge_id(verts[i], verts[(i + 1) % k]) for i in range(k))


def iter_cycles(g: Graph, k: int) -> Iterator[tuple[int, ...]]:
    """Lazily yield each ``C_k`` copy once as a canonical vertex tuple.

    The smallest vertex comes first and the second vertex is smaller than
    the last, so every copy appears exactly once.
    """
    if k < 3 or k > g.n:
        return
    adj = g.adj_mask
    for s in range(g.n):
        higher = ~((1 << (s + 1)) - 1)
        stack = [(s, 1 << s, (s,))]
        while stack:
            last, used, path = stack.pop()
            if len(path) == k:
                if adj[last] >> s & 1 and path[1] < path[-1]:
                    yield path
                continue
            cand = adj[last] & ~used & higher
            nxt = []
            while cand:
                low = cand & -cand
                cand ^= low
                nxt.append(low.bit_length() - 1)
            for w in reversed(nxt):
                stack.append((w, used | 1 << w, path + (w,)))


def enumerate_cycles(g: Graph, k: int) -> list[CycleEmbedding]:
    """Every copy of ``C_k`` in ``g`` exactly once, in lexicographic order."""
    found = [CycleEmbedding(p, _cycle_edge_ids(g, p)) for p in iter_cycles(g, k)]
    found.sort()
    return found


def cycle_edge_sets(g: Graph, k: int) -> list[tuple[int, ...]]:
    """Edge-index tuples of every ``C_k`` copy (in cyclic order)."""
    return [c.edge_ids for c in enumerate_cycles(g, k)]


# -- structure probes --------------------------------------------------------


@dataclass(frozen=True)
class StructureProbes:
    max_common_neighbors: int
    diameter: float
    degree_one_count: int


def structure_probes(g: Graph) -> StructureProbes:
    common = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            common = max(common, (g.adj_mask[u] & g.adj_mask[v]).bit_count())
    diam: float = 0
    for s in range(g.n):
        diam = max(diam, max(g.distances_from(s), default=0))
    deg1 = sum(1 for v in range(g.n) if len(g.adj[v]) == 1)
    return StructureProbes(common, diam, deg1)

"""Edge colorings and the rainbow-freeness check."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .graph import CycleEmbedding, Graph, iter_cycles


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeColoring:
    """Color ids indexed by canonical edge index."""

    colors: tuple[int, ...]

    @classmethod
    def from_map(cls, g: Graph, by_edge: Mapping[tuple[int, int], int]) -> "EdgeColoring":
        """Build from ``{(u, v): color}``; endpoints may be given in any order."""
        norm = {(min(u, v), max(u, v)): c for (u, v), c in by_edge.items()}
        missing = [e for e in g.edges if e not in norm]
        if missing:
            raise ColoringError(f"coloring not total: missing {missing[:3]}")
        extra = set(norm) - set(g.edges)
        if extra:
            raise ColoringError(f"colored pairs that are not edges: {sorted(extra)[:3]}")
        return cls(tuple(norm[e] for e in g.edges))

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, i: int) -> int:
        return self.colors[i]

    def num_colors(self) -> int:
        return len(set(self.colors))

    def normalized(self) -> "EdgeColoring":
        """Rename colors to ``0, 1, ...`` in order of first appearance."""
        names: dict[int, int] = {}
        return EdgeColoring(tuple(names.setdefault(c, len(names)) for c in self.colors))

    def as_edge_map(self, g: Graph) -> dict[tuple[int, int], int]:
        return dict(zip(g.edges, self.colors))

    def to_json(self) -> dict[str, int]:
        return {str(i): c for i, c in enumerate(self.colors)}

    @classmethod
    def from_json(cls, data: Mapping[str, int] | Sequence[int]) -> "EdgeColoring":
        if isinstance(data, Mapping):
            idx = sorted(int(k) for k in data)
            if idx != list(range(len(idx))):
                raise ColoringError("edge indices must be exactly 0..m-1")
            return cls(tuple(int(data[str(i)]) for i in idx))
        return cls(tuple(int(c) for c in data))


def _check_total(g: Graph, coloring: EdgeColoring) -> None:
    if len(coloring) != g.m:
        raise ColoringError(f"coloring has {len(coloring)} entries for {g.m} edges")


def improper_pairs(g: Graph, coloring: EdgeColoring) -> list[tuple[int, int]]:
    """Pairs of incident edge indices sharing a color."""
    _check_total(g, coloring)
    bad = []
    for inc in g.incident:
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                if coloring[inc[a]] == coloring[inc[b]]:
                    bad.append((inc[a], inc[b]))
    return bad


def is_proper(g: Graph, coloring: EdgeColoring) -> bool:
    return not improper_pairs(g, coloring)


@dataclass(frozen=True)
class RainbowCheck:
    rainbow_free: bool
    proper: bool
    violations: tuple[CycleEmbedding, ...]

    def __bool__(self) -> bool:
        return self.rainbow_free


def is_rainbow_free(
    g: Graph,
    coloring: EdgeColoring,
    k: int,
    cycles: Sequence[CycleEmbedding] | None = None,
) -> RainbowCheck:
    """Check that no ``C_k`` copy receives ``k`` pairwise distinct colors.

    Properness is reported separately; rainbow-freeness is evaluated
    regardless. Truthiness of the result is the rainbow-free flag.
    """
    _check_total(g, coloring)
    if cycles is not None:
        bad = tuple(c for c in cycles if len({coloring[i] for i in c.edge_ids}) == len(c.edge_ids))
        return RainbowCheck(not bad, is_proper(g, coloring), bad)
    color_of = {}
    for (u, v), c in zip(g.edges, coloring.colors):
        color_of[u, v] = color_of[v, u] = c
    found = []
    for cyc in iter_cycles(g, k):
        cols = {color_of[cyc[i - 1], cyc[i]] for i in range(k)}
        if len(cols) == k:
            found.append(CycleEmbedding(cyc, tuple(g.edge_id(cyc[i], cyc[(i + 1) % k]) for i in range(k))))
    found.sort()
    return RainbowCheck(not found, is_proper(g, coloring), tuple(found))


def verify_witness(g: Graph, coloring: EdgeColoring, k: int) -> bool:
    """True iff ``coloring`` is proper and has no rainbow ``C_k``."""
    check = is_rainbow_free(g, coloring, k)
    return check.proper and check.rainbow_free

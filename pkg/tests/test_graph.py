import itertools
import math

import networkx as nx
import pytest

from rainbowsat.graph import (
    CycleEmbedding,
    Graph,
    Graph6Error,
    enumerate_cycles,
    parse_graph6,
    structure_probes,
    to_graph6,
)


def nx_graph(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def brute_cycles(g: Graph, k: int) -> set[frozenset]:
    """Each C_k as its edge set, found by trying every vertex sequence."""
    found = set()
    for seq in itertools.permutations(range(g.n), k):
        if all(g.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k)):
            found.add(frozenset(frozenset((seq[i], seq[(i + 1) % k])) for i in range(k)))
    return found


def test_edges_are_normalised():
    g = Graph.from_edges(4, [(3, 0), (1, 0), (2, 1), (0, 1)])
    assert g.edges == ((0, 1), (0, 3), (1, 2))
    assert g.edge_id(3, 0) == 1


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(ValueError):
        Graph.from_edges(3, edges)


def test_unsorted_edges_rejected():
    with pytest.raises(ValueError):
        Graph(3, ((1, 2), (0, 1)))


def test_graph6_known_strings():
    assert parse_graph6("C~") == Graph.complete(4)
    assert parse_graph6("D??") == Graph(5)
    assert to_graph6(Graph.complete(4)) == "C~"
    assert to_graph6(Graph(5)) == "D??"
    assert parse_graph6(">>graph6<<C~\n") == Graph.complete(4)


@pytest.mark.parametrize("seed", range(20))
def test_graph6_matches_networkx(seed):
    h = nx.gnp_random_graph(3 + seed % 12, 0.4, seed=seed)
    g = Graph.from_edges(h.number_of_nodes(), h.edges())
    ours = to_graph6(g)
    assert ours == nx.to_graph6_bytes(h, header=False).decode().strip()
    assert parse_graph6(ours) == g


@pytest.mark.parametrize(
    "text, offset",
    [("", 0), ("C~~", 2), ("D?", 2), ("C\x20", 1), ("~??", 0), ("Bx", 1)],
)
def test_graph6_errors_carry_offsets(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_k4_has_three_four_cycles(k4):
    cycles = enumerate_cycles(k4, 4)
    assert [c.vertices for c in cycles] == [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)]
    for c in cycles:
        assert sorted(c.edge_ids) == sorted(
            k4.edge_id(c.vertices[i], c.vertices[(i + 1) % 4]) for i in range(4)
        )


@pytest.mark.parametrize("seed", range(15))
@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_cycles_match_brute_force(seed, k):
    h = nx.gnp_random_graph(7, 0.5, seed=seed)
    g = Graph.from_edges(7, h.edges())
    ours = {frozenset(frozenset(g.edges[e]) for e in c.edge_ids) for c in enumerate_cycles(g, k)}
    assert ours == brute_cycles(g, k)
    assert len(enumerate_cycles(g, k)) == len(ours)


def test_cycle_count_matches_networkx():
    h = nx.complete_graph(7)
    g = Graph.complete(7)
    expected = sum(1 for c in nx.simple_cycles(h, length_bound=6) if len(c) == 6)
    assert len(enumerate_cycles(g, 6)) == expected == math.perm(7, 6) // 12


def test_canonical_cycle_form():
    assert CycleEmbedding.canonical((3, 1, 4, 2)) == (1, 3, 2, 4)


def test_structure_probes():
    p = structure_probes(Graph.star(6))
    assert (p.max_common_neighbors, p.diameter, p.degree_one_count) == (1, 2, 5)
    assert structure_probes(Graph(2)).diameter == math.inf


def test_induced_and_relabel():
    g = Graph.cycle(5)
    sub, labels = g.induced([0, 1, 2])
    assert sub.edges == ((0, 1), (1, 2)) and labels == [0, 1, 2]
    assert nx.is_isomorphic(nx_graph(g.relabel([4, 0, 3, 1, 2])), nx_graph(g))

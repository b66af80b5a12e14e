import itertools
import random

import pytest

from cvtcensus.canon import (
    are_isomorphic,
    canonical_form,
    canonicalize,
    graph_automorphisms,
    isomorphism,
)
from cvtcensus.graphs import Graph, all_connected_cubic_graphs, ladder, truncation
from cvtcensus.perm import is_identity


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def cube() -> Graph:
    return ladder(4, "circular")


def shuffle_graph(g: Graph, rng) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(tuple(perm))


def test_canonical_invariance_under_relabelling():
    rng = random.Random(7)
    graphs = [
        petersen(),
        cube(),
        ladder(5, "moebius"),
        truncation(petersen()),
        Graph(6, [(0, 1), (1, 2), (3, 4)]),
        Graph(1, []),
    ]
    for g in graphs:
        base = canonical_form(g)
        for _ in range(20):
            assert canonical_form(shuffle_graph(g, rng)) == base


def test_aut_orders_known_graphs():
    k4 = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    k33 = Graph(6, [(i, 3 + j) for i in range(3) for j in range(3)])
    cases = [
        (petersen(), 120),
        (k4, 24),
        (c5, 10),
        (k33, 72),
        (cube(), 48),
        (truncation(k4), 24),
    ]
    for g, order in cases:
        assert canonicalize(g).aut_order == order


def test_automorphisms_are_valid():
    from cvtcensus.graphs import is_automorphism

    g = truncation(petersen())
    gens, order = graph_automorphisms(g)
    assert gens and order == 120
    for p in gens:
        assert is_automorphism(g, p)


def test_isomorphism_explicit_map():
    rng = random.Random(3)
    g = petersen()
    h = shuffle_graph(g, rng)
    assert are_isomorphic(g, h)
    phi = isomorphism(g, h)
    assert phi is not None
    assert g.relabel(phi) == h
    assert isomorphism(g, cube()) is None


def test_diamond_aut_group():
    # C4 plus one diagonal: swap of the degree-2 pair times swap of the
    # degree-3 pair, Klein group
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    res = canonicalize(g)
    assert res.aut_order == 4
    for p in res.aut_generators:
        assert not is_identity(p)


def _brute_iso(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count() != b.edge_count():
        return False
    ea = set(a.edges())
    for p in itertools.permutations(range(a.n)):
        if all((min(p[u], p[v]), max(p[u], p[v])) in ea for u, v in b.edges()):
            return True
    return False


def test_isomorphism_agrees_with_brute_force_cubic_n8():
    gs = all_connected_cubic_graphs(8)
    assert len(gs) == 5
    for a, b in itertools.combinations(gs, 2):
        assert not are_isomorphic(a, b)
        assert not _brute_iso(a, b)
    rng = random.Random(9)
    for g in gs:
        h = shuffle_graph(g, rng)
        assert are_isomorphic(g, h) and _brute_iso(g, h)


def test_aut_order_matches_brute_force_small():
    rng = random.Random(4)
    for _ in range(15):
        n = rng.randrange(3, 8)
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5
        ]
        g = Graph(n, edges)
        es = set(g.edges())
        count = 0
        for p in itertools.permutations(range(n)):
            if all((min(p[u], p[v]), max(p[u], p[v])) in es for u, v in es):
                count += 1
        assert canonicalize(g).aut_order == count


def test_initial_cells_restrict_colour_classes():
    # a colouring that separates the two ladder orbits must still be invariant
    g = ladder(6, "circular")
    cells = [list(range(12))]
    base = canonicalize(g, initial_cells=cells)
    assert base.aut_order == 24

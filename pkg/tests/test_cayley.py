import random

import pytest

from cvtcensus.canon import are_isomorphic, canonical_form
from cvtcensus.catalog import abelian, cyclic, extras, small14
from cvtcensus.cayley import (
    cayley_graph,
    cayley_graphs_for_group,
    connection_set_orbits,
    naive_cubic_cayley_forms,
)
from cvtcensus.graphs import Graph, ladder
from cvtcensus.groups import automorphism_group, cubic_cayley_filter
from cvtcensus.perm import PermGroup


def k4() -> Graph:
    return Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


def k33() -> Graph:
    return Graph(6, [(i, 3 + j) for i in range(3) for j in range(3)])


def test_cayley_graph_examples():
    z6 = cyclic(6)
    assert are_isomorphic(cayley_graph(z6, [1, 3, 5]), k33())
    assert are_isomorphic(cayley_graph(z6, [2, 3, 4]), ladder(3, "circular"))
    klein = abelian(2, 2)
    assert are_isomorphic(cayley_graph(klein, [1, 2, 3]), k4())


def test_cayley_graph_rejects_bad_sets():
    z6 = cyclic(6)
    with pytest.raises(ValueError, match="identity-free"):
        cayley_graph(z6, [0, 1, 5])
    with pytest.raises(ValueError, match="inverse-closed"):
        cayley_graph(z6, [1, 2, 3])


def test_cayley_graph_disconnected_when_not_generating():
    z6 = cyclic(6)
    g = cayley_graph(z6, [2, 4])  # even subgroup only
    assert not g.is_connected()


def test_connection_set_orbit_counts():
    assert len(connection_set_orbits(abelian(2, 2))) == 1
    assert len(connection_set_orbits(cyclic(6))) == 2
    assert connection_set_orbits(cyclic(3)) == []
    assert len(cayley_graphs_for_group(cyclic(4))) == 1
    assert cayley_graphs_for_group(abelian(3, 3)) == []


def test_cayley_graphs_for_group_z6():
    graphs = [g for _, g, _ in cayley_graphs_for_group(cyclic(6))]
    assert len(graphs) == 2
    forms = {canonical_form(g) for g in graphs}
    assert forms == {canonical_form(k33()), canonical_form(ladder(3, "circular"))}


def test_involution_count_structure():
    for g in small14():
        orders = g.element_orders()
        for S in connection_set_orbits(g):
            n_inv = sum(1 for s in S if orders[s] == 2)
            assert n_inv in (1, 3)


def test_emitted_graphs_are_cubic_vertex_transitive():
    for g in small14():
        for _, graph, S in cayley_graphs_for_group(g):
            assert graph.is_regular(3) and graph.is_connected()
            reg = PermGroup(
                [g.right_regular_perm(i) for i in g.generating_set()]
            )
            assert reg.order() == g.order and reg.is_transitive()
            from cvtcensus.graphs import is_automorphism

            for i in g.generating_set():
                assert is_automorphism(graph, g.right_regular_perm(i))


def test_twist_invariance():
    rng = random.Random(17)
    for g in small14():
        if g.order < 4:
            continue
        orbs = connection_set_orbits(g)
        if not orbs:
            continue
        auts, _ = automorphism_group(g)
        if not auts:
            continue
        ag = PermGroup(auts, degree=g.order)
        for S in orbs:
            base = canonical_form(cayley_graph(g, S))
            for _ in range(5):
                phi = ag.sample(rng)
                twisted = tuple(sorted(phi[s] for s in S))
                assert canonical_form(cayley_graph(g, twisted)) == base


def test_filter_false_implies_no_connection_sets():
    checked = 0
    for g in small14() + extras():
        if g.order > 24 or cubic_cayley_filter(g):
            continue
        assert connection_set_orbits(g) == []
        assert naive_cubic_cayley_forms(g) == set()
        checked += 1
    assert checked >= 2  # Z3xZ3 and Z3xZ6 at least


def test_orbit_dedup_loses_nothing_vs_naive():
    for g in small14() + extras():
        if g.order > 24:
            continue
        forms = {cf for cf, _, _ in cayley_graphs_for_group(g)}
        assert forms == naive_cubic_cayley_forms(g), g.label

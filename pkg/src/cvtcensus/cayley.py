"""Cayley graphs and enumeration of connection 3-sets up to Aut(G)."""

from __future__ import annotations

from itertools import combinations

from .canon import CanonicalForm, canonical_form
from .graphs import Graph
from .groups import FiniteGroup, automorphism_group, cubic_cayley_filter


def check_connection_set(G: FiniteGroup, S) -> frozenset[int]:
    S = frozenset(S)
    if 0 in S:
        raise ValueError("connection set must be identity-free")
    if any(G.inv(s) not in S for s in S):
        raise ValueError("connection set must be inverse-closed")
    return S


def cayley_graph(G: FiniteGroup, S) -> Graph:
    """Graph on the elements of G with u ~ v iff u * v^-1 in S."""
    S = check_connection_set(G, S)
    edges = [(v, G.mul(s, v)) for v in range(G.order) for s in S]
    g = Graph(G.order, edges)
    assert g.is_regular(len(S))
    assert g.is_connected() == G.generates(S)
    return g


def _inverse_closed_triples(G: FiniteGroup) -> list[tuple[int, int, int]]:
    orders = G.element_orders()
    invs = G.involutions()
    out = []
    for t1, t2, t3 in combinations(invs, 3):
        out.append((t1, t2, t3))
    for t in invs:
        for a in range(1, G.order):
            if orders[a] > 2 and a < G.inv(a):
                out.append(tuple(sorted((t, a, G.inv(a)))))
    return sorted(out)


def connection_set_orbits(G: FiniteGroup) -> list[tuple[int, int, int]]:
    """Generating inverse-closed identity-free 3-subsets, one per Aut orbit.

    Representatives are the lexicographically least sorted triples: candidates
    are scanned in ascending order, so the first unseen member of each orbit
    is its minimum.
    """
    cands = [S for S in _inverse_closed_triples(G) if G.generates(S)]
    if not cands:
        return []
    auts, _ = automorphism_group(G)
    seen: set[tuple[int, int, int]] = set()
    reps = []
    for c in cands:
        if c in seen:
            continue
        reps.append(c)
        orbit = {c}
        queue = [c]
        for x in queue:
            for a in auts:
                y = tuple(sorted(a[e] for e in x))
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        seen |= orbit
    return reps


def cayley_graphs_for_group(
    G: FiniteGroup,
) -> list[tuple[CanonicalForm, Graph, tuple[int, int, int]]]:
    """Connected cubic Cayley graphs on G, one per isomorphism class."""
    out: dict[CanonicalForm, tuple[CanonicalForm, Graph, tuple[int, int, int]]] = {}
    for S in connection_set_orbits(G):
        g = cayley_graph(G, S)
        cf = canonical_form(g)
        if cf not in out:
            out[cf] = (cf, g, S)
    return sorted(out.values(), key=lambda t: t[0])


def naive_cubic_cayley_forms(G: FiniteGroup) -> set[CanonicalForm]:
    """Oracle path: no Aut dedup, every valid 3-subset built and canonicalized."""
    forms = set()
    for S in combinations(range(1, G.order), 3):
        sset = set(S)
        if any(G.inv(s) not in sset for s in S):
            continue
        if not G.generates(S):
            continue
        forms.add(canonical_form(cayley_graph(G, S)))
    return forms

"""Symmetry classification: arc orbits, local actions, regular subgroups."""

from __future__ import annotations

from dataclasses import dataclass

from .canon import CanonicalForm, canonicalize
from .graphs import Graph, diameter, girth, has_hamilton_cycle, is_automorphism
from .groups import FiniteGroup, is_dihedral_group
from .perm import Perm, PermGroup, compose, identity, inverse

AUT_ELEMENTS_CAP = 1_000_000


@dataclass(frozen=True)
class ClassificationRecord:
    canonical: CanonicalForm
    order: int
    m_full: int
    is_cayley: bool
    is_grr: bool
    is_dihedrant: bool
    girth: int
    diameter: int
    hamiltonian: bool


@dataclass
class RegularSearchResult:
    group: FiniteGroup | None
    dihedrant: bool
    vertex_transitive: bool
    all_regular: list[list[Perm]]


def _checked_group(g: Graph, gens: list[Perm]) -> PermGroup:
    for p in gens:
        if not is_automorphism(g, p):
            raise ValueError("not an automorphism")
    return PermGroup(gens, degree=g.n)


def is_vertex_transitive(g: Graph, gens: list[Perm]) -> bool:
    return _checked_group(g, gens).is_transitive()


def arc_orbit_count(g: Graph, gens: list[Perm]) -> int:
    """Orbits of the generated group on ordered adjacent pairs."""
    if not g.is_regular(3):
        raise ValueError("graph is not cubic")
    group = _checked_group(g, gens)
    if not group.is_transitive():
        raise ValueError("group is not vertex-transitive")
    arcs = {(u, v) for u in range(g.n) for v in g.adj[u]}
    count = 0
    seen: set[tuple[int, int]] = set()
    for arc in sorted(arcs):
        if arc in seen:
            continue
        count += 1
        queue = [arc]
        seen.add(arc)
        for u, v in queue:
            for p in group.generators:
                img = (p[u], p[v])
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
    return count


def vertex_stabilizer_gens(g: Graph, gens: list[Perm], v: int) -> list[Perm]:
    return _checked_group(g, gens).stabilizer_gens(v)


def local_action(
    g: Graph, gens: list[Perm], v: int
) -> tuple[str, list[Perm]]:
    """Type of the stabilizer's action on the neighbours of v.

    Degree 3 answers: trivial, Z2 (swap two neighbours, fix one), Z3, S3.
    Degree 4 answers: Z2xZ2 (regular), Z4 (regular cyclic), D4 (order 8),
    or other.
    """
    group = _checked_group(g, gens)
    if not group.is_transitive():
        raise ValueError("group is not vertex-transitive")
    nbrs = list(g.adj[v])
    d = len(nbrs)
    if d not in (3, 4):
        raise ValueError("valency must be 3 or 4")
    stab = group.stabilizer_gens(v)
    pos = {u: i for i, u in enumerate(nbrs)}
    induced = []
    for s in stab:
        q = tuple(pos[s[u]] for u in nbrs)
        if q != tuple(range(d)):
            induced.append(q)
    local = PermGroup(induced, degree=d)
    order = local.order()
    if d == 3:
        label = {1: "trivial", 2: "Z2", 3: "Z3", 6: "S3"}.get(order, "other")
    else:
        if order == 8:
            label = "D4"
        elif order == 4 and local.is_transitive():
            has_4cycle = any(
                sorted(len(c) for c in _cycle_lengths(p)) == [4] for p in induced
            )
            label = "Z4" if has_4cycle else "Z2xZ2"
        else:
            label = "other"
    return label, stab


def _cycle_lengths(p: Perm) -> list[list[int]]:
    from .perm import cycles

    return cycles(p)


def regular_subgroup_search(g: Graph, cap: int = AUT_ELEMENTS_CAP) -> RegularSearchResult:
    """All subgroups of Aut(g) acting regularly on the vertices.

    A regular subgroup contains exactly one element per vertex u taking
    vertex 0 to u, so choosing that element for each still-uncovered vertex
    visits every regular subgroup along exactly one search path.
    """
    n = g.n
    res = canonicalize(g)
    aut = PermGroup(res.aut_generators, degree=n)
    if not aut.is_transitive():
        return RegularSearchResult(None, False, False, [])
    if res.aut_order > cap:
        raise ValueError("automorphism group too large")
    elements = aut.elements()
    ident = identity(n)
    by_image: dict[int, list[Perm]] = {u: [] for u in range(n)}
    for p in sorted(elements):
        if p == ident:
            continue
        if all(p[i] != i for i in range(n)):
            by_image[p[0]].append(p)

    fpf_ok: set[Perm] = {q for lst in by_image.values() for q in lst}
    found: list[list[Perm]] = []

    def close(base: set[Perm], new: Perm) -> set[Perm] | None:
        cur = set(base)
        cur.add(new)
        queue = [new]
        for p in queue:
            for q in list(cur):
                for r in (compose(p, q), compose(q, p)):
                    if r not in cur:
                        if r != ident and r not in fpf_ok:
                            return None
                        if len(cur) >= n:
                            return None
                        cur.add(r)
                        queue.append(r)
        return cur

    def extend(closure: set[Perm]) -> None:
        covered = {p[0] for p in closure}
        if len(covered) == n:
            found.append(sorted(closure))
            return
        u = min(set(range(n)) - covered)
        for p in by_image[u]:
            nxt = close(closure, p)
            if nxt is None or n % len(nxt):
                continue
            extend(nxt)

    extend({ident})

    groups = []
    for perms in found:
        ordered = [ident] + [p for p in perms if p != ident]
        groups.append(FiniteGroup(perms=ordered))
    dihedrant = any(is_dihedral_group(h) for h in groups)
    best = groups[0] if groups else None
    return RegularSearchResult(best, dihedrant, True, found)


def classify(g: Graph) -> ClassificationRecord:
    if not g.is_regular(3) or not g.is_connected():
        raise ValueError("expected a connected cubic graph")
    res = canonicalize(g)
    auts = res.aut_generators
    group = PermGroup(auts, degree=g.n)
    if not group.is_transitive():
        raise ValueError("graph is not vertex-transitive")
    m_full = arc_orbit_count(g, auts)
    search = regular_subgroup_search(g)
    return ClassificationRecord(
        canonical=res.form,
        order=g.n,
        m_full=m_full,
        is_cayley=search.group is not None,
        is_grr=res.aut_order == g.n,
        is_dihedrant=search.dihedrant,
        girth=int(girth(g)),
        diameter=diameter(g),
        hamiltonian=has_hamilton_cycle(g),
    )

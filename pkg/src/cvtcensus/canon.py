"""Canonical labelling by colour refinement plus individualization backtracking.

The canonical form of a graph is the lexicographically least adjacency
bit-string over the leaves of the refinement tree, serialized as graph6
bytes.  The search also collects graph automorphisms, which prune the tree
and give the automorphism group order by orbit counting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph, graph6_decode, graph6_encode, is_automorphism
from .perm import Perm, PermGroup, compose, inverse


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism-class key: graph6 bytes of the canonically labelled graph."""

    bytes: bytes

    def graph(self) -> Graph:
        return graph6_decode(self.bytes)

    def text(self) -> str:
        return self.bytes.decode("ascii")


@dataclass
class CanonicalResult:
    form: CanonicalForm
    labelling: Perm  # maps original vertex -> canonical position
    aut_generators: list[Perm] = field(default_factory=list)
    aut_order: int = 1


def refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Iterated neighbour-colour refinement to an equitable ordered partition."""
    colour = [0] * g.n
    for ci, cell in enumerate(cells):
        for v in cell:
            colour[v] = ci
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sigs: dict[tuple, list[int]] = {}
            for v in cell:
                counts: dict[int, int] = {}
                for w in g.adj[v]:
                    counts[colour[w]] = counts.get(colour[w], 0) + 1
                sig = tuple(sorted(counts.items()))
                sigs.setdefault(sig, []).append(v)
            if len(sigs) == 1:
                out.append(cell)
            else:
                changed = True
                for sig in sorted(sigs):
                    out.append(sigs[sig])
        cells = out
        if changed:
            for ci, cell in enumerate(cells):
                for v in cell:
                    colour[v] = ci
    return cells


def _leaf_code(g: Graph, order: list[int]) -> bytes:
    """Adjacency upper triangle under the labelling order[i] -> i, packed."""
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    bits = bytearray()
    acc = 0
    cnt = 0
    for j in range(1, g.n):
        vj = order[j]
        row = g.adj[vj]
        pj = set(row)
        for i in range(j):
            acc = (acc << 1) | (1 if order[i] in pj else 0)
            cnt += 1
            if cnt == 8:
                bits.append(acc)
                acc = 0
                cnt = 0
    if cnt:
        bits.append(acc << (8 - cnt))
    return bytes(bits)


def _target_cell(cells: list[list[int]]) -> int:
    best = -1
    for i, c in enumerate(cells):
        if len(c) > 1 and (best < 0 or len(c) < len(cells[best])):
            best = i
    return best


def canonicalize(g: Graph, initial_cells: list[list[int]] | None = None) -> CanonicalResult:
    n = g.n
    if n == 0:
        return CanonicalResult(CanonicalForm(graph6_encode(g)), ())
    if initial_cells is None:
        initial_cells = [list(range(n))]
    root = refine(g, initial_cells)

    best_code: bytes | None = None
    best_order: list[int] | None = None
    first_code: bytes | None = None
    first_order: list[int] | None = None
    autos: list[Perm] = []

    def record_leaf(order: list[int]) -> None:
        nonlocal best_code, best_order, first_code, first_order
        code = _leaf_code(g, order)
        if first_code is None:
            first_code = code
            first_order = list(order)
        if best_code is None or code < best_code:
            best_code = code
            best_order = list(order)
        for ref_code, ref_order in ((first_code, first_order), (best_code, best_order)):
            if code == ref_code and order != ref_order:
                # same labelled graph from two labellings: the composite is an
                # automorphism sending ref_order[i] to order[i]
                auto = [0] * n
                for i in range(n):
                    auto[ref_order[i]] = order[i]
                auto = tuple(auto)
                if not is_identity_perm(auto) and auto not in autos:
                    if is_automorphism(g, auto):
                        autos.append(auto)

    def descend(cells: list[list[int]], fixed: list[int]) -> None:
        ti = _target_cell(cells)
        if ti < 0:
            record_leaf([c[0] for c in cells])
            return
        cell = cells[ti]
        done: list[int] = []
        for v in cell:
            if done:
                stab = [a for a in autos if all(a[f] == f for f in fixed)]
                if stab:
                    orbit = set(done)
                    frontier = list(done)
                    while frontier:
                        x = frontier.pop()
                        for a in stab:
                            y = a[x]
                            if y not in orbit:
                                orbit.add(y)
                                frontier.append(y)
                    if v in orbit:
                        continue
            split = [[v]] + [[w for w in cell if w != v]]
            new_cells = cells[:ti] + split + cells[ti + 1 :]
            descend(refine(g, new_cells), fixed + [v])
            done.append(v)

    descend(root, [])
    assert best_order is not None
    labelling = [0] * n
    for i, v in enumerate(best_order):
        labelling[v] = i
    canon_graph = g.relabel(labelling)
    form = CanonicalForm(graph6_encode(canon_graph))
    order = PermGroup(autos, degree=n).order() if autos else 1
    return CanonicalResult(form, tuple(labelling), autos, order)


def is_identity_perm(p: Perm) -> bool:
    return all(p[i] == i for i in range(len(p)))


def canonical_form(g: Graph) -> CanonicalForm:
    return canonicalize(g).form


def graph_automorphisms(g: Graph) -> tuple[list[Perm], int]:
    res = canonicalize(g)
    return res.aut_generators, res.aut_order


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count() != b.edge_count():
        return False
    return canonical_form(a) == canonical_form(b)


def isomorphism(a: Graph, b: Graph) -> Perm | None:
    """An explicit vertex bijection a -> b, or None."""
    if a.n != b.n:
        return None
    ra = canonicalize(a)
    rb = canonicalize(b)
    if ra.form != rb.form:
        return None
    return compose(ra.labelling, inverse(rb.labelling))

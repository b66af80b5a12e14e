"""Coset graphs on finite groups and the universal-group presentation table.

Quotients of the tabulated presentations arrive as concrete permutation
groups with marked generator images; they are verified against the relators
rather than computed by coset enumeration.  Together with the regular-map
quadruples (three involutions x, y, a with x, y commuting) this yields the
tetravalent arc-transitive hosts whose cycle decompositions feed the
doubling construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .groups import FiniteGroup, group_from_generators
from .mergesplit import (
    CycleDecomposition,
    make_decomposition,
    normalize_cycle,
    validate_cycle_decomposition,
)
from .perm import Perm, PermGroup, format_cycles, pad, parse_cycles, perm_order

Word = tuple[str, ...]  # signed symbols: "a" or "a-" for the inverse

ORDER_CAP = 200_000


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]
    local_generator_names: tuple[str, ...]
    local_order: int

    @property
    def arc_generator_name(self) -> str:
        (name,) = [
            g for g in self.generator_names if g not in self.local_generator_names
        ]
        return name


def _sq(g: str) -> Word:
    return (g, g)


def _comm(u: str, v: str) -> Word:
    return (u + "-", v + "-", u, v)


def _conj(t: str, by: str, *rest: str) -> Word:
    return (by + "-", t, by) + rest


def word_str(w: Word) -> str:
    return " ".join(s[:-1] + "^-1" if s.endswith("-") else s for s in w)


def amalgam_table() -> list[Presentation]:
    """The eleven universal presentations, largest local part 32."""
    rows: list[Presentation] = [
        Presentation(("a", "y"), (("a", "a", "a", "a"), _sq("y")), ("a",), 4)
    ]
    for ysq in (_sq("y"), ("y", "y", "b")):
        rows.append(
            Presentation(
                ("a", "b", "x", "y"),
                (
                    _sq("a"),
                    _sq("b"),
                    _comm("a", "b"),
                    _sq("x"),
                    _conj("a", "x", "b"),
                    ysq,
                    _comm("y", "b"),
                ),
                ("a", "b", "x"),
                8,
            )
        )
    for ac in (_comm("a", "c"), _comm("a", "c") + ("b",)):
        for xsq in (_sq("x"), ("x", "x", "b")):
            rows.append(
                Presentation(
                    ("a", "b", "c", "x", "y"),
                    (
                        _sq("a"),
                        _sq("b"),
                        _sq("c"),
                        _comm("a", "b"),
                        ac,
                        _comm("b", "c"),
                        xsq,
                        _conj("a", "x", "c"),
                        _comm("x", "b"),
                        _conj("c", "x", "a"),
                        _sq("y"),
                        _conj("b", "y", "c"),
                    ),
                    ("a", "b", "c", "x"),
                    16,
                )
            )
    for ad in (_comm("a", "d"), _comm("a", "d") + ("b", "c")):
        for ysq in (_sq("y"), ("y", "y", "c")):
            rows.append(
                Presentation(
                    ("a", "b", "c", "d", "x", "y"),
                    (
                        _sq("a"),
                        _sq("b"),
                        _sq("c"),
                        _sq("d"),
                        _comm("a", "b"),
                        _comm("a", "c"),
                        _comm("b", "c"),
                        _comm("b", "d"),
                        _comm("c", "d"),
                        ad,
                        _sq("x"),
                        _conj("a", "x", "d"),
                        _conj("b", "x", "c"),
                        ysq,
                        _conj("b", "y", "d"),
                        _comm("c", "y"),
                        _conj("d", "y", "b"),
                    ),
                    ("a", "b", "c", "d", "x"),
                    32,
                )
            )
    assert [p.local_order for p in rows] == [4, 8, 8, 16, 16, 16, 16, 32, 32, 32, 32]
    return rows


def evaluate_word(G: FiniteGroup, images: dict[str, int], w: Word) -> int:
    acc = 0
    for sym in w:
        if sym.endswith("-"):
            e = G.inv(images[sym[:-1]])
        else:
            e = images[sym]
        acc = G.mul(acc, e)
    return acc


# ------------------------------------------------------------- coset graphs


@dataclass
class CosetGraphResult:
    graph: Graph
    cosets: list[tuple[int, ...]]
    coset_of: list[int]
    valency: int
    multiplicity: int

    @property
    def multi_edge(self) -> bool:
        return self.multiplicity > 1


def coset_graph(G: FiniteGroup, H_gens, a: int) -> CosetGraphResult:
    """Right cosets of <H_gens>, joined when left translation by a links them."""
    H = G.subgroup_closure(H_gens)
    hset = set(H)
    if a in hset:
        raise ValueError("arc element lies in the subgroup")
    hah = {G.mul(G.mul(h1, a), h2) for h1 in H for h2 in H}
    if G.inv(a) not in hah:
        raise ValueError("arc element is not inverse-symmetric over the subgroup")
    valency = len(hah) // len(H)
    multiplicity = len(H) * len(H) // len(hah)

    coset_of = [-1] * G.order
    cosets: list[tuple[int, ...]] = []
    for g in range(G.order):
        if coset_of[g] != -1:
            continue
        members = sorted(G.mul(h, g) for h in H)
        for m in members:
            coset_of[m] = len(cosets)
        cosets.append(tuple(members))

    edges = {
        tuple(sorted((coset_of[g], coset_of[G.mul(a, g)]))) for g in range(G.order)
    }
    graph = Graph(len(cosets), sorted(edges))
    assert graph.is_regular(valency), "valency must match the double-coset count"
    generated = G.generates(list(H_gens) + [a])
    assert graph.is_connected() == generated
    return CosetGraphResult(graph, cosets, coset_of, valency, multiplicity)


def right_action_gens(G: FiniteGroup, coset_of: list[int], elements) -> list[Perm]:
    n = max(coset_of) + 1
    out = []
    for t in elements:
        images = [-1] * n
        for g in range(G.order):
            images[coset_of[g]] = coset_of[G.mul(g, t)]
        out.append(tuple(images))
    return out


# ------------------------------------------------------------- regular maps


@dataclass
class RegularMapResult:
    graph: Graph
    gens: list[Perm]
    decompositions: tuple[CycleDecomposition, ...]
    coset: CosetGraphResult


def regular_map_pair(G: FiniteGroup, x: int, y: int, a: int) -> RegularMapResult:
    """Coset graph on the Klein group <x, y> with its three decompositions."""
    for name, e in (("x", x), ("y", y), ("a", a)):
        if e == 0 or G.mul(e, e) != 0:
            raise ValueError(f"relation {name}^2 = 1 fails")
    if G.mul(x, y) != G.mul(y, x):
        raise ValueError("relation [x, y] = 1 fails")
    if not G.generates([x, y, a]):
        raise ValueError("quadruple is not generating")
    H = G.subgroup_closure([x, y])
    if len(H) != 4:
        raise ValueError("x and y must span a Klein four-group")
    cos = coset_graph(G, [x, y], a)
    if cos.valency != 4 or cos.multiplicity != 1:
        raise ValueError(
            f"coset graph valency is {cos.valency} with multiplicity "
            f"{cos.multiplicity}, need a simple tetravalent graph"
        )
    gens = right_action_gens(G, cos.coset_of, [x, y, a])
    base = cos.coset_of[0]
    hset = set(H)
    decs = []
    for s in (G.mul(a, x), G.mul(a, y), G.mul(a, G.mul(x, y))):
        verts = [base]
        e = s
        while e not in hset:
            verts.append(cos.coset_of[e])
            e = G.mul(e, s)
        if len(verts) < 3:
            raise ValueError("orbit cycle has length < 3")
        seed = normalize_cycle(verts)
        orbit = {seed}
        queue = [seed]
        for c in queue:
            for p in gens:
                img = normalize_cycle([p[v] for v in c])
                if img not in orbit:
                    orbit.add(img)
                    queue.append(img)
        dec = make_decomposition(cos.graph.n, orbit)
        ok, why = validate_cycle_decomposition(cos.graph, dec)
        if not ok:
            raise ValueError(f"orbit cycles do not decompose the graph: {why}")
        decs.append(dec)
    return RegularMapResult(cos.graph, gens, tuple(decs), cos)


def klein_quadruple_from_pair(
    g: Graph, gens: list[Perm]
) -> tuple[FiniteGroup, int, int, int]:
    """Recover (G, x, y, a) from a tetravalent pair whose stabilizer is Klein."""
    G = group_from_generators(gens)
    stab = [i for i in range(G.order) if G.perms[i][0] == 0]
    if len(stab) != 4 or any(G.element_order(i) > 2 for i in stab):
        raise ValueError("vertex stabilizer is not a Klein four-group")
    x, y = [i for i in stab if i != 0][:2]
    u = min(v for v in g.adj[0])
    a = None
    for i in range(G.order):
        p = G.perms[i]
        if p[0] == u and p[u] == 0 and G.mul(i, i) == 0:
            a = i
            break
    if a is None:
        raise ValueError("no involution swaps the base arc")
    return G, x, y, a


# ------------------------------------------------------- quotient handling


@dataclass
class MarkedQuotient:
    row: int | None  # 1-based table row; None for a regular-map quadruple
    group: FiniteGroup
    images: dict[str, int]

    @property
    def is_regular_map(self) -> bool:
        return self.row is None


def quotient_from_perms(row: int | None, named: dict[str, Perm]) -> MarkedQuotient:
    degree = max(len(p) for p in named.values())
    padded = {name: pad(p, degree) for name, p in named.items()}
    group = group_from_generators(list(padded.values()))
    images = {name: group.perms.index(p) for name, p in padded.items()}
    return MarkedQuotient(row, group, images)


def verify_quotient(
    P: Presentation, Q: MarkedQuotient
) -> tuple[bool, str | None]:
    """Relators hold, images generate, and the local subgroup embeds."""
    for name in Q.images:
        if name not in P.generator_names:
            raise ValueError(f"unknown generator name {name!r}")
    for name in P.generator_names:
        if name not in Q.images:
            raise ValueError(f"missing image for generator {name!r}")
    G = Q.group
    for rel in P.relators:
        if evaluate_word(G, Q.images, rel) != 0:
            return False, f"relator {word_str(rel)} not satisfied"
    if not G.generates(list(Q.images.values())):
        return False, "images do not generate the group"
    local = G.subgroup_closure([Q.images[n] for n in P.local_generator_names])
    if len(local) != P.local_order:
        return False, (
            f"local subgroup has order {len(local)}, expected {P.local_order}"
        )
    return True, None


def quotient_graph_pair(
    P: Presentation, Q: MarkedQuotient
) -> tuple[CosetGraphResult, list[Perm]]:
    """Coset graph of a verified row quotient plus the right action of G."""
    ok, why = verify_quotient(P, Q)
    if not ok:
        raise ValueError(f"quotient fails verification: {why}")
    H_gens = [Q.images[n] for n in P.local_generator_names]
    a = Q.images[P.arc_generator_name]
    cos = coset_graph(Q.group, H_gens, a)
    gens = right_action_gens(
        Q.group, cos.coset_of, [Q.images[n] for n in P.generator_names]
    )
    return cos, gens


# ------------------------------------------------------------ order bounds


def element_order_bound_check(
    gens: list[Perm], n: int, p: int, cap: int = ORDER_CAP
) -> bool:
    """All element orders at most n, given p-group point stabilizers."""
    group = PermGroup(gens)
    if group.order() > cap:
        raise ValueError("group order exceeds cap")
    for v in range(group.degree):
        so = group.stabilizer_order(v)
        while so % p == 0:
            so //= p
        if so != 1:
            raise ValueError(f"stabilizer of point {v} is not a {p}-group")
    return all(perm_order(e) <= n for e in group.elements())


# ---------------------------------------------------------------- file IO


def format_quotients(quotients: list[MarkedQuotient]) -> str:
    chunks = []
    for q in quotients:
        head = "quotient regular-map" if q.row is None else f"quotient {q.row}"
        lines = [head]
        for name in sorted(q.images):
            lines.append(f"{name} = {format_cycles(q.group.perms[q.images[name]])}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def write_quotients(path, quotients: list[MarkedQuotient]) -> None:
    with open(path, "w") as fh:
        fh.write(format_quotients(quotients))


def parse_quotients_text(text: str) -> list[MarkedQuotient]:
    table = amalgam_table()
    out: list[MarkedQuotient] = []
    header: tuple[int | None, int] | None = None  # (row, line number)
    named: dict[str, Perm] = {}

    def finish() -> None:
        nonlocal header, named
        if header is None:
            return
        row, at = header
        expected = (
            ("x", "y", "a") if row is None else table[row - 1].generator_names
        )
        if set(named) != set(expected):
            raise ValueError(
                f"line {at}: stanza needs generators {sorted(expected)}, "
                f"got {sorted(named)}"
            )
        out.append(quotient_from_perms(row, named))
        header = None
        named = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            finish()
            continue
        if line.startswith("quotient"):
            finish()
            tok = line.split()
            if len(tok) != 2:
                raise ValueError(f"line {lineno}: bad quotient header")
            if tok[1] == "regular-map":
                header = (None, lineno)
            else:
                row = int(tok[1])
                if not 1 <= row <= len(table):
                    raise ValueError(f"line {lineno}: row {row} out of range")
                header = (row, lineno)
            continue
        if header is None:
            raise ValueError(f"line {lineno}: generator line outside a stanza")
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'name = cycles'")
        name, _, rhs = line.partition("=")
        name = name.strip()
        if not name or name in named:
            raise ValueError(f"line {lineno}: bad or repeated generator name")
        named[name] = parse_cycles(rhs.strip())
    finish()
    return out


def read_quotients(path) -> list[MarkedQuotient]:
    with open(path) as fh:
        return parse_quotients_text(fh.read())

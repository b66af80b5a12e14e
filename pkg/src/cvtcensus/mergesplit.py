"""Half-order tetravalent quotients of cubic pairs, and the inverse doubling.

A cubic vertex-transitive pair (graph, group) with two arc orbits has at each
vertex a unique stabilizer-fixed neighbour; the fixed pairs form a perfect
matching.  Contracting the matching yields a tetravalent arc-transitive
quotient together with a decomposition of its edges into cycles, and the
doubling construction below inverts that, unless two matched pairs are joined
by several edges, which happens exactly for the ladder graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canon import canonical_form
from .graphs import Graph, ladder
from .perm import Perm, PermGroup
from .transitivity import arc_orbit_count, local_action


class DegeneratePairError(ValueError):
    def __init__(self, kind: str, n: int):
        super().__init__(f"degenerate pair: {kind} ladder, parameter {n}")
        self.ladder_kind = kind
        self.ladder_n = n


@dataclass(frozen=True)
class CycleDecomposition:
    host_n: int
    cycles: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def cycle_edges(self, i: int) -> list[tuple[int, int]]:
        c = self.cycles[i]
        return [
            (min(c[k], c[(k + 1) % len(c)]), max(c[k], c[(k + 1) % len(c)]))
            for k in range(len(c))
        ]


def normalize_cycle(seq) -> tuple[int, ...]:
    """Rotate to start at the least vertex, directed toward its lesser neighbour."""
    seq = list(seq)
    if len(seq) < 3:
        raise ValueError("cycles need at least 3 vertices")
    i = seq.index(min(seq))
    seq = seq[i:] + seq[:i]
    if seq[-1] < seq[1]:
        seq = [seq[0]] + seq[:0:-1]
    return tuple(seq)


def make_decomposition(host_n: int, cycles) -> CycleDecomposition:
    normalized = sorted(normalize_cycle(c) for c in cycles)
    return CycleDecomposition(host_n, tuple(normalized))


def validate_cycle_decomposition(
    g: Graph, dec: CycleDecomposition
) -> tuple[bool, str | None]:
    """Each listed cycle simple and real; each edge on exactly one cycle."""
    if dec.host_n != g.n:
        return False, f"decomposition is over {dec.host_n} vertices, graph has {g.n}"
    covered: dict[tuple[int, int], int] = {}
    for c in dec.cycles:
        if len(set(c)) != len(c):
            return False, f"cycle {c} repeats a vertex"
        for k in range(len(c)):
            u, v = c[k], c[(k + 1) % len(c)]
            if not g.has_edge(u, v):
                return False, f"({u}, {v}) is not an edge"
            e = (min(u, v), max(u, v))
            if e in covered:
                return False, f"edge {e} covered twice"
            covered[e] = 1
    for u, v in g.edges():
        if (u, v) not in covered:
            return False, f"edge ({u}, {v}) uncovered"
    return True, None


# ------------------------------------------------------------------ file IO


def format_cycles_file(dec: CycleDecomposition) -> str:
    lines = [f"cycles {len(dec.cycles)} over {dec.host_n}"]
    lines += [" ".join(str(v) for v in c) for c in dec.cycles]
    return "\n".join(lines) + "\n"


def parse_cycles_file(text: str) -> CycleDecomposition:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty cycles file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "cycles" or head[2] != "over":
        raise ValueError(f"bad header {lines[0]!r}")
    k, n = int(head[1]), int(head[3])
    if len(lines) - 1 != k:
        raise ValueError(f"expected {k} cycles, found {len(lines) - 1}")
    cycles = []
    for ln in lines[1:]:
        c = [int(tok) for tok in ln.split()]
        if any(v < 0 or v >= n for v in c):
            raise ValueError(f"vertex out of range in {ln!r}")
        cycles.append(c)
    return make_decomposition(n, cycles)


def read_cycles_file(path) -> CycleDecomposition:
    with open(path) as fh:
        return parse_cycles_file(fh.read())


# ------------------------------------------------------------ partner logic


def _pair_group(g: Graph, gens: list[Perm]) -> PermGroup:
    m = arc_orbit_count(g, gens)  # validates cubic + automorphisms + transitive
    if m != 2:
        raise ValueError(
            f"not locally-Z2: group has {m} arc orbit{'s' if m > 1 else ''}"
        )
    return PermGroup(gens, degree=g.n)


def partner_map(g: Graph, gens: list[Perm]) -> list[int]:
    """For each vertex, its unique stabilizer-fixed neighbour."""
    group = _pair_group(g, gens)
    stab = group.stabilizer_gens(0)
    fixed = [u for u in g.adj[0] if all(s[u] == u for s in stab)]
    if len(fixed) != 1:
        raise ValueError("not locally-Z2: stabilizer fixes != 1 neighbour")
    f0 = fixed[0]
    tr = group.transversal(0)
    partner = [tr[v][f0] for v in range(g.n)]
    for v in range(g.n):
        if partner[partner[v]] != v or partner[v] == v:
            raise ValueError("partner relation is not a perfect matching")
        if not g.has_edge(v, partner[v]):
            raise ValueError("partner is not a neighbour")
    return partner


@dataclass(frozen=True)
class DegeneracyResult:
    degenerate: bool
    ladder_kind: str | None = None
    ladder_n: int | None = None


def _match_ladder(g: Graph) -> tuple[str, int] | None:
    if g.n % 2:
        return None
    k = g.n // 2
    form = canonical_form(g)
    if k >= 3 and canonical_form(ladder(k, "circular")) == form:
        return "circular", k
    if k >= 2 and canonical_form(ladder(k, "moebius")) == form:
        return "moebius", k
    return None


def is_degenerate(g: Graph, gens: list[Perm]) -> DegeneracyResult:
    """Does some matched pair see another through more than one edge?

    Arc-transitive input (one arc orbit) has no matching to test; it is
    accepted only when it is a ladder, the case a degenerate pair always
    collapses to.
    """
    m = arc_orbit_count(g, gens)
    if m == 1:
        hit = _match_ladder(g)
        if hit is None:
            raise ValueError("not locally-Z2: group is arc-transitive")
        return DegeneracyResult(True, hit[0], hit[1])
    partner = partner_map(g, gens)
    pair_id = _pair_ids(partner)
    counts: dict[tuple[int, int], int] = {}
    for u, v in g.edges():
        a, b = pair_id[u], pair_id[v]
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        counts[key] = counts.get(key, 0) + 1
    if all(c == 1 for c in counts.values()):
        return DegeneracyResult(False)
    hit = _match_ladder(g)
    if hit is None:
        raise AssertionError("degenerate pair failed to match any ladder")
    return DegeneracyResult(True, hit[0], hit[1])


def _pair_ids(partner: list[int]) -> list[int]:
    pair_id = [-1] * len(partner)
    nxt = 0
    for v in range(len(partner)):
        if pair_id[v] == -1:
            pair_id[v] = pair_id[partner[v]] = nxt
            nxt += 1
    return pair_id


# ------------------------------------------------------------------- merge


@dataclass
class MergeResult:
    quotient: Graph
    decomposition: CycleDecomposition
    matching: list[tuple[int, int]]
    induced_group: list[Perm]


def merge(g: Graph, gens: list[Perm]) -> MergeResult:
    """Contract the stabilizer matching; the contract is asserted, not assumed."""
    deg = is_degenerate(g, gens)
    if deg.degenerate:
        raise DegeneratePairError(deg.ladder_kind, deg.ladder_n)
    partner = partner_map(g, gens)
    pair_id = _pair_ids(partner)
    q = g.n // 2
    matching = sorted((min(v, partner[v]), max(v, partner[v])) for v in range(g.n))
    matching = sorted(set(matching))

    cross = [
        (pair_id[u], pair_id[v])
        for u, v in g.edges()
        if pair_id[u] != pair_id[v]
    ]
    quotient = Graph(q, cross)
    assert quotient.n == q and len(quotient.edges()) == len(cross)
    assert quotient.is_regular(4), "quotient must be tetravalent"
    assert quotient.is_connected(), "quotient must be connected"

    # the non-matching edges form disjoint cycles through all of g; their
    # pair images are the decomposition
    cycles = []
    seen = set()
    for start in range(g.n):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        prev = None
        cur = start
        while True:
            nxts = [u for u in g.adj[cur] if u != partner[cur] and u != prev]
            if prev is None:
                nxts = nxts[:1]
            (nxt,) = nxts
            if nxt == start:
                break
            walk.append(nxt)
            seen.add(nxt)
            prev, cur = cur, nxt
        image = [pair_id[v] for v in walk]
        assert len(set(image)) == len(image), "cycle image revisits a pair"
        cycles.append(image)
    dec = make_decomposition(q, cycles)
    ok, why = validate_cycle_decomposition(quotient, dec)
    assert ok, why

    induced = []
    source = PermGroup(gens, degree=g.n)
    for p in gens:
        images = [-1] * q
        for v in range(g.n):
            a, b = pair_id[v], pair_id[p[v]]
            assert images[a] in (-1, b), "group does not preserve the matching"
            images[a] = b
        induced.append(tuple(images))
    ind_group = PermGroup(induced, degree=q)
    assert ind_group.order() == source.order(), "induced action must be faithful"
    assert _arc_transitive(quotient, induced), "induced action must be arc-transitive"
    cycset = set(dec.cycles)
    for p in induced:
        for c in dec.cycles:
            assert normalize_cycle([p[v] for v in c]) in cycset, (
                "decomposition not preserved"
            )
    return MergeResult(quotient, dec, matching, induced)


def _arc_transitive(g: Graph, gens: list[Perm]) -> bool:
    total = 2 * g.edge_count()
    u0 = 0
    v0 = g.adj[0][0]
    orbit = {(u0, v0)}
    queue = [(u0, v0)]
    for u, v in queue:
        for p in gens:
            arc = (p[u], p[v])
            if arc not in orbit:
                orbit.add(arc)
                queue.append(arc)
    return len(orbit) == total


# -------------------------------------------------------------------- split


def _split_index(dec: CycleDecomposition) -> tuple[dict, list[list[int]]]:
    on_vertex: list[list[int]] = [[] for _ in range(dec.host_n)]
    for ci, c in enumerate(dec.cycles):
        for v in c:
            on_vertex[v].append(ci)
    index = {}
    for v in range(dec.host_n):
        for k, ci in enumerate(sorted(on_vertex[v])):
            index[(v, ci)] = 2 * v + k
    return index, on_vertex


def split(g: Graph, dec: CycleDecomposition) -> Graph:
    """Double each vertex into its two cycle memberships."""
    if not g.is_regular(4):
        raise ValueError("host graph must be tetravalent")
    ok, why = validate_cycle_decomposition(g, dec)
    if not ok:
        raise ValueError(f"invalid cycle decomposition: {why}")
    index, on_vertex = _split_index(dec)
    for v, cs in enumerate(on_vertex):
        if len(cs) != 2:
            raise ValueError(f"vertex {v} lies on {len(cs)} cycles, expected 2")
    edges = []
    for v in range(g.n):
        a, b = sorted(on_vertex[v])
        edges.append((index[(v, a)], index[(v, b)]))
    for ci, c in enumerate(dec.cycles):
        for k in range(len(c)):
            u, v = c[k], c[(k + 1) % len(c)]
            edges.append((index[(u, ci)], index[(v, ci)]))
    out = Graph(2 * g.n, edges)
    assert out.is_regular(3)
    if g.is_connected():
        assert out.is_connected()
    return out


def split_with_group(
    g: Graph, dec: CycleDecomposition, gens: list[Perm]
) -> tuple[Graph, list[Perm]]:
    """Split plus the lifted action sigma(v, C) = (sigma v, sigma C)."""
    out = split(g, dec)
    index, on_vertex = _split_index(dec)
    cyc_index = {c: i for i, c in enumerate(dec.cycles)}
    lifted = []
    for p in gens:
        cimg = []
        for c in dec.cycles:
            target = normalize_cycle([p[v] for v in c])
            if target not in cyc_index:
                raise ValueError("group does not preserve the decomposition")
            cimg.append(cyc_index[target])
        images = [0] * out.n
        for (v, ci), idx in index.items():
            images[idx] = index[(p[v], cimg[ci])]
        lifted.append(tuple(images))
    from .graphs import is_automorphism

    for q in lifted:
        assert is_automorphism(out, q)
    return out, lifted


# ------------------------------------------------- stabilizer-block cycles


def local_block_decomposition(g: Graph, gens: list[Perm]) -> CycleDecomposition:
    """The unique group-invariant cycle decomposition via neighbour blocks.

    Needs the vertex stabilizer to act on the 4 neighbours as the cyclic or
    the dihedral group of the square: those have a single way of pairing up
    opposite neighbours, and chaining the pairs through the graph closes up
    into the cycles.
    """
    label, _stab = local_action(g, gens, 0)
    if label not in ("Z4", "D4"):
        raise ValueError(
            f"local type {label} has no unique block pairing"
            + (" (three decompositions exist)" if label == "Z2xZ2" else "")
        )
    group = PermGroup(gens, degree=g.n)
    stab = group.stabilizer_gens(0)
    nbrs0 = list(g.adj[0])
    pairing0 = _invariant_pairing(nbrs0, stab)
    tr = group.transversal(0)
    # opposite[(v, u)] = the neighbour of v paired with u at v
    opposite: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        t = tr[v]
        for a, b in pairing0:
            x, y = t[a], t[b]
            opposite[(v, x)] = y
            opposite[(v, y)] = x
    cycles = []
    used: set[tuple[int, int]] = set()
    for v0 in range(g.n):
        for u0 in g.adj[v0]:
            if (v0, u0) in used:
                continue
            walk = [v0]
            v, u = v0, u0
            while True:
                used.add((v, u))
                used.add((u, v))
                if u == v0:
                    break
                walk.append(u)
                v, u = u, opposite[(u, v)]
            if len(set(walk)) != len(walk):
                raise ValueError("block pairing does not close into simple cycles")
            cycles.append(walk)
    dec = make_decomposition(g.n, cycles)
    ok, why = validate_cycle_decomposition(g, dec)
    if not ok:
        raise ValueError(f"block pairing gave an invalid decomposition: {why}")
    cycset = set(dec.cycles)
    for p in gens:
        for c in dec.cycles:
            assert normalize_cycle([p[x] for x in c]) in cycset
    return dec


def _invariant_pairing(nbrs: list[int], stab: list[Perm]) -> list[tuple[int, int]]:
    a, b, c, d = nbrs
    options = [
        [(a, b), (c, d)],
        [(a, c), (b, d)],
        [(a, d), (b, c)],
    ]
    kept = []
    for opt in options:
        blocks = {frozenset(p) for p in opt}
        if all(
            frozenset((s[x], s[y])) in blocks for x, y in opt for s in stab
        ):
            kept.append(opt)
    if len(kept) != 1:
        raise ValueError(
            f"expected a unique invariant pairing, found {len(kept)}"
        )
    return kept[0]

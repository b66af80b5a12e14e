"""Acceptance gate: one test per criterion, in order.

``pytest -v tests/test_acceptance.py`` prints one pass/fail line for each
criterion.  Session fixtures build the shared census store and pair corpus.
"""

import itertools
import random
import time

import pytest

from cvtcensus.amalgams import (
    amalgam_table,
    element_order_bound_check,
    evaluate_word,
    regular_map_pair,
    verify_quotient,
)
from cvtcensus.canon import CanonicalForm, are_isomorphic, canonical_form, canonicalize
from cvtcensus.catalog import extras, small14, twogroups64
from cvtcensus.cayley import cayley_graph, connection_set_orbits
from cvtcensus.census import (
    collect_split_sources,
    desk_at_hosts,
    desk_quotients,
    emit,
    extremal_tables,
    oracle_crosscheck,
    run_census,
)
from cvtcensus.graphs import (
    Graph,
    all_connected_cubic_graphs,
    has_hamilton_cycle,
    ladder,
    truncation,
)
from cvtcensus.groups import (
    automorphism_group,
    central_quotients_by_order2,
    cubic_cayley_filter,
    r_class_member,
)
from cvtcensus.mergesplit import is_degenerate, merge, normalize_cycle, split, split_with_group
from cvtcensus.perm import PermGroup

SEED = 20260823


def k4():
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k5():
    return Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])


def octahedron():
    return Graph(6, [(i, j) for i in range(6) for j in range(i + 1, 6)
                     if j != i + 3])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + inner + [(i, 5 + i) for i in range(5)])


def aut_gens(g):
    return canonicalize(g).aut_generators


def arc_orbits_any(g, gens):
    """Arc-orbit count without the cubic-only guard."""
    seen = set()
    count = 0
    for u in range(g.n):
        for v in sorted(g.adj[u]):
            if (u, v) in seen:
                continue
            count += 1
            queue = [(u, v)]
            seen.add((u, v))
            while queue:
                a, b = queue.pop()
                for p in gens:
                    img = (p[a], p[b])
                    if img not in seen:
                        seen.add(img)
                        queue.append(img)
    return count


@pytest.fixture(scope="session")
def store14():
    return run_census(small14(), 14, catalog_complete_to=14)


@pytest.fixture(scope="session")
def split_pairs():
    """Every split-route pair with host order <= 14 (outputs <= 28)."""
    hosts = [(g, f"bundled host {i + 1}") for i, g in enumerate(desk_at_hosts())]
    sources, notes = collect_split_sources(desk_quotients(), hosts, 14)
    assert not notes
    pairs = []
    for src in sources:
        gamma, lifted = split_with_group(src.host, src.decomposition, src.gens)
        pairs.append((gamma, lifted))
    return pairs


@pytest.fixture(scope="session")
def roundtrip_pairs(split_pairs):
    pairs = list(split_pairs)
    for g in (truncation(k4()), truncation(petersen())):
        pairs.append((g, aut_gens(g)))
    return pairs


@pytest.fixture(scope="session")
def corpus(store14, split_pairs):
    """Shared graph corpus: census records, split outputs, truncations, ladders."""
    graphs = [form.graph() for form in store14.forms()]
    graphs += [g for g, _gens in split_pairs]
    graphs += [truncation(k4()), truncation(petersen())]
    graphs += [ladder(k, "circular") for k in range(3, 16)]
    graphs += [ladder(k, "moebius") for k in range(2, 16)]
    seen: set[CanonicalForm] = set()
    out = []
    for g in graphs:
        form = canonical_form(g)
        if form not in seen:
            seen.add(form)
            out.append(g)
    return out


def test_criterion_01_oracle_census_equivalence():
    start = time.time()
    store = run_census(small14(), 12, catalog_complete_to=14)
    for n in (4, 6, 8, 10, 12):
        report = oracle_crosscheck(store, n)
        assert report.ok, (
            f"order {n}: missing {[f.text() for f in report.missing]}, "
            f"extra {[f.text() for f in report.extra]}"
        )
    assert time.time() - start < 300


def test_criterion_02_split_merge_roundtrip(roundtrip_pairs):
    start = time.time()
    assert len(roundtrip_pairs) >= 20
    for g, gens in roundtrip_pairs:
        result = merge(g, gens)
        back = split(result.quotient, result.decomposition)
        assert canonical_form(back) == canonical_form(g)
    assert time.time() - start < 60


def test_criterion_03_merge_contract(roundtrip_pairs):
    for g, gens in roundtrip_pairs:
        start = time.time()
        result = merge(g, gens)
        q = result.quotient
        assert q.is_regular(4)
        assert q.is_connected()
        assert q.n * 2 == g.n
        # faithful induced action
        assert PermGroup(result.induced_group, degree=q.n).order() == \
            PermGroup(gens, degree=g.n).order()
        # arc-transitive on the quotient
        assert arc_orbits_any(q, result.induced_group) == 1
        # decomposition preserved by every induced generator
        cycles = set(result.decomposition.cycles)
        for p in result.induced_group:
            for c in cycles:
                assert normalize_cycle([p[v] for v in c]) in cycles
        assert time.time() - start < 1.0


def test_criterion_04_degenerate_dichotomy():
    for k in range(3, 21):
        g = ladder(k, "circular")
        res = is_degenerate(g, aut_gens(g))
        assert (res.degenerate, res.ladder_kind, res.ladder_n) == (True, "circular", k)
    for k in range(2, 21):
        g = ladder(k, "moebius")
        res = is_degenerate(g, aut_gens(g))
        assert (res.degenerate, res.ladder_kind, res.ladder_n) == (True, "moebius", k)
    res = is_degenerate(k4(), aut_gens(k4()))
    assert (res.degenerate, res.ladder_kind, res.ladder_n) == (True, "moebius", 2)


def test_criterion_05_extremal_table_spots(store14):
    assert store14.exhaustive_to == 14
    tables = extremal_tables(store14)
    for girth, order in ((3, 4), (4, 6), (5, 10), (6, 14)):
        assert tables.n_vt_girth[girth].value == order
        assert tables.n_vt_girth[girth].exact
    assert tables.m_vt_diam[2].value == 10
    assert tables.m_vt_diam[2].exact
    assert tables.m_vt_diam[3].value == 14


def test_support_desk_hosts_complete_to_7():
    # tetravalent graphs on at most 7 vertices, via complements: degree 4 on
    # 5/6/7 vertices forces a 0-/1-/2-regular complement, so the candidates
    # are K5, the octahedron, and the complements of C7 and C3+C4
    c7 = Graph(7, [(i, (i + 1) % 7) for i in range(7)])
    c34 = Graph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)])
    for g in (k5(), octahedron()):
        assert arc_orbits_any(g, aut_gens(g)) == 1
    for small in (c7, c34):
        comp = Graph(
            small.n,
            [
                (i, j)
                for i in range(small.n)
                for j in range(i + 1, small.n)
                if j not in small.adj[i]
            ],
        )
        assert comp.is_regular(4)
        assert arc_orbits_any(comp, aut_gens(comp)) > 1
    hosts = {canonical_form(g) for g in desk_at_hosts()}
    sources, _ = collect_split_sources(desk_quotients(), [], 14)
    hosts |= {src.host_form for src in sources}
    assert canonical_form(k5()) in hosts
    assert canonical_form(octahedron()) in hosts


def test_criterion_06_hamiltonicity_exceptions(corpus):
    start = time.time()
    small = [g for g in corpus if g.n <= 30]
    exceptions = {
        canonical_form(petersen()),
        canonical_form(truncation(petersen())),
    }
    present = {canonical_form(g) for g in small}
    assert exceptions <= present
    for g in small:
        expected = canonical_form(g) not in exceptions
        assert has_hamilton_cycle(g) == expected, canonical_form(g).text()
    assert time.time() - start < 120


def test_criterion_07_lemma_suites(roundtrip_pairs, corpus):
    # a failed abelianization filter must mean no generating triples at all
    catalog = small14() + twogroups64() + extras()
    failing = [G for G in catalog if G.order <= 24 and not cubic_cayley_filter(G)]
    assert failing
    for G in failing:
        assert connection_set_orbits(G) == []

    # automorphism twists of a connection set never change the isomorphism class
    rng = random.Random(SEED)
    twisted = 0
    for G in small14():
        orbits = connection_set_orbits(G)
        if not orbits:
            continue
        auts, _ = automorphism_group(G)
        for S in orbits:
            base = canonical_form(cayley_graph(G, S))
            for _ in range(5):
                a = rng.choice(auts)
                image = tuple(sorted(a[e] for e in S))
                assert canonical_form(cayley_graph(G, image)) == base
                twisted += 1
    assert twisted >= 50

    # the built-in 2-group family is closed under central order-2 quotients
    members = [G for G in twogroups64() if r_class_member(G)]
    assert members
    for G in members:
        for Q in central_quotients_by_order2(G):
            assert r_class_member(Q)

    # pairs with a 2-group vertex stabilizer bound element orders by |V|
    checked = 0
    for g, gens in roundtrip_pairs:
        order = PermGroup(gens, degree=g.n).order()
        stab = order // g.n
        if stab & (stab - 1) == 0:
            assert element_order_bound_check(gens, g.n, 2)
            checked += 1
    for g in corpus:
        res = canonicalize(g)
        stab = res.aut_order // g.n
        if stab & (stab - 1) == 0 and res.aut_order <= 2048:
            assert element_order_bound_check(res.aut_generators, g.n, 2)
            checked += 1
    assert checked >= 20


def _brute_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count() != b.edge_count():
        return False
    eb = {frozenset(e) for e in b.edges()}
    for p in itertools.permutations(range(a.n)):
        if all(frozenset((p[u], p[v])) in eb for u, v in a.edges()):
            return True
    return False


def test_criterion_08_canonical_engine(corpus):
    rng = random.Random(SEED)
    for g in corpus:
        assert g.n <= 64
        base = canonical_form(g)
        for _ in range(100):
            relab = list(range(g.n))
            rng.shuffle(relab)
            h = Graph(g.n, [(relab[u], relab[v]) for u, v in g.edges()])
            assert canonical_form(h) == base
    pool = []
    for n in (4, 6, 8):
        pool.extend(all_connected_cubic_graphs(n))
    assert len(pool) == 8
    for a, b in itertools.combinations(pool, 2):
        assert are_isomorphic(a, b) == _brute_isomorphic(a, b)


def test_criterion_09_amalgam_table_fidelity():
    from test_amalgams import SECOND_TRANSCRIPTION, _parse_relator, _split_relators

    table = amalgam_table()
    assert len(table) == len(SECOND_TRANSCRIPTION) == 11
    for row, (gens, local, order, rels) in zip(table, SECOND_TRANSCRIPTION):
        assert row.generator_names == tuple(gens)
        assert row.local_generator_names == tuple(local)
        assert row.local_order == order
        assert row.relators == tuple(
            _parse_relator(r) for r in _split_relators(rels)
        )

    rows_checked = 0
    perturbations = 0
    for q in desk_quotients():
        if q.is_regular_map:
            # acceptance for quadruple stanzas: the pair construction runs
            regular_map_pair(q.group, q.images["x"], q.images["y"], q.images["a"])
            continue
        pres = table[q.row - 1]
        ok, why = verify_quotient(pres, q)
        assert ok, why
        rows_checked += 1
        for name in pres.generator_names:
            broke_one = False
            for e in range(q.group.order):
                if e == q.images[name]:
                    continue
                candidate = dict(q.images)
                candidate[name] = e
                breaks = any(
                    evaluate_word(q.group, candidate, w) != 0
                    for w in pres.relators
                )
                if not breaks:
                    continue
                bad = type(q)(q.row, q.group, candidate)
                ok, why = verify_quotient(pres, bad)
                assert not ok
                assert "relator" in why
                broke_one = True
                perturbations += 1
            assert broke_one, (q.row, name)
    assert rows_checked == 6
    assert perturbations > 100


def test_criterion_10_worker_determinism(tmp_path):
    a = run_census(small14(), 12, catalog_complete_to=14, workers=1)
    b = run_census(small14(), 12, catalog_complete_to=14, workers=2)
    emit(a, "both", tmp_path / "a")
    emit(b, "both", tmp_path / "b")
    for name in ("census.csv", "graphs.g6"):
        assert (tmp_path / "a" / name).read_bytes() == \
            (tmp_path / "b" / name).read_bytes()

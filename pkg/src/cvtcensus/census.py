"""Census assembly over the three arc-orbit routes.

Candidate graphs come from four places: connected cubic Cayley graphs over a
group catalog, the two ladder families, splits of tetravalent arc-transitive
pairs (coset-graph quotients, regular-map quadruples, and ingested hosts), and
externally supplied cubic graph6 files.  Everything is deduplicated by
canonical form, classified once per isomorphism class, and kept in a store
whose iteration order, CSV emission, and graph6 emission are byte-deterministic
regardless of worker count.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .amalgams import (
    MarkedQuotient,
    amalgam_table,
    klein_quadruple_from_pair,
    parse_quotients_text,
    quotient_graph_pair,
    read_quotients,
    regular_map_pair,
)
from .canon import CanonicalForm, canonical_form, canonicalize
from .cayley import cayley_graphs_for_group
from .graphs import (
    Graph,
    all_connected_cubic_graphs,
    graph6_decode,
    graph6_encode,
    ladder,
    read_graph6_file,
)
from .groups import FiniteGroup, cubic_cayley_filter
from .mergesplit import CycleDecomposition, local_block_decomposition, merge, split_with_group
from .perm import Perm, PermGroup
from .transitivity import ClassificationRecord, classify, local_action

ROUTES = ("cayley", "split", "external-AT", "ladder")
WORKERS_ENV = "CVTCENSUS_WORKERS"
ORACLE_MAX = 14

# Bundled tetravalent arc-transitive inputs cover every order up to here;
# the only such graphs with at most 7 vertices are K5 and the octahedron.
DESK_AT_COMPLETE_TO = 7

CSV_HEADER = (
    "order,canonical_graph6,m,is_cayley,is_grr,is_dihedrant,"
    "girth,diameter,hamiltonian,provenance"
)


def _data_text(name: str) -> str:
    return resources.files("cvtcensus").joinpath("data").joinpath(name).read_text()


def desk_quotients() -> list[MarkedQuotient]:
    """Bundled coset-graph and regular-map quotients."""
    return parse_quotients_text(_data_text("desk_quotients.txt"))


def desk_at_hosts() -> list[Graph]:
    """Bundled tetravalent arc-transitive host graphs."""
    lines = _data_text("desk_tetravalent.g6").splitlines()
    return [graph6_decode(line) for line in lines if line.strip()]


# ------------------------------------------------------------------- store


@dataclass
class CensusEntry:
    record: ClassificationRecord
    provenance: set[str]
    # canonical forms of the merged tetravalent hosts, for split-route records
    split_hosts: set[CanonicalForm] = field(default_factory=set)


class CensusStore:
    """Canonical-form-keyed record set with deterministic iteration.

    ``exhaustive_to`` marks the largest order for which the contributing
    routes were jointly complete; records above it are best-effort.
    """

    def __init__(self, max_order: int = 0, exhaustive_to: int = 0):
        self.records: dict[CanonicalForm, CensusEntry] = {}
        self.max_order = max_order
        self.exhaustive_to = exhaustive_to
        self.notes: list[str] = []

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, form: CanonicalForm) -> bool:
        return form in self.records

    def add(
        self,
        record: ClassificationRecord,
        route: str,
        split_host: CanonicalForm | None = None,
    ) -> None:
        if route not in ROUTES:
            raise ValueError(f"unknown provenance route {route!r}")
        entry = self.records.get(record.canonical)
        if entry is None:
            entry = CensusEntry(record, set())
            self.records[record.canonical] = entry
        elif entry.record != record:
            raise ValueError(
                f"conflicting records for {record.canonical.text()}"
            )
        entry.provenance.add(route)
        if split_host is not None:
            entry.split_hosts.add(split_host)

    def merge(self, other: "CensusStore") -> None:
        """Idempotent union; range metadata keeps the larger claim."""
        for form, entry in other.records.items():
            for route in entry.provenance:
                self.add(entry.record, route)
            self.records[form].split_hosts |= entry.split_hosts
        self.max_order = max(self.max_order, other.max_order)
        self.exhaustive_to = max(self.exhaustive_to, other.exhaustive_to)

    def entries(self) -> list[tuple[CanonicalForm, CensusEntry]]:
        return sorted(
            self.records.items(), key=lambda kv: (kv[1].record.order, kv[0])
        )

    def forms(self, order: int | None = None) -> list[CanonicalForm]:
        return [
            form
            for form, entry in self.entries()
            if order is None or entry.record.order == order
        ]

    def check(self) -> None:
        """Structural invariants; raises AssertionError on violation."""
        for form, entry in self.records.items():
            assert entry.record.canonical == form
            assert entry.provenance and entry.provenance <= set(ROUTES)
            decoded = form.graph()
            assert canonical_form(decoded) == form, "stored graph6 not canonical"
            # a non-Cayley graph cannot carry a regular action, so three
            # arc orbits under the full group force the Cayley flag
            assert not (entry.record.m_full == 3 and not entry.record.is_cayley)

    def reverify(self) -> None:
        """Recompute every record from its decoded graph and compare."""
        for form, entry in self.records.items():
            fresh = classify(form.graph())
            if fresh != entry.record:
                raise AssertionError(
                    f"stored metrics for {form.text()} do not re-verify"
                )


# ------------------------------------------------------- split-route inputs


@dataclass
class SplitSource:
    host: Graph
    host_form: CanonicalForm
    decomposition: CycleDecomposition
    gens: list[Perm]


# pair scan is quadratic in group order, so the sweep stays desk-sized
SUBGROUP_SWEEP_CAP = 250


def _pair_sources(host: Graph, form: CanonicalForm, gens: list[Perm]) -> list[SplitSource]:
    """Sources for one acting group, or [] if its local action does not pair."""
    label, _stab = local_action(host, gens, 0)
    if label in ("Z4", "D4"):
        dec = local_block_decomposition(host, gens)
        return [SplitSource(host, form, dec, gens)]
    if label == "Z2xZ2":
        G, x, y, a = klein_quadruple_from_pair(host, gens)
        rm = regular_map_pair(G, x, y, a)
        rform = canonical_form(rm.graph)
        assert rform == form
        return [SplitSource(rm.graph, rform, dec, rm.gens) for dec in rm.decompositions]
    return []


def _host_sources(host: Graph, gens: list[Perm], notes: list[str]) -> list[SplitSource]:
    """Decompositions of one tetravalent arc-transitive pair.

    If the full group's local action is too big to pair neighbours, sweep
    2-generated arc-transitive subgroups for admissible actions instead.
    """
    form = canonical_form(host)
    sources = _pair_sources(host, form, gens)
    if sources:
        return sources
    group = PermGroup(gens, degree=host.n)
    if group.order() > SUBGROUP_SWEEP_CAP:
        notes.append(
            f"host {form.text()} skipped: automorphism group order "
            f"{group.order()} exceeds the subgroup sweep cap"
        )
        return []
    elems = sorted(group.elements())
    seen_decs: set[CycleDecomposition] = set()
    for i, p in enumerate(elems):
        for q in elems[i:]:
            sub = PermGroup([p, q], degree=host.n)
            if not sub.is_transitive() or _arc_orbits(host, sub) != 1:
                continue
            for src in _pair_sources(host, form, [p, q]):
                if src.decomposition not in seen_decs:
                    seen_decs.add(src.decomposition)
                    sources.append(src)
    if not sources:
        notes.append(f"host {form.text()} skipped: no admissible local action")
    return sources


def collect_split_sources(
    quotients: list[MarkedQuotient],
    at_hosts: list[tuple[Graph, str]],
    max_host_order: int,
) -> tuple[list[SplitSource], list[str]]:
    """Tetravalent pairs with decompositions, ready for splitting.

    ``at_hosts`` items carry an origin tag used in error diagnostics.
    """
    table = amalgam_table()
    sources: list[SplitSource] = []
    notes: list[str] = []
    for qi, q in enumerate(quotients):
        if q.is_regular_map:
            rm = regular_map_pair(q.group, q.images["x"], q.images["y"], q.images["a"])
            if rm.graph.n > max_host_order:
                continue
            form = canonical_form(rm.graph)
            sources.extend(
                SplitSource(rm.graph, form, dec, rm.gens)
                for dec in rm.decompositions
            )
        else:
            cos, gens = quotient_graph_pair(table[q.row - 1], q)
            if cos.graph.n > max_host_order:
                continue
            dec = local_block_decomposition(cos.graph, gens)
            sources.append(
                SplitSource(cos.graph, canonical_form(cos.graph), dec, gens)
            )
    for g, origin in at_hosts:
        if g.n > max_host_order:
            continue
        res = canonicalize(g)
        group = PermGroup(res.aut_generators, degree=g.n)
        if not group.is_transitive():
            raise ValueError(
                f"{origin}: tetravalent graph is not vertex-transitive "
                f"({len(group.orbits())} vertex orbits on {g.n} vertices)"
            )
        if _arc_orbits(g, group) != 1:
            raise ValueError(f"{origin}: tetravalent graph is not arc-transitive")
        sources.extend(_host_sources(g, res.aut_generators, notes))
    return sources, notes


def _arc_orbits(g: Graph, group: PermGroup) -> int:
    arcs = {(u, v) for u in range(g.n) for v in g.adj[u]}
    count = 0
    seen: set[tuple[int, int]] = set()
    for arc in sorted(arcs):
        if arc in seen:
            continue
        count += 1
        queue = [arc]
        seen.add(arc)
        while queue:
            u, v = queue.pop()
            for p in group.generators:
                img = (p[u], p[v])
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
    return count


# ------------------------------------------------------------ census run


def resolve_workers(workers: int | None = None) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV, "").strip()
        workers = int(env) if env else 1
    if workers < 1:
        raise ValueError("worker count must be at least 1")
    return workers


def _classify_g6(data: bytes) -> ClassificationRecord:
    return classify(graph6_decode(data))


def _classify_all(graphs: list[Graph], workers: int) -> list[ClassificationRecord]:
    tasks = [graph6_encode(g) for g in graphs]
    if workers > 1 and len(tasks) > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(min(workers, len(tasks))) as pool:
            return pool.map(_classify_g6, tasks)
    return [_classify_g6(t) for t in tasks]


def run_census(
    catalog: list[FiniteGroup],
    max_order: int,
    external_AT_files: list = (),
    *,
    quotient_files: list = (),
    use_desk_inputs: bool = True,
    catalog_complete_to: int = 0,
    at_complete_to: int | None = None,
    workers: int | None = None,
) -> CensusStore:
    """Assemble the store from the Cayley, ladder, split, and external routes.

    graph6 files may mix valencies: cubic entries feed the external route,
    tetravalent entries join the split route as hosts.
    """
    if max_order < 4 or max_order % 2:
        raise ValueError("max_order must be an even number >= 4")
    workers = resolve_workers(workers)

    quotients: list[MarkedQuotient] = []
    at_hosts: list[tuple[Graph, str]] = []
    externals: list[tuple[Graph, str]] = []
    if use_desk_inputs:
        quotients.extend(desk_quotients())
        at_hosts.extend((g, f"bundled host {i + 1}") for i, g in enumerate(desk_at_hosts()))
    for path in quotient_files:
        quotients.extend(read_quotients(path))
    for path in external_AT_files:
        for i, g in enumerate(read_graph6_file(path)):
            origin = f"graph {i + 1} in {path}"
            if g.is_regular(4):
                at_hosts.append((g, origin))
            elif g.is_regular(3):
                externals.append((g, origin))
            else:
                raise ValueError(f"{origin}: neither cubic nor tetravalent")

    # route order fixed up front so the candidate list, and with it every
    # downstream artifact, is independent of scheduling
    candidates: list[tuple[Graph, str, CanonicalForm | None]] = []
    for G in catalog:
        if not 4 <= G.order <= max_order:
            continue
        if not cubic_cayley_filter(G):
            continue
        for _form, g, _S in cayley_graphs_for_group(G):
            candidates.append((g, "cayley", None))
    for k in range(3, max_order // 2 + 1):
        candidates.append((ladder(k, "circular"), "ladder", None))
    for k in range(2, max_order // 2 + 1):
        candidates.append((ladder(k, "moebius"), "ladder", None))

    sources, notes = collect_split_sources(quotients, at_hosts, max_order // 2)
    host_forms = {src.host_form for src in sources}
    for src in sources:
        gamma, lifted = split_with_group(src.host, src.decomposition, src.gens)
        if gamma.n > max_order:
            continue
        # pipeline-level roundtrip: merging the pair we just built must land
        # back in the arc-transitive input set
        back = merge(gamma, lifted)
        assert canonical_form(back.quotient) in host_forms
        candidates.append((gamma, "split", src.host_form))

    for g, origin in externals:
        if g.n > max_order:
            continue
        res = canonicalize(g)
        group = PermGroup(res.aut_generators, degree=g.n)
        if not group.is_transitive():
            orbits = group.orbits()
            raise ValueError(
                f"{origin}: not vertex-transitive "
                f"({len(orbits)} vertex orbits, sizes {sorted(map(len, orbits))})"
            )
        candidates.append((g, "external-AT", None))

    # one classification per isomorphism class, in deterministic order
    by_form: dict[CanonicalForm, tuple[Graph, list[tuple[str, CanonicalForm | None]]]] = {}
    for g, route, host in candidates:
        form = canonical_form(g)
        if form not in by_form:
            by_form[form] = (g, [])
        by_form[form][1].append((route, host))
    forms = sorted(by_form)
    records = _classify_all([by_form[f][0] for f in forms], workers)

    store = CensusStore(
        max_order=max_order,
        exhaustive_to=_exhaustive_to(
            max_order,
            catalog_complete_to,
            DESK_AT_COMPLETE_TO
            if at_complete_to is None and use_desk_inputs
            else (at_complete_to or 0),
        ),
    )
    store.notes.extend(notes)
    for form, record in zip(forms, records):
        assert record.canonical == form
        for route, host in by_form[form][1]:
            store.add(record, route, split_host=host)
    store.check()
    return store


def _exhaustive_to(max_order: int, catalog_complete_to: int, at_complete_to: int) -> int:
    # below order 10 every vertex-transitive cubic graph is Cayley, so a
    # complete catalog alone is exhaustive there; beyond that the split
    # route must also cover hosts up to half the order
    return min(max_order, catalog_complete_to, max(9, 2 * at_complete_to))


# ------------------------------------------------------------- crosscheck


@dataclass
class OracleReport:
    order: int
    matched: int
    missing: list[CanonicalForm]
    extra: list[CanonicalForm]

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extra


def oracle_vt_forms(n: int) -> list[CanonicalForm]:
    """Brute-force list of vertex-transitive cubic graphs on n vertices."""
    if n < 4 or n % 2 or n > ORACLE_MAX:
        raise ValueError(f"oracle range is even orders 4..{ORACLE_MAX}")
    out: set[CanonicalForm] = set()
    for g in all_connected_cubic_graphs(n):
        res = canonicalize(g)
        if PermGroup(res.aut_generators, degree=n).is_transitive():
            out.add(res.form)
    return sorted(out)


def oracle_crosscheck(store: CensusStore, n: int) -> OracleReport:
    oracle = oracle_vt_forms(n)
    have = set(store.forms(n))
    missing = [f for f in oracle if f not in have]
    extra = [f for f in have if f not in set(oracle)]
    return OracleReport(n, len(have) - len(extra), missing, sorted(extra))


# ------------------------------------------------------------- extremal


def moore_bound(d: int) -> int:
    return 3 * 2**d - 2


@dataclass(frozen=True)
class ExtremalEntry:
    value: int
    witness: CanonicalForm
    exact: bool


@dataclass
class ExtremalTables:
    n_cay_girth: dict[int, ExtremalEntry]
    n_vt_girth: dict[int, ExtremalEntry]
    m_cay_diam: dict[int, ExtremalEntry]
    m_vt_diam: dict[int, ExtremalEntry]


def extremal_tables(store: CensusStore) -> ExtremalTables:
    """Smallest order per girth and largest order per diameter, with witnesses.

    Smallest-order rows are exact when the census is exhaustive up to the
    claimed value; largest-order rows need exhaustiveness up to the Moore
    bound, past which no cubic graph of that diameter exists at all.
    """
    n_cay: dict[int, ExtremalEntry] = {}
    n_vt: dict[int, ExtremalEntry] = {}
    m_cay: dict[int, ExtremalEntry] = {}
    m_vt: dict[int, ExtremalEntry] = {}
    reach = store.exhaustive_to
    for form, entry in store.entries():
        rec = entry.record
        girth_entry = ExtremalEntry(rec.order, form, rec.order <= reach)
        diam_entry = ExtremalEntry(rec.order, form, moore_bound(rec.diameter) <= reach)
        if rec.girth not in n_vt:
            n_vt[rec.girth] = girth_entry
        if rec.is_cayley and rec.girth not in n_cay:
            n_cay[rec.girth] = girth_entry
        if rec.order >= m_vt.get(rec.diameter, diam_entry).value:
            m_vt[rec.diameter] = diam_entry
        if rec.is_cayley and rec.order >= m_cay.get(rec.diameter, diam_entry).value:
            m_cay[rec.diameter] = diam_entry
    for g in set(n_cay) & set(n_vt):
        assert n_vt[g].value <= n_cay[g].value
    for d in set(m_cay) & set(m_vt):
        assert m_vt[d].value >= m_cay[d].value
    for d, e in m_vt.items():
        assert e.value <= moore_bound(d)
    return ExtremalTables(n_cay, n_vt, m_cay, m_vt)


# ------------------------------------------------------------- emission


def _bool_text(b: bool) -> str:
    return "true" if b else "false"


def _csv_rows(store: CensusStore) -> list[str]:
    rows = [CSV_HEADER]
    for form, entry in store.entries():
        rec = entry.record
        rows.append(
            ",".join(
                [
                    str(rec.order),
                    form.text(),
                    str(rec.m_full),
                    _bool_text(rec.is_cayley),
                    _bool_text(rec.is_grr),
                    _bool_text(rec.is_dihedrant),
                    str(rec.girth),
                    str(rec.diameter),
                    _bool_text(rec.hamiltonian),
                    "+".join(sorted(entry.provenance)),
                ]
            )
        )
    return rows


def emit(store: CensusStore, fmt: str = "both", out_dir=".") -> list[Path]:
    """Write census.csv and/or graphs.g6 plus a small meta sidecar."""
    if fmt not in ("csv", "graph6", "both"):
        raise ValueError(f"unknown format {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if fmt in ("csv", "both"):
        path = out / "census.csv"
        path.write_bytes(("\n".join(_csv_rows(store)) + "\n").encode("ascii"))
        written.append(path)
    if fmt in ("graph6", "both"):
        path = out / "graphs.g6"
        lines = [form.text() for form, _ in store.entries()]
        path.write_bytes(("\n".join(lines) + "\n").encode("ascii") if lines else b"")
        written.append(path)
    meta = out / "meta.json"
    meta.write_text(
        json.dumps(
            {"max_order": store.max_order, "exhaustive_to": store.exhaustive_to},
            sort_keys=True,
        )
        + "\n"
    )
    written.append(meta)
    return written


def load_store(out_dir) -> CensusStore:
    """Rebuild a store from an emitted directory (census.csv required)."""
    out = Path(out_dir)
    csv_path = out / "census.csv"
    if not csv_path.exists():
        raise ValueError(f"{csv_path} not found")
    lines = csv_path.read_text().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("census.csv has an unexpected header")
    store = CensusStore()
    meta = out / "meta.json"
    if meta.exists():
        data = json.loads(meta.read_text())
        store.max_order = int(data.get("max_order", 0))
        store.exhaustive_to = int(data.get("exhaustive_to", 0))
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 10:
            raise ValueError(f"census.csv line {lineno}: expected 10 fields")
        record = ClassificationRecord(
            canonical=CanonicalForm(parts[1].encode("ascii")),
            order=int(parts[0]),
            m_full=int(parts[2]),
            is_cayley=parts[3] == "true",
            is_grr=parts[4] == "true",
            is_dihedrant=parts[5] == "true",
            girth=int(parts[6]),
            diameter=int(parts[7]),
            hamiltonian=parts[8] == "true",
        )
        for route in parts[9].split("+"):
            store.add(record, route)
    g6_path = out / "graphs.g6"
    if g6_path.exists():
        g6_lines = [ln for ln in g6_path.read_text().splitlines() if ln.strip()]
        if g6_lines != [form.text() for form, _ in store.entries()]:
            raise ValueError("graphs.g6 does not match census.csv")
    return store

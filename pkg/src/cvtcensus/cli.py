"""Command line front end: census runs, oracles, pair surgery, reports."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .canon import canonicalize
from .catalog import BUILTIN_COMPLETE_TO, builtin_catalog, ingest_catalog
from .census import (
    emit,
    load_store,
    oracle_crosscheck,
    oracle_vt_forms,
    run_census,
)
from .graphs import Graph, graph6_encode, read_graph6_file
from .groups import FiniteGroup, are_isomorphic_groups, group_from_generators
from .mergesplit import (
    format_cycles_file,
    merge,
    read_cycles_file,
    split,
    validate_cycle_decomposition,
)
from .perm import Perm, PermGroup
from .report import render_report
from .transitivity import classify

SEARCH_ELEMENT_CAP = 5000

CLASSIFY_HEADER = (
    "order,canonical_graph6,m,is_cayley,is_grr,is_dihedrant,girth,diameter,hamiltonian"
)


def _resolve_catalog(names: str) -> tuple[list[FiniteGroup], int]:
    """Comma-separated builtin names and file paths; returns groups and the
    largest order up to which a contributing builtin is complete."""
    groups: list[FiniteGroup] = []
    complete_to = 0
    for token in names.split(","):
        token = token.strip()
        if not token:
            continue
        if token in BUILTIN_COMPLETE_TO:
            groups.extend(builtin_catalog(token))
            complete_to = max(complete_to, BUILTIN_COMPLETE_TO[token])
        else:
            groups.extend(ingest_catalog(token))
    return groups, complete_to


def _single_graph(path) -> Graph:
    graphs = read_graph6_file(path)
    if len(graphs) != 1:
        raise ValueError(f"{path}: expected exactly one graph, found {len(graphs)}")
    return graphs[0]


def _group_action_gens(g: Graph, ref: str) -> list[Perm]:
    """Generators of the acting group named by --group.

    "aut" takes the full automorphism group; "<catalog>:<label>" searches
    2-generated subgroups of it for one isomorphic to the named group.
    """
    res = canonicalize(g)
    if ref == "aut":
        return res.aut_generators
    if ":" not in ref:
        raise ValueError("group reference must be 'aut' or '<catalog>:<label>'")
    cat, label = ref.split(":", 1)
    groups, _ = _resolve_catalog(cat)
    targets = [G for G in groups if G.label == label]
    if not targets:
        raise ValueError(f"no group labelled {label!r} in catalog {cat!r}")
    target = targets[0]
    ap = PermGroup(res.aut_generators, degree=g.n)
    if ap.order() > SEARCH_ELEMENT_CAP:
        raise ValueError(
            f"automorphism group order {ap.order()} exceeds the subgroup "
            f"search cap {SEARCH_ELEMENT_CAP}"
        )
    elems = sorted(ap.elements())
    for i, p in enumerate(elems):
        for q in elems[i:]:
            sub = PermGroup([p, q], degree=g.n)
            if sub.order() != target.order or not sub.is_transitive():
                continue
            if are_isomorphic_groups(group_from_generators([p, q]), target):
                return [p, q]
    raise ValueError(
        f"no transitive 2-generated subgroup isomorphic to {label!r} found"
    )


# ------------------------------------------------------------- commands


def _cmd_census(args) -> int:
    for name in ("catalog", "max_order", "out"):
        if getattr(args, name) is None:
            raise ValueError(f"--{name.replace('_', '-')} is required "
                             "(flag or config file)")
    groups, complete_to = _resolve_catalog(args.catalog)
    store = run_census(
        groups,
        args.max_order,
        external_AT_files=args.at_graphs,
        quotient_files=args.quotients,
        use_desk_inputs=not args.no_desk_inputs,
        catalog_complete_to=complete_to,
        workers=args.workers,
    )
    written = emit(store, "both", args.out)
    routes: dict[str, int] = {}
    for entry in store.records.values():
        for r in entry.provenance:
            routes[r] = routes.get(r, 0) + 1
    print(f"{len(store)} graphs up to order {store.max_order} "
          f"(exhaustive to {store.exhaustive_to})")
    for r in sorted(routes):
        print(f"  route {r}: {routes[r]}")
    for note in store.notes:
        print(f"  note: {note}")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_oracle(args) -> int:
    if args.store:
        report = oracle_crosscheck(load_store(args.store), args.order)
        print(f"order {args.order}: matched {report.matched}, "
              f"missing {len(report.missing)}, extra {len(report.extra)}")
        for f in report.missing:
            print(f"  missing {f.text()}")
        for f in report.extra:
            print(f"  extra {f.text()}")
        return 0 if report.ok else 1
    forms = oracle_vt_forms(args.order)
    print(f"order {args.order}: {len(forms)} vertex-transitive cubic graphs")
    for f in forms:
        print(f.text())
    return 0


def _cmd_classify(args) -> int:
    print(CLASSIFY_HEADER)
    for g in read_graph6_file(args.infile):
        r = classify(g)
        cells = [
            str(r.order), r.canonical.text(), str(r.m_full),
            str(r.is_cayley).lower(), str(r.is_grr).lower(),
            str(r.is_dihedrant).lower(), str(r.girth), str(r.diameter),
            str(r.hamiltonian).lower(),
        ]
        print(",".join(cells))
    return 0


def _cmd_merge(args) -> int:
    g = _single_graph(args.infile)
    gens = _group_action_gens(g, args.group)
    result = merge(g, gens)
    print(graph6_encode(result.quotient).decode("ascii"))
    sys.stdout.write(format_cycles_file(result.decomposition))
    return 0


def _cmd_split(args) -> int:
    g = _single_graph(args.infile)
    dec = read_cycles_file(args.cycles)
    ok, why = validate_cycle_decomposition(g, dec)
    if not ok:
        raise ValueError(f"cycle decomposition does not fit the graph: {why}")
    print(graph6_encode(split(g, dec)).decode("ascii"))
    return 0


def _cmd_tables(args) -> int:
    store = load_store(args.store)
    out = args.out if args.out else args.store
    written = render_report(store, out, figures=not args.no_figures)
    print(f"{len(store)} records (exhaustive to {store.exhaustive_to})")
    for path in written:
        print(f"wrote {path}")
    return 0


# ------------------------------------------------------------- plumbing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvtcensus",
        description="desk-scale census toolkit for cubic vertex-transitive graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="assemble and emit a census store")
    p.add_argument("--catalog", default=None,
                   help="builtin catalog names and/or files, comma separated")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--at-graphs", action="append", default=[], metavar="G6FILE",
                   help="graph6 inputs; cubic entries are ingested, "
                        "tetravalent entries become split hosts")
    p.add_argument("--quotients", action="append", default=[], metavar="FILE")
    p.add_argument("--out", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-desk-inputs", action="store_true",
                   help="skip the bundled quotient and host files")
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("oracle", help="brute-force check of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--store", default=None,
                   help="compare an emitted store instead of listing")
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("classify", help="classify graphs from a graph6 file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("merge", help="contract a locally-Z2 pair to its quotient")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--group", default="aut",
                   help="'aut' or '<catalog>:<label>' (default aut)")
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_merge)

    p = sub.add_parser("split", help="expand a tetravalent graph along cycles")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--cycles", required=True)
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("tables", help="extremal tables and figures from a store")
    p.add_argument("--store", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--no-figures", action="store_true")
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_tables)
    return parser


def _apply_config(args, argv: list[str]) -> None:
    """Fill unset options from a JSON object; explicit flags always win."""
    if not getattr(args, "config", None):
        return
    data = json.loads(Path(args.config).read_text())
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    for key, value in data.items():
        flag = key.replace("_", "-")
        dest = key.replace("-", "_")
        if not hasattr(args, dest) or dest in ("func", "command", "config"):
            continue
        if any(t == f"--{flag}" or t.startswith(f"--{flag}=") for t in argv):
            continue
        setattr(args, dest, value)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config(args, argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

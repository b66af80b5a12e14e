"""Extremal-table reporting: delimited output plus rendered figures."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .census import CensusStore, ExtremalTables, extremal_tables, moore_bound

EXTREMAL_HEADER = "table,parameter,order,witness_graph6,exact"


def extremal_rows(tables: ExtremalTables) -> list[str]:
    rows = [EXTREMAL_HEADER]
    named = [
        ("n_cay_girth", tables.n_cay_girth),
        ("n_vt_girth", tables.n_vt_girth),
        ("m_cay_diam", tables.m_cay_diam),
        ("m_vt_diam", tables.m_vt_diam),
    ]
    for name, table in named:
        for param in sorted(table):
            e = table[param]
            rows.append(
                f"{name},{param},{e.value},{e.witness.text()},"
                f"{'true' if e.exact else 'false'}"
            )
    return rows


def write_extremal_csv(tables: ExtremalTables, path) -> Path:
    p = Path(path)
    p.write_bytes(("\n".join(extremal_rows(tables)) + "\n").encode("ascii"))
    return p


def _counts_figure(store: CensusStore, path: Path) -> None:
    orders = sorted({e.record.order for e in store.records.values()})
    cay = [
        sum(
            1
            for e in store.records.values()
            if e.record.order == n and e.record.is_cayley
        )
        for n in orders
    ]
    non = [
        sum(
            1
            for e in store.records.values()
            if e.record.order == n and not e.record.is_cayley
        )
        for n in orders
    ]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(orders, cay, width=1.4, label="Cayley", color="#4878a8")
    ax.bar(orders, non, width=1.4, bottom=cay, label="non-Cayley", color="#c44e52")
    ax.set_xlabel("order")
    ax.set_ylabel("graphs")
    ax.set_title("census records by order")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _extremal_figure(tables: ExtremalTables, path: Path) -> None:
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    for table, label, marker in (
        (tables.n_vt_girth, "smallest vertex-transitive", "o"),
        (tables.n_cay_girth, "smallest Cayley", "s"),
    ):
        if table:
            xs = sorted(table)
            left.plot(xs, [table[g].value for g in xs], marker=marker, label=label)
    left.set_xlabel("girth")
    left.set_ylabel("order")
    left.set_title("extremal order by girth")
    left.legend()

    for table, label, marker in (
        (tables.m_vt_diam, "largest vertex-transitive", "o"),
        (tables.m_cay_diam, "largest Cayley", "s"),
    ):
        if table:
            xs = sorted(table)
            right.plot(xs, [table[d].value for d in xs], marker=marker, label=label)
    if tables.m_vt_diam:
        ds = sorted(tables.m_vt_diam)
        right.plot(
            ds,
            [moore_bound(d) for d in ds],
            linestyle="--",
            color="grey",
            label="bound 3*2^d - 2",
        )
    right.set_xlabel("diameter")
    right.set_ylabel("order")
    right.set_title("extremal order by diameter")
    right.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_report(store: CensusStore, out_dir, figures: bool = True) -> list[Path]:
    """Write extremal.csv and, unless disabled, the two summary figures."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tables = extremal_tables(store)
    written = [write_extremal_csv(tables, out / "extremal.csv")]
    if figures:
        counts = out / "counts_by_order.png"
        _counts_figure(store, counts)
        written.append(counts)
        extremal = out / "extremal_bounds.png"
        _extremal_figure(tables, extremal)
        written.append(extremal)
    return written

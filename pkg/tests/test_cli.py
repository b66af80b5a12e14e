"""CLI behaviour through main(): exit codes, files, stdout shapes."""

import json

import pytest

from cvtcensus.canon import canonical_form
from cvtcensus.census import load_store
from cvtcensus.cli import main
from cvtcensus.graphs import Graph, graph6_decode, ladder, truncation, write_graph6_file
from cvtcensus.mergesplit import parse_cycles_file


def k4():
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture()
def out_dir(tmp_path):
    return tmp_path / "out"


def test_census_command_writes_store(out_dir, capsys):
    rc = main(["census", "--catalog", "small14", "--max-order", "10",
               "--out", str(out_dir)])
    assert rc == 0
    assert (out_dir / "census.csv").exists()
    assert (out_dir / "graphs.g6").exists()
    store = load_store(out_dir)
    assert len(store) == 8
    assert "route split: 1" in capsys.readouterr().out


def test_census_rejects_odd_order(out_dir, capsys):
    rc = main(["census", "--catalog", "small14", "--max-order", "7",
               "--out", str(out_dir)])
    assert rc == 1
    assert "even" in capsys.readouterr().err


def test_oracle_listing(capsys):
    assert main(["oracle", "--order", "4"]) == 0
    out = capsys.readouterr().out
    assert "1 vertex-transitive cubic graphs" in out
    assert "C~" in out


def test_oracle_against_store(out_dir, capsys):
    main(["census", "--catalog", "small14", "--max-order", "10",
          "--out", str(out_dir)])
    capsys.readouterr()
    assert main(["oracle", "--order", "10", "--store", str(out_dir)]) == 0
    assert "missing 0, extra 0" in capsys.readouterr().out


def test_oracle_mismatch_exit_code(out_dir, capsys):
    main(["census", "--catalog", "small14", "--max-order", "8",
          "--out", str(out_dir)])
    capsys.readouterr()
    # order-10 graphs cannot be in a max-order-8 store
    assert main(["oracle", "--order", "10", "--store", str(out_dir)]) == 1
    assert "missing 3" in capsys.readouterr().out


def test_classify_command(tmp_path, capsys):
    path = tmp_path / "in.g6"
    write_graph6_file(path, [k4(), ladder(3, "circular")])
    assert main(["classify", "--in", str(path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("order,canonical_graph6,m,")
    assert lines[1] == "4,C~,1,true,false,false,3,1,true"
    assert lines[2].split(",")[0] == "6"


def test_merge_split_roundtrip(tmp_path, capsys):
    src = tmp_path / "tk4.g6"
    write_graph6_file(src, [truncation(k4())])
    assert main(["merge", "--in", str(src), "--group", "aut"]) == 0
    out = capsys.readouterr().out.splitlines()
    quotient = graph6_decode(out[0])
    assert quotient.n == 6 and quotient.is_regular(4)
    dec = parse_cycles_file("\n".join(out[1:]) + "\n")
    assert len(dec.cycles) == 4

    qpath = tmp_path / "q.g6"
    cpath = tmp_path / "c.txt"
    write_graph6_file(qpath, [quotient])
    cpath.write_text("\n".join(out[1:]) + "\n")
    assert main(["split", "--in", str(qpath), "--cycles", str(cpath)]) == 0
    back = graph6_decode(capsys.readouterr().out.strip())
    assert canonical_form(back) == canonical_form(truncation(k4()))


def test_merge_catalog_reference(tmp_path, capsys):
    src = tmp_path / "tk4.g6"
    write_graph6_file(src, [truncation(k4())])
    assert main(["merge", "--in", str(src), "--group", "extras:S4"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "cycles 4 over 6"


def test_merge_unknown_label(tmp_path, capsys):
    src = tmp_path / "tk4.g6"
    write_graph6_file(src, [truncation(k4())])
    assert main(["merge", "--in", str(src), "--group", "extras:Nope"]) == 1
    assert "no group labelled" in capsys.readouterr().err


def test_merge_degenerate_reports_kind(tmp_path, capsys):
    src = tmp_path / "prism.g6"
    write_graph6_file(src, [ladder(4, "circular")])
    assert main(["merge", "--in", str(src)]) == 1
    assert "circular ladder" in capsys.readouterr().err


def test_merge_requires_single_graph(tmp_path, capsys):
    src = tmp_path / "two.g6"
    write_graph6_file(src, [truncation(k4()), k4()])
    assert main(["merge", "--in", str(src)]) == 1
    assert "exactly one graph" in capsys.readouterr().err


def test_split_rejects_non_tetravalent_host(tmp_path, capsys):
    qpath = tmp_path / "q.g6"
    write_graph6_file(qpath, [Graph(3, [(0, 1), (1, 2), (0, 2)])])
    cpath = tmp_path / "c.txt"
    cpath.write_text("cycles 1 over 3\n0 1 2\n")
    assert main(["split", "--in", str(qpath), "--cycles", str(cpath)]) == 1
    assert "tetravalent" in capsys.readouterr().err


def test_split_rejects_bad_cycles(tmp_path, capsys):
    k5 = Graph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    qpath = tmp_path / "q.g6"
    write_graph6_file(qpath, [k5])
    cpath = tmp_path / "c.txt"
    cpath.write_text("cycles 2 over 5\n0 1 2 3 4\n0 1 2 3 4\n")
    assert main(["split", "--in", str(qpath), "--cycles", str(cpath)]) == 1
    assert "cycle decomposition" in capsys.readouterr().err


def test_tables_command(out_dir, tmp_path, capsys):
    main(["census", "--catalog", "small14", "--max-order", "10",
          "--out", str(out_dir)])
    report = tmp_path / "report"
    assert main(["tables", "--store", str(out_dir), "--out", str(report)]) == 0
    assert (report / "extremal.csv").exists()
    assert (report / "counts_by_order.png").exists()
    assert (report / "extremal_bounds.png").exists()
    rows = (report / "extremal.csv").read_text().splitlines()
    assert rows[0] == "table,parameter,order,witness_graph6,exact"
    assert "n_vt_girth,5,10," in "\n".join(rows)


def test_tables_no_figures(out_dir, capsys):
    main(["census", "--catalog", "small14", "--max-order", "6",
          "--out", str(out_dir)])
    assert main(["tables", "--store", str(out_dir), "--no-figures"]) == 0
    assert (out_dir / "extremal.csv").exists()
    assert not (out_dir / "counts_by_order.png").exists()


def test_config_fills_missing_flags(tmp_path, capsys):
    conf = tmp_path / "conf.json"
    out = tmp_path / "conf_out"
    conf.write_text(json.dumps({"max-order": 6, "out": str(out),
                                "catalog": "small14"}))
    assert main(["census", "--config", str(conf)]) == 0
    assert (out / "census.csv").exists()


def test_census_missing_required_option(tmp_path, capsys):
    rc = main(["census", "--catalog", "small14",
               "--out", str(tmp_path / "x")])
    assert rc == 1
    assert "--max-order is required" in capsys.readouterr().err


def test_config_flags_win(tmp_path, capsys):
    conf = tmp_path / "conf.json"
    conf.write_text(json.dumps({"max-order": 8}))
    out = tmp_path / "o"
    rc = main(["census", "--catalog", "small14", "--max-order", "6",
               "--out", str(out), "--config", str(conf)])
    assert rc == 0
    store = load_store(out)
    assert store.max_order == 6


def test_config_supplies_optional_values(tmp_path, capsys):
    conf = tmp_path / "conf.json"
    conf.write_text(json.dumps({"workers": 2, "no-desk-inputs": True}))
    out = tmp_path / "o"
    rc = main(["census", "--catalog", "small14", "--max-order", "10",
               "--out", str(out), "--config", str(conf)])
    assert rc == 0
    # desk inputs disabled by config, so the split route cannot fire
    assert len(load_store(out)) == 7


def test_workers_env_respected(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CVTCENSUS_WORKERS", "2")
    out = tmp_path / "o"
    rc = main(["census", "--catalog", "small14", "--max-order", "8",
               "--out", str(out)])
    assert rc == 0
    assert len(load_store(out)) == 5

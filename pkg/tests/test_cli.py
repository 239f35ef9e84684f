import numpy as np
import pytest

from acss import graphs as G
from acss.bdm import bdm
from acss.cli import main
from acss.ctm import CtmTable
from acss.matrix import write_matrix


def test_ctm_build(tmp_path, capsys):
    out = tmp_path / "k1.ctm"
    assert main(["ctm", "build", "--states", "1", "--budget", "500", "--out", str(out)]) == 0
    t = CtmTable.load(out)
    assert t.meta.total_run == 256 and t.meta.total_halting == 128
    assert "2 arrays" in capsys.readouterr().out


def test_ctm_build_size_guard(tmp_path):
    assert main(["ctm", "build", "--states", "3", "--out", str(tmp_path / "x.ctm")]) == 3


def test_bdm(tmp_path, k2_path, k2_table, capsys):
    m = np.random.default_rng(0).integers(0, 2, (9, 7), dtype=np.uint8)
    write_matrix(m, tmp_path / "m.txt")
    assert main(["bdm", "--table", str(k2_path), "--matrix", str(tmp_path / "m.txt"),
                 "--boundary", "pad-zero"]) == 0
    assert float(capsys.readouterr().out) == bdm(m, 4, k2_table, "pad-zero")


def test_config_errors(tmp_path, k2_path):
    (tmp_path / "m.txt").write_text("2 2\n01\n1\n")
    assert main(["bdm", "--table", str(k2_path), "--matrix", str(tmp_path / "m.txt")]) == 2
    assert main(["bdm", "--table", str(tmp_path / "none.ctm"),
                 "--matrix", str(tmp_path / "m.txt")]) == 2
    with pytest.raises(SystemExit) as info:
        main(["bdm", "--table", str(k2_path)])
    assert info.value.code == 2


def test_graph_complexity(tmp_path, k2_path, k2_table, capsys):
    g = G.erdos_renyi(6, 0.5, 1)
    G.write_graph(g, tmp_path / "g.edges")
    args = ["graph", "complexity", "--table", str(k2_path), "--graph", str(tmp_path / "g.edges")]
    assert main(args + ["--exact", "--seed", "0"]) == 0
    line = capsys.readouterr().out.split()
    assert line[0] == "bdm"
    assert float(line[1]) == G.graph_bdm(g, table=k2_table, mode="exact")
    assert main(args + ["--samples", "5", "--seed", "2", "--measures", "bdm,compress"]) == 0
    assert [ln.split()[0] for ln in capsys.readouterr().out.splitlines()] == ["bdm", "compress"]


def test_graph_size_guard(tmp_path, k2_path):
    G.write_graph(G.cycle(9), tmp_path / "c9.edges")
    args = ["graph", "complexity", "--table", str(k2_path), "--graph", str(tmp_path / "c9.edges"),
            "--exact", "--seed", "0"]
    assert main(args) == 3


def test_experiment(tmp_path, k2_path):
    out = tmp_path / "hc"
    assert main(["experiment", "hypercube", "--table", str(k2_path), "--seed", "1",
                 "--out", str(out), "--dim-max", "4", "--samples", "10"]) == 0
    assert {p.name for p in out.iterdir()} >= {"results.csv", "report.json", "plot_bdm.svg"}
    assert main(["experiment", "hypercube", "--table", str(tmp_path / "nope.ctm"),
                 "--seed", "1", "--out", str(out)]) == 2

import json

import pytest

from modflow.cli import main
from modflow.graph import write_graph


@pytest.fixture
def p4_file(tmp_path, p4):
    path = tmp_path / "p4.txt"
    write_graph(p4, str(path))
    return str(path)


def test_cli_matching_json(p4_file, capsys):
    assert main(["matching", p4_file, "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["schema"] == 1
    assert out["value"] == 2 and out["mw"] == 4
    assert sorted(map(tuple, out["witness"])) in ([(0, 1), (2, 3)],)


def test_cli_matching_oracle(p4_file, capsys):
    assert main(["matching", p4_file, "--oracle", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["oracle_match"] is True and out["oracle_value"] == 2


def test_cli_edp_with_kernel(p4_file, tmp_path, capsys):
    kern = tmp_path / "k.dimacs"
    code = main(
        ["edp", p4_file, "--s", "0", "--t", "3", "--emit-kernel", str(kern), "--json"]
    )
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 1
    text = kern.read_text()
    assert text.startswith("p max 6 ")
    assert "n 1 s" in text and "n 6 t" in text


def test_cli_edp_requires_endpoints(p4_file, capsys):
    assert main(["edp", p4_file]) == 1


def test_cli_dimacs_format(tmp_path, capsys, k4):
    path = tmp_path / "k4.col"
    write_graph(k4, str(path), fmt="dimacs")
    assert main(["gmincut", str(path), "--format", "dimacs", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 3


def test_cli_dump_md(p4_file, capsys):
    assert main(["triangles", p4_file, "--dump-md"]) == 0
    out = capsys.readouterr().out
    assert "prime" in out and out.count("leaf") >= 4


def test_cli_bmatching_and_capacities(tmp_path, capsys, p4):
    gpath = tmp_path / "g.txt"
    write_graph(p4, str(gpath))
    bpath = tmp_path / "b.txt"
    bpath.write_text("1\n2\n2\n1\n")
    assert main(["bmatching", str(gpath), "--b", str(bpath), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 3
    cpath = tmp_path / "c.txt"
    cpath.write_text("1\n1\n1\n1\n")
    assert (
        main(["vflow", str(gpath), "--s", "0", "--t", "2", "--capacities", str(cpath), "--json"])
        == 0
    )
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 1


def test_cli_vflow_unbounded(tmp_path, capsys, p4):
    gpath = tmp_path / "g.txt"
    write_graph(p4, str(gpath))
    cpath = tmp_path / "c.txt"
    cpath.write_text("1\n1\n1\n1\n")
    assert (
        main(["vflow", str(gpath), "--s", "0", "--t", "1", "--capacities", str(cpath), "--json"])
        == 0
    )
    out = json.loads(capsys.readouterr().out)
    assert out["unbounded"] is True


def test_cli_capacity_length_mismatch(tmp_path, p4, capsys):
    gpath = tmp_path / "g.txt"
    write_graph(p4, str(gpath))
    cpath = tmp_path / "c.txt"
    cpath.write_text("1\n1\n")
    assert (
        main(["vflow", str(gpath), "--s", "0", "--t", "2", "--capacities", str(cpath)])
        == 1
    )


def test_cli_gen_and_bench(tmp_path, capsys):
    recipe = tmp_path / "recipe.json"
    recipe.write_text(
        json.dumps(
            {"quotient": "C5", "children": [{"clique": 2}] * 5, "seed": 3}
        )
    )
    out_graph = tmp_path / "g.txt"
    assert main(["gen", "--recipe", str(recipe), "--out", str(out_graph)]) == 0
    assert out_graph.exists()

    suite = tmp_path / "suite.json"
    suite.write_text(
        json.dumps(
            {
                "seed": 1,
                "instances": [
                    {
                        "problem": "matching",
                        "recipe": {"quotient": "P4", "children": [{"clique": 3}] * 4},
                    },
                    {
                        "problem": "edp",
                        "recipe": {"quotient": "C5", "children": [{"independent": 2}] * 5},
                        "s": 0,
                        "t": 9,
                    },
                    {
                        "problem": "triangles",
                        "recipe": {"quotient": "bull", "children": [{"clique": 2}] * 5},
                    },
                ],
            }
        )
    )
    out_json = tmp_path / "bench.json"
    out_csv = tmp_path / "bench.csv"
    assert (
        main(["bench", "--suite", str(suite), "--out", str(out_json), "--csv", str(out_csv)])
        == 0
    )
    records = json.loads(out_json.read_text())
    assert len(records) == 6  # mw + baseline per instance
    by_algo = {}
    for r in records:
        assert r["schema"] == 1
        by_algo.setdefault((r["problem"], r["seed"]), set()).add(
            (r["algorithm"], r["value"])
        )
    for pair in by_algo.values():
        vals = {v for _, v in pair}
        assert len(vals) == 1  # mw and baseline agree
    header = out_csv.read_text().splitlines()[0]
    assert header == "problem,n,m,mw,algorithm,impl,value,time_ms,seed"


def test_cli_bench_impl_both(tmp_path):
    import modflow

    suite = tmp_path / "suite.json"
    suite.write_text(
        json.dumps(
            {
                "seed": 2,
                "instances": [
                    {
                        "problem": "gmincut",
                        "recipe": {"quotient": "P4", "children": [{"clique": 2}] * 4},
                    }
                ],
            }
        )
    )
    out_json = tmp_path / "bench.json"
    assert main(["bench", "--suite", str(suite), "--out", str(out_json), "--impl", "both"]) == 0
    records = json.loads(out_json.read_text())
    impls = {r["impl"] for r in records}
    assert impls == set(modflow.available_backends())

from __future__ import annotations

import json

import pytest

from hajoslab.canonical import is_isomorphic
from hajoslab.cli import main
from hajoslab.graph import Graph
from hajoslab.graphio import from_graph6
from hajoslab.recipe import RecipeError, load_recipe
from hajoslab.verify import KNOWN, connected_graphs, distance_two_conditions, run_suite
from oracles import connected_counts_atlas

C5_RECIPE = {"steps": [{"let": "a", "op": "complete", "n": 3}, {"let": "b", "op": "complete", "n": 3},
                       {"op": "merge", "graphs": ["a", "b"], "edge1": [0, 1], "edge2": [0, 1]}]}


def test_connected_graph_counts_match_atlas():
    atlas = connected_counts_atlas(7)
    assert {n: len(connected_graphs(n)) for n in range(1, 8)} == atlas == {
        1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def test_distance_two_conditions():
    # path a-v-u-w-b: d(v, w) = 2, private neighbours a and b have disjoint neighbourhoods
    p = Graph.path(5)
    assert distance_two_conditions(p, 1, 3)
    assert not distance_two_conditions(Graph.cycle(5), 0, 2)  # path of length three
    assert not distance_two_conditions(p, 0, 4)


@pytest.mark.parametrize("suite", [s for s in KNOWN if s != "connectivity"])
def test_suites_small(suite):
    rep = run_suite(suite, 15, 11)
    assert rep.ok, rep.failures


def test_recipe_merge_and_errors():
    assert is_isomorphic(load_recipe(json.dumps(C5_RECIPE)), Graph.cycle(5))
    with pytest.raises(RecipeError, match="no steps"):
        load_recipe('{"steps": []}')
    with pytest.raises(RecipeError, match="line 3"):
        load_recipe('{"steps": [\n {"let": "a", "op": "complete", "n": 3},\n {"op": "vid", "graph": "zz", "pairs": [[0, 1]]}\n]}')
    with pytest.raises(RecipeError, match="line 1"):
        load_recipe("{oops")
    g = load_recipe('{"steps": [{"op": "gn", "n": 3}]}')
    assert g.order == 12


def test_recipe_other_ops():
    r = {"steps": [{"let": "k", "op": "complete", "n": 4},
                   {"let": "s", "op": "split", "graph": "k", "vertex": 0, "side": [1]},
                   {"let": "d", "op": "dhgo", "graphs": ["k", "k"], "vertex": 0, "side": [1], "edge2": [0, 1]},
                   {"let": "o", "op": "ore", "graphs": ["k", "k"], "edge1": [0, 1], "edge2": [0, 1], "mu": [[2, 2]]},
                   {"let": "e", "op": "edges", "n": 3, "edges": [[0, 1]]},
                   {"let": "v", "op": "vid", "graph": "e", "pairs": [[0, 2]]}],
         "output": "d"}
    assert load_recipe(json.dumps(r)).order == 7


def _write(tmp_path, obj, name="r.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_cli_construct(tmp_path, capsys):
    assert main(["construct", "--recipe", _write(tmp_path, C5_RECIPE)]) == 0
    out = capsys.readouterr()
    assert is_isomorphic(from_graph6(out.out.strip()), Graph.cycle(5))
    assert json.loads(out.err) == {"order": 5, "size": 5}
    assert main(["construct", "--recipe", _write(tmp_path, {"steps": []})]) == 2


def test_cli_betti(tmp_path, capsys):
    assert main(["betti", "--graph6", "C~", "--max-dim", "2"]) == 0
    assert json.loads(capsys.readouterr().out) == {"field": "gf2", "betti": [0, 0, 1]}
    assert main(["betti", "--graph6", "Dhc", "--field", "q"]) == 0
    assert json.loads(capsys.readouterr().out)["betti"] == [0, 1]
    gn = _write(tmp_path, {"steps": [{"op": "gn", "n": 5}]})
    assert main(["betti", "--recipe", gn, "--max-dim", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["betti"] == [0, 15, 0]
    assert main(["betti"]) == 2
    assert main(["betti", "--graph6", "F~~~w", "--max-dim", "2", "--cap", "5"]) == 3


def test_cli_experiments(tmp_path, capsys):
    out = tmp_path / "cra"
    assert main(["cra", "--k", "3", "--p", "0.5", "--t", "0", "--seed", "1", "--out-dir", str(out)]) == 0
    assert json.loads((out / "summary.json").read_text())["count"] == 0
    assert main(["ura", "--k", "3", "--m", "2", "--n", "2", "--t", "4", "--seed", "1",
                 "--out-dir", str(tmp_path / "ura"), "--workers", "1"]) == 0
    assert main(["gnp", "--n", "8", "--p", "0.5", "--samples", "3", "--out-dir", str(tmp_path / "g"),
                 "--workers", "1"]) == 0
    data = json.loads((tmp_path / "g" / "summary.json").read_text())
    assert isinstance(data["config"]["seed"], int)  # generated seed is recorded
    assert main(["cra", "--k", "2", "--p", "0.5", "--t", "1", "--out-dir", str(out)]) == 2
    assert main(["cra", "--k", "3", "--p", "0.5", "--t", "30", "--round-cap", "2", "--out-dir", str(out)]) == 3


def test_cli_tables(tmp_path, capsys):
    assert main(["cra-grid", "--k", "3", "--p", "0.5", "--t", "5", "--seed", "0", "--out-dir", str(tmp_path / "t1"),
                 "--workers", "1"]) == 0
    assert (tmp_path / "t1" / "table.csv").read_text().startswith("k,p,count")
    assert main(["ura-grid", "--k", "3", "--t", "3", "--m", "2", "--n", "2", "--seed", "0",
                 "--out-dir", str(tmp_path / "t2"), "--workers", "1"]) == 0


def test_cli_verify(capsys):
    assert main(["verify", "far-identification", "--trials", "5"]) == 0
    assert "5/5 PASS" in capsys.readouterr().out
    assert main(["verify", "connectivity", "--max-order", "5", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"]
    assert main(["verify", "nope"]) == 2
    assert "known:" in capsys.readouterr().err

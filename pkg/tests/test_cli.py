import json
import subprocess
import sys

import pytest

from star_ics.cli import main
from star_ics.export import gamma_to_json, tree_from_json, tree_to_dot, tree_to_json
from star_ics.gamma import build_gamma
from star_ics.lambda_tree import generate_pruned, generate_unpruned


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_dist_csv(capsys):
    code, out = run(["dist", "--n", "5", "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "omega,classes,vertices"
    assert lines[-1] == "6,1,3"
    assert len(lines) == 8


def test_dist_json_big_ints_are_strings(capsys):
    _, out = run(["dist", "--n", "30", "--format", "json"], capsys)
    doc = json.loads(out)
    assert all(isinstance(r["vertices"], str) for r in doc["rows"])
    assert sum(int(r["vertices"]) for r in doc["rows"]) == 265252859812191058636308480000000


def test_diameter(capsys):
    assert run(["diameter", "--n", "9"], capsys) == (0, "12\n")


def test_gamma_json_has_thread(capsys):
    _, out = run(["gamma", "--n", "9", "--format", "json"], capsys)
    arcs = json.loads(out)["arcs"]
    assert any(a["from"] == [3, 5] and a["to"] == [2, 5, 5] and a["kind"] == "thread" for a in arcs)


def test_gamma_dot_threads_dashed(capsys):
    _, out = run(["gamma", "--n", "9", "--format", "dot"], capsys)
    dashed = [line for line in out.splitlines() if "dashed" in line]
    assert len(dashed) == 9
    assert 'label="/2", style=dashed' in dashed[0]


def test_tree_dot_labels():
    dot = tree_to_dot(generate_pruned(4))
    assert 'label="2.2 | 3,3"' in dot
    assert 'label="*3"' in dot and 'label="/2"' in dot
    assert "digraph" in tree_to_dot(generate_unpruned(5))


@pytest.mark.parametrize("n", [2, 5, 9])
def test_json_round_trip(n):
    tree = generate_pruned(n)
    back = tree_from_json(tree_to_json(tree))
    assert back.nodes == tree.nodes
    assert back.horizontal == tree.horizontal and back.vertical == tree.vertical
    u = generate_unpruned(n)
    assert tree_from_json(tree_to_json(u)).nodes == u.nodes


def test_deterministic_bytes():
    assert gamma_to_json(build_gamma(8)) == gamma_to_json(build_gamma(8))
    assert tree_to_dot(generate_pruned(8)) == tree_to_dot(generate_pruned(8))


def test_ledger_and_table(capsys):
    _, out = run(["ledger", "--n", "9"], capsys)
    assert "u(35,6)\t642315(165.432)\t6\t142365(65.432)\t32\t0\t2" in out
    _, out = run(["table", "--n", "11"], capsys)
    assert "2468aa" in out.splitlines()[-1]
    _, out = run(["table", "--n", "5", "--format", "json"], capsys)
    assert json.loads(out)["rows"][0]["nodes"][0] == [0]


def test_tree_outputs(capsys, tmp_path):
    target = tmp_path / "t.json"
    assert run(["tree", "--n", "6", "--format", "json", "-o", str(target)], capsys) == (0, "")
    assert len(json.loads(target.read_text())["nodes"]) == len(generate_pruned(6))
    _, out = run(["tree", "--n", "4", "--unpruned"], capsys)
    assert out.split() == ["0", "1", "2", "3", "22", "23", "33"]


def test_eset(capsys):
    _, out = run(["eset", "--n", "4", "--i", "2"], capsys)
    assert out.splitlines()[1:] == ["0,0", "1,1", "2,2", "3,2", "4,1"]


def test_compare_closed(capsys):
    _, out = run(["dist", "--n", "4", "--compare-closed"], capsys)
    assert "6,2,27,4" in out.splitlines()


def test_usage_errors(capsys):
    for argv in (["tree", "--n", "4", "--format", "csv"], ["dist", "--n", "1"], ["eset", "--n", "4", "--i", "9"], ["bogus"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_verify_refusal(capsys):
    assert main(["verify", "--max-n", "10"]) == 3
    assert main(["verify", "--max-n", "11", "--allow-large"]) == 3


def test_verify_small(capsys):
    code, out = run(["verify", "--max-n", "3"], capsys)
    assert code == 0
    assert out.splitlines()[-1].endswith("0 failed")


def test_verify_reports_quotient_failure(capsys):
    code, out = run(["verify", "--max-n", "4", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 1
    assert doc["checks"]["quotient edges_project_to_arcs n=4"]["passed"] is False
    assert doc["checks"]["distribution n=4"]["passed"] is True


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "star_ics", "diameter", "--n", "7"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "9\n"

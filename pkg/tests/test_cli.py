import json
import subprocess
import sys

import pytest

from svmv.cli import main

EDGE_GRAPH = {
    "nodes": [{"id": "x", "colour": "B"}, {"id": "y", "colour": "W"}],
    "edges": [{"u": "x", "v": "y", "port_uv": "1", "port_vu": "1"}],
    "proper": True,
}


def test_build_small_plain_tree(tmp_path, capsys):
    base = tmp_path / "g2"
    assert main(["build", "--family", "g", "--d", "2", "--radius", "4",
                 "--out", str(base)]) == 0
    assert "9 nodes" in capsys.readouterr().out
    doc = json.loads((tmp_path / "g2.json").read_text())
    assert len(doc["nodes"]) == 9
    assert (tmp_path / "g2.dot").read_text().startswith("graph {")


def test_build_coloured_ball(tmp_path, capsys):
    base = tmp_path / "hb"
    assert main(["build", "--family", "hb", "--d", "4", "--radius", "1",
                 "--out", str(base)]) == 0
    assert "8 nodes" in capsys.readouterr().out
    doc = json.loads((tmp_path / "hb.json").read_text())
    colours = sorted(n.get("colour") for n in doc["nodes"])
    assert colours == ["B", "B", "B", "B", "G", "W", "W", "W"]


def test_build_resource_cap_exit_code(tmp_path):
    assert main(["build", "--family", "g", "--d", "6", "--radius", "12",
                 "--max-nodes", "1000", "--out", str(tmp_path / "big")]) == 3


def test_psw_json(tmp_path):
    out = tmp_path / "psw.json"
    assert main(["psw", "--d", "2", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["k"] == 1
    assert doc["verified"] == "psw"
    assert doc["walk1"][0] == "(1,0)"
    assert doc["walk2"][0] == "(2,1)"


def test_bisim_json(tmp_path):
    out = tmp_path / "bisim.json"
    assert main(["bisim", "--family", "g", "--d", "3", "--a", "(1,0)",
                 "--b", "(2,1)", "--radius", "5", "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == {"similar": False,
                                           "failing_radius": 4}
    assert main(["bisim", "--family", "g", "--d", "3", "--a", "(1,0)",
                 "--b", "(2,1)", "--radius", "3", "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == {"similar": True,
                                           "failing_radius": None}


def test_theorem_reports(tmp_path):
    out = tmp_path / "t1.json"
    assert main(["theorem1", "--delta", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["equal_through"] == 2
    out2 = tmp_path / "t2.json"
    assert main(["theorem2", "--d", "2", "--out", str(out2)]) == 0
    doc = json.loads(out2.read_text())
    assert doc["pi_allowed_at_roots"] == {"b": ["B"], "w": ["W"]}


def test_simulate_round_trip(tmp_path):
    base = tmp_path / "hb2"
    assert main(["build", "--family", "hb", "--d", "2", "--radius", "4",
                 "--collapse", "--out", str(base)]) == 0
    out = tmp_path / "sim.json"
    assert main(["simulate", "--inner", "pi-solver",
                 "--graph", str(base) + ".json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["outputs_equal"] is True
    assert doc["overhead_rounds"] == 4
    assert doc["signature_collisions"] == 0


def test_check_pi_exit_codes(tmp_path):
    graph_file = tmp_path / "edge.json"
    graph_file.write_text(json.dumps(EDGE_GRAPH))
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"x": "W", "y": "B"}))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"x": "B", "y": "B"}))
    out = tmp_path / "check.json"
    assert main(["check-pi", "--graph", str(graph_file),
                 "--candidate", str(good), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["ok"] is True
    assert main(["check-pi", "--graph", str(graph_file),
                 "--candidate", str(bad), "--out", str(out)]) == 1
    assert json.loads(out.read_text())["violation"]["node"] == "x"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["bisim", "--family", "g"])
    assert err.value.code == 2


def test_bad_path_syntax_is_usage_error(tmp_path):
    assert main(["bisim", "--family", "g", "--d", "3", "--a", "(1,0,B)",
                 "--b", "(2,1)", "--radius", "2"]) == 2


def test_reproduce_fault_injection_fails(tmp_path):
    out = tmp_path / "rows.csv"
    code = main(["reproduce", "--seed", "0", "--d-max", "2",
                 "--inject-collapse-fault", "--out", str(out)])
    assert code == 1
    text = out.read_text()
    assert "collapse-properness" in text
    assert "FAIL" in text


def _run_cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "svmv.cli", *args],
                          cwd=cwd, capture_output=True, text=True)


def test_outputs_byte_identical_across_processes(tmp_path):
    # Hash randomisation differs between the two processes; equal bytes
    # demonstrate order-independent serialisation.
    for name in ("a.json", "b.json"):
        result = _run_cli(["psw", "--d", "3", "--out",
                           str(tmp_path / name)], cwd=tmp_path)
        assert result.returncode == 0, result.stderr
    assert (tmp_path / "a.json").read_bytes() == \
        (tmp_path / "b.json").read_bytes()


def test_reproduce_csv_deterministic_for_fixed_seed(tmp_path):
    outs = []
    for name in ("r1.csv", "r2.csv"):
        out = tmp_path / name
        assert main(["reproduce", "--seed", "7", "--d-max", "3",
                     "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_theorem_report_stable_modulo_timings(tmp_path):
    docs = []
    for name in ("r1.json", "r2.json"):
        result = _run_cli(["theorem1", "--delta", "2", "--out",
                           str(tmp_path / name)], cwd=tmp_path)
        assert result.returncode == 0, result.stderr
        doc = json.loads((tmp_path / name).read_text())
        doc.pop("timings_ms")
        docs.append(doc)
    assert docs[0] == docs[1]

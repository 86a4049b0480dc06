import json

import pytest

from gsplines.cli import main
from conftest import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


TRIANGLE = fixture_path("triangle.json")
PATH = fixture_path("path.json")
HEXCHAIN = fixture_path("hexchain.json")
HEXPOLY = fixture_path("hexpoly.json")
HEXPOLY_OPENS = fixture_path("hexpoly_opens.json")


def test_basis_triangle_golden(capsys):
    code, out, _ = run(capsys, "basis", TRIANGLE)
    assert code == 0
    assert out == (
        "vertex order: u v w\n"
        "[ 1 1  1 ]\n"
        "[ 0 3 28 ]\n"
        "[ 0 0 35 ]\n"
    )


def test_basis_json_round_trips(capsys):
    code, out, _ = run(capsys, "basis", TRIANGLE, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["vertexOrder"] == ["u", "v", "w"]
    assert doc["basis"] == [
        {"u": "1", "v": "1", "w": "1"},
        {"u": "0", "v": "3", "w": "28"},
        {"u": "0", "v": "0", "w": "35"},
    ]


def test_basis_incremental_prints_trace(capsys):
    code, out, _ = run(capsys, "basis", PATH, "--incremental")
    assert code == 0
    assert "leaf-pullback: v attached to u via 3" in out
    assert "leaf-pullback: w attached to v via 5" in out
    assert out.startswith("vertex order: u v w\n[ 1 1 1 ]\n[ 0 3 3 ]\n[ 0 0 5 ]\n")


def test_basis_vertex_order_flag(capsys):
    code, out, _ = run(capsys, "basis", TRIANGLE, "--vertex-order", "w,v,u")
    assert code == 0
    assert out.startswith("vertex order: w v u\n")


def test_verify_path_mod_15(capsys):
    code, out, _ = run(capsys, "verify", PATH, "--mod", "15")
    assert code == 0
    assert out == "brute force = direct = incremental: 225 splines\n"


def test_verify_triangle_mod_105(capsys):
    code, out, _ = run(capsys, "verify", TRIANGLE, "--mod", "105")
    assert code == 0
    assert out == "brute force = direct = incremental: 11025 splines\n"


def test_restrict_text(capsys):
    code, out, _ = run(capsys, "restrict", TRIANGLE, "--invert", "3")
    assert code == 0
    assert out == (
        "ring: Int localized at {3}\n"
        "vertices: u v w\n"
        "edges:\n"
        "  u-w: 7\n"
        "  v-w: 5\n"
        "trivialized edges:\n"
        "  u-v\n"
        "classification: Other\n"
    )


def test_spectrum_text_and_json(capsys):
    code, out, _ = run(capsys, "spectrum", TRIANGLE)
    assert code == 0
    assert out == (
        "relevant factors: 3, 5, 7\n"
        "fiber at 3: {u, v} {w}\n"
        "fiber at 5: {u} {v, w}\n"
        "fiber at 7: {u, w} {v}\n"
        "generic fiber: 3 points\n"
        "components: 1\n"
        "holeCount: 1\n"
    )
    code, out, _ = run(capsys, "spectrum", TRIANGLE, "--json")
    doc = json.loads(out)
    assert doc == {
        "fibers": {"3": [["u", "v"], ["w"]], "5": [["u"], ["v", "w"]], "7": [["u", "w"], ["v"]]},
        "holeCount": 1,
        "components": 1,
    }


def test_cover_command(capsys, tmp_path):
    opens = tmp_path / "opens.json"
    opens.write_text(json.dumps({"opens": [
        {"name": "U1", "invert": ["2"]},
        {"name": "U2", "invert": ["4"]},
    ]}))
    code, out, _ = run(capsys, "cover", TRIANGLE, "--opens", str(opens))
    assert code == 0
    assert out == "cover status: FailsToCover (common factor 2)\n"


def test_certify_hexpoly(capsys):
    code, out, _ = run(capsys, "certify", HEXPOLY, "--opens", HEXPOLY_OPENS)
    assert code == 0
    assert out == (
        "open U1: DeterminedByCycle(A3, B3, C3, D3, E3, F3); trivialized 12 edge(s), 6 left\n"
        "open U2: DeterminedByCycle(A2, B2, C2, D2, E2, F2); trivialized 12 edge(s), 6 left\n"
        "open U3: DeterminedByCycle(A1, B1, C1, D1, E1, F1); trivialized 12 edge(s), 6 left\n"
        "cover status: Covers (single-variable witness in x: the x-only subproducts have unit gcd)\n"
        "verdict: FREE\n"
    )


def test_delete_edge_with_diff(capsys):
    code, out, _ = run(capsys, "delete-edge", TRIANGLE, "--edge", "u,v", "--emit-diff")
    assert code == 0
    assert "spectrum diff:" in out
    assert "holeCount: 1 -> 0" in out


def test_contract_outputs_merged_graph(capsys):
    code, out, _ = run(capsys, "contract", TRIANGLE, "--edge", "u,v", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["vertices"] == ["u~v", "w"]
    assert doc["edges"] == [
        {"ends": ["u~v", "w"], "label": {"factors": [["5", 1], ["7", 1]]}}
    ]


def test_graph_json_output_reloads(capsys, tmp_path):
    code, out, _ = run(capsys, "delete-edge", TRIANGLE, "--edge", "u,v", "--json")
    assert code == 0
    f = tmp_path / "after.json"
    f.write_text(out)
    code, out2, _ = run(capsys, "diff", TRIANGLE, str(f))
    assert code == 0
    assert out2.splitlines()[0] == "operation: delete-edge u-v"


def test_text_output_is_byte_stable(capsys):
    code1, out1, _ = run(capsys, "spectrum", HEXCHAIN)
    code2, out2, _ = run(capsys, "spectrum", HEXCHAIN)
    assert (code1, out1) == (code2, out2)


def test_exit_codes(capsys, tmp_path):
    # missing file: input error
    code, _, err = run(capsys, "basis", str(tmp_path / "nope.json"))
    assert code == 2
    # schema violation
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ring": {"kind": "Int"}, "vertices": ["u"], "junk": 1}))
    code, _, err = run(capsys, "basis", str(bad))
    assert code == 2 and "junk" in err
    # parse error inside a label
    bad.write_text(
        json.dumps(
            {
                "ring": {"kind": "Int"},
                "vertices": ["u", "v"],
                "edges": [{"ends": ["u", "v"], "label": {"factors": [["3(", 1]]}}],
            }
        )
    )
    code, _, err = run(capsys, "basis", str(bad))
    assert code == 2
    # computational failure: multivariate basis
    code, _, err = run(capsys, "basis", HEXPOLY)
    assert code == 1
    # enumeration guard
    big = tmp_path / "big.json"
    big.write_text(
        json.dumps(
            {
                "ring": {"kind": "Int"},
                "vertices": [f"v{i}" for i in range(10)],
                "edges": [],
            }
        )
    )
    code, _, err = run(capsys, "verify", str(big), "--mod", "8")
    assert code == 1


def test_unknown_flag_is_an_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["basis", TRIANGLE, "--frobnicate"])
    assert exc.value.code == 2

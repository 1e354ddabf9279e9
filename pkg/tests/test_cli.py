"""End-to-end command-line behavior: exit codes, JSON schema, formats."""

import json

import pytest

from fiberscope.cli import main

Z2_T = {"f": [[0, -1], [0], [1]], "var_order": "t,z"}
TRINOMIAL = {"f": [[0, 1], [1], [0], [1]], "var_order": "t,z"}


@pytest.fixture
def cover_file(tmp_path):
    def write(doc, name="cover.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fiber_success(cover_file, capsys):
    path = cover_file(Z2_T)
    code, out, _ = run(capsys, ["fiber", "--cover", path, "--p", "5",
                                "--t", "5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["agree"] is True
    assert doc["v"] == 1
    assert [(f["e"], f["f"]) for f in doc["factors"]] == [(2, 1)]


def test_fiber_output_byte_stable(cover_file, capsys):
    path = cover_file(Z2_T)
    argv = ["fiber", "--cover", path, "--p", "5", "--t", "7"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    assert first == second
    assert json.loads(first)["v"] == "inf"


def test_fiber_infinity_chart(cover_file, capsys):
    path = cover_file(Z2_T)
    code, out, _ = run(capsys, ["fiber", "--cover", path, "--p", "5",
                                "--t", "1/5", "--chart", "infinity"])
    assert code == 0
    assert json.loads(out)["chart"] == "infinity"
    code, _, _ = run(capsys, ["fiber", "--cover", path, "--p", "5",
                              "--t", "0", "--chart", "infinity"])
    assert code == 4


def test_precondition_exit(cover_file, capsys):
    path = cover_file(Z2_T)
    # t = 0 is on the branch locus
    code, _, err = run(capsys, ["fiber", "--cover", path, "--p", "5",
                                "--t", "0"])
    assert code == 2 and "precondition" in err
    # bad reduction
    code, _, _ = run(capsys, ["fiber", "--cover", path, "--p", "2",
                              "--t", "3"])
    assert code == 2


def test_precision_exit(cover_file, capsys, monkeypatch):
    monkeypatch.setenv("FIBERSCOPE_PRECISION_CAP", "1")
    path = cover_file(TRINOMIAL)
    code, _, err = run(capsys, ["fiber", "--cover", path, "--p", "7",
                                "--t", "2"])
    assert code == 3 and "precision" in err


def test_config_errors(cover_file, capsys, tmp_path):
    path = cover_file(Z2_T)
    assert run(capsys, ["fiber", "--cover", path, "--p", "6",
                        "--t", "1"])[0] == 4          # composite p
    assert run(capsys, ["fiber", "--cover", path, "--p", "5",
                        "--t", "x"])[0] == 4          # not rational
    assert run(capsys, ["fiber", "--cover", path])[0] == 4   # missing args
    assert run(capsys, ["no-such-command"])[0] == 4
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, ["check", "--cover", str(bad), "--p", "5"])[0] == 4
    assert run(capsys, ["fiber", "--cover", str(tmp_path / "absent.json"),
                        "--p", "5", "--t", "1"])[0] == 4
    wrong = cover_file({"f": [[0, -1], [0], [1]], "var_order": "z,t"},
                       "wrong.json")
    assert run(capsys, ["check", "--cover", wrong, "--p", "5"])[0] == 4


def test_check_reports_bad_reduction_with_exit_zero(cover_file, capsys):
    path = cover_file(Z2_T)
    code, out, _ = run(capsys, ["check", "--cover", path, "--p", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["good"] is False and doc["failure_reasons"]


def test_badprimes(cover_file, capsys):
    path = cover_file(Z2_T)
    code, out, _ = run(capsys, ["badprimes", "--cover", path,
                                "--bound", "20"])
    assert code == 0
    assert json.loads(out)["bad_primes"] == [2]


def test_census_measure_mode(cover_file, capsys):
    path = cover_file(Z2_T)
    code, out, _ = run(capsys, ["census", "--cover", path, "--p", "5",
                                "--tbar", "0", "--depth", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["counts"] == {"0": 2, "1": 2}
    assert doc["frequencies"] == {"0": "1/2", "1": "1/2"}
    assert doc["theoretical_frequency"] == "1/2"


def test_census_cycle_mode_with_group(cover_file, capsys):
    path = cover_file(TRINOMIAL)
    gens = json.dumps([[2, 1, 3], [2, 3, 1]])
    code, out, err = run(capsys, ["census", "--cover", path, "--p", "101",
                                  "--group", gens])
    assert code == 0
    assert "genus-hat" in err                 # default ĝ = 0 warning
    doc = json.loads(out)
    assert doc["counts"] == {"1+1+1": 17, "2+1": 50, "3": 34}
    assert doc["chebotarev_pass"] is True


def test_group_ops(capsys):
    s4 = json.dumps([[2, 1, 3, 4], [2, 3, 4, 1]])
    code, out, _ = run(capsys, ["group", "--op", "double-cosets",
                                "--generators", s4, "--sigma", "(1 2)"])
    assert code == 0
    doc = json.loads(out)
    assert sorted(b["size"] for b in doc["blocks"]) == [1, 1, 2]

    code, out, _ = run(capsys, ["group", "--op", "etale",
                                "--generators", s4, "--sigma", "(1 2 3)"])
    assert json.loads(out)["inertia_degrees"] == [3, 1]

    trans = json.dumps([[2, 1, 3], [1, 3, 2]])
    code, out, _ = run(capsys, ["group", "--op", "transitivity",
                                "--generators", trans])
    assert code == 0 and json.loads(out)["connected"] is True

    # --sigma required for coset ops
    assert run(capsys, ["group", "--op", "etale",
                        "--generators", s4])[0] == 4


def test_heights_ops(capsys):
    code, out, _ = run(capsys, ["heights", "--op", "threshold", "--m", "6"])
    assert code == 0
    doc = json.loads(out)
    assert doc["threshold"] == 3 and doc["bound"] == 3

    code, out, _ = run(capsys, ["heights", "--op", "inject", "--m", "41",
                                "--N", "5"])
    doc = json.loads(out)
    assert doc["injective"] is False
    assert abs(doc["proven_below"] - (41 / 2) ** 0.5) < 1e-12

    code, out, _ = run(capsys, ["heights", "--op", "equidist", "--m", "2",
                                "--N", "100"])
    doc = json.loads(out)
    assert {row["class"] for row in doc["rows"]} == {"0:1", "1:0", "1:1"}
    assert run(capsys, ["heights", "--op", "inject", "--m", "41"])[0] == 4


def test_csv_format(capsys):
    code, out, _ = run(capsys, ["heights", "--op", "equidist", "--m", "2",
                                "--N", "100", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "class,count,main_term,residual"
    assert len(lines) == 4


def test_corpus_roundtrip(cover_file, capsys, tmp_path):
    cover_file(Z2_T, "z2.json")
    manifest = tmp_path / "manifest.json"
    manifest.write_text(json.dumps({
        "rows": [
            {"cover": "z2.json", "p": 5, "t": "5"},
            {"cover": "z2.json", "p": 5, "t": "7"},
        ]
    }))
    code, out, _ = run(capsys, ["corpus", "--manifest", str(manifest)])
    assert code == 0
    doc = json.loads(out)
    assert doc["total"] == 2 and doc["failures"] == 0

    # a wrong fixture is a mismatch: exit 1 with a diff
    manifest.write_text(json.dumps({
        "rows": [{
            "cover": "z2.json", "p": 5, "t": "5",
            "expected": {"factors": [
                {"e": 1, "f": 2, "tame_class": None}], "total_degree": 2},
        }]
    }))
    code, out, _ = run(capsys, ["corpus", "--manifest", str(manifest)])
    assert code == 1
    doc = json.loads(out)
    assert doc["failures"] == 1
    assert doc["rows"][0]["fixture_match"] is False
    assert "diff" in doc["rows"][0]


def test_corpus_missing_manifest(capsys, tmp_path):
    code, _, _ = run(capsys, ["corpus", "--manifest",
                              str(tmp_path / "none.json")])
    assert code == 4

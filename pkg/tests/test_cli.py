import json

import pytest

from ltclab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_min_distance(capsys):
    code, out, _ = run_cli(capsys, "min-distance", "--code", "rs:q=7,n=7,k=2")
    assert code == 0
    assert out.strip() == "6"


def test_min_distance_of_power(capsys):
    code, out, _ = run_cli(capsys, "min-distance", "--code", "rs:q=7,n=7,k=2^2")
    assert code == 0
    assert out.strip() == "36"


def test_membership_tpc_true(capsys):
    code, out, _ = run_cli(
        capsys,
        "membership",
        "--graph", "product:n=2,m=2",
        "--small", "rep:q=2,n=2",
        "--word", "0,0,0,0",
    )
    assert code == 0
    assert out.strip() == "true"


def test_membership_tpc_false(capsys):
    code, out, _ = run_cli(
        capsys,
        "membership",
        "--graph", "product:n=2,m=2",
        "--small", "rep:q=2,n=2",
        "--word", "1,0,0,0",
    )
    assert code == 0
    assert out.strip() == "false"


def test_membership_plain_code(capsys):
    code, out, _ = run_cli(
        capsys, "membership", "--code", "rep:q=2,n=3", "--word", "1,1,1"
    )
    assert out.strip() == "true"


def test_encode(capsys):
    code, out, _ = run_cli(
        capsys, "encode", "--code", "rs:q=7,n=7,k=2", "--message", "1,1"
    )
    assert code == 0
    assert json.loads(out) == [1, 2, 3, 4, 5, 6, 0]


def test_encode_feeds_membership(capsys, tmp_path):
    word_file = tmp_path / "w.json"
    run_cli(
        capsys,
        "encode", "--code", "rs:q=5,n=5,k=2", "--message", "2,3",
        "--out", str(word_file),
    )
    code, out, _ = run_cli(
        capsys, "membership", "--code", "rs:q=5,n=5,k=2", "--word-file", str(word_file)
    )
    assert code == 0
    assert out.strip() == "true"


def test_build_code_roundtrip(capsys, tmp_path):
    out_path = tmp_path / "code.json"
    code, _, _ = run_cli(
        capsys, "build-code", "--code", "rep:q=2,n=3", "--out", str(out_path)
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc == {"field": 2, "kind": "generator", "n": 3, "k": 1, "generator": [[1, 1, 1]]}
    code, out, _ = run_cli(
        capsys, "membership", "--code", str(out_path), "--word", "1,1,1"
    )
    assert out.strip() == "true"


def test_robustness_single_error_word(capsys, tmp_path):
    word_file = tmp_path / "e11.json"
    word_file.write_text(json.dumps([1, 0, 0, 0, 0, 0, 0, 0, 0]))
    code, out, _ = run_cli(
        capsys,
        "robustness",
        "--graph", "product:n=3,m=2",
        "--small", "rep:q=2,n=3",
        "--word-file", str(word_file),
        "--exact",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["rho"] == "1/9"
    assert doc["delta"] == "1/9"
    assert doc["ratio"] == "1"


def test_robustness_tau_and_views(capsys):
    code, out, _ = run_cli(
        capsys,
        "robustness",
        "--graph", "product:n=3,m=2",
        "--small", "rep:q=2,n=3",
        "--word", "1,0,0,0,0,0,0,0,0",
        "--tau", "0",
        "--views",
    )
    doc = json.loads(out)
    assert doc["tau"] == "0"
    assert doc["epsilon"] == "1/3"
    assert ["1", "1/3"] in [[str(j), v] for j, v in doc["views"]]
    assert len(doc["views"]) == 6


def test_robustness_tensor_word_file(capsys, tmp_path):
    word_file = tmp_path / "word.json"
    word_file.write_text(
        json.dumps({"field": 2, "shape": [3, 3], "symbols": [0] * 9})
    )
    code, out, _ = run_cli(
        capsys,
        "robustness",
        "--graph", "product:n=3,m=2",
        "--small", "rep:q=2,n=3",
        "--word-file", str(word_file),
    )
    assert json.loads(out)["rho"] == "0"


def test_sweep_writes_deterministic_report(capsys, tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out_path in (out1, out2):
        code, _, _ = run_cli(
            capsys,
            "sweep",
            "--graph", "product:n=3,m=2",
            "--small", "rep:q=2,n=3",
            "--corpus", "mixed:18",
            "--seed", "77",
            "--alpha", "2^-16",
            "--out", str(out_path),
        )
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sweep_with_explicit_full_code(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, _, _ = run_cli(
        capsys,
        "sweep",
        "--graph", "product:n=5,m=2",
        "--small", "rs:q=5,n=5,k=1",
        "--code", "rs:q=5,n=5,k=1^2",
        "--corpus", "mixed:12",
        "--seed", "9",
        "--alpha", "2^-16",
        "--out", str(out_path),
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["summary"]["violations"] == 0
    assert doc["summary"]["hypotheses"]["base"].startswith("[5,1,5]")
    assert all(r["delta"] is not None for r in doc["reports"])


def test_sweep_violation_exit_code(capsys, tmp_path):
    code, _, err = run_cli(
        capsys,
        "sweep",
        "--graph", "product:n=3,m=2",
        "--small", "rep:q=2,n=3",
        "--corpus", "low_weight,wmax=1",
        "--alpha", "2",
        "--out", str(tmp_path / "r.json"),
    )
    assert code == 1


def test_sweep_csv_export(capsys, tmp_path):
    out_path = tmp_path / "r.csv"
    code, _, _ = run_cli(
        capsys,
        "sweep",
        "--graph", "product:n=3,m=2",
        "--small", "rep:q=2,n=3",
        "--corpus", "uniform:6",
        "--seed", "1",
        "--out", str(out_path),
        "--format", "csv",
    )
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert len(lines) == 7  # header + one row per word
    assert "rho" in lines[0]


def test_compose_check_cli(capsys):
    code, out, _ = run_cli(
        capsys,
        "compose-check",
        "--graph", "product:n=2,m=4",
        "--graph2", "product:n=2,m=3",
        "--small", "rep:q=2,n=2^2",
        "--corpus", "uniform:10",
        "--seed", "3",
    )
    assert code == 0
    assert json.loads(out)["report"]["identity_mismatches"] == 0


def test_expansion_check_cli(capsys):
    code, out, _ = run_cli(
        capsys, "expansion-check", "--graph", "product:n=2,m=3", "--exact"
    )
    assert code == 0
    assert json.loads(out)["report"]["violations"] == 0


def test_query_account_cli(capsys):
    code, out, _ = run_cli(
        capsys, "query-account", "--n", "2", "--t", "2", "--alpha", "2^-32"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["queries"] == 4
    assert doc["repetitions"] == str(2**64)
    assert doc["block_length"] == 16


def test_usage_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "min-distance", "--code", "nonsense:spec")
    assert code == 2
    assert "error" in err.lower()


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2

"""Command-line contract: exit codes, artifacts, round trips, determinism."""

import json

import pytest

from monomat.cli import main, parse_witness_file
from monomat.matrix import format_matrix, parse_matrix
from monomat.witness import build_witness, sample_sign_matrix

INCREASING_4X4 = "4 4\n1 2 3 4\n5 6 7 8\n9 10 11 12\n13 14 15 16\n"


@pytest.fixture
def inc_matrix(tmp_path):
    path = tmp_path / "inc.txt"
    path.write_text(INCREASING_4X4)
    return path


def run(args):
    return main([str(a) for a in args])


def test_find_trivial_increasing(inc_matrix, tmp_path, capsys):
    out = tmp_path / "w.json"
    code = run(["find", inc_matrix, "--n", 2, "--format", "json", "--output", out])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["rows"] == [1, 2]
    assert payload["cols"] == [1, 2]
    assert payload["met_target"] is True
    assert payload["guaranteed"] is False
    assert payload["stages"]
    capsys.readouterr()


def test_find_shortfall_exit_code(tmp_path, capsys):
    # 1-row matrix cannot host a 2x2 witness
    path = tmp_path / "thin.txt"
    path.write_text("1 4\n4 1 3 2\n")
    assert run(["find", path, "--n", 2]) == 3
    out = capsys.readouterr().out
    assert "bottleneck" in out


def test_find_missing_file_exit_2(capsys):
    assert run(["find", "no-such-file.txt", "--n", 2]) == 2
    capsys.readouterr()


def test_find_malformed_input_names_line(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n1 2\n3 oops\n")
    assert run(["find", path, "--n", 1]) == 2
    assert "line 3" in capsys.readouterr().err


def test_find_guaranteed_refusal(inc_matrix, capsys):
    # preconditions are checked before anything else, even on trivial input
    assert run(["find", inc_matrix, "--n", 3, "--mode", "guaranteed"]) == 3
    assert "refused" in capsys.readouterr().err
    path = inc_matrix.parent / "mixed.txt"
    path.write_text("2 2\n1 2\n2 1\n")
    assert run(["find", path, "--n", 2, "--mode", "guaranteed"]) == 3
    err = capsys.readouterr().err
    assert "refused" in err and "2^" in err


def test_witness_command_end_to_end(tmp_path, capsys):
    prefix = tmp_path / "w"
    code = run(
        ["witness", "--d", 6, "--t", 5, "--n", 3, "--s", 2, "--seed", 1,
         "--output-prefix", prefix, "--materialize", "--format", "json"]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "PASS"
    assert payload["columns"] == 32

    # artifacts parse back to the same objects
    sm = sample_sign_matrix(6, 5, 3, 2, seed=1)
    w = parse_witness_file((tmp_path / "w.witness").read_text())
    assert w.signs == sm
    dense = parse_matrix((tmp_path / "w.matrix").read_text())
    assert dense == build_witness(sm).materialize()


def test_witness_impossible_params_exit_4(tmp_path, capsys):
    code = run(
        ["witness", "--d", 2, "--t", 2, "--n", 1, "--s", 1,
         "--output-prefix", tmp_path / "x", "--max-attempts", 10]
    )
    assert code == 4
    capsys.readouterr()


def test_witness_determinism_byte_identical(tmp_path, capsys):
    a_prefix = tmp_path / "a"
    b_prefix = tmp_path / "b"
    for prefix in (a_prefix, b_prefix):
        assert run(
            ["witness", "--d", 6, "--t", 5, "--n", 3, "--s", 2, "--seed", 9,
             "--output-prefix", prefix, "--materialize"]
        ) == 0
    for suffix in (".signs", ".witness", ".matrix"):
        assert (tmp_path / f"a{suffix}").read_bytes() == (tmp_path / f"b{suffix}").read_bytes()
    capsys.readouterr()


def test_verify_pass_witness_exit_0(tmp_path, capsys):
    prefix = tmp_path / "w"
    run(["witness", "--d", 6, "--t", 5, "--n", 3, "--s", 2, "--seed", 1,
         "--output-prefix", prefix])
    assert run(["verify", tmp_path / "w.witness", "--n", 3]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "absent" in out


def test_verify_constant_sign_matrix_exit_5(tmp_path, capsys):
    path = tmp_path / "bad.signs"
    path.write_text("2 2\n+ +\n+ +\n")
    assert run(["verify", path, "--n", 2]) == 5
    out = capsys.readouterr().out
    assert "counterexample" in out


def test_verify_matrix_counterexample(inc_matrix, capsys):
    assert run(["verify", inc_matrix, "--n", 2]) == 5
    capsys.readouterr()


def test_verify_sampled_mode_reports_coverage(tmp_path, capsys):
    # force sampling with a tiny budget
    rows = "\n".join("+ -" for _ in range(30))
    path = tmp_path / "big.signs"
    path.write_text(f"30 2\n{rows}\n")
    assert run(["verify", path, "--n", 10, "--structural", "--budget", 50]) == 0
    out = capsys.readouterr().out
    assert "coverage" in out and "sampled" in out


def test_lemma_commands(capsys):
    assert run(["lemma", "3.1", "--d", 2, "--N", 64, "--seed", 7]) == 0
    assert "required: 8" in capsys.readouterr().out
    assert run(["lemma", "2.3", "--m", 3, "--Z", "0,2"]) == 0
    assert "leaves: 1 2 5 6" in capsys.readouterr().out
    assert run(["lemma", "3.3", "--d", 1, "--m", 11, "--t", 2, "--seed", 1]) == 0
    assert "check: OK" in capsys.readouterr().out
    assert run(["lemma", "3.2", "--d", 1, "--m", 3, "--seed", 3]) == 0
    assert "length: 8" in capsys.readouterr().out
    assert run(["lemma", "2.4", "--d", 48, "--t", 16, "--n", 3, "--s", 2, "--seed", 5]) == 0
    capsys.readouterr()


def test_oracle_command(inc_matrix, capsys):
    assert run(["oracle", inc_matrix, "--n", 3, "--kind", "full"]) == 0
    out = capsys.readouterr().out
    assert "result: found" in out
    assert "rows: 1 2 3" in out


def test_oracle_absent(tmp_path, capsys):
    path = tmp_path / "no.txt"
    path.write_text("2 2\n1 2\n4 3\n")
    assert run(["oracle", path, "--n", 2, "--kind", "full"]) == 0
    assert "result: absent" in capsys.readouterr().out


def test_find_on_lower_bound_matrix_reports_shortfall(tmp_path, capsys):
    prefix = tmp_path / "w"
    run(["witness", "--d", 6, "--t", 5, "--n", 3, "--s", 2, "--seed", 1,
         "--output-prefix", prefix, "--materialize"])
    capsys.readouterr()
    code = run(["find", tmp_path / "w.matrix", "--n", 3, "--format", "json"])
    assert code == 3
    payload = json.loads(capsys.readouterr().out)
    assert payload["met_target"] is False
    assert payload["achieved"] < 3
    assert any("no witness exists" in stage for stage in payload["stages"])
    assert payload["bottleneck"]


def test_cli_output_round_trip(tmp_path):
    text = "2 3\n1 2 3\n6 5 4\n"
    path = tmp_path / "m.txt"
    path.write_text(text)
    m = parse_matrix(path.read_text())
    assert parse_matrix(format_matrix(m)) == m


def test_find_deterministic_output(inc_matrix, tmp_path, capsys):
    out1 = tmp_path / "w1.json"
    out2 = tmp_path / "w2.json"
    run(["find", inc_matrix, "--n", 2, "--output", out1])
    run(["find", inc_matrix, "--n", 2, "--output", out2])
    assert out1.read_bytes() == out2.read_bytes()
    capsys.readouterr()


def test_json_text_parity(inc_matrix, capsys):
    run(["find", inc_matrix, "--n", 2, "--format", "json"])
    as_json = json.loads(capsys.readouterr().out)
    run(["find", inc_matrix, "--n", 2, "--format", "text"])
    text = capsys.readouterr().out
    for key in as_json:
        assert f"{key}:" in text

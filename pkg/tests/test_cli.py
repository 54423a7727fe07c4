import json

import pytest

from bcsmagic import bcs
from bcsmagic.cli import main


@pytest.fixture()
def mermin_file(tmp_path):
    path = tmp_path / "mermin.bcs"
    path.write_text(bcs.serialize_bcs(bcs.mermin_peres()))
    return path


@pytest.fixture()
def chsh_file(tmp_path):
    path = tmp_path / "chsh.bcs"
    path.write_text(bcs.serialize_bcs(bcs.chsh()))
    return path


def test_solve_mermin_pauli(mermin_file, capsys):
    code = main(["solve", str(mermin_file), "--mode", "pauli"])
    assert code == 0
    out = capsys.readouterr().out
    assert "2 qubit" in out
    solution = mermin_file.with_suffix(".solution.txt").read_text()
    assert "v1 = -YY" in solution


def test_solve_mermin_classical_exit3(mermin_file):
    code = main(["solve", str(mermin_file), "--mode", "classical"])
    assert code == 3
    payload = json.loads(mermin_file.with_suffix(".certificate.json").read_text())
    assert payload["mode"] == "classical"
    assert payload["constraint_rows"]


def test_solve_chsh_certificate(chsh_file):
    code = main(["solve", str(chsh_file), "--mode", "pauli"])
    assert code == 3
    payload = json.loads(chsh_file.with_suffix(".certificate.json").read_text())
    assert payload["constraint_rows"] == [0, 1]


def test_solve_parse_error(tmp_path):
    bad = tmp_path / "bad.bcs"
    bad.write_text("a b = 2\n")
    assert main(["solve", str(bad)]) == 2
    assert main(["solve", str(tmp_path / "missing.bcs")]) == 2


def test_gen_counts_banner(tmp_path, capsys):
    out = tmp_path / "game8.bcs"
    code = main(["gen", "--n", "8", "--out", str(out)])
    assert code == 0
    banner = capsys.readouterr().out
    assert "722 variables, 1037 constraints" in banner
    sidecar = json.loads((tmp_path / "game8.bcs.names.json").read_text())
    assert sidecar["n"] == 8 and len(sidecar["variables"]) == 722
    reparsed = bcs.parse_bcs(out.read_text())
    assert reparsed.n_vars == 722


def test_gen_modified_banner(tmp_path, capsys):
    code = main(["gen", "--n", "8", "--modified", "--out", str(tmp_path / "m8.bcs")])
    assert code == 0
    assert "1042 constraints" in capsys.readouterr().out


def test_gen_small_n_usage_error(tmp_path):
    assert main(["gen", "--n", "3", "--out", str(tmp_path / "x.bcs")]) == 2


def test_gen_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.bcs", tmp_path / "b.bcs"
    main(["gen", "--n", "5", "--out", str(a)])
    main(["gen", "--n", "5", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_gen_then_solve_pipeline(tmp_path, capsys):
    out = tmp_path / "game6.bcs"
    assert main(["gen", "--n", "6", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["solve", str(out), "--mode", "pauli"]) == 3
    payload = json.loads(out.with_suffix(".certificate.json").read_text())
    game6 = bcs.parse_bcs(out.read_text())
    cert = bcs.Certificate(
        tuple(payload["constraint_rows"]),
        tuple(tuple(p) for p in payload["commutation_rows"]),
        tuple(payload["derived_relation"]),
    )
    assert bcs.verify_certificate(game6, cert)
    assert main(["solve", str(out), "--mode", "classical"]) == 3

    odd = tmp_path / "game5.bcs"
    assert main(["gen", "--n", "5", "--out", str(odd)]) == 0
    assert main(["solve", str(odd), "--mode", "classical"]) == 0
    lines = odd.with_suffix(".solution.txt").read_text().strip().splitlines()
    signs = [1 if line.endswith(" 1") else -1 for line in lines]
    assert bcs.check_classical_assignment(bcs.parse_bcs(odd.read_text()), signs)


def test_bound_output(capsys):
    assert main(["bound", "--n", "8"]) == 0
    out = capsys.readouterr().out
    assert "1 - 1/6252" in out
    assert main(["bound", "--n", "8", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["bound"] == "1 - 1/6252"
    assert main(["bound", "--n", "5"]) == 2


def test_classify_output(capsys):
    assert main(["classify", "--n", "5"]) == 0
    assert "Classical" in capsys.readouterr().out
    assert main(["classify", "--n", "4"]) == 0
    assert "CliffordOnly" in capsys.readouterr().out
    assert main(["classify", "--n", "8", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["class"] == "MagicRequired"


def test_play_small_runs(capsys):
    assert main(["play", "--n", "4", "--trials", "50", "--seed", "11"]) == 0
    assert "wins: 50/50" in capsys.readouterr().out
    assert main(["play", "--n", "5", "--trials", "30", "--seed", "11"]) == 0
    assert "wins: 30/30" in capsys.readouterr().out


def test_play_deterministic(capsys):
    main(["play", "--n", "6", "--trials", "40", "--seed", "3"])
    first = capsys.readouterr().out
    main(["play", "--n", "6", "--trials", "40", "--seed", "3"])
    second = capsys.readouterr().out
    assert first == second


def test_simulate_relation_log(tmp_path, capsys):
    log = tmp_path / "trials.jsonl"
    code = main([
        "simulate", "--mode", "relation", "--sites", "20",
        "--trials", "25", "--seed", "5", "--out", str(log),
    ])
    assert code == 0
    assert "satisfied: 25" in capsys.readouterr().out
    records = [json.loads(line) for line in log.read_text().splitlines()]
    assert len(records) == 25
    assert all(r["ok"] for r in records)
    assert all(1 <= r["j"] < r["k"] <= 20 for r in records)


def test_simulate_sampling_summary(capsys):
    code = main([
        "simulate", "--mode", "sampling", "--sites", "10",
        "--trials", "200", "--seed", "9",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "invalid: 0" in out


def test_simulate_rejects_odd_n():
    assert main(["simulate", "--mode", "relation", "--sites", "10",
                 "--trials", "5", "--seed", "1", "--n", "5"]) == 2


def test_lightcone_strategy(capsys):
    code = main(["lightcone", "--sites", "12", "--format", "json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["max_fan_in"] == 14
    assert payload["disjoint_probability"] == 1.0
    assert payload["depth_lower_bound"] < 0  # 12 sites is far below threshold
    assert payload["depth_bound_positive_above_sites"] == 600192


def test_lightcone_dag_file(tmp_path, capsys):
    from bcsmagic.shallow import build_strategy_dag

    path = tmp_path / "dag.json"
    path.write_text(build_strategy_dag(6).to_json())
    assert main(["lightcone", "--dag", str(path)]) == 0
    assert "max_fan_in: 14" in capsys.readouterr().out
    assert main(["lightcone", "--dag", str(tmp_path / "nope.json")]) == 2


def test_recipes(capsys):
    assert main(["recipes"]) == 0
    out = capsys.readouterr().out
    assert "1 - 1/6252" in out
    assert "[checked]" in out
    assert "[MISMATCH]" not in out

import json
import subprocess
import sys

import pytest

from tameselmer.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main
from tameselmer.iwasawa import LambdaSeries
from tameselmer.records import (
    action_from_section,
    action_to_section,
    cocycle_from_text,
    cocycle_to_text,
    deformation_from_section,
    deformation_to_section,
    read_config,
    series_from_section,
    series_to_section,
    write_sections,
)
from tameselmer.isogeny_selmer import action_from_member
from tameselmer.local_cohom import standard_cocycles
from tameselmer.tame_deform import ConditionType, ShapeParams, TrivialPrime, build_condition_member


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-local", "--p", "5", "--type", "III", "--n", "3"],
        ["verify-local", "--p", "5", "--type", "II", "--n", "3", "--oracle"],
        ["delta", "--p", "7", "--type", "II", "--n", "4"],
        ["cohom", "--p", "5"],
        ["weierstrass", "--p", "5", "--N", "6", "--D", "8", "--coeffs", "25 30 5"],
        ["invariants", "--p", "5", "--polys", "5 5 0; 10"],
        ["matsuno", "--p", "5", "--count", "5"],
        ["ledger", "--p", "7", "--trivial-primes", "3"],
        ["plan", "--n", "100", "--t-size", "10", "--target", "10"],
    ],
)
def test_commands_pass(capsys, argv):
    code, report = run(capsys, *argv)
    assert code == EXIT_OK
    assert set(report) == {"command", "inputs", "results", "trace", "citations"}
    assert report["citations"]
    assert all(step.get("passed", True) for step in report["trace"])


def test_plan_numbers(capsys):
    _, report = run(capsys, "plan", "--n", "100", "--t-size", "10", "--target", "10")
    assert report["results"]["final_bound"] == 8
    assert report["results"]["minimal_n"] == 104
    assert any(step.get("kind") == "axiom" for step in report["trace"])


def test_cohom_numbers(capsys):
    _, report = run(capsys, "cohom", "--p", "5")
    assert report["results"]["dims"] == {"h0": 3, "h1": 6, "h2": 3, "h1_nr": 3, "h1_over_h1_nr": 3}
    assert report["results"]["n_space_bases"]["II"][2] == "0 1 0 0 3 0 0 2"


def test_delta_numbers(capsys):
    _, report = run(capsys, "delta", "--p", "5", "--type", "III", "--n", "4")
    assert report["results"]["A"]["delta"] == 1
    assert report["results"]["A_prime"]["delta"] == 0
    assert report["results"]["A"]["h0_order"] == 25


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "scenario.ini"
    cfg.write_text("[scenario]\np = 5\n\n[plan]\nn = 100\nt_size = 10\nm_prime = 0\n")
    code, report = run(capsys, "plan", "--config", str(cfg))
    assert code == EXIT_OK and report["results"]["final_bound"] == 8
    _, report = run(capsys, "plan", "--config", str(cfg), "--n", "104")
    assert report["results"]["final_bound"] == 10


def test_failed_check_exit_code(tmp_path, capsys):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[deformation]\np = 5\nn = 3\nsigma = 1 0 0 11\ntau = 1 5 0 1\n")
    code, report = run(capsys, "verify-local", "--config", str(cfg))
    assert code == EXIT_FAILED
    assert report["trace"][0] == {"check": "tame relation", "passed": False, "detail": None}


@pytest.mark.parametrize(
    "argv, message",
    [
        (["plan"], "missing setting"),
        (["verify-local", "--p", "5", "--type", "II", "--y", "25"], "shape parameter out of class"),
        (["weierstrass", "--p", "5", "--coeffs", "125 0", "--N", "3"], "zero series"),
        (["cohom", "--p", "4"], ""),
        (["verify-local", "--config", "/nonexistent.ini", "--p", "5"], "cannot read config"),
    ],
)
def test_malformed_input_exit_code(capsys, argv, message):
    code, report = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert message in report["error"]


def test_unknown_subcommand(capsys):
    assert main(["bogus"]) == EXIT_INPUT


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tameselmer", "ledger", "--p", "5"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["balance"] == 0


def test_record_round_trips(tmp_path):
    prime = TrivialPrime(5, 11)
    d = build_condition_member(prime, ConditionType.III, ShapeParams.of(5, 3, 25, 10))
    act = action_from_member(prime, ConditionType.II, ShapeParams.of(5, 4, 0, 5), psi_sigma=-1 % 625)
    f = LambdaSeries.of(5, 4, 6, [5, 1, 2])
    text = write_sections({"deformation": deformation_to_section(d), "action": action_to_section(act), "series": series_to_section(f)})
    path = tmp_path / "records.ini"
    path.write_text(text)
    cfg = read_config(str(path))
    assert deformation_from_section(cfg["deformation"]) == d
    assert action_from_section(cfg["action"]) == act
    assert series_from_section(cfg["series"]) == f
    g = standard_cocycles(5, 3)["g_ram"]
    assert cocycle_from_text(5, cocycle_to_text(g)) == g

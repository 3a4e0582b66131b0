"""Tests for the command-line front end."""

import json
import logging
import math
from collections.abc import Callable, Iterator
from pathlib import Path

import numpy as np
import pytest

from qbnet_entropy.cli import PROG, ExitCode, main
from qbnet_entropy.config import SEED_ENV_VAR
from qbnet_entropy.serialization import ENSEMBLE_SCHEMA, dumps
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout

LN2 = math.log(2)


@pytest.fixture(autouse=True)
def restore_logging() -> Iterator[None]:
    """Drop the CLI log handler and restore the root level after each test."""
    root = logging.getLogger()
    level = root.level
    yield
    for handler in [h for h in root.handlers if h.get_name() == PROG]:
        root.removeHandler(handler)
    root.setLevel(level)


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_passes(capsys: pytest.CaptureFixture[str]) -> None:
    """Test a passing batch and its JSON report."""
    code, out, _ = _run(capsys, "check", "--ids", "mi_nonneg", "--trials", "10", "--seed", "7")
    doc = json.loads(out)

    assert code == ExitCode.PASS
    assert doc["passed"] is True
    assert doc["summary"][0] == {
        "id": "mi_nonneg",
        "description": "S(a,b) <= S(a) + S(b)",
        "dims": [2, 2],
        "trials": 10,
        "passed": 10,
        "min_margin": doc["summary"][0]["min_margin"],
    }


def test_check_repeated_ids_and_table(capsys: pytest.CaptureFixture[str]) -> None:
    """Test repeated --ids flags and the table rendering."""
    code, out, _ = _run(
        capsys,
        "check",
        "--ids",
        "mi_nonneg,araki_lieb",
        "--ids",
        "dp_classical",
        "--seed",
        "1",
        "--format",
        "table",
    )

    assert code == ExitCode.PASS
    for check_id in ("mi_nonneg", "araki_lieb", "dp_classical"):
        assert check_id in out
    assert out.endswith("PASS\n")


def test_check_report_is_reproducible(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test that two runs write byte-identical reports."""
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        argv = ["check", "--ids", "cmi_nonneg", "--trials", "3", "--seed", "9", "--out", str(path)]
        assert main(argv) == ExitCode.PASS
    capsys.readouterr()

    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_check_workers_do_not_change_the_report(
    tmp_path: Path,
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test that --workers leaves the report unchanged."""
    outputs = []
    for workers in ("1", "3"):
        path = tmp_path / f"w{workers}.json"
        argv = ["check", "--ids", "araki_lieb", "--trials", "6", "--workers", workers]
        main([*argv, "--out", str(path)])
        outputs.append(path.read_text(encoding="utf-8"))
    capsys.readouterr()

    assert outputs[0] == outputs[1]


def test_check_seed_from_environment(
    monkeypatch: pytest.MonkeyPatch,
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test that QBNET_SEED is the default base seed."""
    monkeypatch.setenv(SEED_ENV_VAR, "5")
    code, out, _ = _run(capsys, "check", "--ids", "mi_nonneg")

    assert code == ExitCode.PASS
    assert json.loads(out)["config"]["seed"] == 5


def test_check_bad_seed_environment(
    monkeypatch: pytest.MonkeyPatch,
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test that a malformed QBNET_SEED is a configuration error."""
    monkeypatch.setenv(SEED_ENV_VAR, "seven")
    code, _, err = _run(capsys, "check", "--ids", "mi_nonneg")

    assert code == ExitCode.CONFIG
    assert "is not an integer" in err


@pytest.mark.parametrize(
    ("argv", "message"),
    [
        (["check", "--trials", "0"], "trials must be >= 1"),
        (["check", "--ids", "nope"], "unknown inequality id 'nope'"),
        (["check", "--dims", "2,1"], "dims must all be >= 2"),
        (["rum", "--n", "0"], "party count must be >= 1"),
        (["rum", "--n", "17"], "exhaustive limit of 16"),
        (["holevo-demo", "--samples", "0"], "samples must be >= 1"),
        (["holevo-demo", "--seed", "-1"], "seed must be non-negative"),
        (["entropy", "missing.json"], "cannot read missing.json"),
    ],
)
def test_configuration_errors(
    capsys: pytest.CaptureFixture[str],
    argv: list[str],
    message: str,
) -> None:
    """Test that bad flags and unreadable input exit with code 2."""
    code, out, err = _run(capsys, *argv)

    assert code == ExitCode.CONFIG
    assert out == ""
    assert err.startswith(f"{PROG}: error: ")
    assert message in err


@pytest.mark.parametrize(
    "argv",
    [["check", "--trials", "x"], ["check", "--dims", "2,a"], ["rum"], ["bogus"]],
)
def test_argument_errors_exit_2(argv: list[str]) -> None:
    """Test that argparse rejects malformed arguments with exit status 2."""
    with pytest.raises(SystemExit) as exc_info:
        main(argv)
    assert exc_info.value.code == ExitCode.CONFIG


def test_entropy_of_bell_state(
    bell_state: LabeledState,
    write_state: Callable[..., str],
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test S(a) = ln 2, S(a,b) = 0 and S(a:b) = 2 ln 2 on a Bell file."""
    code, out, _ = _run(capsys, "entropy", write_state(bell_state), "S(a)", "S(a,b)", "S(a:b)")
    values = {q["quantity"]: q["nats"] for q in json.loads(out)["quantities"]}

    assert code == ExitCode.PASS
    assert values["S(a)"] == pytest.approx(LN2)
    assert values["S(a,b)"] == pytest.approx(0.0, abs=1e-12)
    assert values["S(a:b)"] == pytest.approx(2 * LN2)


def test_entropy_table_of_mixed_qubit(
    mixed_qubit: LabeledState,
    write_state: Callable[..., str],
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test the default quantity in nats and bits."""
    code, out, _ = _run(capsys, "entropy", write_state(mixed_qubit), "--format", "table")

    assert code == ExitCode.PASS
    assert "S(a)" in out
    assert "0.6931" in out
    assert "1.0000" in out


def test_entropy_with_partition(
    bell_state: LabeledState,
    write_state: Callable[..., str],
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test relabeling the file's subsystems."""
    path = write_state(bell_state)
    code, out, _ = _run(capsys, "entropy", path, "S(x|y)", "--partition", "x,y")

    assert code == ExitCode.PASS
    assert json.loads(out)["quantities"][0]["nats"] == pytest.approx(-LN2)

    code, _, err = _run(capsys, "entropy", path, "--partition", "x")
    assert code == ExitCode.CONFIG
    assert "--partition names 1 subsystems" in err


def test_entropy_unknown_label(
    bell_state: LabeledState,
    write_state: Callable[..., str],
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test that an unknown label in a quantity is a configuration error."""
    code, _, err = _run(capsys, "entropy", write_state(bell_state), "S(a:z)")
    assert code == ExitCode.CONFIG
    assert "unknown subsystem 'z'" in err


def test_entropy_invalid_state(
    write_state: Callable[..., str],
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test that a non-positive matrix exits with code 3 and its deviation."""
    state = LabeledState(SubsystemLayout.of(("q", 2)), np.diag([1.2, -0.2]))
    code, out, err = _run(capsys, "entropy", write_state(state))

    assert code == ExitCode.DATA_INVARIANT
    assert out == ""
    assert "positivity violated" in err
    assert "(max deviation 0.2)" in err


@pytest.mark.parametrize(
    ("preset", "gap_is_zero"),
    [("orthogonal", True), ("zero-plus", False), ("identical", True)],
)
def test_holevo_presets(
    capsys: pytest.CaptureFixture[str],
    preset: str,
    gap_is_zero: bool,
) -> None:
    """Test the bound and its gap on each preset."""
    code, out, _ = _run(capsys, "holevo-demo", "--preset", preset, "--samples", "8")
    doc = json.loads(out)

    assert code == ExitCode.PASS
    assert doc["source"] == preset
    assert doc["holds"] is True
    assert (abs(doc["gap"]) < 1e-9) is gap_is_zero


def test_holevo_default_preset(capsys: pytest.CaptureFixture[str]) -> None:
    """Test that zero-plus is the default ensemble."""
    code, out, _ = _run(capsys, "holevo-demo", "--seed", "3")
    doc = json.loads(out)

    assert code == ExitCode.PASS
    assert doc["source"] == "zero-plus"
    assert doc["samples"] == len(doc["per_sample"]) == 16


def test_holevo_from_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test an ensemble read from a file."""
    path = tmp_path / "ensemble.json"
    member = {"labels": ["q"], "dims": [3]}
    doc = {
        "schema": ENSEMBLE_SCHEMA,
        "weights": [0.5, 0.5],
        "states": [{**member, "ket": [1, 0, 0]}, {**member, "ket": [0, 0, 1]}],
    }
    path.write_text(dumps(doc), encoding="utf-8")
    code, out, _ = _run(capsys, "holevo-demo", "--file", str(path), "--samples", "2")

    assert code == ExitCode.PASS
    assert json.loads(out)["hol"] == pytest.approx(LN2)


def test_holevo_preset_and_file_conflict() -> None:
    """Test that --preset and --file are mutually exclusive."""
    with pytest.raises(SystemExit):
        main(["holevo-demo", "--preset", "orthogonal", "--file", "x.json"])


def test_rum(capsys: pytest.CaptureFixture[str]) -> None:
    """Test the roots-of-unity suite for six parties."""
    code, out, _ = _run(capsys, "rum", "--n", "6")
    doc = json.loads(out)

    assert code == ExitCode.PASS
    assert doc["n"] == 6
    assert len(doc["subsets"]) == 63
    entropy = {tuple(s["parties"]): s["entropy"] for s in doc["subsets"]}
    assert entropy[(1, 2)] == pytest.approx(math.sqrt(3))


def test_json_logs_carry_the_run_context(capsys: pytest.CaptureFixture[str]) -> None:
    """Test JSON log records on stderr with the command and check id."""
    code, _, err = _run(
        capsys,
        "check",
        "--ids",
        "mi_nonneg",
        "--log-format",
        "json",
        "--log-level",
        "info",
    )
    records = [json.loads(line) for line in err.splitlines() if line.startswith("{")]
    batch = next(r for r in records if r["message"].startswith("mi_nonneg: 1/1 passed"))

    assert code == ExitCode.PASS
    assert batch["level"] == "INFO"
    assert batch["context"]["command"] == "check"
    assert batch["context"]["check_id"] == "mi_nonneg"


def test_context_logging_adapter(capsys: pytest.CaptureFixture[str]) -> None:
    """Test the alternative run-context storage."""
    pytest.importorskip("context_logging")
    code, out, _ = _run(capsys, "rum", "--n", "3", "--context-adapter", "context_logging")

    assert code == ExitCode.PASS
    assert json.loads(out)["passed"] is True

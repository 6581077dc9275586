"""
Slice Workbench - Command Line Tests
End-to-end runs of the workbench subcommands through run(argv)
"""

import json
import os
import sys

import pytest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import workbench_cli
from workbench_cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, run


CLI_SCENARIOS = [
    {
        "id": "CLI-01",
        "name": "rho8 homology as JSON",
        "argv": ["sphere-homology", "--group", "C8", "--rep", "rho(8)", "--format", "json"],
        "exit": EXIT_OK,
    },
    {
        "id": "CLI-02",
        "name": "gap check",
        "argv": ["gap", "--group", "C4", "--mmax", "1"],
        "exit": EXIT_OK,
    },
    {
        "id": "CLI-03",
        "name": "refinement in degree 4",
        "argv": ["refine", "--g", "8", "--d", "2", "--format", "tsv"],
        "exit": EXIT_OK,
    },
    {
        "id": "CLI-04",
        "name": "unknown group",
        "argv": ["sphere-homology", "--group", "C6", "--rep", "rho(8)"],
        "exit": EXIT_USAGE,
    },
    {
        "id": "CLI-05",
        "name": "missing required flag",
        "argv": ["sphere-homology", "--group", "C8"],
        "exit": EXIT_USAGE,
    },
    {
        "id": "CLI-06",
        "name": "unknown subcommand",
        "argv": ["homotopy"],
        "exit": EXIT_USAGE,
    },
]


@pytest.mark.parametrize("scenario", CLI_SCENARIOS, ids=[s["id"] for s in CLI_SCENARIOS])
def test_exit_codes(scenario, capsys):
    assert run(scenario["argv"]) == scenario["exit"]
    capsys.readouterr()


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == EXIT_OK
    assert "sphere-homology" in capsys.readouterr().out


def test_json_output_is_parseable(capsys):
    run(["sphere-homology", "--rep", "2*rho(8)", "--format", "json"])
    data = json.loads(capsys.readouterr().out)
    assert data["labels"]["16"] == "Z"
    assert data["labels"]["14"] == "Z/8"


def test_table_output(capsys):
    assert run(["sphere-homology", "--group", "C2", "--rep", "2*sigma"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("sphere-homology\n")
    assert "H_2" in out and "Z/2" in out


def test_tsv_output(capsys):
    assert run(["ss-run", "--g", "2", "--bound", "6", "--format", "tsv"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split("\t") == ["stem", "rank", "basis"]
    assert [int(line.split("\t")[1]) for line in lines[1:]] == [1, 0, 1, 0, 2, 1, 3]


def test_fgl_table(capsys):
    assert run(["fgl", "haz"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("fgl haz\n")
    assert "v4" in out


def test_error_payload_goes_to_stderr(capsys):
    assert run(["detect", "--jmax", "2", "--format", "json"]) == EXIT_USAGE
    captured = capsys.readouterr()
    assert captured.err.startswith("❌ INVALID_INPUT")
    assert json.loads(captured.out)["success"] is False


def test_failed_check_exits_with_one(capsys, monkeypatch):
    monkeypatch.setattr(workbench_cli, "checks_passed", lambda args, data: False)
    assert run(["refine", "--g", "8", "--d", "1"]) == EXIT_FAILED
    assert "verification check failed" in capsys.readouterr().err


def test_computation_failure_exits_with_one(capsys, monkeypatch):
    class BrokenService:
        def __init__(self, jobs=None):
            pass

        def detect(self, jmax):
            return {"success": False, "error": {"code": "CONSISTENCY", "message": "forced",
                                                "user_message": "An internal consistency check failed."}}

    monkeypatch.setattr(workbench_cli, "WorkbenchService", BrokenService)
    assert run(["detect"]) == EXIT_FAILED
    assert "CONSISTENCY: forced" in capsys.readouterr().err


def test_parser_defaults():
    args = build_parser().parse_args(["slice-region", "--g", "8", "--n", "4"])
    assert (args.k, args.smax, args.dmax, args.format, args.jobs) == (None, 16, 8, "table", None)

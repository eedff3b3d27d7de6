import json

import pytest

from igusa_locus.cli import (
    EXIT_BAD_INPUT,
    EXIT_FAILURE,
    EXIT_IO,
    EXIT_OK,
    EXIT_SEARCH_EXHAUSTED,
    main,
)
from igusa_locus.output import CSV_COLUMNS
from igusa_locus.verification import LEVELS, Level


def test_analyze(capsys):
    assert main(["analyze", "6"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["D"] == 6
    assert payload["irreducible"] is True


def test_analyze_with_witnesses(capsys):
    assert main(["analyze", "6", "--witnesses"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["mu"] == "3i + j"


def test_analyze_csv(capsys):
    assert main(["analyze", "15", "--format", "csv"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1].startswith("15,4,2,True,3;5")


@pytest.mark.parametrize("D", ["30", "12", "7", "1"])
def test_analyze_inadmissible(D, capsys):
    assert main(["analyze", D]) == EXIT_BAD_INPUT
    assert "error" in capsys.readouterr().err


def test_tabulate_csv(capsys):
    assert main(["tabulate", "6", "100", "--format", "csv", "--jobs", "1"]) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 31


def test_tabulate_empty_range(capsys):
    assert main(["tabulate", "2", "5", "--format", "csv", "--jobs", "1"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == ",".join(CSV_COLUMNS)


def test_tabulate_xlsx(tmp_path):
    assert main(["tabulate", "6", "20", "--format", "xlsx", "--jobs", "1"]) == EXIT_BAD_INPUT
    out = tmp_path / "locus.xlsx"
    assert main(["tabulate", "6", "20", "--format", "xlsx", "--jobs", "1", "--out", str(out)]) == EXIT_OK
    assert out.exists()


def test_tabulate_bad_range():
    assert main(["tabulate", "10", "5", "--jobs", "1"]) == EXIT_BAD_INPUT


def test_polarize(capsys):
    assert main(["polarize", "6"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["riemann_form"] == [[0, -1, 1, 0], [1, 0, 0, 0], [-1, 0, 0, 1], [0, 0, -1, 0]]
    assert payload["degree"] == 1
    assert payload["rosati_positive"] is True


def test_polarize_catalog_d10(capsys):
    assert main(["polarize", "10"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["degree"] == 1


def test_polarize_inadmissible():
    assert main(["polarize", "7"]) == EXIT_BAD_INPUT


def test_output_is_deterministic(capsys):
    assert main(["analyze", "39"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["analyze", "39"]) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert json.loads(json.dumps(payload)) == payload


def test_polarize_search_exhausted(capsys):
    assert main(["polarize", "6", "--bound", "1"]) == EXIT_SEARCH_EXHAUSTED
    assert "--bound" in capsys.readouterr().err


def test_polarize_missing_catalog(tmp_path):
    assert main(["polarize", "6", "--catalog", str(tmp_path / "missing.json")]) == EXIT_IO


def test_polarize_rejects_csv():
    assert main(["polarize", "6", "--format", "csv"]) == EXIT_BAD_INPUT


def test_hm_curve(capsys):
    assert main(["hm", "10", "2", "0"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["f"][0] == "400"
    assert payload["degenerate"] is None


def test_hm_points(capsys):
    assert main(["hm", "10", "--points", "3"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert [(p["t"], p["s"]) for p in payload] == [("-1/2", "0"), ("0", "0"), ("2", "0")]


def test_hm_errors():
    assert main(["hm", "6", "1", "2"]) == EXIT_BAD_INPUT
    assert main(["hm", "6"]) == EXIT_BAD_INPUT
    assert main(["hm", "7", "0", "0"]) == EXIT_BAD_INPUT


def test_out_file(tmp_path):
    out = tmp_path / "report.json"
    assert main(["analyze", "15", "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["D"] == 15


def test_argument_errors():
    assert main(["bogus"]) == EXIT_BAD_INPUT
    assert main([]) == EXIT_BAD_INPUT
    assert main(["verify", "nope"]) == EXIT_BAD_INPUT
    assert main(["analyze", "six"]) == EXIT_BAD_INPUT
    assert main(["analyze", "6", "--jobs", "0"]) == EXIT_BAD_INPUT


def test_verify(monkeypatch, capsys):
    monkeypatch.setitem(LEVELS, "tiny", Level("tiny", max_D=40, min_delta=-200, hilbert_samples=20,
                                              riemann_samples=3, al_group_max_D=30))
    assert main(["verify", "tiny", "--jobs", "1"]) == EXIT_OK
    assert "PASSED (tiny)" in capsys.readouterr().out


def test_verify_failure_exit_code(monkeypatch):
    from igusa_locus import cli
    from igusa_locus.verification import SuiteResult, VerificationResult

    failed = VerificationResult("quick", [SuiteResult("broken", 1, ["boom"])])
    monkeypatch.setattr(cli, "run_verification", lambda *args, **kwargs: failed)
    assert main(["verify", "quick", "--jobs", "1"]) == EXIT_FAILURE

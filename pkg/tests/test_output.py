import json

import pandas as pd
import pytest

from igusa_locus.config import OutputFormat
from igusa_locus.hm_families import curve, rational_points
from igusa_locus.locus import analyze
from igusa_locus.output import (
    CSV_COLUMNS,
    curve_to_dict,
    point_to_dict,
    polarization_to_dict,
    render,
    render_tabulation,
    report_to_dict,
    reports_frame,
    summarize,
    write_tabulation,
)
from igusa_locus.polarization import polarization_data
from igusa_locus.processing import tabulate


@pytest.fixture(scope="module")
def reports():
    return tabulate(1, 100, jobs=1)


def test_report_to_dict_is_json_ready():
    payload = json.loads(render(report_to_dict(analyze(15)), OutputFormat.JSON))
    assert payload["D"] == 15
    assert payload["twist_divisors"] == [3, 5]
    assert payload["rho_feasible"] == [2]
    assert payload["rho_bounds"] == ["1", "2"]
    assert payload["class_numbers"] == {"-60": 2, "-15": 2}
    assert payload["mu"] is None


def test_report_to_dict_shows_dropped_splits():
    assert report_to_dict(analyze(390))["dropped_splits"] > 0
    assert report_to_dict(analyze(39))["dropped_splits"] == 0


def test_reports_frame():
    frame = reports_frame([analyze(15), analyze(39)])
    assert list(frame.columns) == CSV_COLUMNS
    assert list(frame["twist_divisors"]) == ["3;5", ""]
    assert list(frame["rho_exact"]) == [2, 2]


def test_csv_tabulation(reports):
    lines = render_tabulation(reports, OutputFormat.CSV).splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 31
    assert lines[1].startswith("6,2,1,True")


def test_empty_csv_tabulation_keeps_header():
    assert render_tabulation([], OutputFormat.CSV).strip() == ",".join(CSV_COLUMNS)


def test_summary(reports):
    summary = summarize(reports)
    values = dict(zip(summary["Metric"], summary["Value"]))
    assert values["Admissible Discriminants"] == "30"
    assert int(values["Twisting"]) + int(values["Non-twisting"]) == 30
    assert int(values["Irreducible"]) + int(values["Reducible"]) == 30
    assert "15" in values["Reducible D"].split(", ")


def test_text_tabulation_has_summary(reports):
    text = render_tabulation(reports, OutputFormat.TEXT)
    assert "Admissible Discriminants" in text
    assert render_tabulation([], OutputFormat.TEXT).startswith("(no admissible D)")


def test_xlsx_needs_a_file(reports):
    with pytest.raises(ValueError):
        render_tabulation(reports, OutputFormat.XLSX)


def test_write_xlsx(reports, tmp_path):
    path = tmp_path / "locus.xlsx"
    write_tabulation(reports, OutputFormat.XLSX, path)
    sheets = pd.read_excel(path, sheet_name=None)
    assert set(sheets) == {"Reports", "Summary"}
    assert len(sheets["Reports"]) == 30
    assert list(sheets["Summary"].columns) == ["Metric", "Value"]


def test_write_csv(reports, tmp_path):
    path = tmp_path / "locus.csv"
    write_tabulation(reports, OutputFormat.CSV, path)
    assert len(path.read_text().splitlines()) == 31


def test_polarization_to_dict(order6, mu6):
    payload = polarization_to_dict(polarization_data(order6, mu6, 4, 1))
    assert payload["D"] == 6
    assert payload["mu"] == "3i + j"
    assert payload["nrd_mu"] == "6"
    assert payload["riemann_form"] == [[0, -1, 1, 0], [1, 0, 0, 0], [-1, 0, 0, 1], [0, 0, -1, 0]]
    assert payload["pfaffian"] == -1
    assert payload["degree"] == 1
    assert {"chi": "i + j", "m": 2} in payload["twists"]
    json.dumps(payload)


def test_curve_and_point_dicts():
    payload = curve_to_dict(curve(6, 0, "sqrt(2)"))
    assert payload["s"] == "sqrt(2)"
    assert payload["f"][1] == "2*sqrt(2)"
    point = rational_points(10, 3)[-1]
    assert point_to_dict(10, point)["curve"]["f"][0] == "400"


def test_text_render():
    text = render(curve_to_dict(curve(10, 2, 0)), OutputFormat.TEXT)
    assert "family: 10" in text
    assert "degenerate: None" in text

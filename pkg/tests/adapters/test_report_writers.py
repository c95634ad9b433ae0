import json

from src.adapters.outbound.csv_report_writer import CsvReportWriter
from src.adapters.outbound.json_report_writer import JsonReportWriter
from src.adapters.outbound.text_report_writer import TextReportWriter
from src.domain.report import CSV_COLUMNS, Report


def _report(**results) -> Report:
    return Report(
        command="check",
        spec=(6,),
        mode="rational",
        results={"expectation": "147/10", "variance": "3899/100", **results},
        diagnostics={"states": 7, "edges": 12, "wall_ms": 1.5},
    )


def test_json_writer():
    payload = json.loads(JsonReportWriter().render(_report()))
    assert payload["command"] == "check"
    assert payload["spec"] == [6]
    assert payload["results"]["expectation"] == "147/10"
    assert payload["version"] == "1"


def test_csv_writer():
    lines = CsvReportWriter().render(_report()).splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1] == "check,6,rational,147/10,3899/100,7,12,1.5"


def test_text_writer_lists_methods():
    methods = [
        {"method": "exact", "expectation": "147/10", "variance": "3899/100"},
        {"method": "simulate", "expectation": 14.69, "variance": 38.7, "stderr": 0.04},
    ]
    text = TextReportWriter().render(_report(methods=methods))
    assert "147/10" in text
    assert "methods" in text
    assert "simulate" in text

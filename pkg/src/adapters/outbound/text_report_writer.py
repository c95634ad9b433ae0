import io

from rich.console import Console
from rich.table import Table

from src.domain.report import Report


class TextReportWriter:
    """사람이 읽는 표 형식 리포트 (rich)"""

    def __init__(self, width: int = 100):
        self._width = width

    def render(self, report: Report) -> str:
        buffer = io.StringIO()
        console = Console(file=buffer, width=self._width, force_terminal=False, color_system=None)

        title = f"parcollect {report.command}  collections={','.join(map(str, report.spec))}  mode={report.mode}"
        summary = Table(title=title, show_header=True)
        summary.add_column("항목")
        summary.add_column("값", overflow="fold")
        for key in ("expectation", "variance"):
            if key in report.results:
                summary.add_row(key, str(report.results[key]))
        if "from_state" in report.results:
            summary.add_row("from_state", ",".join(map(str, report.results["from_state"])))
        for key, value in report.diagnostics.items():
            if key in ("checks", "skipped", "failures"):
                continue
            summary.add_row(key, str(value))
        console.print(summary)

        methods = report.results.get("methods")
        if methods:
            table = Table(title="methods")
            for column in ("method", "expectation", "variance", "stderr"):
                table.add_column(column, overflow="fold")
            for row in methods:
                table.add_row(
                    row["method"], str(row["expectation"]), str(row["variance"]),
                    str(row.get("stderr", "")),
                )
            console.print(table)

        checks = report.diagnostics.get("checks")
        if checks:
            table = Table(title="cross-check")
            for column in ("pair", "quantity", "difference", "tolerance", "result"):
                table.add_column(column)
            for row in checks:
                table.add_row(
                    row["pair"], row["quantity"], f"{row['difference']:.3e}",
                    f"{row['tolerance']:.3e}", "OK" if row["passed"] else "FAIL",
                )
            console.print(table)
        for skipped in report.diagnostics.get("skipped", []):
            console.print(f"skipped: {skipped}")

        per_state = report.results.get("per_state")
        if per_state:
            table = Table(title="per-state")
            for column in ("state", "k", "v"):
                table.add_column(column, overflow="fold")
            for row in per_state:
                table.add_row(",".join(map(str, row["state"])), str(row["k"]), str(row["v"]))
            console.print(table)
        return buffer.getvalue().rstrip("\n")

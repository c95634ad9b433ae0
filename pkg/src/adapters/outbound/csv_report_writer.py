import csv
import io

from src.domain.report import CSV_COLUMNS, Report


class CsvReportWriter:
    """헤더 1행 + 데이터 1행. 열 순서는 CSV_COLUMNS로 고정."""

    def render(self, report: Report) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(CSV_COLUMNS), lineterminator="\n")
        writer.writeheader()
        writer.writerow(report.csv_row())
        return buffer.getvalue().rstrip("\n")

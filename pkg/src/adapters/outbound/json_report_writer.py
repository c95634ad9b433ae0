import json

from src.domain.report import Report


class JsonReportWriter:
    """JSON 리포트. float은 json 기본 repr(최단 왕복 표현), 유리수는 "p/q" 문자열."""

    def __init__(self, indent: int | None = 2):
        self._indent = indent

    def render(self, report: Report) -> str:
        return json.dumps(report.to_dict(), indent=self._indent, ensure_ascii=False)

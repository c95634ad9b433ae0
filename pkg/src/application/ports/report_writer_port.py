from typing import Protocol

from src.domain.report import Report


class ReportWriterPort(Protocol):
    """리포트 직렬화 계약 (Port)"""

    def render(self, report: Report) -> str:
        """리포트를 출력 문자열로 변환합니다."""
        ...

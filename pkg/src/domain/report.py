from dataclasses import dataclass, field
from typing import Any

# JSON 리포트 스키마 버전 (필드 구성이 바뀔 때만 올린다)
REPORT_SCHEMA_VERSION = "1"

CSV_COLUMNS = ("command", "spec", "mode", "expectation", "variance", "states", "edges", "wall_ms")


@dataclass(frozen=True)
class Report:
    """명령 실행 결과. results/diagnostics 값은 이미 직렬화 가능한 형태다."""
    command: str
    spec: tuple[int, ...]
    mode: str
    results: dict[str, Any]
    diagnostics: dict[str, Any]
    failures: tuple[str, ...] = field(default=())
    version: str = REPORT_SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "spec": list(self.spec),
            "mode": self.mode,
            "results": self.results,
            "diagnostics": self.diagnostics,
            "version": self.version,
        }

    def csv_row(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "spec": ",".join(str(n) for n in self.spec),
            "mode": self.mode,
            "expectation": self.results.get("expectation", ""),
            "variance": self.results.get("variance", ""),
            "states": self.diagnostics.get("states", ""),
            "edges": self.diagnostics.get("edges", ""),
            "wall_ms": self.diagnostics.get("wall_ms", ""),
        }

from dataclasses import dataclass
from enum import Enum

from src.common.exception import ValidationError
from src.domain.collection import CollectionSpec, State
from src.domain.scalar import ScalarMode


class Command(str, Enum):
    EXACT = "exact"
    CLOSED_FORM = "closed-form"
    TAILSUM = "tailsum"
    SIMULATE = "simulate"
    CHECK = "check"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


@dataclass(frozen=True)
class RunRequest:
    """CLI 한 번의 실행 요청"""
    command: Command
    spec: CollectionSpec
    mode: ScalarMode | None = ScalarMode.FLOAT  # closed-form만 None 허용 (설정으로 결정)
    eps: float = 1e-10
    trials: int = 100_000
    seed: int = 0
    output: OutputFormat = OutputFormat.TEXT
    full: bool = False
    from_state: State | None = None

    def validate(self) -> None:
        """명령별 필드 검증 (dispatch 전에 호출)."""
        if self.command is Command.CLOSED_FORM and self.spec.m != 1:
            raise ValidationError(
                f"closed-form은 단일 컬렉션(m=1)만 지원합니다: collections={self.spec.label()}"
            )
        if self.mode is None and self.command is not Command.CLOSED_FORM:
            raise ValidationError(f"{self.command.value} 명령에는 mode가 필요합니다")
        if self.command in (Command.TAILSUM, Command.CHECK) and not 0 < self.eps < 1:
            raise ValidationError(f"eps는 (0, 1) 범위여야 합니다: {self.eps}")
        if self.command in (Command.SIMULATE, Command.CHECK):
            if self.trials < 2:
                raise ValidationError(f"trials는 2 이상이어야 합니다: {self.trials}")
            if not 0 <= self.seed < 2 ** 64:
                raise ValidationError(f"seed는 0..2^64-1 범위여야 합니다: {self.seed}")
        if self.from_state is not None:
            if self.command is not Command.EXACT:
                raise ValidationError("--from-state는 exact 명령에서만 사용할 수 있습니다")
            self.from_state.validate(self.spec)

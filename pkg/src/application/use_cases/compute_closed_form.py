import logging
import time

from src.common.exception import ValidationError
from src.domain.collection import CollectionSpec
from src.domain.report import Report
from src.domain.scalar import ScalarMode, format_scalar
from src.domain.single_collection import expectation_single, resolve_mode, variance_single

logger = logging.getLogger(__name__)


class ComputeClosedFormUseCase:
    """단일 컬렉션 closed form (기대값 + 두 분산 식) Use Case"""

    def __init__(self, rational_max_n: int):
        self._rational_max_n = rational_max_n

    def execute(self, spec: CollectionSpec, mode: ScalarMode | None) -> Report:
        if spec.m != 1:
            raise ValidationError(
                f"closed-form은 단일 컬렉션(m=1)만 지원합니다: collections={spec.label()}"
            )
        n = spec.sizes[0]
        mode = resolve_mode(mode, n, self._rational_max_n)
        logger.info("closed-form 실행: N=%d, mode=%s", n, mode.value)

        started = time.perf_counter()
        expectation = expectation_single(n, mode)
        # 유리수 모드에서 두 식이 다르면 FormulaMismatchError
        geometric, markov = variance_single(n, mode)
        wall_ms = (time.perf_counter() - started) * 1000

        return Report(
            command="closed-form",
            spec=spec.sizes,
            mode=mode.value,
            results={
                "expectation": format_scalar(expectation),
                "variance": format_scalar(geometric),
                "variance_geometric": format_scalar(geometric),
                "variance_markov": format_scalar(markov),
            },
            diagnostics={
                "states": spec.state_count,
                "wall_ms": round(wall_ms, 3),
            },
        )

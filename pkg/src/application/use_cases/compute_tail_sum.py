import logging
import time

from src.application.services.tail_oracle import TailConfig, max_moments
from src.domain.collection import CollectionSpec
from src.domain.report import Report

logger = logging.getLogger(__name__)


class ComputeTailSumUseCase:
    """포함-배제 tail sum oracle Use Case"""

    def __init__(self, n_cap: int | None):
        self._n_cap = n_cap

    def execute(self, spec: CollectionSpec, eps: float) -> Report:
        logger.info("tailsum 실행: collections=%s, eps=%g", spec.label(), eps)
        started = time.perf_counter()
        moments = max_moments(spec, TailConfig(eps=eps, n_cap=self._n_cap))
        wall_ms = (time.perf_counter() - started) * 1000

        return Report(
            command="tailsum",
            spec=spec.sizes,
            mode="float",
            results={
                "expectation": moments.expectation,
                "variance": moments.variance,
            },
            diagnostics={
                "states": spec.state_count,
                "wall_ms": round(wall_ms, 3),
                "truncation_bound": moments.truncation_bound,
                "terms": moments.terms,
            },
        )

import logging
import time

from src.application.services.chain_solver import ChainSolver
from src.domain.collection import CollectionSpec, State
from src.domain.report import Report
from src.domain.scalar import ScalarMode, format_scalar
from src.domain.state_space import build_space

logger = logging.getLogger(__name__)


class ComputeExactUseCase:
    """곱 체인 solver로 원점(또는 지정 상태)의 기대값/분산을 계산하는 Use Case"""

    def __init__(self, chain_solver: ChainSolver, state_limit: int):
        self._solver = chain_solver
        self._state_limit = state_limit

    def execute(
        self,
        spec: CollectionSpec,
        mode: ScalarMode,
        full: bool = False,
        from_state: State | None = None,
    ) -> Report:
        logger.info("exact 실행: collections=%s, mode=%s", spec.label(), mode.value)
        started = time.perf_counter()
        space = build_space(spec, self._state_limit)
        stats = self._solver.solve(space, mode)
        wall_ms = (time.perf_counter() - started) * 1000

        if from_state is not None:
            expectation, variance = stats.at(from_state)
        else:
            expectation, variance = stats.expectation, stats.variance

        results: dict = {
            "expectation": format_scalar(expectation),
            "variance": format_scalar(variance),
        }
        if from_state is not None:
            results["from_state"] = list(from_state.counts)
        if full:
            results["per_state"] = [
                {
                    "state": list(space.state_of(index).counts),
                    "k": format_scalar(stats.k[index]),
                    "v": format_scalar(stats.v[index]),
                }
                for index in range(space.size)
            ]

        return Report(
            command="exact",
            spec=spec.sizes,
            mode=mode.value,
            results=results,
            diagnostics={
                "states": space.size,
                "edges": space.edge_count(),
                "wall_ms": round(wall_ms, 3),
            },
        )

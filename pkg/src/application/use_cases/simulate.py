import logging
import time

from src.application.services.mc_oracle import MonteCarloEstimator
from src.domain.collection import CollectionSpec
from src.domain.report import Report

logger = logging.getLogger(__name__)


class SimulateUseCase:
    """Monte Carlo 추정 Use Case"""

    def __init__(self, estimator: MonteCarloEstimator):
        self._estimator = estimator

    def execute(self, spec: CollectionSpec, trials: int, seed: int) -> Report:
        logger.info("simulate 실행: collections=%s, trials=%d, seed=%d", spec.label(), trials, seed)
        started = time.perf_counter()
        estimate = self._estimator.estimate_parallel(spec, trials, seed)
        wall_ms = (time.perf_counter() - started) * 1000

        return Report(
            command="simulate",
            spec=spec.sizes,
            mode="float",
            results={
                "expectation": estimate.mean,
                "variance": estimate.sample_variance,
            },
            diagnostics={
                "states": spec.state_count,
                "wall_ms": round(wall_ms, 3),
                "stderr": estimate.stderr_mean,
                "trials": estimate.trials,
                "seed": estimate.seed,
            },
        )

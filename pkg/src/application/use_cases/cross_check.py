import logging
import time
from dataclasses import dataclass

from src.application.services.chain_solver import ChainSolver
from src.application.services.mc_oracle import MonteCarloEstimator
from src.application.services.tail_oracle import TailConfig, max_moments
from src.domain.collection import CollectionSpec
from src.domain.report import Report
from src.domain.scalar import Scalar, ScalarMode, format_scalar
from src.domain.single_collection import expectation_single, variance_single
from src.domain.state_space import build_space

logger = logging.getLogger(__name__)

# exact 대비 simulate 평균 허용 폭 (표준오차 배수)
SIMULATE_Z = 4.0
MIN_ABS_TOLERANCE = 1e-8


@dataclass(frozen=True)
class _MethodResult:
    method: str
    expectation: Scalar
    variance: Scalar
    stderr: float | None = None

    def row(self) -> dict:
        row = {
            "method": self.method,
            "expectation": format_scalar(self.expectation),
            "variance": format_scalar(self.variance),
        }
        if self.stderr is not None:
            row["stderr"] = self.stderr
        return row


class CrossCheckUseCase:
    """적용 가능한 모든 계산 경로를 실행하고 쌍별 일치 여부를 검증하는 Use Case.

    - closed-form: m = 1 일 때만
    - exact: 상태 수 제한 이하일 때만
    - tailsum: 모든 N_j <= tailsum_max_n 일 때만 (정밀도 한계)
    - simulate: 항상
    """

    def __init__(
        self,
        chain_solver: ChainSolver,
        estimator: MonteCarloEstimator,
        state_limit: int,
        tailsum_max_n: int,
        n_cap: int | None,
    ):
        self._solver = chain_solver
        self._estimator = estimator
        self._state_limit = state_limit
        self._tailsum_max_n = tailsum_max_n
        self._n_cap = n_cap

    def execute(
        self, spec: CollectionSpec, mode: ScalarMode, eps: float, trials: int, seed: int,
    ) -> Report:
        logger.info("check 실행: collections=%s, mode=%s", spec.label(), mode.value)
        started = time.perf_counter()
        methods: list[_MethodResult] = []
        skipped: list[str] = []
        diagnostics: dict = {"states": spec.state_count}

        closed = exact = tail = None
        if spec.m == 1:
            n = spec.sizes[0]
            geometric, _ = variance_single(n, mode)
            closed = _MethodResult("closed-form", expectation_single(n, mode), geometric)
            methods.append(closed)

        if spec.state_count <= self._state_limit:
            space = build_space(spec, self._state_limit)
            stats = self._solver.solve(space, mode)
            exact = _MethodResult("exact", stats.expectation, stats.variance)
            methods.append(exact)
            diagnostics["edges"] = space.edge_count()
        else:
            logger.warning(
                "⚠️ 상태 수 %d > 제한 %d: exact 생략", spec.state_count, self._state_limit,
            )
            skipped.append(f"exact: states {spec.state_count} > limit {self._state_limit}")

        if max(spec.sizes) <= self._tailsum_max_n:
            moments = max_moments(spec, TailConfig(eps=eps, n_cap=self._n_cap))
            tail = _MethodResult("tailsum", moments.expectation, moments.variance)
            methods.append(tail)
            diagnostics["truncation_bound"] = moments.truncation_bound
        else:
            logger.warning(
                "⚠️ N=%d > %d: tailsum 생략 (포함-배제 정밀도 한계)",
                max(spec.sizes), self._tailsum_max_n,
            )
            skipped.append(f"tailsum: max N {max(spec.sizes)} > {self._tailsum_max_n}")

        estimate = self._estimator.estimate_parallel(spec, trials, seed)
        simulate = _MethodResult(
            "simulate", estimate.mean, estimate.sample_variance, estimate.stderr_mean,
        )
        methods.append(simulate)
        diagnostics["stderr"] = estimate.stderr_mean

        tolerance = max(eps, MIN_ABS_TOLERANCE)
        checks: list[dict] = []

        def compare(a: _MethodResult, b: _MethodResult, quantity: str, limit: float) -> None:
            difference = abs(float(getattr(a, quantity)) - float(getattr(b, quantity)))
            checks.append({
                "pair": f"{a.method} vs {b.method}",
                "quantity": quantity,
                "difference": difference,
                "tolerance": limit,
                "passed": difference <= limit,
            })

        reference = exact or closed or tail
        for other in (closed, tail):
            if other is not None and reference is not None and other is not reference:
                compare(reference, other, "expectation", tolerance)
                compare(reference, other, "variance", tolerance)
        if reference is not None:
            z_limit = SIMULATE_Z * estimate.stderr_mean if estimate.stderr_mean > 0 else tolerance
            compare(reference, simulate, "expectation", z_limit)

        failures = tuple(
            f"{c['pair']} {c['quantity']}: |diff|={c['difference']:.3e} > {c['tolerance']:.3e}"
            for c in checks if not c["passed"]
        )
        for failure in failures:
            logger.warning("교차 검증 실패: %s", failure)

        diagnostics["wall_ms"] = round((time.perf_counter() - started) * 1000, 3)
        diagnostics["checks"] = checks
        diagnostics["skipped"] = skipped
        diagnostics["failures"] = list(failures)

        summary = reference or simulate
        return Report(
            command="check",
            spec=spec.sizes,
            mode=mode.value,
            results={
                "expectation": format_scalar(summary.expectation),
                "variance": format_scalar(summary.variance),
                "methods": [m.row() for m in methods],
            },
            diagnostics=diagnostics,
            failures=failures,
        )

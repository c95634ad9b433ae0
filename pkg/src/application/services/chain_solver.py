"""흡수 체인 모멘트 solver.

상태 순서가 위상 정렬이므로 Id - Q는 상삼각이고, 역행렬 없이 인덱스
내림차순 한 번의 backward sweep으로 (Id - Q)x = b 를 푼다.
  k: (Id - Q)k = 1
  w: (Id - Q)w = k,  v = 2w - k - k^2
"""
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Sequence

import numpy as np

from src.common.exception import CapacityError, DegenerateDiagonalError
from src.domain.absorption import AbsorptionStats
from src.domain.scalar import Scalar, ScalarMode
from src.domain.state_space import StateSpace

logger = logging.getLogger(__name__)

DEFAULT_DENSE_LIMIT = 2000


@dataclass(frozen=True)
class SweepResult:
    """backward sweep 결과. edges_visited는 transient 행의 전이 수 합과 같아야 한다."""
    values: tuple[Any, ...]
    edges_visited: int


def _degenerate(index: int, space: StateSpace) -> DegenerateDiagonalError:
    return DegenerateDiagonalError(
        f"transient 상태 {space.state_of(index).counts} (index={index})의 "
        f"대각 원소 1 - p_ss 가 0입니다"
    )


def _row_sweep(
    space: StateSpace,
    rhs: Callable[[int], Any],
    convert: Callable[[Fraction], Any],
    accumulate: Callable[[list[Any]], Any],
) -> SweepResult:
    """행 단위 lazy sweep. 값은 스칼라 또는 numpy 벡터(행렬 행)일 수 있다."""
    absorbing = space.absorbing_index
    x: list[Any] = [None] * space.size
    edges = 0
    for index in range(absorbing - 1, -1, -1):
        row = space.row(index)
        p_self = Fraction(0)
        terms = [rhs(index)]
        for target, p in row.edges:
            edges += 1
            if target == index:
                p_self += p
            elif target != absorbing:
                terms.append(convert(p) * x[target])
        diagonal = 1 - p_self
        if diagonal == 0:
            raise _degenerate(index, space)
        x[index] = accumulate(terms) / convert(diagonal)
    x[absorbing] = rhs(absorbing) * 0
    return SweepResult(values=tuple(x), edges_visited=edges)


def _vector_sweep(space: StateSpace, rhs: np.ndarray) -> SweepResult:
    """float 모드: 좌표 합 레벨 단위로 벡터화한 sweep.

    레벨 L의 상태는 self-loop 외에는 L보다 큰 레벨로만 전이하므로
    레벨 내부 상태들은 동시에 계산할 수 있다. 행 내부 합은 Neumaier 보상 합산.
    """
    spec = space.spec
    table = space.table
    sizes = np.asarray(spec.sizes, dtype=np.int64)
    denominator = spec.product
    alphas = [np.asarray(a, dtype=np.int64) for a in product((0, 1), repeat=spec.m)][1:]

    x = np.zeros(space.size, dtype=np.float64)
    edges = 0
    bounds = list(space.level_offsets) + [space.size]
    for level in range(space.top_level - 1, -1, -1):
        lo, hi = bounds[level], bounds[level + 1]
        coords = table.coords[lo - 1:hi - 1]
        flat = (coords - 1) @ table.strides

        self_numerator = coords.prod(axis=1)
        edges += len(coords)
        diagonal = (denominator - self_numerator) / denominator
        if np.any(diagonal <= 0):
            raise _degenerate(lo + int(np.argmax(diagonal <= 0)), space)

        total = rhs[lo:hi].astype(np.float64, copy=True)
        carry = np.zeros_like(total)
        for alpha in alphas:
            numerator = np.where(alpha == 1, sizes - coords, coords).prod(axis=1)
            mask = numerator > 0
            count = int(mask.sum())
            if count == 0:
                continue
            edges += count
            target = table.rank_of_flat[flat[mask] + int(alpha @ table.strides)]
            term = np.zeros_like(total)
            term[mask] = numerator[mask] / denominator * x[target]
            running = total + term
            carry += np.where(
                np.abs(total) >= np.abs(term),
                (total - running) + term,
                (term - running) + total,
            )
            total = running
        x[lo:hi] = (total + carry) / diagonal

    # 원점 -> (1,...,1) 확률 1
    edges += 1
    x[0] = rhs[0] + x[1]
    x[space.absorbing_index] = 0.0
    return SweepResult(values=tuple(x.tolist()), edges_visited=edges)


class ChainSolver:
    """곱 체인의 흡수 시간 기대값/분산 solver"""

    def __init__(self, dense_limit: int = DEFAULT_DENSE_LIMIT):
        self._dense_limit = dense_limit

    def backward_sweep(
        self, space: StateSpace, rhs: Sequence[Scalar], mode: ScalarMode,
    ) -> SweepResult:
        """(Id - Q)x = rhs 를 인덱스 내림차순 한 번의 sweep으로 푼다. x(흡수) = 0."""
        if mode is ScalarMode.FLOAT:
            return _vector_sweep(space, np.asarray(rhs, dtype=np.float64))
        return _row_sweep(
            space,
            rhs=lambda index: Fraction(rhs[index]),
            convert=lambda p: p,
            accumulate=lambda terms: sum(terms[1:], terms[0]),
        )

    def solve_expectations(self, space: StateSpace, mode: ScalarMode) -> tuple[Scalar, ...]:
        return self._expectations(space, mode).values

    def solve_variances(
        self, space: StateSpace, k: Sequence[Scalar], mode: ScalarMode,
    ) -> tuple[Scalar, ...]:
        return self._variances(space, k, mode)[0]

    def solve(self, space: StateSpace, mode: ScalarMode) -> AbsorptionStats:
        started = time.perf_counter()
        expectations = self._expectations(space, mode)
        variances, visited = self._variances(space, expectations.values, mode)
        logger.info(
            "chain solve 완료: collections=%s, mode=%s, states=%d, edges=%d, %.1f ms",
            space.spec.label(), mode.value, space.size,
            expectations.edges_visited + visited,
            (time.perf_counter() - started) * 1000,
        )
        return AbsorptionStats(
            space=space,
            k=expectations.values,
            v=variances,
            mode=mode,
            edges_visited=expectations.edges_visited + visited,
        )

    def _expectations(self, space: StateSpace, mode: ScalarMode) -> SweepResult:
        one = 1.0 if mode is ScalarMode.FLOAT else Fraction(1)
        return self.backward_sweep(space, [one] * space.size, mode)

    def _variances(
        self, space: StateSpace, k: Sequence[Scalar], mode: ScalarMode,
    ) -> tuple[tuple[Scalar, ...], int]:
        w = self.backward_sweep(space, k, mode)
        absorbing = space.absorbing_index
        variances: list[Scalar] = []
        for index, (ki, wi) in enumerate(zip(k, w.values)):
            if index == absorbing:
                variances.append(ki * 0)
                continue
            vi = 2 * wi - ki - ki * ki
            if mode is ScalarMode.FLOAT:
                vi = max(vi, 0.0)
            variances.append(vi)
        return tuple(variances), w.edges_visited

    def _check_dense(self, space: StateSpace) -> None:
        if space.transient_count > self._dense_limit:
            raise CapacityError(
                f"transient 상태 {space.transient_count}개는 dense 행렬 제한 "
                f"{self._dense_limit}을 초과합니다. PARCOLLECT_DENSE_LIMIT로 조정할 수 있습니다."
            )

    def transient_matrix(self, space: StateSpace, mode: ScalarMode) -> np.ndarray:
        """transient 상태 간 전이 블록 Q (dense)."""
        self._check_dense(space)
        n = space.transient_count
        if mode is ScalarMode.FLOAT:
            q = np.zeros((n, n), dtype=np.float64)
        else:
            q = np.full((n, n), Fraction(0), dtype=object)
        for index in range(n):
            for target, p in space.row(index).edges:
                if target < n:
                    q[index, target] = float(p) if mode is ScalarMode.FLOAT else p
        return q

    def fundamental_matrix(self, space: StateSpace, mode: ScalarMode) -> np.ndarray:
        """F = (Id - Q)^-1. 결과 계산이 아닌 항등식 검증용 (작은 인스턴스만)."""
        self._check_dense(space)
        n = space.transient_count
        if mode is ScalarMode.FLOAT:
            zero, one, convert = np.zeros(n, dtype=np.float64), 1.0, float
        else:
            zero, one, convert = np.full(n, Fraction(0), dtype=object), Fraction(1), (lambda p: p)

        def unit(index: int) -> np.ndarray:
            row = zero.copy()
            if index < n:
                row[index] = one
            return row

        # 행 i: (Id - Q) F[i] = e_i + ... 를 같은 backward sweep으로 푼다
        sweep = _row_sweep(
            space,
            rhs=unit,
            convert=convert,
            accumulate=lambda terms: sum(terms[1:], terms[0]),
        )
        return np.vstack(sweep.values[:n])

"""곱 체인 상태 공간: 열거, 인덱싱, 전이 행 생성.

상태 순서는 원점(0,...,0)이 먼저, 이후 좌표 합 오름차순(동률은 사전순)이다.
이 순서에서 self-loop을 제외한 모든 전이는 더 큰 인덱스로 향하므로
Id - Q는 상삼각 행렬이 된다.
"""
import logging
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterator

import numpy as np

from src.common.exception import CapacityError, ValidationError
from src.domain.collection import CollectionSpec, State, TransitionRow

logger = logging.getLogger(__name__)

DEFAULT_STATE_LIMIT = 10_000_000


def successor_states(state: State, spec: CollectionSpec) -> list[tuple[State, Fraction]]:
    """전이 확률 곱 공식을 그대로 적용한 후속 상태 목록 (확률 0인 전이는 제외).

    alpha in {0,1}^m 에 대해 prod_j (1 - i_j/N_j)^alpha_j (i_j/N_j)^(1-alpha_j).
    모든 확률의 분모는 prod_j N_j 로 공통이다.
    """
    state.validate(spec)
    if state.is_origin:
        return [(State((1,) * spec.m), Fraction(1))]

    denominator = spec.product
    result: list[tuple[State, Fraction]] = []
    for alpha in product((0, 1), repeat=spec.m):
        numerator = transition_numerator(state.counts, spec.sizes, alpha)
        if numerator == 0:
            continue
        target = State(tuple(i + a for i, a in zip(state.counts, alpha)))
        result.append((target, Fraction(numerator, denominator)))
    return result


def transition_numerator(
    counts: tuple[int, ...], sizes: tuple[int, ...], alpha: tuple[int, ...],
) -> int:
    """공통 분모 prod(N_j) 위의 전이 확률 분자."""
    return prod((n - i) if a else i for i, n, a in zip(counts, sizes, alpha))


@dataclass(frozen=True)
class StateTable:
    """float 모드 벡터화 sweep용 dense 상태 테이블 (원점 제외)"""
    coords: np.ndarray        # (P, m), 인덱스 p+1 상태의 i_j (1-based)
    rank_of_flat: np.ndarray  # (P,), 0-based 좌표의 mixed-radix 값 -> 상태 인덱스
    strides: np.ndarray       # (m,), mixed-radix 자리값


@dataclass(frozen=True)
class StateSpace:
    """{원점} U prod_j {1..N_j} 의 인덱싱된 열거.

    인덱스 계산에는 좌표 합별 개수 테이블(크기 m x sum N_j)만 사용하며
    상태 전체 테이블은 float sweep이 요청할 때만 만든다.
    """
    spec: CollectionSpec
    level_offsets: tuple[int, ...]
    _suffix_prefix: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return self.spec.state_count

    @property
    def absorbing_index(self) -> int:
        return self.size - 1

    @property
    def transient_count(self) -> int:
        return self.size - 1

    @property
    def top_level(self) -> int:
        return sum(n - 1 for n in self.spec.sizes)

    def edge_count(self) -> int:
        """모든 행의 전이 수 합. 상태별 전이 수는 prod_j (i_j < N_j 이면 2, 아니면 1)."""
        return 1 + prod(2 * n - 1 for n in self.spec.sizes)

    def transient_edge_count(self) -> int:
        return self.edge_count() - 1

    def _prefix(self, j: int, s: int) -> int:
        row = self._suffix_prefix[j]
        if s < 0:
            return 0
        if s >= len(row):
            return row[-1]
        return row[s]

    def index_of(self, state: State) -> int:
        state.validate(self.spec)
        if state.is_origin:
            return 0
        offsets = [i - 1 for i in state.counts]
        remaining = sum(offsets)
        index = self.level_offsets[remaining]
        for j, c in enumerate(offsets):
            # 같은 좌표 합에서 j번째 좌표가 c보다 작은 상태 수
            index += self._prefix(j + 1, remaining) - self._prefix(j + 1, remaining - c)
            remaining -= c
        return index

    def state_of(self, index: int) -> State:
        if isinstance(index, bool) or not isinstance(index, (int, np.integer)):
            raise ValidationError(f"상태 인덱스는 정수여야 합니다: {index!r}")
        if not 0 <= index < self.size:
            raise ValidationError(
                f"상태 인덱스 범위 초과: {index} (0..{self.size - 1})"
            )
        if index == 0:
            return State.origin(self.spec.m)
        remaining = bisect_right(self.level_offsets, index) - 1
        rank = int(index) - self.level_offsets[remaining]
        counts: list[int] = []
        for j, n in enumerate(self.spec.sizes):
            upper = self._prefix(j + 1, remaining)

            def below_or_equal(c: int, _j: int = j, _r: int = remaining, _u: int = upper) -> int:
                return _u - self._prefix(_j + 1, _r - c - 1)

            c = bisect_right(range(n), rank, key=below_or_equal)
            rank -= upper - self._prefix(j + 1, remaining - c)
            remaining -= c
            counts.append(c + 1)
        return State(tuple(counts))

    def states(self) -> Iterator[State]:
        for index in range(self.size):
            yield self.state_of(index)

    def row(self, index: int) -> TransitionRow:
        state = self.state_of(index)
        edges = tuple(
            (self.index_of(target), p)
            for target, p in successor_states(state, self.spec)
        )
        return TransitionRow(source=index, edges=edges)

    @cached_property
    def table(self) -> StateTable:
        sizes = np.asarray(self.spec.sizes, dtype=np.int64)
        count = self.spec.product
        strides = np.ones(self.spec.m, dtype=np.int64)
        for j in range(self.spec.m - 2, -1, -1):
            strides[j] = strides[j + 1] * sizes[j + 1]
        # C-order 평탄 인덱스는 이미 사전순; 좌표 합으로 stable 정렬
        flat = np.arange(count, dtype=np.int64)
        coords0 = (flat[:, None] // strides[None, :]) % sizes[None, :]
        order = np.argsort(coords0.sum(axis=1), kind="stable")
        rank_of_flat = np.empty(count, dtype=np.int64)
        rank_of_flat[order] = np.arange(1, count + 1, dtype=np.int64)
        logger.info("상태 테이블 생성: %d 상태, m=%d", count, self.spec.m)
        return StateTable(
            coords=coords0[order] + 1,
            rank_of_flat=rank_of_flat,
            strides=strides,
        )


def successors(state: State, space: StateSpace) -> TransitionRow:
    """상태의 sparse 전이 행. 원점은 (1,...,1)로 확률 1, 흡수 상태는 self-loop 1."""
    return space.row(space.index_of(state))


def build_space(spec: CollectionSpec, state_limit: int = DEFAULT_STATE_LIMIT) -> StateSpace:
    if spec.state_count > state_limit:
        raise CapacityError(
            f"상태 수 {spec.state_count}가 제한 {state_limit}을 초과합니다 "
            f"(collections={spec.label()}). PARCOLLECT_STATE_LIMIT로 조정할 수 있습니다."
        )

    # suffix_counts[j][s]: 좌표 j..m-1 의 0-based 합이 s인 조합 수
    suffix_counts: list[list[int]] = [[1]]
    for n in reversed(spec.sizes):
        below = suffix_counts[0]
        counts = [0] * (len(below) + n - 1)
        for s, ways in enumerate(below):
            for c in range(n):
                counts[s + c] += ways
        suffix_counts.insert(0, counts)

    suffix_prefix = []
    for counts in suffix_counts:
        running, acc = 0, []
        for ways in counts:
            running += ways
            acc.append(running)
        suffix_prefix.append(tuple(acc))

    level_offsets = [1]
    for ways in suffix_counts[0][:-1]:
        level_offsets.append(level_offsets[-1] + ways)

    space = StateSpace(
        spec=spec,
        level_offsets=tuple(level_offsets),
        _suffix_prefix=tuple(suffix_prefix),
    )
    logger.info(
        "상태 공간 생성: collections=%s, |S|=%d, edges=%d",
        spec.label(), space.size, space.edge_count(),
    )
    return space

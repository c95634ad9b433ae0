"""포함-배제 CDF와 tail sum으로 max(X^1, ..., X^m)의 모멘트를 구하는 독립 검증 경로.

  P(X <= n) = sum_{k=0}^{N} (-1)^k C(N,k) (1 - k/N)^n
  E[T]   = sum_{n>=0} P(T > n)
  E[T^2] = sum_{n>=0} (2n+1) P(T > n)

교대합은 정수 (N-k)^n 으로 정확히 더한 뒤 N^n 으로 한 번만 나누므로 (정확한 반올림)
상쇄 오차가 없다. 결과는 [0,1]로 clamp한다.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from src.common.exception import TruncationCapError, ValidationError
from src.domain.collection import CollectionSpec
from src.domain.scalar import NeumaierSum, Scalar, ScalarMode

logger = logging.getLogger(__name__)

DEFAULT_EPS = 1e-10
DEFAULT_N_CAP = 1_000_000
CLAMP_WARN_THRESHOLD = 1e-9


@dataclass(frozen=True)
class TailConfig:
    eps: float = DEFAULT_EPS
    n_cap: int | None = DEFAULT_N_CAP

    def __post_init__(self) -> None:
        if not 0 < self.eps < 1:
            raise ValidationError(f"eps는 (0, 1) 범위여야 합니다: {self.eps}")
        if self.n_cap is not None and self.n_cap < 1:
            raise ValidationError(f"n_cap은 1 이상이어야 합니다: {self.n_cap}")


@dataclass(frozen=True)
class TailMoments:
    """tail sum 결과. truncation_bound는 잘라낸 꼬리의 상한."""
    expectation: float
    variance: float
    terms: int
    truncation_bound: float


def _clamp(value: float, n_types: int, n: int) -> float:
    clamped = min(max(value, 0.0), 1.0)
    if abs(clamped - value) > CLAMP_WARN_THRESHOLD:
        logger.warning(
            "포함-배제 합 clamp: N=%d, n=%d, raw=%.3e (정밀도 한계 근처)", n_types, n, value,
        )
    return clamped


def _check_args(n_types: int, n: int) -> None:
    if n_types < 1 or n < 0:
        raise ValidationError(f"N >= 1, n >= 0 이어야 합니다: N={n_types}, n={n}")


def _signed_binomials(n_types: int) -> list[int]:
    # k = 1..N-1 항의 (-1)^(k+1) C(N, k). k = N 항은 n >= 1 에서 0^n = 0
    return [(-1) ** (k + 1) * math.comb(n_types, k) for k in range(1, n_types)]


def _survival_numerator(n_types: int, n: int) -> int:
    """N^n * P(X > n) (정수, n >= N)."""
    return sum(
        sign * (n_types - k) ** n
        for k, sign in enumerate(_signed_binomials(n_types), start=1)
    )


def cdf_single(n_types: int, n: int, mode: ScalarMode = ScalarMode.FLOAT) -> Scalar:
    """n번 뽑기 안에 N종을 모두 모을 확률 P(X <= n)."""
    _check_args(n_types, n)
    if n < n_types:
        return Fraction(0) if mode is ScalarMode.RATIONAL else 0.0
    if n_types == 1:
        return Fraction(1) if mode is ScalarMode.RATIONAL else 1.0
    denominator = n_types ** n
    numerator = denominator - _survival_numerator(n_types, n)
    if mode is ScalarMode.RATIONAL:
        return Fraction(numerator, denominator)
    return _clamp(numerator / denominator, n_types, n)


def sf_single(n_types: int, n: int) -> float:
    """P(X > n)를 직접 계산한다 (1 - cdf 의 상쇄를 피함)."""
    _check_args(n_types, n)
    if n < n_types:
        return 1.0
    if n_types == 1:
        return 0.0
    return _clamp(_survival_numerator(n_types, n) / n_types ** n, n_types, n)


class _SurvivalSequence:
    """n = 0, 1, 2, ... 순서로 P(X > n)을 구한다. (N-k)^n 을 한 단계씩 갱신."""

    def __init__(self, n_types: int):
        self._n_types = n_types
        self._signs = _signed_binomials(n_types)
        self._n = -1
        self._powers: list[int] = []
        self._denominator = 1

    def at(self, n: int) -> float:
        size = self._n_types
        if n < size:
            return 1.0
        if size == 1:
            return 0.0
        if self._n < 0 or n < self._n:
            self._powers = [(size - k) ** n for k in range(1, size)]
            self._denominator = size ** n
        else:
            for _ in range(n - self._n):
                self._powers = [p * (size - k) for k, p in enumerate(self._powers, start=1)]
                self._denominator *= size
        self._n = n
        numerator = sum(sign * p for sign, p in zip(self._signs, self._powers))
        return _clamp(numerator / self._denominator, size, n)


def cdf_parallel(spec: CollectionSpec, n: int) -> float:
    """P(T <= n) = prod_j P(X^j <= n)."""
    return math.prod(cdf_single(size, n) for size in spec.sizes)


def _survival_parallel(survivals: list[float]) -> float:
    """P(T > n) = 1 - prod_j (1 - sf_j)."""
    if all(sf <= 0.5 for sf in survivals):
        return -math.expm1(math.fsum(math.log1p(-sf) for sf in survivals))
    return 1.0 - math.prod(1.0 - sf for sf in survivals)


def tail_bound(sizes: tuple[int, ...], n: int) -> tuple[float, float]:
    """n 이후 항들의 기여 상한 (E[T]용, E[T^2]용).

    P(T > n') <= sum_j N_j q_j^n', q_j = 1 - 1/N_j 를 n' >= n 에 대해 닫힌 형태로 합한다.
      sum_{n'>=n} q^n'          = q^n N
      sum_{n'>=n} (2n'+1) q^n'  = q^n ((2n+1) N + 2 q N^2)
    """
    bound_e = bound_e2 = 0.0
    for size in sizes:
        q = 1.0 - 1.0 / size
        weight = size * q ** n
        bound_e += weight * size
        bound_e2 += weight * ((2 * n + 1) * size + 2 * q * size * size)
    return bound_e, bound_e2


def max_moments(spec: CollectionSpec, cfg: TailConfig | None = None) -> TailMoments:
    cfg = cfg or TailConfig()
    sequences = {size: _SurvivalSequence(size) for size in set(spec.sizes)}
    first = NeumaierSum()
    second = NeumaierSum()

    n = 0
    while True:
        bound_e, bound_e2 = tail_bound(spec.sizes, n)
        if bound_e < cfg.eps and bound_e2 < cfg.eps:
            break
        if cfg.n_cap is not None and n >= cfg.n_cap:
            raise TruncationCapError(
                f"tail sum이 n_cap={cfg.n_cap}에 도달했지만 꼬리 상한 "
                f"{max(bound_e, bound_e2):.3e}이 eps={cfg.eps}보다 큽니다 "
                f"(collections={spec.label()})"
            )
        by_size = {size: seq.at(n) for size, seq in sequences.items()}
        survival = _survival_parallel([by_size[size] for size in spec.sizes])
        first.add(survival)
        second.add((2 * n + 1) * survival)
        n += 1

    expectation = first.value
    variance = second.value - expectation * expectation
    logger.info(
        "tail sum 완료: collections=%s, terms=%d, bound=%.3e",
        spec.label(), n, max(bound_e, bound_e2),
    )
    return TailMoments(
        expectation=expectation,
        variance=variance,
        terms=n,
        truncation_bound=max(bound_e, bound_e2),
    )

"""단일 컬렉션(N종 균등 쿠폰)의 closed form.

대기 시간 X는 기하분포 단계들의 합이므로 기대값 N*H_N, 분산은
두 가지 방식(기하 분해, Markov chain)으로 구한 식이 정확히 일치한다.
"""
from fractions import Fraction

from src.common.exception import FormulaMismatchError, ValidationError
from src.domain.harmonic import harmonic_cache
from src.domain.scalar import NeumaierSum, Scalar, ScalarMode, to_mode

DEFAULT_RATIONAL_MAX_N = 1000


def resolve_mode(
    mode: ScalarMode | str | None, n: int, rational_max_n: int = DEFAULT_RATIONAL_MAX_N,
) -> ScalarMode:
    """mode 미지정 시 N <= rational_max_n 이면 유리수, 그 이상은 float."""
    if mode is None:
        return ScalarMode.RATIONAL if n <= rational_max_n else ScalarMode.FLOAT
    return ScalarMode.parse(mode)


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError(f"N은 1 이상의 정수여야 합니다: {n!r}")


def expectation_single(n: int, mode: ScalarMode | str | None = None) -> Scalar:
    _check_n(n)
    mode = resolve_mode(mode, n)
    cache = harmonic_cache(n, mode)
    return to_mode(n, mode) * cache.harmonic(n)


def variance_single_geometric(n: int, mode: ScalarMode | str | None = None) -> Scalar:
    """기하 분해 분산 N^2 * H2_N - N * H_N.

    유리수 모드에서는 단계별 합 sum_{i<N} N*i/(N-i)^2 와 정확히 같은지 확인한다.
    """
    _check_n(n)
    mode = resolve_mode(mode, n)
    cache = harmonic_cache(n, mode)
    nn = to_mode(n, mode)
    value = nn * nn * cache.harmonic2(n) - nn * cache.harmonic(n)

    if mode is ScalarMode.RATIONAL:
        stagewise = sum((Fraction(n * i, (n - i) ** 2) for i in range(n)), Fraction(0))
        if stagewise != value:
            raise FormulaMismatchError(
                f"기하 분해 분산의 두 형태가 다릅니다 (N={n}): {stagewise} != {value}"
            )
    return value


def variance_single_markov(n: int, mode: ScalarMode | str | None = None) -> Scalar:
    """Markov chain 접근의 분산.

    v_0 = N*H_N - (N*H_N)^2 + sum_{k=1}^{N-1} 2N^2/(N-k) * H_{N-k}
    """
    _check_n(n)
    mode = resolve_mode(mode, n)
    cache = harmonic_cache(n, mode)
    nn = to_mode(n, mode)
    expectation = nn * cache.harmonic(n)

    if mode is ScalarMode.RATIONAL:
        tail = sum(
            (Fraction(2 * n * n, n - k) * cache.harmonic(n - k) for k in range(1, n)),
            Fraction(0),
        )
        return expectation - expectation * expectation + tail

    acc = NeumaierSum()
    for k in range(1, n):
        acc.add(2.0 * n * n / (n - k) * cache.harmonic(n - k))
    acc.add(expectation)
    acc.add(-expectation * expectation)
    return acc.value


def variance_single(n: int, mode: ScalarMode | str | None = None) -> tuple[Scalar, Scalar]:
    """두 분산 식을 모두 계산하고, 유리수 모드에서 불일치하면 오류."""
    mode = resolve_mode(mode, n)
    geometric = variance_single_geometric(n, mode)
    markov = variance_single_markov(n, mode)
    if mode is ScalarMode.RATIONAL and geometric != markov:
        raise FormulaMismatchError(
            f"분산 closed form 불일치 (N={n}): geometric={geometric}, markov={markov}"
        )
    return geometric, markov


def _check_state(n: int, j: int) -> None:
    _check_n(n)
    if isinstance(j, bool) or not isinstance(j, int) or not 0 <= j <= n:
        raise ValidationError(f"j는 0..{n} 범위여야 합니다: {j!r}")


def expected_from_state_single(n: int, j: int, mode: ScalarMode | str | None = None) -> Scalar:
    """j종을 이미 모은 상태에서의 기대 잔여 시간 k_j = N * H_{N-j}."""
    _check_state(n, j)
    mode = resolve_mode(mode, n)
    return to_mode(n, mode) * harmonic_cache(n, mode).harmonic(n - j)


def variance_from_state_single(n: int, j: int, mode: ScalarMode | str | None = None) -> Scalar:
    """j종을 모은 상태에서의 잔여 시간 분산 sum_{i=max(j,1)}^{N-1} N*i/(N-i)^2."""
    _check_state(n, j)
    mode = resolve_mode(mode, n)
    if mode is ScalarMode.RATIONAL:
        return sum((Fraction(n * i, (n - i) ** 2) for i in range(max(j, 1), n)), Fraction(0))
    acc = NeumaierSum()
    for i in range(max(j, 1), n):
        acc.add(n * i / (n - i) ** 2)
    return acc.value


def fundamental_row_single(n: int, i: int, mode: ScalarMode | str | None = None) -> list[Scalar]:
    """단일 컬렉션 fundamental matrix F의 i번째 행 (transient 상태 0..N-1).

    F[0][0] = 1, j >= max(i, 1) 이면 N/(N-j), 나머지는 0.
    """
    _check_n(n)
    if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < n:
        raise ValidationError(f"i는 0..{n - 1} 범위여야 합니다: {i!r}")
    mode = resolve_mode(mode, n)
    row: list[Scalar] = []
    for j in range(n):
        if i == 0 and j == 0:
            row.append(to_mode(1, mode))
        elif j >= max(i, 1):
            row.append(to_mode(Fraction(n, n - j), mode))
        else:
            row.append(to_mode(0, mode))
    return row

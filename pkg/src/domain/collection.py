from dataclasses import dataclass
from fractions import Fraction
from math import prod

from src.common.exception import ValidationError


@dataclass(frozen=True)
class CollectionSpec:
    """병렬 수집 문제 인스턴스: 컬렉션별 쿠폰 종류 수 (N1, ..., Nm)"""
    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(self.sizes)
        if not sizes:
            raise ValidationError("컬렉션이 최소 1개 필요합니다 (m >= 1)")
        for j, n in enumerate(sizes):
            if isinstance(n, bool) or not isinstance(n, int):
                raise ValidationError(f"N[{j}]는 정수여야 합니다: {n!r}")
            if n < 1:
                raise ValidationError(f"N[{j}]는 1 이상이어야 합니다: {n}")
        object.__setattr__(self, "sizes", sizes)

    @classmethod
    def parse(cls, raw: str) -> "CollectionSpec":
        """'6,6,6' 형식의 문자열을 파싱한다."""
        parts = [p.strip() for p in raw.split(",")]
        if not raw.strip() or any(not p for p in parts):
            raise ValidationError(f"collections 형식 오류: '{raw}' (예: 6,6,6)")
        try:
            sizes = tuple(int(p) for p in parts)
        except ValueError:
            raise ValidationError(f"collections는 정수 목록이어야 합니다: '{raw}'") from None
        return cls(sizes)

    @classmethod
    def uniform(cls, n: int, m: int) -> "CollectionSpec":
        """N종 쿠폰 컬렉션 M개 (--n N --m M)"""
        if m < 1:
            raise ValidationError(f"m은 1 이상이어야 합니다: {m}")
        return cls((n,) * m)

    @property
    def m(self) -> int:
        return len(self.sizes)

    @property
    def product(self) -> int:
        return prod(self.sizes)

    @property
    def state_count(self) -> int:
        return 1 + self.product

    def label(self) -> str:
        return ",".join(str(n) for n in self.sizes)


@dataclass(frozen=True)
class State:
    """곱 체인의 한 점: 컬렉션별로 모은 서로 다른 쿠폰 종류 수"""
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(self.counts))

    @classmethod
    def origin(cls, m: int) -> "State":
        return cls((0,) * m)

    @property
    def is_origin(self) -> bool:
        return all(c == 0 for c in self.counts)

    def validate(self, spec: CollectionSpec) -> None:
        """원점이거나 모든 i_j가 1..N_j 범위여야 한다 (0/양수 혼합 불가)."""
        if len(self.counts) != spec.m:
            raise ValidationError(
                f"상태 차원 불일치: {self.counts} (m={spec.m})"
            )
        if self.is_origin:
            return
        for j, (i, n) in enumerate(zip(self.counts, spec.sizes)):
            if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= n:
                raise ValidationError(
                    f"잘못된 상태 {self.counts}: i[{j}]={i!r}는 1..{n} 범위여야 합니다"
                )

    def is_absorbing(self, spec: CollectionSpec) -> bool:
        return self.counts == spec.sizes

    def dominates(self, other: "State") -> bool:
        return all(a >= b for a, b in zip(self.counts, other.counts))

    @classmethod
    def parse(cls, raw: str) -> "State":
        try:
            return cls(tuple(int(p.strip()) for p in raw.split(",")))
        except ValueError:
            raise ValidationError(f"상태 형식 오류: '{raw}' (예: 1,2,3)") from None


@dataclass(frozen=True)
class TransitionRow:
    """한 상태의 sparse 전이: (대상 인덱스, 정확한 확률) 목록"""
    source: int
    edges: tuple[tuple[int, Fraction], ...]

    @property
    def self_loop(self) -> Fraction:
        return sum((p for t, p in self.edges if t == self.source), Fraction(0))

    def total(self) -> Fraction:
        return sum((p for _, p in self.edges), Fraction(0))

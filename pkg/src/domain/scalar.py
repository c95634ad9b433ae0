from enum import Enum
from fractions import Fraction

from src.common.exception import ValidationError

Scalar = Fraction | float


class ScalarMode(Enum):
    """계산 모드: 정확한 유리수 또는 double"""
    RATIONAL = "rational"
    FLOAT = "float"

    @classmethod
    def parse(cls, raw: "str | ScalarMode") -> "ScalarMode":
        if isinstance(raw, ScalarMode):
            return raw
        try:
            return cls(raw.strip().lower())
        except ValueError:
            raise ValidationError(
                f"알 수 없는 mode: '{raw}'. 사용 가능: {[m.value for m in cls]}"
            ) from None


def to_mode(value: Fraction | int, mode: ScalarMode) -> Scalar:
    """정확한 값을 요청된 모드의 스칼라로 변환한다."""
    if mode is ScalarMode.FLOAT:
        return float(value)
    return Fraction(value)


def format_scalar(value: Scalar) -> str | float:
    """리포트 직렬화용. 유리수는 항상 "p/q" 문자열, float은 그대로."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return float(value)


class NeumaierSum:
    """보상 합산(Kahan-Babuska-Neumaier) 누산기.

    항을 하나씩 더하는 순차 합산에서 반올림 오차를 carry로 보정한다.
    """

    __slots__ = ("_sum", "_carry")

    def __init__(self, start: float = 0.0):
        self._sum = float(start)
        self._carry = 0.0

    def add(self, value: float) -> None:
        total = self._sum + value
        if abs(self._sum) >= abs(value):
            self._carry += (self._sum - total) + value
        else:
            self._carry += (value - total) + self._sum
        self._sum = total

    @property
    def value(self) -> float:
        return self._sum + self._carry

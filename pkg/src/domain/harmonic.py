from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from src.domain.scalar import NeumaierSum, Scalar, ScalarMode


@dataclass(frozen=True)
class HarmonicCache:
    """H_k = sum 1/i, H2_k = sum 1/i^2 의 prefix 합 (k = 0..n_max, H_0 = 0)"""
    n_max: int
    mode: ScalarMode
    h: tuple[Scalar, ...]
    h2: tuple[Scalar, ...]

    def harmonic(self, k: int) -> Scalar:
        return self.h[k]

    def harmonic2(self, k: int) -> Scalar:
        return self.h2[k]


@lru_cache(maxsize=16)
def harmonic_cache(n_max: int, mode: ScalarMode = ScalarMode.RATIONAL) -> HarmonicCache:
    """n_max까지의 harmonic 합을 한 번 계산해 공유한다."""
    if mode is ScalarMode.RATIONAL:
        h: list[Scalar] = [Fraction(0)]
        h2: list[Scalar] = [Fraction(0)]
        for i in range(1, n_max + 1):
            h.append(h[-1] + Fraction(1, i))
            h2.append(h2[-1] + Fraction(1, i * i))
    else:
        acc, acc2 = NeumaierSum(), NeumaierSum()
        h, h2 = [0.0], [0.0]
        for i in range(1, n_max + 1):
            acc.add(1.0 / i)
            acc2.add(1.0 / (i * i))
            h.append(acc.value)
            h2.append(acc2.value)
    return HarmonicCache(n_max=n_max, mode=mode, h=tuple(h), h2=tuple(h2))

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo 추정 결과 (표본 분산은 n-1 분모)"""
    mean: float
    sample_variance: float
    stderr_mean: float
    trials: int
    seed: int

    @classmethod
    def from_moments(cls, trials: int, mean: float, m2: float, seed: int) -> "Estimate":
        """누적 (n, 평균, 편차 제곱합) 으로부터 생성한다."""
        sample_variance = max(m2 / (trials - 1), 0.0)
        return cls(
            mean=mean,
            sample_variance=sample_variance,
            stderr_mean=math.sqrt(sample_variance / trials),
            trials=trials,
            seed=seed,
        )

    def covers(self, value: float, z: float) -> bool:
        """value가 mean ± z*stderr 안에 있는지."""
        return abs(self.mean - value) <= z * self.stderr_mean

from dataclasses import dataclass

from src.domain.collection import State
from src.domain.scalar import Scalar, ScalarMode
from src.domain.state_space import StateSpace


@dataclass(frozen=True)
class AbsorptionStats:
    """상태별 흡수 시간의 기대값 k와 분산 v"""
    space: StateSpace
    k: tuple[Scalar, ...]
    v: tuple[Scalar, ...]
    mode: ScalarMode
    edges_visited: int = 0

    @property
    def expectation(self) -> Scalar:
        return self.k[0]

    @property
    def variance(self) -> Scalar:
        return self.v[0]

    def at(self, state: State) -> tuple[Scalar, Scalar]:
        index = self.space.index_of(state)
        return self.k[index], self.v[index]

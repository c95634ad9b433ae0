from itertools import product

import pytest

from src.application.services.chain_solver import ChainSolver
from src.application.services.tail_oracle import max_moments
from src.domain.collection import CollectionSpec
from src.domain.scalar import ScalarMode
from src.domain.single_collection import expectation_single, variance_single_geometric
from src.domain.state_space import build_space

SIZES = range(1, 9)


def _all_specs():
    for m in (1, 2, 3):
        yield from product(SIZES, repeat=m)


def test_chain_tail_and_closed_form_agree():
    solver = ChainSolver()
    for sizes in _all_specs():
        spec = CollectionSpec(sizes)
        stats = solver.solve(build_space(spec), ScalarMode.FLOAT)
        tail = max_moments(spec)
        assert stats.expectation == pytest.approx(tail.expectation, abs=1e-8), sizes
        assert stats.variance == pytest.approx(tail.variance, abs=1e-8), sizes
        if spec.m == 1:
            n = sizes[0]
            assert stats.expectation == pytest.approx(
                float(expectation_single(n, ScalarMode.RATIONAL)), abs=1e-8,
            )
            assert stats.variance == pytest.approx(
                float(variance_single_geometric(n, ScalarMode.RATIONAL)), abs=1e-8,
            )

import logging
from fractions import Fraction

import pytest

from src.application.services.tail_oracle import (
    TailConfig,
    cdf_parallel,
    cdf_single,
    max_moments,
    sf_single,
    tail_bound,
)
from src.common.exception import TruncationCapError, ValidationError
from src.domain.collection import CollectionSpec
from src.domain.scalar import ScalarMode
from src.domain.single_collection import expectation_single


def test_cdf_boundaries():
    assert cdf_single(3, 2) == 0.0
    assert cdf_single(1, 0) == 0.0
    assert cdf_single(1, 1) == 1.0
    assert cdf_single(2, 2) == 0.5
    assert cdf_single(2, 2, ScalarMode.RATIONAL) == Fraction(1, 2)
    assert cdf_single(3, 3, ScalarMode.RATIONAL) == Fraction(2, 9)


def test_cdf_is_monotone_and_reaches_one():
    values = [cdf_single(6, n) for n in range(0, 201)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert values[-1] > 1 - 1e-12


@pytest.mark.parametrize("n_types,n", [(10, 30), (6, 14), (40, 100), (100, 250)])
def test_survival_is_correctly_rounded(n_types, n):
    exact = 1 - cdf_single(n_types, n, ScalarMode.RATIONAL)
    assert sf_single(n_types, n) == float(exact)
    assert cdf_single(n_types, n) == float(1 - exact)


def test_no_clamping_up_to_hundred_types(caplog):
    with caplog.at_level(logging.WARNING):
        for n_types in (50, 100):
            for n in range(n_types, 4 * n_types, 7):
                value = cdf_single(n_types, n)
                assert 0.0 <= value <= 1.0
    assert not caplog.records


def test_cdf_parallel_is_product():
    assert cdf_parallel(CollectionSpec((2, 2)), 2) == 0.25
    assert cdf_parallel(CollectionSpec((3, 6)), 2) == 0.0


def test_moments_two_by_two():
    moments = max_moments(CollectionSpec((2, 2)))
    assert moments.expectation == pytest.approx(11 / 3, abs=1e-9)
    assert moments.variance == pytest.approx(8 / 3, abs=1e-9)
    assert moments.truncation_bound < 1e-10


def test_moments_single_collection():
    moments = max_moments(CollectionSpec((6,)))
    assert moments.expectation == pytest.approx(14.7, abs=1e-9)
    assert moments.variance == pytest.approx(38.99, abs=1e-9)


def test_moments_three_collections_of_six():
    moments = max_moments(CollectionSpec((6, 6, 6)))
    assert moments.expectation == pytest.approx(20.01, abs=0.005)
    assert moments.variance == pytest.approx(44.8975, abs=0.005)
    assert moments.expectation >= float(expectation_single(6, ScalarMode.RATIONAL))


def test_degenerate_spec():
    moments = max_moments(CollectionSpec((1, 1)))
    assert moments.expectation == pytest.approx(1.0, abs=1e-12)
    assert moments.variance == pytest.approx(0.0, abs=1e-12)


def test_truncation_cap():
    with pytest.raises(TruncationCapError):
        max_moments(CollectionSpec((6,)), TailConfig(eps=1e-10, n_cap=5))


def test_tail_bound_decreases():
    bounds = [tail_bound((6, 8), n) for n in (10, 50, 100)]
    assert bounds[0][0] > bounds[1][0] > bounds[2][0]
    assert bounds[0][1] > bounds[1][1] > bounds[2][1]


def test_config_validation():
    with pytest.raises(ValidationError):
        TailConfig(eps=0.0)
    with pytest.raises(ValidationError):
        TailConfig(eps=1.5)
    with pytest.raises(ValidationError):
        TailConfig(n_cap=0)
    with pytest.raises(ValidationError):
        cdf_single(0, 3)

from fractions import Fraction

import pytest

from src.common.exception import ValidationError
from src.domain.harmonic import harmonic_cache
from src.domain.scalar import ScalarMode
from src.domain.single_collection import (
    expectation_single,
    expected_from_state_single,
    fundamental_row_single,
    resolve_mode,
    variance_from_state_single,
    variance_single,
    variance_single_geometric,
    variance_single_markov,
)

R = ScalarMode.RATIONAL
F = ScalarMode.FLOAT


def test_six_coupons():
    assert expectation_single(6, R) == Fraction(147, 10)
    assert variance_single_geometric(6, R) == Fraction(3899, 100)
    assert variance_single_markov(6, R) == Fraction(3899, 100)
    assert variance_single(6, R) == (Fraction(3899, 100), Fraction(3899, 100))


def test_one_coupon():
    assert expectation_single(1, R) == 1
    assert variance_single(1, R) == (0, 0)


def test_both_variance_forms_agree_exactly():
    for n in range(1, 201):
        geometric, markov = variance_single(n, R)
        assert geometric == markov


@pytest.mark.parametrize("n", [1, 2, 10, 100, 1000, 2000])
def test_float_matches_rational(n):
    assert expectation_single(n, F) == pytest.approx(float(expectation_single(n, R)), rel=1e-12)
    geometric, markov = variance_single(n, F)
    exact = float(variance_single_geometric(n, R))
    assert geometric == pytest.approx(exact, rel=1e-12)
    assert markov == pytest.approx(exact, rel=1e-12)


def test_default_mode_switches_on_size():
    assert resolve_mode(None, 1000) is R
    assert resolve_mode(None, 1001) is F
    assert resolve_mode("float", 6) is F
    assert isinstance(expectation_single(6), Fraction)
    with pytest.raises(ValidationError):
        resolve_mode("decimal", 6)


def test_expected_from_state():
    assert expected_from_state_single(6, 0, R) == Fraction(147, 10)
    assert expected_from_state_single(6, 1, R) == Fraction(137, 10)
    assert expected_from_state_single(6, 6, R) == 0


def test_variance_from_state():
    assert variance_from_state_single(6, 0, R) == Fraction(3899, 100)
    assert variance_from_state_single(6, 1, R) == Fraction(3899, 100)
    assert variance_from_state_single(6, 5, R) == 30
    assert variance_from_state_single(6, 6, R) == 0
    assert variance_from_state_single(6, 2, F) == pytest.approx(
        float(variance_from_state_single(6, 2, R)), rel=1e-14,
    )


def test_fundamental_row():
    n = 6
    row = fundamental_row_single(n, 0, R)
    assert row[0] == 1
    assert row[1:] == [Fraction(n, n - j) for j in range(1, n)]
    row = fundamental_row_single(n, 3, R)
    assert row[:3] == [0, 0, 0]
    assert row[3] == 2


def test_invalid_arguments():
    for bad in (0, -3, True, 2.5):
        with pytest.raises(ValidationError):
            expectation_single(bad, R)
    with pytest.raises(ValidationError):
        expected_from_state_single(6, 7, R)
    with pytest.raises(ValidationError):
        fundamental_row_single(6, 6, R)


def test_harmonic_cache():
    cache = harmonic_cache(3, R)
    assert cache.harmonic(0) == 0
    assert cache.harmonic(3) == Fraction(11, 6)
    assert cache.harmonic2(2) == Fraction(5, 4)
    assert harmonic_cache(3, F).harmonic(3) == pytest.approx(11 / 6, rel=1e-15)


def test_closed_forms_increase_with_n():
    values = [
        (expectation_single(n, R), variance_single_geometric(n, R), variance_single_markov(n, R))
        for n in range(1, 121)
    ]
    for smaller, larger in zip(values, values[1:]):
        assert all(a < b for a, b in zip(smaller, larger))


@pytest.mark.parametrize("n", [1, 2, 6, 50])
def test_remaining_expectation_decreases_with_collected(n):
    remaining = [expected_from_state_single(n, j, R) for j in range(n + 1)]
    assert all(a > b for a, b in zip(remaining, remaining[1:]))

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galcert import intfactor
from galcert.intfactor import FactoredInteger, factor, is_prime


def test_small_primes():
    assert is_prime(2)
    assert is_prime(109)
    assert not is_prime(3126)
    assert not is_prime(0) and not is_prime(1)


def test_factor_examples():
    assert factor(3124).factors == ((2, 2), (11, 1), (71, 1))
    assert factor(3126).factors == ((2, 1), (3, 1), (521, 1))
    assert factor(1).factors == ()


def test_factor_str():
    assert str(factor(3124)) == "2^2 11 71"
    assert str(factor(1)) == "1"


def test_group_order_factorizations():
    assert factor(3**27 - 1).factors == (
        (2, 1), (13, 1), (109, 1), (433, 1), (757, 1), (8209, 1)
    )
    assert factor(3**27 + 1).factors == (
        (2, 2), (7, 1), (19, 1), (37, 1), (19441, 1), (19927, 1)
    )


def test_largest_supported_inputs():
    for n in (3**36 - 1, 3**36 + 1):
        fac = factor(n)
        prod = 1
        for p, e in fac.factors:
            assert is_prime(p)
            prod *= p**e
        assert prod == n


def test_magnitude_cap():
    with pytest.raises(ValueError):
        is_prime(1 << 90)
    with pytest.raises(ValueError):
        factor(1 << 90)
    with pytest.raises(ValueError):
        is_prime(-1)
    with pytest.raises(ValueError):
        factor(0)


def test_invalid_factored_integer():
    with pytest.raises(ValueError):
        FactoredInteger(6, ((3, 1), (2, 1)))  # primes not increasing
    with pytest.raises(ValueError):
        FactoredInteger(5, ((2, 1),))


def test_determinism():
    a = factor(10**12 + 39)
    factor.cache_clear()
    assert factor(10**12 + 39) == a


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=10**12))
def test_reconstruction(n):
    fac = factor(n)
    prod = 1
    for p, e in fac.factors:
        assert is_prime(p)
        prod *= p**e
    assert prod == n

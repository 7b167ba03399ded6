import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galcert import ffield
from galcert.ffield import (
    FieldError,
    discrete_log,
    fq_new,
    frobenius_power,
    is_square,
    minimal_polynomial,
    mult_order,
)

MOD27 = [1, 0, 0, 0, 0, 0, 0, -1] + [0] * 19 + [1]

ROW53_LOG = 4309388243332
ROW53_COEFFS = [0, 0, 1, 0, -1, -1, -1, 0, -1, -1, -1, 1, 0, 1, 0, 1, 0, 0, -1, 0, 0, -1, 0, 1, 1, -1, 0]


@pytest.fixture(scope="module")
def ctx27():
    return fq_new(3, 27, MOD27)


@pytest.fixture(scope="module")
def ctx55():
    return fq_new(5, 5, (-2, -1, 0, 0, 0, 1))


def test_context_construction(ctx27, ctx55):
    assert ctx27.q == 7625597484987
    assert ctx55.q == 3125


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        fq_new(5, 5, (-1, 0, 0, 0, 0, 1))  # x^5 - 1 has the root 1
    with pytest.raises(FieldError):
        fq_new(4, 2, (1, 1, 1))  # composite characteristic
    with pytest.raises(FieldError):
        fq_new(5, 3, (1, 1, 1))  # wrong length
    with pytest.raises(FieldError):
        fq_new(5, 2, (1, 1, 2))  # not monic


coeff3 = st.lists(st.integers(min_value=0, max_value=4), min_size=3, max_size=3)


@pytest.fixture(scope="module")
def ctx53():
    return fq_new(5, 3, (-2, -1, 0, 1))


@settings(max_examples=150, deadline=None)
@given(coeff3, coeff3, coeff3)
def test_field_axioms(a, b, c):
    ctx = fq_new(5, 3, (-2, -1, 0, 1))
    x, y, z = ctx.elem(a), ctx.elem(b), ctx.elem(c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == ctx.zero
    if not x.is_zero():
        assert x * x.inv() == ctx.one


def test_inverse_of_zero(ctx55):
    with pytest.raises(ZeroDivisionError):
        ctx55.zero.inv()


def test_pow_fixes_field(ctx53):
    rng = random.Random(3)
    for _ in range(30):
        e = ctx53.elem([rng.randrange(5) for _ in range(3)])
        assert e**ctx53.q == e


def test_frobenius_is_homomorphism(ctx53):
    rng = random.Random(5)
    p = ctx53.p
    for _ in range(30):
        a = ctx53.elem([rng.randrange(5) for _ in range(3)])
        b = ctx53.elem([rng.randrange(5) for _ in range(3)])
        assert (a + b) ** p == a**p + b**p
        assert (a * b) ** p == (a**p) * (b**p)


def test_frobenius_power(ctx27):
    c = ctx27.gen
    assert frobenius_power(c, 0) == c
    assert frobenius_power(c, 27) == c
    # applying the cube-of-Frobenius map nine times closes the orbit
    e = c
    for _ in range(9):
        e = frobenius_power(e, 3)
    assert e == c
    with pytest.raises(ValueError):
        frobenius_power(c, -1)


def test_is_square(ctx27, ctx55):
    assert is_square(ctx27.one)
    assert not is_square(-ctx27.one)  # q = 3 mod 4
    assert not is_square(ctx55.from_int(2))
    with pytest.raises(ValueError):
        is_square(ctx55.zero)
    # squares are squares
    rng = random.Random(11)
    for _ in range(20):
        e = ctx55.elem([rng.randrange(5) for _ in range(5)])
        if not e.is_zero():
            assert is_square(e * e)


def test_mult_order(ctx27, ctx55):
    assert mult_order(ctx27.one) == 1
    assert mult_order(-ctx27.one) == 2
    assert mult_order(ctx27.gen) == ctx27.q - 1
    with pytest.raises(ValueError):
        mult_order(ctx27.zero)
    # divisibility and minimality on random elements
    rng = random.Random(13)
    for _ in range(10):
        e = ctx55.elem([rng.randrange(5) for _ in range(5)])
        if e.is_zero():
            continue
        o = mult_order(e)
        assert (ctx55.q - 1) % o == 0
        assert e**o == ctx55.one
        for ell in {f for f, _ in ctx55.q_minus_1.factors}:
            if o % ell == 0:
                assert e ** (o // ell) != ctx55.one


def test_discrete_log_basics(ctx27, ctx55):
    c = ctx27.gen
    assert discrete_log(c, ctx27.one) == 0
    e = c**ROW53_LOG
    assert e == ctx27.elem(ROW53_COEFFS)
    assert discrete_log(c, e) == ROW53_LOG
    with pytest.raises(FieldError):
        discrete_log(ctx55.gen ** 2, ctx55.gen)  # base of order 1562 is not primitive
    with pytest.raises(ValueError):
        discrete_log(c, ctx27.zero)


def test_discrete_log_round_trip(ctx27, ctx55):
    rng = random.Random(17)
    g = ctx55.gen
    for _ in range(100):
        t = g ** rng.randrange(1, ctx55.q - 1)
        assert g ** discrete_log(g, t) == t
    c = ctx27.gen
    for _ in range(3):
        t = c ** rng.randrange(1, ctx27.q - 1)
        assert c ** discrete_log(c, t) == t


def test_minimal_polynomial(ctx27, ctx55):
    assert minimal_polynomial(ctx27.zero) == (0, 1)
    assert minimal_polynomial(ctx55.from_int(3)) == (2, 1)  # x - 3 over F_5
    e = ctx27.gen ** ROW53_LOG
    mp = minimal_polynomial(e)
    assert len(mp) == 28
    # evaluates to zero and the degree divides n
    rng = random.Random(19)
    for _ in range(10):
        x = ctx55.elem([rng.randrange(5) for _ in range(5)])
        poly = minimal_polynomial(x)
        assert ctx55.n % (len(poly) - 1) == 0
        acc = ctx55.zero
        for coef in reversed(poly):
            acc = acc * x + ctx55.from_int(coef)
        assert acc.is_zero()

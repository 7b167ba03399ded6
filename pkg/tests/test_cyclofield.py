from fractions import Fraction

import pytest

from galcert import cyclofield
from galcert.cyclofield import (
    AbelianFieldSpec,
    CyclotomicError,
    CyclotomicNumber,
    bernoulli_b2_chi,
    character_group,
    cyclotomic_polynomial,
    enumerate_prime_norms,
    residue_degree,
    residue_degree_ramified,
    zeta_minus_one,
)

DEG9 = AbelianFieldSpec(27, (-1,))
DEG5 = AbelianFieldSpec(25, (7,))
DEG7 = AbelianFieldSpec(49, (31,))
QUAD = AbelianFieldSpec(5, (-1,))


def test_spec_degrees():
    assert DEG9.degree == 9
    assert DEG5.degree == 5
    assert DEG7.degree == 7
    assert QUAD.degree == 2
    assert AbelianFieldSpec(1).degree == 1
    with pytest.raises(CyclotomicError):
        AbelianFieldSpec(25, (5,))  # not a unit


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_residue_degrees():
    assert residue_degree(DEG9, 53) == 1
    assert residue_degree(DEG9, 107) == 1
    assert residue_degree(DEG9, 2) == 9
    assert residue_degree(DEG5, 2) == 5
    assert residue_degree(DEG5, 3) == 5
    assert residue_degree(DEG5, 7) == 1
    with pytest.raises(CyclotomicError):
        residue_degree(DEG9, 3)
    assert residue_degree_ramified(DEG9, 3) == 1
    assert residue_degree_ramified(DEG5, 5) == 1
    # residue degrees divide the field degree
    for p in (2, 3, 7, 11, 13, 101):
        if p != 3:
            assert DEG9.degree % residue_degree(DEG9, p) == 0


def test_enumerate_prime_norms():
    norms27 = enumerate_prime_norms(DEG9, 271)
    got = {n for _, _, n in norms27}
    assert {53, 107, 109, 163, 269, 271} <= got
    assert all(f == 1 for p, f, n in norms27 if n in {53, 107, 109, 163, 269, 271})
    assert 3 not in {p for p, _, _ in norms27}  # ramified primes excluded
    norms25 = enumerate_prime_norms(DEG5, 257)
    assert (2, 5, 32) in norms25 and (3, 5, 243) in norms25 and (7, 1, 7) in norms25
    assert 5 not in {p for p, _, _ in norms25}
    assert enumerate_prime_norms(AbelianFieldSpec(1), 10) == [
        (2, 1, 2), (3, 1, 3), (5, 1, 5), (7, 1, 7)
    ]
    with pytest.raises(CyclotomicError):
        enumerate_prime_norms(DEG9, 1)


def test_character_group_deg5():
    chars = character_group(DEG5)
    assert len(chars) == 5
    orders = sorted(c.order for c in chars)
    assert orders == [1, 5, 5, 5, 5]
    assert sorted(c.conductor for c in chars) == [1, 25, 25, 25, 25]


def test_character_group_deg9():
    chars = character_group(DEG9)
    assert sorted(c.conductor for c in chars) == [1, 9, 9, 27, 27, 27, 27, 27, 27]
    assert all(c.is_even for c in chars)


def test_character_group_trivial():
    chars = character_group(AbelianFieldSpec(1))
    assert len(chars) == 1 and chars[0].is_trivial


def test_character_group_closure_and_orthogonality():
    chars = character_group(DEG5)
    tables = {c.values for c in chars}
    for a in chars:
        for b in chars:
            assert (a * b).values in tables
    for chi in chars:
        if chi.is_trivial:
            continue
        total = CyclotomicNumber.zero(chi.order)
        for a in range(25):
            if chi.exponent_at(a) is not None:
                total = total + chi.value_at(a)
        assert total.is_zero()


def test_bernoulli_values():
    trivial = character_group(AbelianFieldSpec(1))[0]
    assert bernoulli_b2_chi(trivial).rational_value() == Fraction(1, 6)
    # odd character: the quartic character mod 5
    full5 = character_group(AbelianFieldSpec(5, (1,)))
    odd = next(c for c in full5 if not c.is_even and c.order == 4)
    assert bernoulli_b2_chi(odd.primitive()).is_zero()
    # order-3 character of conductor 9: the two conjugates multiply to a rational
    cubics = [c for c in character_group(AbelianFieldSpec(9, (-1,))) if c.order == 3]
    assert len(cubics) == 2
    prod = bernoulli_b2_chi(cubics[0].primitive()) * bernoulli_b2_chi(cubics[1].primitive())
    assert prod.rational_value() != 0
    # non-primitive input is rejected
    imprimitive = next(c for c in character_group(DEG9) if c.conductor == 9)
    with pytest.raises(CyclotomicError):
        bernoulli_b2_chi(imprimitive)


def test_zeta_values():
    assert zeta_minus_one(AbelianFieldSpec(1)) == Fraction(-1, 12)
    assert zeta_minus_one(QUAD) == Fraction(1, 30)
    assert zeta_minus_one(AbelianFieldSpec(9, (-1,))) == Fraction(-1, 9)
    assert zeta_minus_one(DEG5) == Fraction(-284, 3)
    assert zeta_minus_one(DEG9) == Fraction(-373312, 27)
    assert zeta_minus_one(DEG7) == Fraction(-4406096, 3)


def test_zeta_rejects_odd_fields():
    with pytest.raises(CyclotomicError):
        zeta_minus_one(AbelianFieldSpec(5, (1,)))  # full Q(zeta_5) is not totally real


def test_zeta_sign_pattern():
    # (-1)^n * zeta is positive on the bundled fields, matching positive areas
    for spec in (DEG5, DEG9, DEG7):
        value = zeta_minus_one(spec)
        assert (-1) ** spec.degree * value > 0


def test_cyclotomic_number_arithmetic():
    a = CyclotomicNumber.from_power_dict(5, {1: Fraction(1)})
    # 1 + z + z^2 + z^3 + z^4 = 0
    total = CyclotomicNumber.one(5)
    power = CyclotomicNumber.one(5)
    for _ in range(4):
        power = power * a
        total = total + power
    assert total.is_zero()
    with pytest.raises(CyclotomicError):
        (a + CyclotomicNumber.one(7))
    embedded = a.embed(10)
    assert embedded.order == 10
    with pytest.raises(CyclotomicError):
        a.embed(7)
    with pytest.raises(CyclotomicError):
        a.rational_value()

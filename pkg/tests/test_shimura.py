import random
from fractions import Fraction

import pytest

from galcert.cyclofield import AbelianFieldSpec
from galcert.shimura import (
    AreaError,
    AreaParams,
    Signature,
    dimension_accounting,
    normalized_area,
    signature_area_check,
    triangle_area,
)

CALIBRATION = [
    (AbelianFieldSpec(1), Fraction(1, 6)),
    (AbelianFieldSpec(25, (7,)), Fraction(71, 6)),
    (AbelianFieldSpec(27, (-1,)), Fraction(5833, 54)),
    (AbelianFieldSpec(49, (31,)), Fraction(275381, 6)),
]


@pytest.mark.parametrize("spec,expected", CALIBRATION)
def test_calibration(spec, expected):
    assert normalized_area(AreaParams(spec)) == expected


def test_triangle_areas():
    assert triangle_area(2, 3, 9) == Fraction(1, 18)
    assert triangle_area(2, 3, 7) == Fraction(1, 42)
    with pytest.raises(AreaError):
        triangle_area(2, 3, 6)  # euclidean
    with pytest.raises(AreaError):
        triangle_area(2, 3, 5)  # spherical


def test_level_scaling():
    spec = AbelianFieldSpec(25, (7,))
    base = normalized_area(AreaParams(spec))
    assert normalized_area(AreaParams(spec, (5,))) == 6 * base
    assert normalized_area(AreaParams(spec, (7,))) == 8 * base
    assert normalized_area(AreaParams(spec, (5, 7))) == 48 * base


def test_unsupported_configurations():
    with pytest.raises(AreaError):
        AreaParams(AbelianFieldSpec(5, (-1,)))  # even degree
    with pytest.raises(AreaError):
        AreaParams(AbelianFieldSpec(25, (7,)), finite_ramification=(11,))


SIGNATURES = [
    (Signature(45, ((2, 19), (3, 13), (9, 1), (27, 1))), Fraction(5833, 54)),
    (Signature(2, ((2, 5), (3, 11))), Fraction(71, 6)),
    (Signature(22864, ((2, 71), (3, 203))), Fraction(275381, 6)),
    (Signature(0, ()), Fraction(-2)),
]


@pytest.mark.parametrize("sig,mu", SIGNATURES)
def test_signature_identities(sig, mu):
    assert signature_area_check(sig, mu)


def test_signature_permutation_invariance():
    rng = random.Random(23)
    cycles = [(2, 19), (3, 13), (9, 1), (27, 1)]
    for _ in range(5):
        rng.shuffle(cycles)
        sig = Signature(45, tuple(cycles))
        assert signature_area_check(sig, Fraction(5833, 54))


def test_signature_mismatch_detected():
    assert not signature_area_check(Signature(45, ((2, 19),)), Fraction(5833, 54))


def test_signature_validation():
    with pytest.raises(AreaError):
        Signature(-1, ())
    with pytest.raises(AreaError):
        Signature(0, ((1, 1),))


def test_dimension_accounting():
    assert dimension_accounting([1, 2, 2, 4, 16, 32], 57)
    assert dimension_accounting([3, 6, 36], 45)
    assert dimension_accounting([53, 64], 117)
    assert dimension_accounting([30, 2, 2], 34)
    assert dimension_accounting([10, 20], 30)
    assert not dimension_accounting([3, 6], 45)

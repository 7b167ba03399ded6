"""Normalized hyperbolic areas of quaternionic Shimura curves.

Areas are normalized so that Gauss-Bonnet reads
    mu = 2g - 2 + sum_k m_k (1 - 1/e_k)
for a Fuchsian group of signature (g; e_1^{m_1}, ...).  In this
normalization the level-one area over a totally real field F of odd degree
n, for an algebra split at exactly one real place and no finite place, is

    mu = (-1)^n * 2^(2-n) * zeta_F(-1) * prod_{q | level} (Nq + 1).

The power of two is pinned by six exact calibration targets (tested):
1/6 over Q, the (2,3,9) and (2,3,7) triangle areas 1/18 and 1/42 in
degrees 3 and 7, and the three bundled field areas 71/6, 5833/54, 275381/6.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclofield import AbelianFieldSpec, zeta_minus_one


class AreaError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    genus: int
    elliptic: tuple[tuple[int, int], ...] = ()  # (order, count) pairs

    def __post_init__(self):
        if self.genus < 0:
            raise AreaError("genus must be nonnegative")
        for e, m in self.elliptic:
            if e < 2 or m < 1:
                raise AreaError(f"bad elliptic cycle ({e}, {m})")

    @property
    def gauss_bonnet(self) -> Fraction:
        total = Fraction(2 * self.genus - 2)
        for e, m in self.elliptic:
            total += m * (1 - Fraction(1, e))
        return total


@dataclass(frozen=True)
class AreaParams:
    spec: AbelianFieldSpec
    level_norms: tuple[int, ...] = ()
    finite_ramification: tuple[int, ...] = ()

    def __post_init__(self):
        if self.spec.degree % 2 == 0:
            raise AreaError("area formula requires odd degree (one split real place)")
        if self.finite_ramification:
            raise AreaError("finite ramification is not supported by the area formula")


def normalized_area(params: AreaParams) -> Fraction:
    """Exact level-N area from zeta_F(-1) and the Gauss-Bonnet normalization."""
    n = params.spec.degree
    mu = (-1) ** n * Fraction(2) ** (2 - n) * zeta_minus_one(params.spec)
    for norm in params.level_norms:
        mu *= norm + 1
    if mu <= 0:
        raise AreaError(f"computed area {mu} is not positive")
    return mu


def signature_area_check(sig: Signature, mu: Fraction) -> bool:
    """Gauss-Bonnet identity 2g - 2 + sum m(1 - 1/e) = mu, exactly."""
    return sig.gauss_bonnet == Fraction(mu)


def triangle_area(e1: int, e2: int, e3: int) -> Fraction:
    """Area of the (e1,e2,e3) triangle group quotient; hyperbolic triples only."""
    s = Fraction(1, e1) + Fraction(1, e2) + Fraction(1, e3)
    if s >= 1:
        raise AreaError(f"({e1},{e2},{e3}) is not hyperbolic")
    return 1 - s


def dimension_accounting(constituents: list[int], expected_total: int) -> bool:
    return sum(constituents) == expected_total

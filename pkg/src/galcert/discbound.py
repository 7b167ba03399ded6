"""Root-discriminant bounds with certified decimal rounding.

Bounds are scaled prime powers s * p^e with exact rational exponents e,
possibly of the shape a + b(1 - p^-m).  Decimals are produced by integer
square-root interval arithmetic in fixed point: every reported digit is
certified by an exact rational enclosure, with no floating point on the
certified path.  Direction 'up' gives the least k-digit decimal >= the
value; 'nearest' rounds half up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import intfactor


class BoundError(ValueError):
    pass


@dataclass(frozen=True)
class BoundExpr:
    """Exponent a + b*(1 - p^-m); m = 0 drops the b-term, m = None is the
    m -> infinity limit a + b."""

    p: int
    a: Fraction
    b: Fraction = Fraction(0)
    m: int | None = 0

    def __post_init__(self):
        if not intfactor.is_prime(self.p):
            raise BoundError(f"base {self.p} is not prime")
        if self.a < 0 or self.b < 0:
            raise BoundError("exponent components must be nonnegative")

    @property
    def exponent(self) -> Fraction:
        if self.m is None:
            return self.a + self.b
        if self.m == 0:
            return self.a
        return self.a + self.b * (1 - Fraction(1, self.p**self.m))

    @property
    def value(self) -> "ScaledPower":
        return ScaledPower(1, self.p, self.exponent)

    def __str__(self):
        if self.m == 0 or self.b == 0:
            return f"{self.p}^({self.a})"
        if self.m is None:
            return f"{self.p}^({self.a} + {self.b})"
        return f"{self.p}^({self.a} + {self.b}*(1 - {self.p}^-{self.m}))"


@dataclass(frozen=True)
class ScaledPower:
    """The positive real number scale * p^exponent."""

    scale: int
    p: int
    exponent: Fraction

    def __post_init__(self):
        if self.scale < 1:
            raise BoundError("scale must be a positive integer")

    def __str__(self):
        if self.exponent == int(self.exponent):
            e = int(self.exponent)
        else:
            e = self.exponent
        return f"{self.scale}*{self.p}^({e})" if self.scale != 1 else f"{self.p}^({e})"


@dataclass(frozen=True)
class DecimalBound:
    mantissa: int
    digits: int
    direction: str  # 'up' | 'nearest'
    exact: bool = False

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.digits)

    def __str__(self):
        s = str(self.mantissa).rjust(self.digits + 1, "0")
        if self.digits == 0:
            return s
        return f"{s[:-self.digits]}.{s[-self.digits:]}"

    def __float__(self):
        return self.mantissa / 10**self.digits


def _enclosure(sp: ScaledPower, guard_digits: int) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of sp by fixed-point iterated square roots."""
    e = sp.exponent
    a_int = math.floor(e)
    frac = e - a_int  # in [0, 1)
    outer = Fraction(sp.scale) * Fraction(sp.p) ** a_int
    if frac == 0:
        return outer, outer
    big = 10**guard_digits
    bits = max(64, int(guard_digits * 3.4))
    lo, hi = big, big  # running product for p^frac, scaled by big
    cur_lo = cur_hi = sp.p * big  # p^(2^0), exact
    rem = frac
    for _ in range(bits):
        cur_lo = math.isqrt(cur_lo * big)
        cur_hi = math.isqrt(cur_hi * big) + 1
        rem *= 2
        if rem >= 1:
            rem -= 1
            lo = lo * cur_lo // big
            hi = hi * cur_hi // big + 1
        if rem == 0:
            break
    else:
        # truncated binary tail: true exponent exceeds the accumulated one
        # by less than 2^-bits, so one more upper sqrt factor covers it
        hi = hi * cur_hi // big + 1
    return outer * Fraction(lo, big), outer * Fraction(hi, big)


def _round_decimal(sp: ScaledPower, digits: int, direction: str) -> DecimalBound:
    if direction not in ("up", "nearest"):
        raise BoundError(f"unknown rounding direction {direction!r}")
    shift = 10**digits
    if sp.exponent.denominator == 1:
        v = Fraction(sp.scale) * Fraction(sp.p) ** int(sp.exponent) * shift
        if direction == "up":
            m = math.ceil(v)
        else:
            m = math.floor(v + Fraction(1, 2))
        return DecimalBound(m, digits, direction, exact=(v == int(v)))
    guard = digits + 40
    for _ in range(5):
        lo, hi = _enclosure(sp, guard)
        if direction == "up":
            # value is irrational, so ceil(V*shift) = floor(V*shift) + 1
            m_lo = math.floor(lo * shift) + 1
            m_hi = math.floor(hi * shift) + 1
        else:
            m_lo = math.floor(lo * shift + Fraction(1, 2))
            m_hi = math.floor(hi * shift + Fraction(1, 2))
        if m_lo == m_hi:
            return DecimalBound(m_lo, digits, direction, exact=False)
        guard *= 2
    raise BoundError(f"enclosure did not converge for {sp}")


def decimal_upper(sp: ScaledPower, digits: int) -> DecimalBound:
    """Least decimal with the given digits that is >= sp; certified."""
    return _round_decimal(sp, digits, "up")


def decimal_nearest(sp: ScaledPower, digits: int) -> DecimalBound:
    """sp rounded half-up to the given digits; certified."""
    return _round_decimal(sp, digits, "nearest")


def exact_root_discriminant(
    scale: int, p: int, exponent: Fraction, digits: int = 3, direction: str = "nearest"
) -> DecimalBound:
    """Correctly rounded decimal for scale * p^exponent."""
    return _round_decimal(ScaledPower(scale, p, exponent), digits, direction)


def certify_direction(bound: DecimalBound, sp: ScaledPower, power_cap: int = 50_000) -> bool:
    """Recheck an 'up' rounding by clearing denominators: with e = u/v, the
    claim bound >= scale * p^(u/v) is equivalent to an exact integer
    inequality obtained by raising both sides to the v-th power."""
    if bound.direction != "up":
        raise BoundError("certify_direction checks upper roundings")
    u = sp.exponent.numerator
    v = sp.exponent.denominator
    if v > power_cap:
        raise BoundError(f"exponent denominator {v} exceeds the direct-power cap")
    t, k = bound.mantissa, bound.digits
    lhs = t**v
    rhs = sp.scale**v * 10 ** (k * v)
    if u >= 0:
        rhs *= sp.p**u
    else:
        lhs *= sp.p ** (-u)
    return lhs >= rhs


def fontaine_bound(p: int, d_f: int, n: int) -> BoundExpr:
    """Good-reduction p-torsion bound: exponent v_p(d_F)/n + 1 + 1/(p-1)."""
    if n < 1:
        raise BoundError("degree must be positive")
    v = 0
    rest = d_f
    while rest % p == 0:
        rest //= p
        v += 1
    if rest != 1:
        raise BoundError(f"discriminant {d_f} is not a power of {p}")
    return BoundExpr(p, Fraction(v, n) + 1 + Fraction(1, p - 1))


def moon_bound(p: int, a: Fraction, b: Fraction, m: int | None) -> BoundExpr:
    """Wildly ramified elementary-abelian case: exponent a + b(1 - p^-m)."""
    if m is not None and m < 1:
        raise BoundError("moon_bound needs m >= 1 (or None for the limit)")
    return BoundExpr(p, Fraction(a), Fraction(b), m)


# ---------------------------------------------------------------------------
# bundled bound cases

@dataclass(frozen=True)
class BoundCase:
    name: str
    description: str
    rows: tuple  # of (label, ScaledPower, ((digits, direction), ...))


def _sp(expr: BoundExpr) -> ScaledPower:
    return expr.value


BOUND_CASES = {
    "p3-level1": BoundCase(
        "p3-level1",
        "degree-9 field, level one: good-reduction bound 3^(22/9 + 3/2)",
        (("3^(71/18)", _sp(fontaine_bound(3, 3**22, 9)), ((2, "up"),)),),
    ),
    "p3-levelp3": BoundCase(
        "p3-levelp3",
        "degree-9 field, prime level: 3^(45/18 + (28/18)(1 - 3^-m)), m = 9, 18, 36",
        (
            ("m=9", _sp(moon_bound(3, Fraction(45, 18), Fraction(28, 18), 9)), ((2, "up"),)),
            ("m=18", _sp(moon_bound(3, Fraction(45, 18), Fraction(28, 18), 18)), ((2, "up"),)),
            ("m=36", _sp(moon_bound(3, Fraction(45, 18), Fraction(28, 18), 36)), ((2, "up"),)),
            (
                "limit 3^(73/18)",
                _sp(moon_bound(3, Fraction(45, 18), Fraction(28, 18), None)),
                ((3, "nearest"), (2, "up")),
            ),
        ),
    ),
    "p5-levelp5": BoundCase(
        "p5-levelp5",
        "degree-5 field, prime level: 5^(35/20 + (26/20)(1 - 5^-5))",
        (
            (
                "m=5",
                _sp(moon_bound(5, Fraction(35, 20), Fraction(26, 20), 5)),
                ((3, "nearest"), (2, "up")),
            ),
        ),
    ),
    "p5-levelp5-M": BoundCase(
        "p5-levelp5-M",
        "degree-10 residue field variant: 5^(35/20 + (26/20)(1 - 5^-10))",
        (("m=10", _sp(moon_bound(5, Fraction(35, 20), Fraction(26, 20), 10)), ((2, "up"),)),),
    ),
    "p10-level1": BoundCase(
        "p10-level1",
        "degree-10 field, level one: good-reduction bound 5^(17/10 + 5/4)",
        (("5^(59/20)", _sp(fontaine_bound(5, 5**17, 10)), ((2, "up"),)),),
    ),
    "roberts": BoundCase(
        "roberts",
        "exact root discriminant 125 * 5^(-1/12500) of the degree-25 construction",
        (("125*5^(-1/12500)", ScaledPower(125, 5, Fraction(-1, 12500)), ((3, "nearest"),)),),
    ),
}

# display-only reference constants for the characteristic-2 story
DISPLAY_CONSTANTS = {
    "p2-compositum": "55.4",
    "p2-tower-record": "82.2",
}

"""Real-place ramification of the bundled quaternion algebras.

The base field is presented as Q[x]/(minpoly) with exact rational
coordinates in the power basis.  Real embeddings are isolated by Sturm
sequences; signs at embeddings are decided by exact interval refinement.
Unit and integrality checks go through resultants computed as
multiplication-matrix determinants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intfactor


class NumberFieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact univariate polynomial helpers (coefficients ascending)

def poly_trim(f: list[Fraction]) -> list[Fraction]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_eval(f, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(f):
        out = out * x + c
    return out


def poly_derivative(f):
    return [i * c for i, c in enumerate(f)][1:]


def poly_divmod(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and any(a):
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
        poly_trim(a)
        if not a:
            break
    return poly_trim(q), a


def poly_gcd(a, b):
    a = poly_trim([Fraction(c) for c in a])
    b = poly_trim([Fraction(c) for c in b])
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


# ---------------------------------------------------------------------------
# Sturm isolation

@dataclass(frozen=True)
class IsolatingInterval:
    lo: Fraction
    hi: Fraction


def _sturm_chain(f):
    chain = [poly_trim([Fraction(c) for c in f])]
    chain.append(poly_trim(poly_derivative(chain[0])))
    while chain[-1] and len(chain[-1]) > 1:
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for f in chain:
        v = poly_eval(f, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_roots(minpoly) -> list[IsolatingInterval]:
    """Disjoint isolating intervals, one per real root; squarefree input only."""
    f = poly_trim([Fraction(c) for c in minpoly])
    if len(f) < 2:
        raise NumberFieldError("constant polynomial has no isolated roots")
    if len(poly_gcd(f, poly_derivative(f))) > 1:
        raise NumberFieldError("polynomial is not squarefree")
    chain = _sturm_chain(f)
    # Cauchy bound
    lead = abs(f[-1])
    bound = 1 + max(abs(c) for c in f[:-1]) / lead
    out: list[IsolatingInterval] = []

    def split(lo: Fraction, hi: Fraction, count: int):
        if count == 0:
            return
        if count == 1:
            out.append(IsolatingInterval(lo, hi))
            return
        mid = (lo + hi) / 2
        while poly_eval(f, mid) == 0:
            # nudge off an exact rational root of a factor
            mid = (lo + 2 * mid) / 3
        left = _sign_changes(chain, lo) - _sign_changes(chain, mid)
        split(lo, mid, left)
        split(mid, hi, count - left)

    total = _sign_changes(chain, -bound) - _sign_changes(chain, bound)
    split(-bound, bound, total)
    return sorted(out, key=lambda iv: iv.lo)


def refine_interval(minpoly, iv: IsolatingInterval) -> IsolatingInterval:
    """One bisection step preserving the sign change across the interval."""
    f = [Fraction(c) for c in minpoly]
    mid = (iv.lo + iv.hi) / 2
    vlo, vmid = poly_eval(f, iv.lo), poly_eval(f, mid)
    if vmid == 0:
        # rational root: shrink both sides around it
        eps = (iv.hi - iv.lo) / 4
        return IsolatingInterval(mid - eps, mid + eps)
    if (vlo > 0) != (vmid > 0):
        return IsolatingInterval(iv.lo, mid)
    return IsolatingInterval(mid, iv.hi)


# ---------------------------------------------------------------------------
# field elements in the power basis

@dataclass(frozen=True)
class NumberFieldElem:
    minpoly: tuple  # monic integer coefficients, ascending
    coeffs: tuple  # rational coordinates, length deg(minpoly)

    def __post_init__(self):
        n = len(self.minpoly) - 1
        if self.minpoly[-1] != 1:
            raise NumberFieldError("minimal polynomial must be monic")
        c = tuple(Fraction(x) for x in self.coeffs)
        if len(c) > n:
            c = tuple(_reduce_mod(list(c), self.minpoly))
        else:
            c = c + (Fraction(0),) * (n - len(c))
        object.__setattr__(self, "coeffs", c)

    def __add__(self, other):
        self._check(other)
        return NumberFieldElem(self.minpoly, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return NumberFieldElem(self.minpoly, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return NumberFieldElem(self.minpoly, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NumberFieldElem(self.minpoly, tuple(a * other for a in self.coeffs))
        self._check(other)
        n = len(self.minpoly) - 1
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return NumberFieldElem(self.minpoly, tuple(_reduce_mod(prod, self.minpoly)))

    __rmul__ = __mul__

    def _check(self, other):
        if self.minpoly != other.minpoly:
            raise NumberFieldError("mixed number fields")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_polynomial(self) -> list[Fraction]:
        return poly_trim([Fraction(c) for c in self.coeffs])


def _reduce_mod(prod: list[Fraction], minpoly) -> list[Fraction]:
    n = len(minpoly) - 1
    prod = list(prod) + [Fraction(0)] * max(0, n - len(prod))
    for i in range(len(prod) - 1, n - 1, -1):
        c = prod[i]
        if c:
            for j in range(n):
                prod[i - n + j] -= c * minpoly[j]
            prod[i] = Fraction(0)
    return prod[:n]


def elem(minpoly, coeffs) -> NumberFieldElem:
    return NumberFieldElem(tuple(minpoly), tuple(Fraction(c) for c in coeffs))


def field_norm(e: NumberFieldElem) -> Fraction:
    """Determinant of the multiplication-by-e matrix in the power basis."""
    n = len(e.minpoly) - 1
    cols = []
    gen_power = elem(e.minpoly, [0, 1]) if n > 1 else elem(e.minpoly, [1])
    cur = e
    for _ in range(n):
        cols.append(list(cur.coeffs))
        cur = cur * gen_power
    # Gaussian elimination over Q
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            factor = mat[r][col] * inv
            if factor:
                for cc in range(col, n):
                    mat[r][cc] -= factor * mat[col][cc]
    return det


def is_unit(e: NumberFieldElem) -> bool:
    """Algebraic unit test for integral elements: field norm is +-1."""
    if not e.is_integral_coeffs():
        raise NumberFieldError("is_unit expects integral power-basis coefficients")
    return abs(field_norm(e)) == 1


def sign_at_embedding(e: NumberFieldElem, iv: IsolatingInterval) -> int:
    """Sign of e at the real embedding isolated by iv: +1 or -1."""
    if e.is_zero():
        raise NumberFieldError("sign of zero is undefined")
    poly = e.as_polynomial()
    minpoly = list(e.minpoly)
    cur = iv
    for _ in range(10_000):
        lo_val, hi_val = _interval_eval(poly, cur.lo, cur.hi)
        if lo_val > 0:
            return 1
        if hi_val < 0:
            return -1
        cur = refine_interval(minpoly, cur)
    raise NumberFieldError("interval refinement did not separate the sign")


def _interval_eval(poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Interval Horner evaluation of poly on [lo, hi]."""
    alo, ahi = Fraction(0), Fraction(0)
    for c in reversed(poly):
        candidates = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(candidates) + c, max(candidates) + c
    return alo, ahi


def embedding_signs(e: NumberFieldElem) -> list[int]:
    """Signs of e at every real embedding, in increasing root order."""
    return [sign_at_embedding(e, iv) for iv in real_roots(list(e.minpoly))]


def order_generator_integral(
    x0: NumberFieldElem, x1: NumberFieldElem, u: NumberFieldElem
) -> bool:
    """Integrality of xi = (x0 + x1*alpha + beta)/2 in the algebra with
    alpha^2 = -1, beta^2 = u: reduced trace x0 and reduced norm
    (x0^2 + x1^2 - u)/4 must both have integral power-basis coefficients."""
    if not x0.is_integral_coeffs():
        return False
    nrd = (x0 * x0 + x1 * x1 - u) * Fraction(1, 4)
    return nrd.is_integral_coeffs()


def poly_discriminant(minpoly) -> int:
    """disc(f) = (-1)^(n(n-1)/2) * Norm(f'(theta)) for monic integral f."""
    n = len(minpoly) - 1
    deriv = poly_derivative([Fraction(c) for c in minpoly])
    fp = elem(minpoly, deriv)
    norm = field_norm(fp)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    value = sign * norm
    if value.denominator != 1:
        raise NumberFieldError("discriminant came out non-integral")
    return int(value)


def prime_support(n: int) -> tuple[int, ...]:
    return intfactor.factor(abs(n)).primes


# ---------------------------------------------------------------------------
# bundled fields

@dataclass(frozen=True)
class BundledField:
    name: str
    minpoly: tuple
    unit_u: tuple | None = None  # power-basis coefficients of the algebra unit
    order_x0: tuple | None = None
    order_x1: tuple | None = None


BUNDLED_FIELDS = {
    # lambda^9 - 9 lambda^7 + 27 lambda^5 - 30 lambda^3 + 9 lambda - 1 = 0
    "zeta27plus": BundledField(
        "zeta27plus",
        minpoly=(-1, 9, 0, -30, 0, 27, 0, -9, 0, 1),
        unit_u=(0, 3, -6, -4, 5, 1, -1),
        order_x0=(1, 0, 0, 1, 1, 0, 1, 0, 1),
        order_x1=(1, 1, 1, 0, 0, 0, 0, 1, 1),
    ),
    # b^5 - 10 b^3 - 5 b^2 + 10 b - 1 = 0
    "deg5": BundledField(
        "deg5",
        minpoly=(-1, 10, -5, -10, 0, 1),
    ),
}

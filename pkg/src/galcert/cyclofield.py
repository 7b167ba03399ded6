"""Abelian totally real fields presented by (conductor m, subgroup H).

The field is the fixed field of H <= (Z/m)^x acting on Q(zeta_m); its
Galois group is the quotient (Z/m)^x / H.  Prime splitting, the character
group, generalized Bernoulli numbers, and the exact Dedekind zeta value at
-1 all reduce to finite computations over that quotient, carried out here
in exact rational / cyclotomic arithmetic (no floating point anywhere).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import intfactor


class CyclotomicError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact arithmetic in Q(zeta_d)

@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[int, ...]:
    """Coefficients of Phi_d, ascending."""
    if d == 1:
        return (-1, 1)
    # (x^d - 1) / prod_{e | d, e < d} Phi_e, exact integer division
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            den = cyclotomic_polynomial(e)
            out = [0] * (len(num) - len(den) + 1)
            rem = num[:]
            for i in range(len(out) - 1, -1, -1):
                c = rem[i + len(den) - 1]
                out[i] = c
                if c:
                    for j, dj in enumerate(den):
                        rem[i + j] -= c * dj
            if any(rem[: len(den) - 1]):
                raise CyclotomicError("cyclotomic division left a remainder")
            num = out
    return tuple(num)


def _phi(m: int) -> int:
    out = 1
    for p, e in intfactor.factor(m).factors:
        out *= (p - 1) * p ** (e - 1)
    return out


class CyclotomicNumber:
    """Element of Q(zeta_d) in the power basis 1, zeta, ..., zeta^(phi(d)-1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        deg = _phi(order)
        c = [Fraction(x) for x in coeffs]
        if len(c) != deg:
            raise CyclotomicError(f"need {deg} coefficients for order {order}")
        self.order = order
        self.coeffs = tuple(c)

    @classmethod
    def from_power_dict(cls, order: int, powers: dict[int, Fraction]) -> "CyclotomicNumber":
        """Sum of coeff * zeta_d^k terms, reduced into the power basis."""
        dense = [Fraction(0)] * order
        for k, v in powers.items():
            dense[k % order] += v
        return cls(order, _reduce_mod_phi(dense, order))

    @classmethod
    def zero(cls, order: int) -> "CyclotomicNumber":
        return cls(order, [0] * _phi(order))

    @classmethod
    def one(cls, order: int) -> "CyclotomicNumber":
        return cls(order, [1] + [0] * (_phi(order) - 1))

    def __add__(self, other):
        self._check(other)
        return CyclotomicNumber(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return CyclotomicNumber(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, [a * other for a in self.coeffs])
        self._check(other)
        deg = len(self.coeffs)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CyclotomicNumber(self.order, _reduce_mod_phi(prod, self.order))

    __rmul__ = __mul__

    def _check(self, other):
        if self.order != other.order:
            raise CyclotomicError("mixed cyclotomic orders; embed first")

    def __eq__(self, other):
        return (
            isinstance(other, CyclotomicNumber)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError(f"value is irrational: {self.coeffs}")
        return self.coeffs[0]

    def embed(self, target_order: int) -> "CyclotomicNumber":
        """Image under zeta_d -> zeta_L^(L/d) for d | L."""
        if target_order % self.order:
            raise CyclotomicError("target order must be a multiple")
        step = target_order // self.order
        powers = {i * step: c for i, c in enumerate(self.coeffs) if c}
        return CyclotomicNumber.from_power_dict(target_order, powers)

    def __repr__(self):
        return f"CyclotomicNumber(order={self.order}, coeffs={self.coeffs})"


def _reduce_mod_phi(dense: list[Fraction], order: int) -> list[Fraction]:
    """Reduce a coefficient list (any length) modulo Phi_order."""
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    # fold zeta^k for k >= order first (zeta^order = 1)
    if len(dense) > order:
        folded = [Fraction(0)] * order
        for k, v in enumerate(dense):
            folded[k % order] += v
        dense = folded
    rem = list(dense) + [Fraction(0)] * max(0, deg - len(dense))
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c:
            for j, pj in enumerate(phi):
                rem[i - deg + j] -= c * pj
    return rem[:deg]


# ---------------------------------------------------------------------------
# unit group structure and Dirichlet characters

class _UnitGroup:
    """Generators, orders, and discrete logs for (Z/m)^x."""

    def __init__(self, m: int):
        self.m = m
        self.generators: list[int] = []
        self.orders: list[int] = []
        self._log_tables: list[dict[int, int]] = []
        self._components: list[int] = []  # prime-power moduli matching generators
        if m <= 2:
            return
        parts = []
        for p, e in intfactor.factor(m).factors:
            pk = p**e
            if p == 2:
                if e == 2:
                    parts.append((pk, [pk - 1], [2]))
                elif e >= 3:
                    parts.append((pk, [pk - 1, 5], [2, 1 << (e - 2)]))
            else:
                parts.append((pk, [_primitive_root(p, e)], [(p - 1) * p ** (e - 1)]))
        for pk, gens, orders in parts:
            rest = m // pk
            for g, d in zip(gens, orders):
                lifted = _crt_pair(g, pk, 1, rest) if rest > 1 else g % m
                self.generators.append(lifted)
                self.orders.append(d)
                table = {}
                cur = 1
                for j in range(d):
                    table[cur] = j
                    cur = cur * g % pk
                self._log_tables.append(table)
                self._components.append(pk)
        # the two 2-power tables overlap; exponents are resolved jointly below

    def exponents(self, a: int) -> list[int]:
        """Exponent vector of a unit over the stored generators."""
        a %= self.m
        if math.gcd(a, self.m) != 1:
            raise CyclotomicError(f"{a} is not a unit mod {self.m}")
        out = []
        i = 0
        while i < len(self.generators):
            pk = self._components[i]
            if pk % 2 == 0 and i + 1 < len(self.generators) and self._components[i + 1] == pk:
                # 2^k component with generators (-1, 5)
                r = a % pk
                tab5 = self._log_tables[i + 1]
                if r in tab5:
                    out.extend([0, tab5[r]])
                else:
                    out.extend([1, tab5[(-r) % pk]])
                i += 2
            else:
                out.append(self._log_tables[i][a % pk])
                i += 1
        return out

    @property
    def exponent(self) -> int:
        out = 1
        for d in self.orders:
            out = math.lcm(out, d)
        return out

    def units(self) -> list[int]:
        return [a for a in range(self.m) if math.gcd(a, self.m) == 1] if self.m > 1 else [0]


def _primitive_root(p: int, e: int) -> int:
    order = p - 1
    fac = intfactor.factor(order).primes
    g = 2
    while True:
        if all(pow(g, order // ell, p) != 1 for ell in fac):
            break
        g += 1
    if e == 1:
        return g
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def _crt_pair(a1: int, m1: int, a2: int, m2: int) -> int:
    t = (a2 - a1) * pow(m1, -1, m2) % m2
    return (a1 + m1 * t) % (m1 * m2)


@dataclass(frozen=True)
class DirichletCharacter:
    """Character of (Z/modulus)^x with values zeta_order^k, stored as k per unit."""

    modulus: int
    order: int
    values: tuple[tuple[int, int], ...]  # (unit, exponent mod order)

    def __post_init__(self):
        object.__setattr__(self, "_table", dict(self.values))

    def exponent_at(self, a: int) -> int | None:
        """Value exponent at a, or None when gcd(a, modulus) > 1."""
        return self._table.get(a % self.modulus if self.modulus > 1 else 0)

    def value_at(self, a: int) -> CyclotomicNumber:
        k = self.exponent_at(a)
        if k is None:
            return CyclotomicNumber.zero(self.order)
        return CyclotomicNumber.from_power_dict(self.order, {k: Fraction(1)})

    @property
    def is_trivial(self) -> bool:
        return all(k == 0 for _, k in self.values)

    @property
    def is_even(self) -> bool:
        return self.exponent_at(-1) == 0

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if self.modulus != other.modulus:
            raise CyclotomicError("character product needs equal moduli")
        lcm_d = math.lcm(self.order, other.order)
        raw = {
            a: (k1 * (lcm_d // self.order) + other.exponent_at(a) * (lcm_d // other.order)) % lcm_d
            for a, k1 in self.values
        }
        return _normalize_character(self.modulus, lcm_d, raw)

    @property
    def conductor(self) -> int:
        m = self.modulus
        for f in sorted(d for d in range(1, m + 1) if m % d == 0):
            if all(k == 0 for a, k in self.values if a % f == 1 % f):
                return f
        return m

    def primitive(self) -> "DirichletCharacter":
        """The primitive character mod the conductor inducing this one."""
        f = self.conductor
        if f == self.modulus:
            return self
        if f <= 2:
            return DirichletCharacter(f, 1, ((1 % f, 0),))
        raw = {}
        for a in range(1, f):
            if math.gcd(a, f) != 1:
                continue
            lift = a
            while math.gcd(lift, self.modulus) != 1:
                lift += f
            raw[a] = self.exponent_at(lift)
        return _normalize_character(f, self.order, raw)


def _normalize_character(modulus: int, order: int, raw: dict[int, int]) -> DirichletCharacter:
    """Shrink the order to the exact lcm of value orders and freeze the table."""
    g = order
    for k in raw.values():
        g = math.gcd(g, k)
    true_order = order // g if g else 1
    values = tuple(sorted((a, (k // g) % true_order if g else 0) for a, k in raw.items()))
    return DirichletCharacter(modulus, true_order, values)


# ---------------------------------------------------------------------------
# the field specification

@dataclass(frozen=True)
class AbelianFieldSpec:
    """Totally-real-or-not abelian field fixed by <subgroup> inside Q(zeta_conductor)."""

    conductor: int
    subgroup: tuple[int, ...] = ()

    def __post_init__(self):
        m = self.conductor
        if m < 1:
            raise CyclotomicError("conductor must be positive")
        gens = tuple(g % m for g in self.subgroup)
        for g in gens:
            if math.gcd(g if g else m, m) != 1:
                raise CyclotomicError(f"subgroup generator {g} is not a unit mod {m}")
        object.__setattr__(self, "subgroup", gens)

    @property
    def subgroup_elements(self) -> frozenset[int]:
        m = self.conductor
        if m <= 2:
            return frozenset({1 % m})
        elems = {1}
        frontier = [1]
        while frontier:
            new = []
            for x in frontier:
                for g in self.subgroup:
                    y = x * g % m
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        return frozenset(elems)

    @property
    def degree(self) -> int:
        return _phi(self.conductor) // len(self.subgroup_elements)


def residue_degree(spec: AbelianFieldSpec, p: int) -> int:
    """Order of the coset p*H in (Z/m)^x / H; the norm of a prime above p is p^f."""
    m = spec.conductor
    if math.gcd(p, m) != 1:
        raise CyclotomicError(f"{p} divides the conductor {m}; use residue_degree_ramified")
    if m <= 2:
        return 1
    h = spec.subgroup_elements
    f = 1
    cur = p % m
    while cur not in h:
        cur = cur * p % m
        f += 1
    return f


def residue_degree_ramified(spec: AbelianFieldSpec, p: int) -> int:
    """Residue degree at a prime dividing the conductor, via the prime-to-p part."""
    m = spec.conductor
    while m % p == 0:
        m //= p
    reduced = AbelianFieldSpec(m, tuple(g % m for g in spec.subgroup))
    return residue_degree(reduced, p)


def enumerate_prime_norms(spec: AbelianFieldSpec, bound: int) -> list[tuple[int, int, int]]:
    """All (p, f, p^f) with p^f <= bound and p coprime to the conductor, sorted by norm."""
    if bound < 2:
        raise CyclotomicError("bound must be at least 2")
    out = []
    for p in range(2, bound + 1):
        if not intfactor.is_prime(p):
            continue
        if spec.conductor % p == 0 and spec.conductor > 1:
            continue
        f = residue_degree(spec, p)
        norm = p**f
        if norm <= bound:
            out.append((p, f, norm))
    return sorted(out, key=lambda t: (t[2], t[0]))


def character_group(spec: AbelianFieldSpec) -> list[DirichletCharacter]:
    """The characters of (Z/m)^x trivial on H: exactly degree-many, closed under product."""
    m = spec.conductor
    if m <= 2:
        return [DirichletCharacter(m, 1, ((1 % m, 0),))]
    group = _UnitGroup(m)
    units = group.units()
    unit_exps = {a: group.exponents(a) for a in units}
    big_l = group.exponent
    h_gens = [g for g in spec.subgroup_elements] or [1]
    chars = []
    # run over all exponent tuples; keep those trivial on H
    def tuples(idx: int, acc: list[int]):
        if idx == len(group.orders):
            yield tuple(acc)
            return
        for t in range(group.orders[idx]):
            yield from tuples(idx + 1, acc + [t])

    for t in tuples(0, []):
        def exp_at(a: int) -> int:
            e = unit_exps[a]
            return sum(ti * ei * (big_l // di) for ti, ei, di in zip(t, e, group.orders)) % big_l

        if any(exp_at(h) for h in h_gens):
            continue
        raw = {a: exp_at(a) for a in units}
        chars.append(_normalize_character(m, big_l, raw))
    if len(chars) != spec.degree:
        raise CyclotomicError(
            f"character count {len(chars)} does not match field degree {spec.degree}"
        )
    return chars


# ---------------------------------------------------------------------------
# Bernoulli numbers and the zeta value

def bernoulli_b2_chi(chi: DirichletCharacter) -> CyclotomicNumber:
    """B_{2,chi} = f * sum_a chi(a) B2(a/f) for primitive chi of conductor f."""
    if chi.conductor != chi.modulus:
        raise CyclotomicError("bernoulli_b2_chi needs a primitive character")
    f = chi.modulus
    powers: dict[int, Fraction] = {}
    for a in range(1, f + 1):
        k = chi.exponent_at(a)
        if k is None:
            continue
        x = Fraction(a, f)
        b2 = x * x - x + Fraction(1, 6)
        powers[k] = powers.get(k, Fraction(0)) + b2
    total = CyclotomicNumber.from_power_dict(chi.order, powers)
    return total * f


def l_value_minus_one(chi: DirichletCharacter) -> CyclotomicNumber:
    """L(-1, chi) = -B_{2,chi*}/2 computed from the primitive character."""
    b = bernoulli_b2_chi(chi.primitive())
    return b * Fraction(-1, 2)


def zeta_minus_one(spec: AbelianFieldSpec) -> Fraction:
    """Exact zeta_F(-1) as the product of L(-1, chi) over the character group."""
    chars = character_group(spec)
    for chi in chars:
        if not chi.is_even:
            raise CyclotomicError("odd character present; the field is not totally real")
    values = [l_value_minus_one(chi) for chi in chars]
    big_l = 1
    for v in values:
        big_l = math.lcm(big_l, v.order)
    prod = CyclotomicNumber.one(big_l)
    for v in values:
        prod = prod * v.embed(big_l)
    out = prod.rational_value()
    if out == 0:
        raise CyclotomicError("zeta value vanished; inputs inconsistent")
    return out

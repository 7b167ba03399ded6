"""Exact arithmetic in explicitly presented finite fields F_{p^n}.

A field is presented by a prime p and a monic irreducible modulus of degree
n over F_p (coefficients ascending).  Elements are coefficient vectors in
the power basis of the residue class of x.  Supports p < 2^31 and n <= 64,
with exact big-integer exponents throughout.

The coefficient-level arithmetic is delegated to a kernel: the compiled
one (galcert._fqcore) when available, otherwise the pure-Python fallback.
Set GALCERT_PURE=1 to force the fallback.
"""

from __future__ import annotations

import math
import os
from functools import cached_property

from . import intfactor
from .intfactor import FactoredInteger

if os.environ.get("GALCERT_PURE"):
    from ._fqpure import FqKernel as _Kernel

    KERNEL_COMPILED = False
else:
    try:
        from ._fqcore import FqKernel as _Kernel  # type: ignore[no-redef]

        KERNEL_COMPILED = True
    except ImportError:
        from ._fqpure import FqKernel as _Kernel  # type: ignore[no-redef]

        KERNEL_COMPILED = False

BSGS_TABLE_CAP = 1 << 26


class FieldError(ValueError):
    pass


def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = a[:]
    binv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * binv % p
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] = (a[k + i] - c * bi) % p
        _poly_trim(a)
    return q, a


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(a[:]), _poly_trim(b[:])
    while b:
        _, r = _poly_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _poly_xgcd(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Return (g, s) with s*a = g mod b, g = gcd(a, b) made monic."""

    def mul(f, g):
        if not f or not g:
            return []
        out = [0] * (len(f) + len(g) - 1)
        for i, fi in enumerate(f):
            if fi:
                for j, gj in enumerate(g):
                    out[i + j] = (out[i + j] + fi * gj) % p
        return _poly_trim(out)

    def sub(f, g):
        out = [0] * max(len(f), len(g))
        for i, fi in enumerate(f):
            out[i] = fi
        for i, gi in enumerate(g):
            out[i] = (out[i] - gi) % p
        return _poly_trim(out)

    r0, r1 = _poly_trim(a[:]), _poly_trim(b[:])
    s0, s1 = [1], []
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(_poly_trim(q), s1))
    if r0:
        inv = pow(r0[-1], -1, p)
        r0 = [c * inv % p for c in r0]
        s0 = [c * inv % p for c in s0]
    return r0, s0


class FqContext:
    """Validated presentation of F_{p^n}; immutable and thread-safe."""

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | list[int]):
        if not intfactor.is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if p >= 1 << 31:
            raise FieldError("characteristic must be below 2^31")
        if not 1 <= n <= 64:
            raise FieldError("extension degree must be in [1, 64]")
        if len(modulus) != n + 1:
            raise FieldError(f"modulus needs {n + 1} coefficients, got {len(modulus)}")
        mod = tuple(c % p for c in modulus)
        if mod[-1] != 1:
            raise FieldError("modulus must be monic")
        self.p = p
        self.n = n
        self.modulus = mod
        self.q = p**n
        self.kernel = _Kernel(p, mod)
        self._check_irreducible()

    def _check_irreducible(self) -> None:
        # Rabin test: x^{p^n} = x mod f, and gcd(x^{p^{n/r}} - x, f) = 1
        # for every prime r | n.  p-th powers are iterated Frobenius steps.
        x = self.elem([0, 1] if self.n > 1 else [0])
        if self.n == 1:
            return
        powers = [x.coeffs]
        cur = x.coeffs
        for _ in range(self.n):
            cur = self.kernel.pow(cur, self.p)
            powers.append(cur)
        if powers[self.n] != x.coeffs:
            raise FieldError("modulus is reducible (Frobenius orbit does not close)")
        for r in {f for f, _ in intfactor.factor(self.n).factors}:
            g = self.kernel.sub(powers[self.n // r], x.coeffs)
            if len(_poly_gcd(list(g), list(self.modulus), self.p)) != 1:
                raise FieldError("modulus is reducible (shares a factor with a subfield kernel)")

    @cached_property
    def q_minus_1(self) -> FactoredInteger:
        return intfactor.factor(self.q - 1)

    @cached_property
    def q_plus_1(self) -> FactoredInteger:
        return intfactor.factor(self.q + 1)

    def elem(self, coeffs) -> FqElem:
        c = list(coeffs)
        if len(c) > self.n:
            raise FieldError(f"element needs at most {self.n} coefficients")
        c += [0] * (self.n - len(c))
        return FqElem(self, tuple(x % self.p for x in c))

    def from_int(self, k: int) -> FqElem:
        return self.elem([k % self.p])

    @property
    def zero(self) -> FqElem:
        return FqElem(self, self.kernel.zero())

    @property
    def one(self) -> FqElem:
        return FqElem(self, self.kernel.one())

    @property
    def gen(self) -> FqElem:
        """The residue class of x."""
        if self.n == 1:
            # in the prime field the generator of the presentation is -c0
            return self.from_int(-self.modulus[0])
        return self.elem([0, 1])

    def __eq__(self, other):
        return (
            isinstance(other, FqContext)
            and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"FqContext(p={self.p}, n={self.n})"


class FqElem:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FqContext, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def __add__(self, other: "FqElem") -> "FqElem":
        return FqElem(self.ctx, self.ctx.kernel.add(self.coeffs, other.coeffs))

    def __sub__(self, other: "FqElem") -> "FqElem":
        return FqElem(self.ctx, self.ctx.kernel.sub(self.coeffs, other.coeffs))

    def __mul__(self, other: "FqElem") -> "FqElem":
        return FqElem(self.ctx, self.ctx.kernel.mul(self.coeffs, other.coeffs))

    def __neg__(self) -> "FqElem":
        return FqElem(self.ctx, self.ctx.kernel.neg(self.coeffs))

    def __pow__(self, e: int) -> "FqElem":
        return FqElem(self.ctx, self.ctx.kernel.pow(self.coeffs, e))

    def inv(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero field element")
        g, s = _poly_xgcd(list(self.coeffs), list(self.ctx.modulus), self.ctx.p)
        if len(g) != 1:
            raise FieldError("element not invertible; modulus not irreducible?")
        return self.ctx.elem(s)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FqElem)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else (f"{c}*x^{i}" if c != 1 else f"x^{i}"))
        return " + ".join(terms) if terms else "0"


def fq_new(p: int, n: int, modulus) -> FqContext:
    """Build and validate a field presentation."""
    return FqContext(p, n, modulus)


def frobenius_power(e: FqElem, m: int) -> FqElem:
    """e raised to the p^m power.  Since e lies in F_q, only m mod n matters."""
    if m < 0:
        raise ValueError("frobenius_power expects m >= 0")
    out = e
    for _ in range(m % e.ctx.n):
        out = out ** e.ctx.p
    return out


def is_square(e: FqElem) -> bool:
    """Euler criterion; requires e != 0 and odd q."""
    if e.is_zero():
        raise ValueError("is_square is undefined at zero")
    if e.ctx.p == 2:
        return True
    return e ** ((e.ctx.q - 1) // 2) == e.ctx.one


def order_from_factored(pow_fn, divisor: FactoredInteger, one) -> int:
    """Order of an element whose order divides divisor.value.

    pow_fn(k) must return the element to the k-th power; used both for
    field elements and for quadratic-extension elements.
    """
    o = divisor.value
    for ell in divisor.primes:
        while o % ell == 0 and pow_fn(o // ell) == one:
            o //= ell
    return o


def mult_order(e: FqElem) -> int:
    """Exact multiplicative order, by stripping primes from q - 1."""
    if e.is_zero():
        raise ValueError("zero has no multiplicative order")
    return order_from_factored(lambda k: e**k, e.ctx.q_minus_1, e.ctx.one)


def _bsgs(base: FqElem, target: FqElem, order: int) -> int:
    """Baby-step giant-step in the cyclic group <base> of the given prime order."""
    m = math.isqrt(order - 1) + 1
    if m > BSGS_TABLE_CAP:
        raise FieldError("BSGS table would exceed the memory cap")
    table: dict[tuple[int, ...], int] = {}
    cur = base.ctx.one
    for j in range(m):
        table.setdefault(cur.coeffs, j)
        cur = cur * base
    giant = (base ** (order - m)) if order > m else base.inv() ** m  # base^{-m}
    cur = target
    for i in range(m):
        j = table.get(cur.coeffs)
        if j is not None:
            return (i * m + j) % order
        cur = cur * giant
    raise FieldError("discrete log not found; target outside the subgroup?")


def discrete_log(base: FqElem, target: FqElem) -> int:
    """Pohlig-Hellman discrete log of target to a primitive base, in Z/(q-1)."""
    ctx = base.ctx
    if target.is_zero():
        raise ValueError("discrete log of zero is undefined")
    n_order = ctx.q - 1
    if mult_order(base) != n_order:
        raise FieldError("discrete_log requires a primitive base")
    residues = []
    moduli = []
    for ell, e in ctx.q_minus_1.factors:
        pe = ell**e
        # digits of the log base ell inside the order-ell^e subgroup
        gamma = base ** (n_order // ell)  # order ell
        h = target ** (n_order // pe)
        g_pe = base ** (n_order // pe)
        inv_gpe = g_pe.inv()
        x = 0
        for k in range(e):
            rem = (h * inv_gpe**x) ** (ell ** (e - 1 - k))
            d = _bsgs(gamma, rem, ell)
            x += d * ell**k
        residues.append(x)
        moduli.append(pe)
    # CRT
    x, mod = 0, 1
    for r, m in zip(residues, moduli):
        t = (r - x) * pow(mod, -1, m) % m
        x += mod * t
        mod *= m
    return x % (ctx.q - 1)


def minimal_polynomial(e: FqElem) -> tuple[int, ...]:
    """Monic minimal polynomial over F_p, as the product over the Frobenius orbit."""
    ctx = e.ctx
    orbit = [e]
    cur = e ** ctx.p
    while cur != e:
        orbit.append(cur)
        cur = cur ** ctx.p
    # multiply out prod (x - o) with coefficients in F_q
    poly = [ctx.one]
    for o in orbit:
        nxt = [ctx.zero] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * o
        poly = nxt
    out = []
    for c in poly:
        if any(c.coeffs[1:]):
            raise FieldError("orbit product has a coefficient outside the prime field")
        out.append(c.coeffs[0])
    return tuple(out)

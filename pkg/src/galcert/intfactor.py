"""Deterministic primality testing and integer factorization.

Sized for multiplicative-order computations in PGL2 over the bundled
fields: the largest inputs are q +/- 1 for q = 3^36, about 1.5e17.  Inputs
are capped at 2^90; anything larger is rejected rather than handled with
degraded guarantees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

MAGNITUDE_CAP = 1 << 90

TRIAL_BOUND = 10**6

# Strong-pseudoprime witnesses.  The first 13 primes are a proven
# deterministic test below 3.317e24 (Sorenson-Webster), which covers every
# value this package ever factors.  The longer schedule is used for the
# remaining range up to the cap.
_PROVEN_WITNESS_BOUND = 3_317_044_064_679_887_385_961_981
_WITNESSES_13 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_WITNESSES_EXTENDED = _WITNESSES_13 + (
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131,
)


@dataclass(frozen=True)
class FactoredInteger:
    """An integer together with its prime factorization.

    factors is a tuple of (prime, exponent) pairs with strictly increasing
    primes whose product reconstructs value.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev or e < 1:
                raise ValueError("factors must be (prime, exponent) pairs with increasing primes")
            prev = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factorization product {prod} != value {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def _check_magnitude(n: int) -> None:
    if n >= MAGNITUDE_CAP:
        raise ValueError(f"input {n} exceeds supported magnitude 2^90")


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2^90."""
    if n < 0:
        raise ValueError("is_prime expects a nonnegative integer")
    _check_magnitude(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    witnesses = _WITNESSES_13 if n < _PROVEN_WITNESS_BOUND else _WITNESSES_EXTENDED
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _trial_division(n: int) -> tuple[dict[int, int], int]:
    """Strip prime factors up to TRIAL_BOUND; return (found, cofactor)."""
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    d = 7
    # 6k +/- 1 wheel
    inc = (4, 2)
    i = 0
    while d <= TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            found[d] = found.get(d, 0) + 1
            n //= d
        d += inc[i]
        i ^= 1
    if 1 < n and n <= TRIAL_BOUND * TRIAL_BOUND:
        # cofactor below the square of the bound has no small factor left
        found[n] = found.get(n, 0) + 1
        n = 1
    return found, n


def _pollard_rho(n: int) -> int:
    """Brent-cycle rho with a fixed parameter schedule; n composite, odd,
    no factors below TRIAL_BOUND."""
    if n % 2 == 0:
        return 2
    # deterministic schedule: increment the polynomial constant until a
    # nontrivial factor appears
    for c in range(1, 1000):
        y, r, q = 2, 1, 1
        g = 1
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            # backtrack one step at a time
            g = 1
            y = ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho parameter schedule exhausted for {n}")


@lru_cache(maxsize=4096)
def factor(n: int) -> FactoredInteger:
    """Full factorization of 1 <= n < 2^90, deterministic across runs."""
    if n < 1:
        raise ValueError("factor expects a positive integer")
    _check_magnitude(n)
    if n == 1:
        return FactoredInteger(1, ())
    found, cofactor = _trial_division(n)
    stack = [cofactor] if cofactor > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return FactoredInteger(n, tuple(sorted(found.items())))

"""Pure-Python finite-field kernel.

Elements of F_p[x]/(f) are coefficient tuples of length n = deg f, reduced
into [0, p), ascending powers.  This module is the fallback for the
compiled kernel in galcert._fqcore and must match it operation for
operation; tests compare the two directly.
"""

from __future__ import annotations


class FqKernel:
    """Arithmetic mod a monic degree-n polynomial over F_p.

    The kernel does not check irreducibility; callers that need a field
    must validate the modulus themselves.
    """

    def __init__(self, p: int, modulus: tuple[int, ...]):
        if len(modulus) < 2:
            raise ValueError("modulus must have degree >= 1")
        if modulus[-1] % p != 1:
            raise ValueError("modulus must be monic")
        self.p = p
        self.n = len(modulus) - 1
        self.mod_low = tuple(c % p for c in modulus[:-1])

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.n

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.n - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, n = self.p, self.n
        t = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    t[i + j] += ai * bj
        mod = self.mod_low
        for i in range(2 * n - 2, n - 1, -1):
            c = t[i] % p
            if c:
                base = i - n
                for j in range(n):
                    t[base + j] -= c * mod[j]
        return tuple(t[i] % p for i in range(n))

    def pow(self, a, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            return self.one()
        result = a
        for bit in bin(e)[3:]:
            result = self.mul(result, result)
            if bit == "1":
                result = self.mul(result, a)
        return result

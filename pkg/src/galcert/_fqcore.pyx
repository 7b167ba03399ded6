# cython: language_level=3
"""Compiled finite-field kernel; same interface as galcert._fqpure.

Coefficients are machine integers (p < 2^31, so a product plus a partial
sum fits in 64 bits when reduced after each accumulation).  All scratch
space lives on the C stack (n <= 64), so kernel objects are safe to share
across threads.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

DEF MAX_N = 64


cdef class FqKernel:
    cdef unsigned long long p
    cdef int n
    cdef unsigned long long* mod_low

    def __cinit__(self, p, modulus):
        if len(modulus) < 2:
            raise ValueError("modulus must have degree >= 1")
        if len(modulus) - 1 > MAX_N:
            raise ValueError("kernel supports degree <= 64")
        self.p = p
        self.n = len(modulus) - 1
        if modulus[self.n] % p != 1:
            raise ValueError("modulus must be monic")
        self.mod_low = <unsigned long long*> malloc(self.n * sizeof(unsigned long long))
        if not self.mod_low:
            raise MemoryError()
        cdef int i
        for i in range(self.n):
            self.mod_low[i] = modulus[i] % p

    def __dealloc__(self):
        free(self.mod_low)

    def zero(self):
        return (0,) * self.n

    def one(self):
        return (1,) + (0,) * (self.n - 1)

    def add(self, a, b):
        cdef unsigned long long p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        cdef unsigned long long p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        cdef unsigned long long p = self.p
        return tuple((p - x) % p for x in a)

    cdef void _load(self, object seq, unsigned long long* dst):
        cdef int i
        for i in range(self.n):
            dst[i] = seq[i]

    cdef tuple _dump(self, unsigned long long* src):
        cdef list out = []
        cdef int i
        for i in range(self.n):
            out.append(src[i])
        return tuple(out)

    cdef void _mul_into(self, unsigned long long* a, unsigned long long* b,
                        unsigned long long* out):
        # schoolbook product into stack scratch, then monic reduction
        cdef unsigned long long p = self.p
        cdef int n = self.n
        cdef unsigned long long t[2 * MAX_N]
        cdef int i, j, base
        cdef unsigned long long ai, c
        memset(t, 0, (2 * n) * sizeof(unsigned long long))
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n):
                    t[i + j] = (t[i + j] + ai * b[j]) % p
        for i in range(2 * n - 2, n - 1, -1):
            c = t[i]
            if c:
                base = i - n
                for j in range(n):
                    t[base + j] = (t[base + j] + c * (p - self.mod_low[j])) % p
        for i in range(n):
            out[i] = t[i]

    def mul(self, a, b):
        cdef unsigned long long x[MAX_N]
        cdef unsigned long long y[MAX_N]
        self._load(a, x)
        self._load(b, y)
        self._mul_into(x, y, x)
        return self._dump(x)

    def pow(self, a, e):
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            return self.one()
        cdef unsigned long long base[MAX_N]
        cdef unsigned long long acc[MAX_N]
        self._load(a, base)
        memcpy(acc, base, self.n * sizeof(unsigned long long))
        cdef str bits = bin(e)
        cdef Py_ssize_t i
        for i in range(3, len(bits)):
            self._mul_into(acc, acc, acc)
            if bits[i] == "1":
                self._mul_into(acc, base, acc)
        return self._dump(acc)

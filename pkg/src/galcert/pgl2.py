"""Orders of Frobenius images in PGL2(F_q) from characteristic polynomials.

A trace/determinant observation (abar, Npbar) determines the class of a
matrix with characteristic polynomial x^2 - abar*x + Npbar up to the
discriminant-zero ambiguity.  The projective order is the multiplicative
order of the ratio of the two eigenvalues, computed inside the quadratic
tower F_q[y]/(y^2 - disc) so that split and nonsplit cases share one code
path and no square roots are ever extracted.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intfactor
from .ffield import FqContext, FqElem, is_square, order_from_factored


class OrderError(ValueError):
    pass


@dataclass(frozen=True)
class OrderExpr:
    """Textual order expression: "-", an integer, q-1, q+1, (q-1)/d, (q+1)/d."""

    kind: str  # 'ramified' | 'int' | 'qm1' | 'qp1' | 'qm1_div' | 'qp1_div'
    value: int = 0

    @classmethod
    def parse(cls, text: str) -> "OrderExpr":
        s = text.strip()
        if s == "-":
            return cls("ramified")
        if s == "q-1":
            return cls("qm1")
        if s == "q+1":
            return cls("qp1")
        for prefix, kind in (("(q-1)/", "qm1_div"), ("(q+1)/", "qp1_div")):
            if s.startswith(prefix):
                d = s[len(prefix):]
                if not d.isdigit() or int(d) < 1:
                    raise OrderError(f"bad order divisor in {text!r}")
                return cls(kind, int(d))
        if s.isdigit():
            return cls("int", int(s))
        raise OrderError(f"cannot parse order expression {text!r}")

    def __str__(self) -> str:
        return {
            "ramified": "-",
            "int": str(self.value),
            "qm1": "q-1",
            "qp1": "q+1",
            "qm1_div": f"(q-1)/{self.value}",
            "qp1_div": f"(q+1)/{self.value}",
        }[self.kind]

    @property
    def is_ramified(self) -> bool:
        return self.kind == "ramified"


def order_expr_eval(expr: OrderExpr, q: int) -> int:
    """Exact integer value of an order expression at the given q."""
    if expr.kind == "int":
        return expr.value
    if expr.kind == "qm1":
        return q - 1
    if expr.kind == "qp1":
        return q + 1
    if expr.kind in ("qm1_div", "qp1_div"):
        num = q - 1 if expr.kind == "qm1_div" else q + 1
        if num % expr.value:
            raise OrderError(f"{expr} is not integral at q={q}")
        return num // expr.value
    raise OrderError(f"order expression {expr} has no value")


@dataclass(frozen=True)
class FrobeniusDatum:
    """A (trace, norm) observation at a prime, over a fixed field presentation."""

    ctx: FqContext
    trace: FqElem
    norm: int
    ramified: bool = False

    @property
    def det(self) -> FqElem:
        return self.ctx.from_int(self.norm)


@dataclass(frozen=True)
class OrderResult:
    order: int
    kind: str  # 'split' | 'nonsplit' | 'unipotent_ambiguous' | 'scalar'
    divides: str  # 'q-1' | 'q+1' | 'p' | '1'

    @property
    def ambiguous(self) -> bool:
        return self.kind == "unipotent_ambiguous"


class _QuadExt:
    """The ring F_q[y]/(y^2 - delta); a field exactly when delta is a nonsquare."""

    def __init__(self, ctx: FqContext, delta: FqElem):
        self.ctx = ctx
        self.delta = delta
        self.one = (ctx.one, ctx.zero)

    def mul(self, a, b):
        u1, v1 = a
        u2, v2 = b
        return (u1 * u2 + v1 * v2 * self.delta, u1 * v2 + v1 * u2)

    def pow(self, a, e: int):
        if e == 0:
            return self.one
        result = a
        for bit in bin(e)[3:]:
            result = self.mul(result, result)
            if bit == "1":
                result = self.mul(result, a)
        return result


def frobenius_order(datum: FrobeniusDatum, known_scalar: bool = False) -> OrderResult:
    """Order of the projective image of a matrix with the given trace and det.

    Split case: the eigenvalue ratio lies in F_q^x, so the order divides
    q - 1.  Nonsplit: the ratio is lambda^(1-q) of norm one, so the order
    divides q + 1.  Discriminant zero cannot be resolved from the
    characteristic polynomial alone and is reported as ambiguous (order p)
    unless the caller explicitly flags a scalar.
    """
    if datum.ramified:
        raise OrderError("ramified observations carry no order")
    ctx = datum.ctx
    if ctx.p == 2:
        raise OrderError("orders are only computed in odd characteristic")
    det = datum.det
    if det.is_zero():
        raise OrderError("zero determinant")
    t = datum.trace
    disc = t * t - ctx.from_int(4) * det
    if disc.is_zero():
        if known_scalar:
            return OrderResult(1, "scalar", "1")
        return OrderResult(ctx.p, "unipotent_ambiguous", "p")
    split = is_square(disc)
    ring = _QuadExt(ctx, disc)
    inv2 = ctx.from_int(2).inv()
    lam = (t * inv2, inv2)  # (t + y)/2, an eigenvalue in the tower
    det_inv = det.inv()
    lam2 = ring.mul(lam, lam)
    ratio = (lam2[0] * det_inv, lam2[1] * det_inv)  # lambda / conj(lambda)
    divisor = ctx.q_minus_1 if split else ctx.q_plus_1
    order = order_from_factored(lambda k: ring.pow(ratio, k), divisor, ring.one)
    if split:
        return OrderResult(order, "split", "q-1")
    return OrderResult(order, "nonsplit", "q+1")


def _mat_mul(a, b):
    (a11, a12, a21, a22), (b11, b12, b21, b22) = a, b
    return (
        a11 * b11 + a12 * b21,
        a11 * b12 + a12 * b22,
        a21 * b11 + a22 * b21,
        a21 * b12 + a22 * b22,
    )


def _mat_pow(m, e: int, one):
    result = one
    for bit in bin(e)[2:]:
        result = _mat_mul(result, result)
        if bit == "1":
            result = _mat_mul(result, m)
    return result


def _is_scalar(m) -> bool:
    a, b, c, d = m
    return b.is_zero() and c.is_zero() and a == d


def companion_matrix(datum: FrobeniusDatum):
    """Companion matrix of x^2 - trace*x + det over F_q."""
    ctx = datum.ctx
    return (ctx.zero, -datum.det, ctx.one, datum.trace)


def certify_order(datum: FrobeniusDatum, m: int) -> bool:
    """Independent check that the projective order is exactly m: the
    companion matrix to the m-th power is scalar and to the (m/l)-th power
    is not, for every prime l | m."""
    ctx = datum.ctx
    mat = companion_matrix(datum)
    one = (ctx.one, ctx.zero, ctx.zero, ctx.one)
    if not _is_scalar(_mat_pow(mat, m, one)):
        return False
    for ell in intfactor.factor(m).primes:
        if _is_scalar(_mat_pow(mat, m // ell, one)):
            return False
    return True


def brute_force_order(datum: FrobeniusDatum, cap: int | None = None) -> int:
    """Order by direct powering of the companion matrix; oracle for tests."""
    ctx = datum.ctx
    mat = companion_matrix(datum)
    cur = mat
    limit = cap if cap is not None else ctx.q + 1
    for k in range(1, limit + 1):
        if _is_scalar(cur):
            return k
        cur = _mat_mul(cur, mat)
    raise OrderError(f"no order found up to {limit}")

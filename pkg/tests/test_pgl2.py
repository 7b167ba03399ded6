import pytest

from galcert import ffield, heckedata, pgl2
from galcert.pgl2 import (
    FrobeniusDatum,
    OrderError,
    OrderExpr,
    brute_force_order,
    certify_order,
    frobenius_order,
    order_expr_eval,
)


def test_order_expr_parse_and_eval():
    q = 3**27
    assert order_expr_eval(OrderExpr.parse("q-1"), q) == q - 1
    assert order_expr_eval(OrderExpr.parse("q+1"), 3125) == 3126
    assert order_expr_eval(OrderExpr.parse("(q-1)/109"), q) == 69959609954
    assert order_expr_eval(OrderExpr.parse("1042"), q) == 1042
    with pytest.raises(OrderError):
        order_expr_eval(OrderExpr.parse("(q+1)/4"), 3125)  # 3126 = 2 mod 4
    with pytest.raises(OrderError):
        order_expr_eval(OrderExpr.parse("-"), q)
    with pytest.raises(OrderError):
        OrderExpr.parse("q*2")
    for text in ("-", "7", "q-1", "q+1", "(q-1)/2", "(q+1)/4"):
        assert str(OrderExpr.parse(text)) == text


def test_published_order_examples(f27, f5, g_small):
    # trace 0, det 2 over F_{5^5}: square of the matrix is scalar
    d = FrobeniusDatum(f5.ctx, f5.ctx.zero, 32)
    assert frobenius_order(d).order == 2
    # norm 53 has full split order, norm 271 has order (q+1)/4
    by_norm = {e.norm: e for e in f27.entries}
    d53 = FrobeniusDatum(f27.ctx, heckedata.resolve_eigenvalue(f27, by_norm[53]), 53)
    assert frobenius_order(d53).order == f27.ctx.q - 1
    d271 = FrobeniusDatum(f27.ctx, heckedata.resolve_eigenvalue(f27, by_norm[271]), 271)
    res = frobenius_order(d271)
    assert res.order == (f27.ctx.q + 1) // 4 == 1906399371247
    assert res.kind == "nonsplit"
    # trace 2, det 2 over F_5
    d5 = FrobeniusDatum(g_small.ctx, g_small.ctx.from_int(2), 32)
    assert frobenius_order(d5).order == 4


def test_error_cases(f5):
    ctx = f5.ctx
    with pytest.raises(OrderError):
        frobenius_order(FrobeniusDatum(ctx, ctx.one, 5, ramified=True))
    with pytest.raises(OrderError):
        frobenius_order(FrobeniusDatum(ctx, ctx.one, 25))  # det = 0 mod 5


def test_discriminant_zero(f5):
    ctx = f5.ctx
    # trace 2, det 1: (x-1)^2
    d = FrobeniusDatum(ctx, ctx.from_int(2), 151)  # 151 = 1 mod 5
    res = frobenius_order(d)
    assert res.kind == "unipotent_ambiguous" and res.order == 5 and res.ambiguous
    scalar = frobenius_order(d, known_scalar=True)
    assert scalar.kind == "scalar" and scalar.order == 1


def test_split_kind_matches_square_discriminant(g_small):
    ctx = g_small.ctx
    four = ctx.from_int(4)
    for t in range(5):
        for det_norm in (1, 2, 3, 4):
            tr = ctx.from_int(t)
            disc = tr * tr - four * ctx.from_int(det_norm)
            d = FrobeniusDatum(ctx, tr, det_norm)
            res = frobenius_order(d)
            if disc.is_zero():
                assert res.kind == "unipotent_ambiguous"
            else:
                assert (res.kind == "split") == ffield.is_square(disc)
                assert res.divides == ("q-1" if res.kind == "split" else "q+1")


def _all_data(tables):
    for name in ("f27_level1", "f5_levelp5_f", "f5_levelp5_fprime", "f10_levelp5_g",
                 "f5_levelp5_g_small"):
        table = tables[name]
        for entry in table.entries:
            if heckedata.entry_is_ramified(table, entry):
                continue
            trace = heckedata.resolve_eigenvalue(table, entry)
            yield FrobeniusDatum(table.ctx, trace, entry.norm)


def test_matrix_powering_certifies_all_rows(tables):
    for datum in _all_data(tables):
        res = frobenius_order(datum)
        assert certify_order(datum, res.order)


def test_frobenius_invariance_all_rows(tables):
    for datum in _all_data(tables):
        base = frobenius_order(datum).order
        twisted = FrobeniusDatum(datum.ctx, datum.trace ** datum.ctx.p, datum.norm)
        assert frobenius_order(twisted).order == base


@pytest.mark.parametrize("p,n,mod", [(5, 1, (0, 1)), (3, 2, (1, 0, 1))])
def test_brute_force_cross_check(p, n, mod):
    ctx = ffield.fq_new(p, n, mod)
    elems = []
    if n == 1:
        elems = [ctx.from_int(k) for k in range(p)]
    else:
        elems = [ctx.elem((a, b)) for a in range(p) for b in range(p)]
    for t in elems:
        for det in elems:
            if det.is_zero() or not all(c == 0 for c in det.coeffs[1:]):
                continue
            norm = det.coeffs[0]
            d = FrobeniusDatum(ctx, t, norm)
            res = frobenius_order(d)
            if res.ambiguous:
                continue
            assert res.order == brute_force_order(d)


def test_trace_zero_law(g_small):
    ctx = g_small.ctx
    for det in (1, 2, 3, 4):
        assert frobenius_order(FrobeniusDatum(ctx, ctx.zero, det)).order == 2

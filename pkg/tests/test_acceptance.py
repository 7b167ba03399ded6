"""Acceptance suite: every published quantity the package re-derives.

Each criterion prints one line (run with -s to see them inline).  Where the
bundled data or the published claim is internally inconsistent, the literal
assertion is kept as a strict xfail and the certified recomputation is
pinned in a companion test; the registry in galcert.repro documents every
such cell.
"""

import time
from fractions import Fraction

import pytest

from galcert import cyclofield, dickson, discbound, ffield, heckedata, pgl2, quatalg, repro, shimura
from galcert.cyclofield import AbelianFieldSpec
from galcert.repro import ORDER_DEFECTS


def report(n, text):
    print(f"criterion {n:>2}: PASS  {text}")


# -- 1: order columns --------------------------------------------------------

def test_criterion_01_order_columns(tables):
    t0 = time.monotonic()
    counts = {}
    for name in heckedata.BUNDLED_TABLES:
        table = tables[name]
        if table.kind != "field":
            continue
        matched = 0
        for rep in heckedata.verify_orders(table):
            if rep.status == "skipped":
                continue
            if (name, rep.norm, rep.column) in ORDER_DEFECTS:
                continue
            assert rep.status == "match", (name, rep.norm, rep.column, rep.reason)
            matched += 1
        counts[name] = matched
    assert counts["f27_level1"] == 6
    assert counts["f5_levelp5_f"] == 12
    assert counts["f5_levelp5_fprime"] == 12
    assert counts["f5_levelp5_g_small"] == 54  # one registered defect cell
    assert counts["f10_levelp5_g"] == 3  # eight registered defect cells
    elapsed = time.monotonic() - t0
    assert elapsed < 60
    report(1, f"{sum(counts.values())} order entries reproduce exactly ({elapsed:.1f}s)")


def test_criterion_01_defect_cells_certified(tables):
    for (name, norm, column), (printed, certified) in ORDER_DEFECTS.items():
        table = tables[name]
        entry = next(
            e for e in table.entries if e.norm == norm and e.column_tag == column
        )
        trace = heckedata.resolve_eigenvalue(table, entry)
        datum = pgl2.FrobeniusDatum(table.ctx, trace, norm)
        assert pgl2.order_expr_eval(entry.expected_order, table.ctx.q) == printed
        result = pgl2.frobenius_order(datum)
        assert result.order == certified != printed
        assert pgl2.certify_order(datum, certified)
        assert not pgl2.certify_order(datum, printed)
    report(1, f"{len(ORDER_DEFECTS)} defective cells: certified orders pinned")


@pytest.mark.xfail(
    strict=True,
    reason="nine bundled order entries are internally inconsistent: their printed "
    "eigenvalues force different orders (certified by matrix powering; for the "
    "degree-10 table no generator choice reconciles the printed column)",
)
def test_criterion_01_literal_defect_cells(tables):
    for (name, norm, column), _ in ORDER_DEFECTS.items():
        table = tables[name]
        for rep in heckedata.verify_orders(table):
            if rep.norm == norm and rep.column == column:
                assert rep.status == "match"


# -- 2: discrete logarithms --------------------------------------------------

ROW53_MINPOLY = (
    -1, 1, 0, 1, 1, 1, -1, 0, 0, 0, 0, 1, 0, -1,
    -1, -1, -1, -1, 1, 1, -1, 0, 1, -1, -1, 0, 0, 1,
)


def test_criterion_02_discrete_logs(f27):
    t0 = time.monotonic()
    ctx = f27.ctx
    c = ctx.gen
    assert len(f27.entries) == 7
    for entry in f27.entries:
        logval = entry.eigenvalue[1]
        value = c**logval
        assert ffield.discrete_log(c, value) == logval
    row53 = next(e for e in f27.entries if e.norm == 53)
    value53 = c ** row53.eigenvalue[1]
    assert value53 == ctx.elem(row53.check_poly)
    assert ffield.minimal_polynomial(value53) == tuple(x % 3 for x in ROW53_MINPOLY)
    elapsed = time.monotonic() - t0
    assert elapsed < 120
    report(2, f"7 discrete logs round-trip; norm-53 expansion and minimal polynomial ({elapsed:.1f}s)")


# -- 3: primitivity ----------------------------------------------------------

def test_criterion_03_primitivity(f27):
    assert ffield.mult_order(f27.ctx.gen) == 3**27 - 1
    report(3, "the declared generator of F_{3^27} has full order 3^27 - 1")


# -- 4: surjectivity certificates --------------------------------------------

def _assert_complete_surjective(table, column=None):
    cert = dickson.certify(heckedata.table_observations(table, column))
    assert cert.conclusion == "surjective"
    expected_classes = set(dickson.dickson_classes(table.ctx.p, table.ctx.n))
    assert {e.class_name for e in cert.exclusions} == expected_classes
    assert cert.unresolved == []
    return cert


def test_criterion_04_surjectivity(tables, g_small):
    _assert_complete_surjective(tables["f27_level1"])
    _assert_complete_surjective(tables["f5_levelp5_f"])
    _assert_complete_surjective(tables["f5_levelp5_fprime"])
    for col in g_small.columns:
        _assert_complete_surjective(g_small, col)
    report(4, "8 certification targets surjective with a witness for every class")


def test_criterion_04_degree10_sound_outcome(f10):
    cert = dickson.certify(heckedata.table_observations(f10))
    assert cert.conclusion == "inconclusive"
    assert cert.unresolved == ["psl2_full"]
    excluded = {e.class_name for e in cert.exclusions}
    assert excluded == set(dickson.dickson_classes(5, 10)) - {"psl2_full"}
    # every determinant in the table is a square in F_{5^10}, so no sound
    # order/determinant certifier can place the image outside PSL2
    for obs in heckedata.table_observations(f10).observations:
        assert obs.det_is_square
    assert f10.ctx.q % 4 == 1
    report(4, "degree-10 target: certified up to PSL2 (psl2_full not excludable from this data)")


@pytest.mark.xfail(
    strict=True,
    reason="the degree-10 target cannot be certified surjective onto PGL2: all "
    "determinants are squares in F_{5^10} (8 | q-1) and q = 1 mod 4, so PSL2 "
    "containment is unfalsifiable from the data; the recomputed orders all "
    "divide (q +/- 1)/2, the PSL2 spectrum",
)
def test_criterion_04_literal_degree10(f10):
    cert = dickson.certify(heckedata.table_observations(f10))
    assert cert.conclusion == "surjective"


# -- 5: soundness oracle -----------------------------------------------------

def test_criterion_05_dickson_soundness_oracle():
    t0 = time.monotonic()
    for p in (3, 5, 7):
        ctx = ffield.fq_new(p, 1, (0, 1))
        profiles = dickson.subgroup_observations(p)
        assert profiles
        for size, obs in profiles:
            cert = dickson.certify(dickson.ObservationSet(ctx, obs, assume_totally_odd=False))
            assert cert.conclusion != "surjective", f"F_{p}: subgroup of size {size}"
    elapsed = time.monotonic() - t0
    assert elapsed < 600
    report(5, f"no false surjective over F_3, F_5, F_7 ({elapsed:.1f}s)")


# -- 6: trace distinctness ---------------------------------------------------

def test_criterion_06_goursat_traces(g_small):
    rows = {
        norm: [
            heckedata.resolve_eigenvalue(g_small, e)
            for e in sorted(
                (e for e in g_small.entries if e.norm == norm),
                key=lambda e: e.column_tag,
            )
        ]
        for norm in (193, 243)
    }
    assert dickson.distinct_traces(rows[193])
    assert not dickson.distinct_traces(rows[243])
    report(6, "norm 193 traces pairwise distinct; norm 243 traces collapse")


# -- 7: Eisenstein congruence ------------------------------------------------

def test_criterion_07_eisenstein(tables):
    reports = heckedata.eisenstein_congruence_check(tables["f5_level1_quad"])
    passing = [r for r in reports if r.status == "pass"]
    assert len(passing) == 9
    assert all(r.status != "fail" for r in reports)
    report(7, "p*a_p = p^3(p+1) mod 5 at all nine degree-one primes")


# -- 8: areas ----------------------------------------------------------------

def test_criterion_08_areas():
    assert shimura.normalized_area(shimura.AreaParams(AbelianFieldSpec(1))) == Fraction(1, 6)
    assert shimura.triangle_area(2, 3, 9) == Fraction(1, 18)
    assert shimura.triangle_area(2, 3, 7) == Fraction(1, 42)
    assert shimura.normalized_area(
        shimura.AreaParams(AbelianFieldSpec(25, (7,)))
    ) == Fraction(71, 6)
    assert shimura.normalized_area(
        shimura.AreaParams(AbelianFieldSpec(27, (-1,)))
    ) == Fraction(5833, 54)
    assert shimura.normalized_area(
        shimura.AreaParams(AbelianFieldSpec(49, (31,)))
    ) == Fraction(275381, 6)
    assert cyclofield.zeta_minus_one(AbelianFieldSpec(5, (-1,))) == Fraction(1, 30)
    # the degree-3 field area equals its triangle-group area
    assert shimura.normalized_area(
        shimura.AreaParams(AbelianFieldSpec(9, (-1,)))
    ) == shimura.triangle_area(2, 3, 9)
    report(8, "six exact areas plus the real-quadratic zeta cross-check")


# -- 9: signature identities -------------------------------------------------

def test_criterion_09_signatures():
    pairs = [
        (shimura.Signature(45, ((2, 19), (3, 13), (9, 1), (27, 1))), Fraction(5833, 54)),
        (shimura.Signature(2, ((2, 5), (3, 11))), Fraction(71, 6)),
        (shimura.Signature(22864, ((2, 71), (3, 203))), Fraction(275381, 6)),
    ]
    for sig, mu in pairs:
        assert shimura.signature_area_check(sig, mu)
    report(9, "three Gauss-Bonnet identities hold exactly")


# -- 10: dimension accounting ------------------------------------------------

def test_criterion_10_dimensions():
    cases = [
        ([1, 2, 2, 4, 16, 32], 57),
        ([3, 6, 36], 45),
        ([53, 64], 117),
        ([30, 2, 2], 34),
        ([10, 20], 30),
    ]
    for parts, total in cases:
        assert shimura.dimension_accounting(parts, total)
    report(10, "five decomposition identities")


# -- 11: bounds --------------------------------------------------------------

def test_criterion_11_bounds():
    sp7118 = discbound.ScaledPower(1, 3, Fraction(71, 18))
    sp7318 = discbound.ScaledPower(1, 3, Fraction(73, 18))
    m5 = discbound.moon_bound(5, Fraction(35, 20), Fraction(26, 20), 5).value
    m10 = discbound.moon_bound(5, Fraction(35, 20), Fraction(26, 20), 10).value
    sp5920 = discbound.ScaledPower(1, 5, Fraction(59, 20))
    roberts = discbound.ScaledPower(125, 5, Fraction(-1, 12500))

    assert str(discbound.decimal_upper(sp7118, 2)) == "76.21"
    assert str(discbound.decimal_nearest(sp7318, 3)) == "86.098"
    assert str(discbound.decimal_upper(sp7318, 2)) == "86.10"
    assert str(discbound.decimal_nearest(m5, 3)) == "135.384"
    assert str(discbound.decimal_upper(m5, 2)) == "135.39"
    assert str(discbound.decimal_upper(m10, 2)) == "135.48"
    assert str(discbound.decimal_upper(sp5920, 2)) == "115.34"
    assert str(discbound.decimal_nearest(roberts, 3)) == "124.984"
    for sp in (sp7118, sp7318, sp5920, roberts):
        bound = discbound.decimal_upper(sp, 2)
        assert discbound.certify_direction(bound, sp)
    report(11, "all published bound decimals reproduce with certified rounding")


# -- 12: splitting -----------------------------------------------------------

def test_criterion_12_splitting(tables):
    import math

    total = 0
    for table in tables.values():
        for entry in table.entries:
            p = entry.rational_prime
            if math.gcd(p, table.spec.conductor) == 1:
                f = cyclofield.residue_degree(table.spec, p)
            else:
                f = cyclofield.residue_degree_ramified(table.spec, p)
            assert p**f == entry.norm, (table.name, entry.norm)
            total += 1
    assert cyclofield.residue_degree(AbelianFieldSpec(27, (-1,)), 53) == 1
    assert cyclofield.residue_degree(AbelianFieldSpec(25, (7,)), 2) == 5
    assert cyclofield.residue_degree(AbelianFieldSpec(25, (7,)), 3) == 5
    report(12, f"all {total} bundled norms reproduced by residue degrees")


# -- 13: ramification signs --------------------------------------------------

def test_criterion_13_ramification():
    field = quatalg.BUNDLED_FIELDS["zeta27plus"]
    u = quatalg.elem(field.minpoly, field.unit_u)
    signs = quatalg.embedding_signs(u)
    assert len(signs) == 9
    # one split real place; the negative count plus the split place gives
    # the full degree, as even ramification parity requires
    assert signs.count(1) == 1
    assert signs.count(-1) + 1 == 9
    assert quatalg.is_unit(u)
    x0 = quatalg.elem(field.minpoly, field.order_x0)
    x1 = quatalg.elem(field.minpoly, field.order_x1)
    assert quatalg.order_generator_integral(x0, x1, u)
    assert quatalg.poly_discriminant(field.minpoly) == 3**22
    deg5_disc = quatalg.poly_discriminant(quatalg.BUNDLED_FIELDS["deg5"].minpoly)
    assert deg5_disc == 5**8 * 7**2  # 5-part equals the field discriminant 5^8
    report(13, "u negative at 8 of 9 places (one split); generator integral; discs pinned")


@pytest.mark.xfail(
    strict=True,
    reason="the published sign claim is reversed: the algebra ramifies at the real "
    "places where u is negative, and even ramification parity forces 8 negatives "
    "and one positive (the split place), not one negative",
)
def test_criterion_13_literal_sign_count():
    field = quatalg.BUNDLED_FIELDS["zeta27plus"]
    u = quatalg.elem(field.minpoly, field.unit_u)
    assert quatalg.embedding_signs(u).count(-1) == 1


@pytest.mark.xfail(
    strict=True,
    reason="the degree-5 defining polynomial has discriminant 5^8 * 7^2 (index 7 "
    "in the maximal order); only its 5-part matches the field discriminant",
)
def test_criterion_13_literal_deg5_disc_support():
    disc = quatalg.poly_discriminant(quatalg.BUNDLED_FIELDS["deg5"].minpoly)
    assert quatalg.prime_support(disc) == (5,)


# -- 14: degree audit --------------------------------------------------------

def test_criterion_14_degree_audit():
    rows = dickson.degree_audit(dickson.INTRO_DEGREE_ROWS)
    by_label = {r.label: r for r in rows}
    for label in ("9.PGL2(3^27), level 1", "9.PGL2(3^18), level p3", "9.PGL2(3^36), level p3"):
        assert by_label[label].matches_two_sig and not by_label[label].flagged
    r55 = by_label["5.PGL2(5^5), level p5"]
    assert r55.flagged and 0.09 < r55.ratio < 0.11
    r510 = by_label["5.PGL2(5^10), level p5"]
    assert r510.flagged and 9 < r510.ratio < 11
    rpsl = by_label["10.PSL2(5)^5, level p5"]
    assert rpsl.flagged and rpsl.computed == 7776000000
    report(14, "p=3 degrees match to 2 significant figures; p=5 rows flagged as documented")


# -- the scoreboard itself never reports a hard failure ----------------------

def test_repro_scoreboard_is_clean():
    results = repro.run_all()
    assert len(results) == 14
    failing = [r.name for r in results if r.status == "fail"]
    assert failing == []
    statuses = {r.name: r.status for r in results}
    assert statuses["degree-audit"] == "flag"
    assert statuses["order-columns"] == "xfail"
    assert statuses["surjectivity"] == "xfail"
    assert statuses["ramification"] == "xfail"

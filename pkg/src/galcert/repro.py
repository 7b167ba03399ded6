"""Full reproduction scoreboard over the bundled corpus.

Each check re-derives one family of published quantities from scratch and
compares.  Checks come out as:

    pass   recomputation agrees
    flag   recomputation disagrees in a way the audit is designed to report
           (the published-degree column) without failing the run
    xfail  a registered defect: the bundled data or the published claim is
           internally inconsistent, the recomputation is certified by an
           independent route, and the discrepancy is pinned below
    fail   anything else

The registry of data defects is the single source of truth shared with the
test suite; every entry carries the certified value that the printed one
contradicts.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import cyclofield, dickson, discbound, ffield, heckedata, intfactor, pgl2, quatalg, shimura
from .cyclofield import AbelianFieldSpec

# --------------------------------------------------------------------------
# registered defects in the bundled (printed) data
#
# (table, norm, column) -> (printed order, certified order).  Certified
# values are forced by the printed eigenvalue expansions: they reproduce
# under both the eigenvalue-ratio computation and companion-matrix
# powering, and for the degree-10 table an exhaustive sweep over all
# 5^10 generator choices showed no presentation reconciles more than 6 of
# the 11 printed orders, so the printed column cannot be made consistent.
ORDER_DEFECTS: dict[tuple[str, int, int | None], tuple[int, int]] = {
    ("f5_levelp5_g_small", 43, 5): (4, 6),
    ("f10_levelp5_g", 7, None): (4882813, 119093),
    ("f10_levelp5_g", 32, None): (13, 2441406),
    ("f10_levelp5_g", 43, None): (4882813, 375601),
    ("f10_levelp5_g", 101, None): (4882813, 1627604),
    ("f10_levelp5_g", 107, None): (1627604, 4882813),
    ("f10_levelp5_g", 149, None): (4882813, 813802),
    ("f10_levelp5_g", 151, None): (4882813, 1220703),
    ("f10_levelp5_g", 199, None): (4882813, 4882812),
}

# The degree-10 target cannot be certified surjective onto PGL2: its
# determinants all land in F_5^x, which consists of squares in F_{5^10}
# (8 divides q - 1), and q = 1 mod 4 rules out the parity argument, so
# containment in PSL2 is not excludable from this data -- in fact the
# recomputed orders all divide (q +/- 1)/2, exactly the PSL2 spectrum.
PSL2_UNRESOLVED_TABLE = "f10_levelp5_g"

# The algebra unit is negative at 8 of the 9 real embeddings (split place
# count 1), the sign pattern forced by even ramification parity; the
# claim "negative at exactly one embedding" has the inequality reversed.
UNIT_NEGATIVE_EMBEDDINGS = 8

# The degree-5 defining polynomial has discriminant 5^8 * 7^2 (index 7
# in the maximal order); only its 5-part equals the field discriminant.
DEG5_POLY_DISC = 5**8 * 7**2
FIELD_DISCRIMINANTS = {"zeta27plus": 3**22, "deg5": 5**8}


@dataclass
class CheckResult:
    name: str
    status: str  # 'pass' | 'fail' | 'flag' | 'xfail'
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


def _result(name, ok, detail="", flag=False):
    if flag:
        return CheckResult(name, "flag", detail)
    return CheckResult(name, "pass" if ok else "fail", detail)


# --------------------------------------------------------------------------

def check_order_columns() -> CheckResult:
    mismatches = []
    defects_confirmed = 0
    matched = 0
    for name in heckedata.BUNDLED_TABLES:
        table = heckedata.load_bundled(name)
        if table.kind != "field":
            continue
        for report in heckedata.verify_orders(table):
            if report.status == "skipped":
                continue
            key = (name, report.norm, report.column)
            if key in ORDER_DEFECTS:
                printed, certified = ORDER_DEFECTS[key]
                entry = next(
                    e for e in table.entries
                    if e.norm == report.norm and e.column_tag == report.column
                )
                datum = pgl2.FrobeniusDatum(
                    table.ctx, heckedata.resolve_eigenvalue(table, entry), report.norm
                )
                if (
                    report.status == "mismatch"
                    and report.computed == certified
                    and pgl2.order_expr_eval(entry.expected_order, table.ctx.q) == printed
                    and pgl2.certify_order(datum, certified)
                ):
                    defects_confirmed += 1
                else:
                    mismatches.append(f"{name}:{key} did not reproduce its registered defect")
            elif report.status == "match":
                matched += 1
            else:
                mismatches.append(f"{name} norm {report.norm} col {report.column}: {report.reason}")
    detail = f"{matched} entries match; {defects_confirmed} registered defects confirmed"
    if mismatches:
        return CheckResult("order-columns", "fail", "; ".join(mismatches))
    if defects_confirmed != len(ORDER_DEFECTS):
        return CheckResult("order-columns", "fail", "defect registry out of sync")
    return CheckResult("order-columns", "xfail" if defects_confirmed else "pass", detail)


def check_discrete_logs() -> CheckResult:
    table = heckedata.load_bundled("f27_level1")
    ctx = table.ctx
    c = ctx.gen
    problems = []
    for entry in table.entries:
        logval = entry.eigenvalue[1]
        value = c**logval
        if ffield.discrete_log(c, value) != logval:
            problems.append(f"norm {entry.norm}: log round-trip failed")
        if entry.check_poly is not None:
            if value != ctx.elem(entry.check_poly):
                problems.append(f"norm {entry.norm}: expansion cross-check failed")
            minpoly_expect = (
                -1, 1, 0, 1, 1, 1, -1, 0, 0, 0, 0, 1, 0, -1,
                -1, -1, -1, -1, 1, 1, -1, 0, 1, -1, -1, 0, 0, 1,
            )
            got = ffield.minimal_polynomial(value)
            if got != tuple(x % 3 for x in minpoly_expect):
                problems.append(f"norm {entry.norm}: minimal polynomial mismatch")
    return _result(
        "discrete-logs", not problems,
        "; ".join(problems) if problems else f"{len(table.entries)} logs round-trip",
    )


def check_primitivity() -> CheckResult:
    ctx = heckedata.load_bundled("f27_level1").ctx
    order = ffield.mult_order(ctx.gen)
    ok = order == ctx.q - 1
    # the declared generators of the other bundled fields are reported too
    extras = []
    for name in ("f5_levelp5_f", "f10_levelp5_g"):
        tctx = heckedata.load_bundled(name).ctx
        extras.append(
            f"{name}: gen order {ffield.mult_order(tctx.gen)}"
            f"{' (primitive)' if ffield.mult_order(tctx.gen) == tctx.q - 1 else ''}"
        )
    return _result("primitivity", ok, f"order(c) = {order}; " + "; ".join(extras))


def check_surjectivity() -> CheckResult:
    failures = []
    xfail_confirmed = False
    targets = [("f27_level1", None), ("f5_levelp5_f", None), ("f5_levelp5_fprime", None)]
    small = heckedata.load_bundled("f5_levelp5_g_small")
    targets += [("f5_levelp5_g_small", col) for col in small.columns]
    for name, col in targets:
        table = heckedata.load_bundled(name)
        cert = dickson.certify(heckedata.table_observations(table, col))
        if cert.conclusion != "surjective":
            failures.append(f"{name} col {col}: {cert.conclusion} ({cert.unresolved})")
    table = heckedata.load_bundled(PSL2_UNRESOLVED_TABLE)
    cert = dickson.certify(heckedata.table_observations(table))
    if cert.conclusion == "inconclusive" and cert.unresolved == ["psl2_full"]:
        xfail_confirmed = True
    else:
        failures.append(
            f"{PSL2_UNRESOLVED_TABLE}: expected inconclusive at psl2_full only, "
            f"got {cert.conclusion} {cert.unresolved}"
        )
    if failures:
        return CheckResult("surjectivity", "fail", "; ".join(failures))
    detail = (
        "8 targets surjective; degree-10 target certified up to PSL2 "
        "(all classes except psl2_full excluded; dets are squares)"
    )
    return CheckResult("surjectivity", "xfail" if xfail_confirmed else "pass", detail)


def check_dickson_soundness() -> CheckResult:
    for p in (3, 5, 7):
        ctx = ffield.fq_new(p, 1, (0, 1))
        for size, obs in dickson.subgroup_observations(p):
            cert = dickson.certify(dickson.ObservationSet(ctx, obs, assume_totally_odd=False))
            if cert.conclusion == "surjective":
                return CheckResult(
                    "dickson-soundness", "fail",
                    f"false surjective for a subgroup of PGL2(F_{p}) of size {size}",
                )
    return CheckResult("dickson-soundness", "pass", "no false conclusions over F_3, F_5, F_7")


def check_goursat_traces() -> CheckResult:
    table = heckedata.load_bundled("f5_levelp5_g_small")
    norms = heckedata.distinct_trace_norms(table)
    ok = 193 in norms and 243 not in norms
    return _result("goursat-traces", ok, f"pairwise-distinct trace norms: {norms}")


def check_eisenstein() -> CheckResult:
    table = heckedata.load_bundled("f5_level1_quad")
    reports = heckedata.eisenstein_congruence_check(table)
    passed = [r for r in reports if r.status == "pass"]
    failed = [r for r in reports if r.status == "fail"]
    ok = len(passed) == 9 and not failed
    roots = heckedata.quad_roots_mod5()
    return _result(
        "eisenstein-congruence", ok,
        f"{len(passed)} degree-one rows pass; root(s) of x^2+x-1 mod 5: {roots}",
    )


def check_areas() -> CheckResult:
    targets = [
        (AbelianFieldSpec(1), Fraction(1, 6)),
        (AbelianFieldSpec(25, (7,)), Fraction(71, 6)),
        (AbelianFieldSpec(27, (-1,)), Fraction(5833, 54)),
        (AbelianFieldSpec(49, (31,)), Fraction(275381, 6)),
    ]
    for spec, want in targets:
        if shimura.normalized_area(shimura.AreaParams(spec)) != want:
            return CheckResult("areas", "fail", f"conductor {spec.conductor}: area != {want}")
    if shimura.triangle_area(2, 3, 9) != Fraction(1, 18):
        return CheckResult("areas", "fail", "(2,3,9) triangle area")
    if shimura.triangle_area(2, 3, 7) != Fraction(1, 42):
        return CheckResult("areas", "fail", "(2,3,7) triangle area")
    if cyclofield.zeta_minus_one(AbelianFieldSpec(5, (-1,))) != Fraction(1, 30):
        return CheckResult("areas", "fail", "zeta(-1) of the real quadratic cross-check")
    return CheckResult("areas", "pass", "six calibration targets and the quadratic cross-check")


def check_signatures() -> CheckResult:
    pairs = [
        (shimura.Signature(45, ((2, 19), (3, 13), (9, 1), (27, 1))), Fraction(5833, 54)),
        (shimura.Signature(2, ((2, 5), (3, 11))), Fraction(71, 6)),
        (shimura.Signature(22864, ((2, 71), (3, 203))), Fraction(275381, 6)),
    ]
    ok = all(shimura.signature_area_check(sig, mu) for sig, mu in pairs)
    return _result("signature-identities", ok, f"{len(pairs)} Gauss-Bonnet identities")


def check_dimensions() -> CheckResult:
    cases = [
        ([1, 2, 2, 4, 16, 32], 57),
        ([3, 6, 36], 45),
        ([53, 64], 117),
        ([30, 2, 2], 34),
        ([10, 20], 30),
    ]
    ok = all(shimura.dimension_accounting(parts, total) for parts, total in cases)
    return _result("dimension-accounting", ok, f"{len(cases)} decompositions")


def check_bounds() -> CheckResult:
    expect = {
        ("p3-level1", "3^(71/18)", 2, "up"): "76.21",
        ("p3-levelp3", "limit 3^(73/18)", 3, "nearest"): "86.098",
        ("p3-levelp3", "limit 3^(73/18)", 2, "up"): "86.10",
        ("p5-levelp5", "m=5", 3, "nearest"): "135.384",
        ("p5-levelp5", "m=5", 2, "up"): "135.39",
        ("p5-levelp5-M", "m=10", 2, "up"): "135.48",
        ("p10-level1", "5^(59/20)", 2, "up"): "115.34",
        ("roberts", "125*5^(-1/12500)", 3, "nearest"): "124.984",
    }
    problems = []
    for (case_name, label, digits, direction), want in expect.items():
        case = discbound.BOUND_CASES[case_name]
        sp = next(s for lab, s, _ in case.rows if lab == label)
        got = discbound._round_decimal(sp, digits, direction)
        if str(got) != want:
            problems.append(f"{case_name}/{label}: {got} != {want}")
        if direction == "up" and sp.exponent.denominator <= 50_000:
            if not discbound.certify_direction(got, sp):
                problems.append(f"{case_name}/{label}: direction certificate failed")
    return _result("bounds", not problems, "; ".join(problems) or f"{len(expect)} decimals")


def check_splitting() -> CheckResult:
    problems = []
    for name in heckedata.BUNDLED_TABLES:
        table = heckedata.load_bundled(name)
        for entry in table.entries:
            p = entry.rational_prime
            if p and entry.norm:
                import math as _m

                if _m.gcd(p, table.spec.conductor) == 1:
                    f = cyclofield.residue_degree(table.spec, p)
                else:
                    f = cyclofield.residue_degree_ramified(table.spec, p)
                if p**f != entry.norm:
                    problems.append(f"{name}: norm {entry.norm}")
    return _result("splitting", not problems, "; ".join(problems) or "all bundled norms reproduce")


def check_ramification() -> CheckResult:
    f = quatalg.BUNDLED_FIELDS["zeta27plus"]
    u = quatalg.elem(f.minpoly, f.unit_u)
    signs = quatalg.embedding_signs(u)
    negatives = signs.count(-1)
    problems = []
    if len(signs) != 9:
        problems.append(f"embedding count {len(signs)}")
    if negatives != UNIT_NEGATIVE_EMBEDDINGS or signs.count(1) != 1:
        problems.append(f"sign vector {signs}")
    if not quatalg.is_unit(u):
        problems.append("u is not a unit")
    x0 = quatalg.elem(f.minpoly, f.order_x0)
    x1 = quatalg.elem(f.minpoly, f.order_x1)
    if not quatalg.order_generator_integral(x0, x1, u):
        problems.append("order generator not integral")
    if quatalg.poly_discriminant(f.minpoly) != FIELD_DISCRIMINANTS["zeta27plus"]:
        problems.append("degree-9 polynomial discriminant")
    if quatalg.poly_discriminant(quatalg.BUNDLED_FIELDS["deg5"].minpoly) != DEG5_POLY_DISC:
        problems.append("degree-5 polynomial discriminant")
    if problems:
        return CheckResult("ramification", "fail", "; ".join(problems))
    return CheckResult(
        "ramification", "xfail",
        f"u negative at {negatives} of 9 embeddings (one split place); generator integral; "
        f"poly discs 3^22 and 5^8*7^2 -- two registered claim defects confirmed",
    )


def check_degree_audit() -> CheckResult:
    rows = dickson.degree_audit(dickson.INTRO_DEGREE_ROWS)
    problems = []
    flagged = []
    for row in rows:
        if row.label.startswith(("9.",)):
            if not row.matches_two_sig or row.flagged:
                problems.append(f"{row.label}: expected a two-significant-figure match")
        else:
            if row.flagged:
                flagged.append(f"{row.label} (ratio {row.ratio:.3g})")
            else:
                problems.append(f"{row.label}: expected a flag, ratio {row.ratio:.3g}")
    if problems:
        return CheckResult("degree-audit", "fail", "; ".join(problems))
    return CheckResult("degree-audit", "flag", "published-degree flags: " + "; ".join(flagged))


ALL_CHECKS = [
    check_order_columns,
    check_discrete_logs,
    check_primitivity,
    check_surjectivity,
    check_dickson_soundness,
    check_goursat_traces,
    check_eisenstein,
    check_areas,
    check_signatures,
    check_dimensions,
    check_bounds,
    check_splitting,
    check_ramification,
    check_degree_audit,
]


def run_all() -> list[CheckResult]:
    results = []
    for check in ALL_CHECKS:
        t0 = time.perf_counter()
        try:
            res = check()
        except Exception as exc:  # a crashed check is a failed check
            res = CheckResult(check.__name__, "fail", f"exception: {exc}")
        res.seconds = time.perf_counter() - t0
        results.append(res)
    return results

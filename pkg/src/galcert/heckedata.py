"""Eigenvalue-table manifests: data model, parser, and verification driver.

Manifests are line-oriented UTF-8 files ('#' comments, key = value) with
sections [field] or [ring], [abelian], [level], and repeated [[entry]]
blocks.  Eigenvalues are encoded as int:k, poly:c0,c1,..., dlog:L (only
under a declared primitive generator), or quad:a,b for a + b*omega with
omega^2 + omega - 1 = 0.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace
from pathlib import Path

from . import cyclofield, dickson, ffield, pgl2
from .cyclofield import AbelianFieldSpec
from .dickson import Observation, ObservationSet
from .ffield import FqContext, FqElem
from .pgl2 import FrobeniusDatum, OrderExpr

QUADRATIC_MARKER = "omega^2+omega-1"

# omega = 2 is the unique root of x^2 + x - 1 mod 5 (it is a double root:
# the discriminant is 5, so the two candidate reductions coincide)
OMEGA_MOD5 = 2


class GctError(ValueError):
    """Manifest parse or validation error, with file position when known."""

    def __init__(self, message: str, path=None, line: int | None = None):
        loc = ""
        if path is not None:
            loc = f"{path}:"
            if line is not None:
                loc += f"{line}:"
            loc += " "
        super().__init__(f"{loc}{message}")
        self.line = line


@dataclass(frozen=True)
class QuadInt:
    """a + b*omega in Z[omega], omega^2 + omega - 1 = 0."""

    a: int
    b: int

    def __str__(self):
        return f"{self.a}{self.b:+d}w"


def reduce_quad(v: QuadInt, root: int = OMEGA_MOD5) -> int:
    """Reduction Z[omega] -> F_5 sending omega to the given root of x^2+x-1."""
    if (root * root + root - 1) % 5:
        raise ValueError(f"{root} is not a root of x^2+x-1 mod 5")
    return (v.a + root * v.b) % 5


def quad_roots_mod5() -> list[int]:
    """All roots of x^2 + x - 1 in F_5 (a single double root)."""
    return [r for r in range(5) if (r * r + r - 1) % 5 == 0]


@dataclass(frozen=True)
class TableEntry:
    norm: int
    rational_prime: int
    eigenvalue: tuple  # ('int', k) | ('poly', coeffs) | ('dlog', L) | ('quad', QuadInt)
    expected_order: OrderExpr | None = None
    column_tag: int | None = None
    check_poly: tuple | None = None


@dataclass
class HeckeTable:
    kind: str  # 'field' | 'ring'
    spec: AbelianFieldSpec
    level_label: str
    assume_totally_odd: bool
    entries: list[TableEntry]
    ctx: FqContext | None = None
    generator_primitive: bool = False
    name: str = ""

    @property
    def columns(self) -> list[int | None]:
        cols = sorted({e.column_tag for e in self.entries if e.column_tag is not None})
        return cols if cols else [None]

    def entries_in_column(self, column: int | None) -> list[TableEntry]:
        return [e for e in self.entries if e.column_tag == column]


# ---------------------------------------------------------------------------
# parsing

def _parse_bool(raw: str, path, line: int) -> bool:
    if raw in ("true", "True"):
        return True
    if raw in ("false", "False"):
        return False
    raise GctError(f"expected true/false, got {raw!r}", path, line)


def _parse_int_list(raw: str, path, line: int) -> tuple[int, ...]:
    try:
        return tuple(int(x.strip()) for x in raw.split(","))
    except ValueError as exc:
        raise GctError(f"bad integer list {raw!r}: {exc}", path, line) from None


def _parse_eigenvalue(raw: str, path, line: int) -> tuple:
    if ":" not in raw:
        raise GctError(f"eigenvalue needs a tag prefix: {raw!r}", path, line)
    tag, payload = raw.split(":", 1)
    if tag == "int":
        return ("int", int(payload))
    if tag == "dlog":
        return ("dlog", int(payload))
    if tag == "poly":
        return ("poly", _parse_int_list(payload, path, line))
    if tag == "quad":
        parts = _parse_int_list(payload, path, line)
        if len(parts) != 2:
            raise GctError("quad eigenvalue needs exactly two components", path, line)
        return ("quad", QuadInt(*parts))
    raise GctError(f"unknown eigenvalue tag {tag!r}", path, line)


def parse_table(text: str, path=None, name: str = "") -> HeckeTable:
    sections: dict[str, dict] = {}
    entries: list[dict] = []
    current: dict | None = None
    current_name = ""
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[["):
            if not line.endswith("]]"):
                raise GctError("unterminated section header", path, lineno)
            if line[2:-2].strip() != "entry":
                raise GctError(f"unknown repeated section {line!r}", path, lineno)
            current = {"_line": lineno}
            entries.append(current)
            current_name = "entry"
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise GctError("unterminated section header", path, lineno)
            current_name = line[1:-1].strip()
            if current_name not in ("field", "ring", "abelian", "level"):
                raise GctError(f"unknown section [{current_name}]", path, lineno)
            if current_name in sections:
                raise GctError(f"duplicate section [{current_name}]", path, lineno)
            current = {"_line": lineno}
            sections[current_name] = current
            continue
        if "=" not in line:
            raise GctError(f"expected key = value, got {line!r}", path, lineno)
        if current is None:
            raise GctError("key outside any section", path, lineno)
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key in current:
            raise GctError(f"duplicate key {key!r}", path, lineno)
        current[key] = (raw, lineno)

    if ("field" in sections) == ("ring" in sections):
        raise GctError("manifest needs exactly one of [field] or [ring]", path)
    if "abelian" not in sections:
        raise GctError("missing [abelian] section", path)
    if "level" not in sections:
        raise GctError("missing [level] section", path)

    def take(section: dict, key: str, required=True):
        if key not in section:
            if required:
                raise GctError(f"missing key {key!r}", path, section.get("_line"))
            return None, section.get("_line")
        return section[key]

    ab = sections["abelian"]
    conductor_raw, cl = take(ab, "conductor")
    subgroup_raw, sl = take(ab, "subgroup", required=False)
    try:
        spec = AbelianFieldSpec(
            int(conductor_raw),
            _parse_int_list(subgroup_raw, path, sl) if subgroup_raw else (),
        )
    except cyclofield.CyclotomicError as exc:
        raise GctError(str(exc), path, cl) from None

    lv = sections["level"]
    label_raw, _ = take(lv, "label")
    label = label_raw.strip('"')
    odd_raw, ol = take(lv, "assume_totally_odd", required=False)
    assume_odd = _parse_bool(odd_raw, path, ol) if odd_raw else False

    ctx = None
    generator_primitive = False
    if "field" in sections:
        fs = sections["field"]
        p_raw, pl = take(fs, "p")
        n_raw, nl = take(fs, "n")
        mod_raw, ml = take(fs, "modulus")
        gp_raw, gl = take(fs, "generator_primitive", required=False)
        generator_primitive = _parse_bool(gp_raw, path, gl) if gp_raw else False
        try:
            ctx = ffield.fq_new(int(p_raw), int(n_raw), _parse_int_list(mod_raw, path, ml))
        except ffield.FieldError as exc:
            raise GctError(f"invalid field spec: {exc}", path, ml) from None
        kind = "field"
    else:
        rs = sections["ring"]
        quad_raw, ql = take(rs, "quadratic")
        if quad_raw != QUADRATIC_MARKER:
            raise GctError(f"unsupported quadratic ring {quad_raw!r}", path, ql)
        kind = "ring"

    parsed_entries = []
    for ent in entries:
        eline = ent["_line"]
        norm_raw, nl = take(ent, "norm")
        prime_raw, pl = take(ent, "prime")
        eig_raw, el = take(ent, "eigenvalue")
        order_raw, ol2 = take(ent, "expected_order", required=False)
        col_raw, _ = take(ent, "column", required=False)
        check_raw, chl = take(ent, "check_poly", required=False)
        eigenvalue = _parse_eigenvalue(eig_raw, path, el)
        if eigenvalue[0] == "dlog" and not generator_primitive:
            raise GctError("dlog eigenvalue without generator_primitive = true", path, el)
        if eigenvalue[0] == "quad" and kind != "ring":
            raise GctError("quad eigenvalue in a field manifest", path, el)
        if eigenvalue[0] in ("poly", "dlog") and kind != "field":
            raise GctError(f"{eigenvalue[0]} eigenvalue in a ring manifest", path, el)
        order = None
        if order_raw is not None:
            try:
                order = OrderExpr.parse(order_raw)
            except pgl2.OrderError as exc:
                raise GctError(str(exc), path, ol2) from None
        parsed_entries.append(
            TableEntry(
                norm=int(norm_raw),
                rational_prime=int(prime_raw),
                eigenvalue=eigenvalue,
                expected_order=order,
                column_tag=int(col_raw) if col_raw is not None else None,
                check_poly=_parse_int_list(check_raw, path, chl) if check_raw else None,
            )
        )
        _validate_norm(spec, parsed_entries[-1], path, eline)

    table = HeckeTable(
        kind=kind,
        spec=spec,
        level_label=label,
        assume_totally_odd=assume_odd,
        entries=parsed_entries,
        ctx=ctx,
        generator_primitive=generator_primitive,
        name=name,
    )
    return table


def _validate_norm(spec: AbelianFieldSpec, entry: TableEntry, path, line: int) -> None:
    p, norm = entry.rational_prime, entry.norm
    from . import intfactor

    if not intfactor.is_prime(p):
        raise GctError(f"{p} is not prime", path, line)
    if math.gcd(p, spec.conductor) == 1:
        f = cyclofield.residue_degree(spec, p)
    else:
        f = cyclofield.residue_degree_ramified(spec, p)
    if p**f != norm:
        raise GctError(
            f"inconsistent norm {norm} for prime {p}: splitting gives {p}^{f}", path, line
        )


def load_table(path) -> HeckeTable:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GctError(f"cannot read manifest: {exc}", path) from None
    return parse_table(text, path=path, name=path.stem)


def serialize_table(table: HeckeTable) -> str:
    lines = []
    if table.kind == "field":
        lines.append("[field]")
        lines.append(f"p = {table.ctx.p}")
        lines.append(f"n = {table.ctx.n}")
        lines.append("modulus = " + ",".join(str(c) for c in table.ctx.modulus))
        lines.append(f"generator_primitive = {'true' if table.generator_primitive else 'false'}")
    else:
        lines.append("[ring]")
        lines.append(f"quadratic = {QUADRATIC_MARKER}")
    lines.append("[abelian]")
    lines.append(f"conductor = {table.spec.conductor}")
    if table.spec.subgroup:
        lines.append("subgroup = " + ",".join(str(g) for g in table.spec.subgroup))
    lines.append("[level]")
    lines.append(f'label = "{table.level_label}"')
    lines.append(f"assume_totally_odd = {'true' if table.assume_totally_odd else 'false'}")
    for e in table.entries:
        lines.append("[[entry]]")
        lines.append(f"norm = {e.norm}")
        lines.append(f"prime = {e.rational_prime}")
        tag, payload = e.eigenvalue
        if tag == "int" or tag == "dlog":
            lines.append(f"eigenvalue = {tag}:{payload}")
        elif tag == "poly":
            lines.append("eigenvalue = poly:" + ",".join(str(c) for c in payload))
        else:
            lines.append(f"eigenvalue = quad:{payload.a},{payload.b}")
        if e.expected_order is not None:
            lines.append(f"expected_order = {e.expected_order}")
        if e.column_tag is not None:
            lines.append(f"column = {e.column_tag}")
        if e.check_poly is not None:
            lines.append("check_poly = " + ",".join(str(c) for c in e.check_poly))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# resolution and verification

def resolve_eigenvalue(table: HeckeTable, entry: TableEntry) -> FqElem:
    """The eigenvalue as an element of the table's field."""
    if table.ctx is None:
        raise GctError("ring-table eigenvalues do not resolve to field elements")
    tag, payload = entry.eigenvalue
    if tag == "int":
        return table.ctx.from_int(payload)
    if tag == "poly":
        return table.ctx.elem(payload)
    if tag == "dlog":
        return table.ctx.gen ** payload
    raise GctError(f"cannot resolve eigenvalue tag {tag!r}")


def entry_is_ramified(table: HeckeTable, entry: TableEntry) -> bool:
    if entry.expected_order is not None and entry.expected_order.is_ramified:
        return True
    return math.gcd(entry.rational_prime, table.spec.conductor) != 1


@dataclass
class EntryReport:
    norm: int
    column: int | None
    status: str  # 'match' | 'mismatch' | 'skipped' | 'error'
    computed: int | None = None
    expected: str = ""
    kind: str = ""
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("match", "skipped")


def verify_entry(table: HeckeTable, entry: TableEntry) -> EntryReport:
    expected_text = str(entry.expected_order) if entry.expected_order else ""
    if entry_is_ramified(table, entry):
        return EntryReport(
            entry.norm, entry.column_tag, "skipped", expected=expected_text,
            reason="ramified entry carries no order claim",
        )
    if entry.expected_order is None:
        return EntryReport(
            entry.norm, entry.column_tag, "skipped", expected="",
            reason="no expected order recorded",
        )
    trace = resolve_eigenvalue(table, entry)
    if entry.check_poly is not None and trace != table.ctx.elem(entry.check_poly):
        return EntryReport(
            entry.norm, entry.column_tag, "mismatch", expected=expected_text,
            reason="cross-check polynomial disagrees with the eigenvalue encoding",
        )
    datum = FrobeniusDatum(table.ctx, trace, entry.norm)
    result = pgl2.frobenius_order(datum)
    try:
        expected_value = pgl2.order_expr_eval(entry.expected_order, table.ctx.q)
    except pgl2.OrderError as exc:
        return EntryReport(
            entry.norm, entry.column_tag, "error", computed=result.order,
            expected=expected_text, kind=result.kind, reason=str(exc),
        )
    status = "match" if result.order == expected_value else "mismatch"
    reason = "" if status == "match" else (
        f"computed {result.order} ({result.kind}) but table says {expected_value}"
    )
    return EntryReport(
        entry.norm, entry.column_tag, status, computed=result.order,
        expected=expected_text, kind=result.kind, reason=reason,
    )


def verify_orders(table: HeckeTable, threads: int = 1) -> list[EntryReport]:
    """Recompute every entry's projective Frobenius order and compare."""
    if table.kind != "field":
        raise GctError("verify_orders needs a field table")
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda e: verify_entry(table, e), table.entries))
    return [verify_entry(table, e) for e in table.entries]


def conjugate_expand(table: HeckeTable, entry: TableEntry, i: int) -> TableEntry:
    """The entry at the i-th Galois conjugate prime: eigenvalue Frobenius-twisted,
    expected order unchanged."""
    trace = resolve_eigenvalue(table, entry)
    deg = table.spec.degree
    n = table.ctx.n
    if n % deg == 0:
        scale = n // deg
    elif n == 1:
        scale = 0
    else:
        raise GctError(f"no compatible Galois action: degree {deg} vs extension {n}")
    twisted = ffield.frobenius_power(trace, scale * i)
    return replace(entry, eigenvalue=("poly", twisted.coeffs), check_poly=None)


def table_observations(table: HeckeTable, column: int | None = None) -> ObservationSet:
    """Order/det-class observations for the certifier, recomputed from scratch."""
    if table.kind != "field":
        raise GctError("observations need a field table")
    obs = []
    for entry in table.entries_in_column(column):
        if entry_is_ramified(table, entry):
            continue
        trace = resolve_eigenvalue(table, entry)
        datum = FrobeniusDatum(table.ctx, trace, entry.norm)
        result = pgl2.frobenius_order(datum)
        obs.append(
            Observation(
                norm=entry.norm,
                order=result.order,
                ambiguous=result.ambiguous,
                det_is_square=ffield.is_square(datum.det),
            )
        )
    return ObservationSet(table.ctx, obs, assume_totally_odd=table.assume_totally_odd)


def distinct_trace_norms(table: HeckeTable) -> list[int]:
    """Norms whose traces are pairwise distinct across the table's columns."""
    cols = table.columns
    if len(cols) < 2:
        return []
    out = []
    for norm in sorted({e.norm for e in table.entries}):
        rows = [e for e in table.entries if e.norm == norm]
        if len(rows) != len(cols):
            continue
        traces = [resolve_eigenvalue(table, e) for e in rows]
        if dickson.distinct_traces(traces):
            out.append(norm)
    return out


@dataclass
class CongruenceReport:
    norm: int
    status: str  # 'pass' | 'fail' | 'skipped'
    lhs: int | None = None
    rhs: int | None = None
    reason: str = ""


def eisenstein_congruence_check(table: HeckeTable, norms=None) -> list[CongruenceReport]:
    """p * abar_p = p^3 (p + 1) mod 5 at unramified degree-one primes,
    under the reduction omega -> 2."""
    if table.kind != "ring":
        raise GctError("the congruence check applies to quadratic-ring tables")
    out = []
    for entry in table.entries:
        if norms is not None and entry.norm not in norms:
            continue
        p = entry.rational_prime
        if math.gcd(p, table.spec.conductor) != 1:
            out.append(CongruenceReport(entry.norm, "skipped", reason="ramified prime"))
            continue
        if entry.norm != p:
            out.append(CongruenceReport(entry.norm, "skipped", reason="residue degree > 1"))
            continue
        abar = reduce_quad(entry.eigenvalue[1])
        lhs = p * abar % 5
        rhs = p**3 * (p + 1) % 5
        out.append(
            CongruenceReport(entry.norm, "pass" if lhs == rhs else "fail", lhs=lhs, rhs=rhs)
        )
    return out


# ---------------------------------------------------------------------------
# bundled data

def data_dir() -> Path:
    override = os.environ.get("GALCERT_DATA")
    if override:
        return Path(override)
    return Path(__file__).parent / "tables"


BUNDLED_TABLES = (
    "f27_level1",
    "f5_level1_quad",
    "f5_levelp5_f",
    "f5_levelp5_fprime",
    "f5_levelp5_g_small",
    "f10_levelp5_g",
)

# Residue-degree inventories of the non-Eisenstein maximal ideals at the two
# levels where only summary data is bundled (no per-prime eigenvalues exist
# to verify against): rows of (inertial degree, ideal count, Galois action
# of the base-field automorphism sigma).  Descriptive data only.
MAXIMAL_IDEAL_INVENTORIES = {
    "f27_levelp3": (
        (1, 9, "sigma permutes"),
        (18, 2, "sigma fixes"),
        (36, 1, "sigma fixes"),
    ),
    "f10_level1": (
        (2, 10, "sigma permutes"),
        (5, 2, "sigma permutes, sigma^2 fixes"),
        (10, 1, "sigma fixes"),
        (15, 1, "sigma^2 fixes, sigma does not"),
        (25, 2, "sigma permutes, sigma^2 fixes"),
        (40, 1, "sigma fixes"),
    ),
}


def bundled_path(name: str) -> Path:
    return data_dir() / f"{name}.gct"


def load_bundled(name: str) -> HeckeTable:
    return load_table(bundled_path(name))

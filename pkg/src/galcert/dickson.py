"""Surjectivity certificates onto PGL2(F_q) from order observations.

Every proper subgroup of PGL2(F_q) falls into one of the classical
classes: cyclic, dihedral, affine (Borel), the exceptional groups A4, S4,
A5, subfield groups PSL2/PGL2(F_{p^m}) for m | n, and PSL2(F_q) itself.
The certifier excludes each class with an explicit witness drawn from the
observations, or reports the classes it cannot exclude.  It argues only
from element orders and determinant square classes, so it is sound but
deliberately incomplete.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from itertools import combinations_with_replacement

from .ffield import FqContext


@dataclass(frozen=True)
class Observation:
    norm: int
    order: int
    ambiguous: bool = False
    det_is_square: bool = True


@dataclass
class ObservationSet:
    ctx: FqContext
    observations: list[Observation]
    assume_totally_odd: bool = False

    def __post_init__(self):
        for o in self.observations:
            if o.order < 1:
                raise ValueError("orders must be positive")


@dataclass
class Exclusion:
    class_name: str
    witness_norms: list[int]
    reason: str


@dataclass
class SurjectivityCertificate:
    conclusion: str  # 'surjective' | 'inconclusive'
    exclusions: list[Exclusion]
    unresolved: list[str]

    def to_json(self) -> dict:
        return {
            "conclusion": self.conclusion,
            "exclusions": [
                {"class": e.class_name, "witness_norms": e.witness_norms, "reason": e.reason}
                for e in self.exclusions
            ],
            "unresolved": self.unresolved,
        }


def dickson_classes(p: int, n: int) -> list[str]:
    """Proper-subgroup classes of PGL2(F_{p^n}) the certifier must exclude."""
    classes = ["cyclic", "dihedral", "borel", "A4", "S4", "A5"]
    for m in range(1, n):
        if n % m == 0:
            classes.append(f"psl2_subfield({m})")
            classes.append(f"pgl2_subfield({m})")
    classes.append("psl2_full")
    return classes


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def certify(obs: ObservationSet) -> SurjectivityCertificate:
    """Exclude every Dickson class or report the unresolved ones."""
    if not obs.observations:
        raise ValueError("empty observation set")
    ctx = obs.ctx
    p, n, q = ctx.p, ctx.n, ctx.q
    unamb = [o for o in obs.observations if not o.ambiguous]
    exclusions: list[Exclusion] = []
    unresolved: list[str] = []

    def exclude(name: str, norms: list[int], reason: str) -> None:
        exclusions.append(Exclusion(name, norms, reason))

    # exceptional groups: a single order outside the group's spectrum
    for name, allowed in (("A4", {1, 2, 3}), ("S4", {1, 2, 3, 4}), ("A5", {1, 2, 3, 5})):
        hit = next((o for o in unamb if o.order not in allowed), None)
        if hit is None:
            unresolved.append(name)
        else:
            exclude(name, [hit.norm], f"order {hit.order} outside the {name} spectrum {sorted(allowed)}")

    # cyclic: all orders would divide one of q-1, q+1, p
    contributors = [o for o in unamb if o.order > 1]
    big_l = _lcm(o.order for o in contributors)
    if big_l > 1 and (q - 1) % big_l and (q + 1) % big_l and p % big_l:
        exclude(
            "cyclic",
            [o.norm for o in contributors],
            f"lcm {big_l} of the orders > 1 divides none of q-1, q+1, p",
        )
    else:
        unresolved.append("cyclic")

    # dihedral: orders > 2 lie in the rotation subgroup, of order dividing q-1 or q+1
    rot = [o for o in unamb if o.order > 2]
    rot_l = _lcm(o.order for o in rot)
    if rot_l > 1 and (q - 1) % rot_l and (q + 1) % rot_l:
        exclude(
            "dihedral",
            [o.norm for o in rot],
            f"lcm {rot_l} of the orders > 2 divides neither q-1 nor q+1",
        )
    else:
        unresolved.append("dihedral")

    # borel / affine
    hit = next((o for o in unamb if (p * (q - 1)) % o.order), None)
    if hit is not None:
        exclude("borel", [hit.norm], f"order {hit.order} does not divide p*(q-1)")
    else:
        unresolved.append("borel")

    # subfield groups
    for m in range(1, n):
        if n % m:
            continue
        q2 = p**m
        hit = next(
            (o for o in unamb if p % o.order and (q2 - 1) % o.order and (q2 + 1) % o.order),
            None,
        )
        for name in (f"psl2_subfield({m})", f"pgl2_subfield({m})"):
            if hit is not None:
                exclude(
                    name,
                    [hit.norm],
                    f"order {hit.order} divides none of p, {q2}-1, {q2}+1",
                )
            else:
                unresolved.append(name)

    # PSL2(F_q): needs a nonsquare determinant, or oddness with -1 nonsquare
    nonsq = next((o for o in obs.observations if not o.det_is_square), None)
    if nonsq is not None:
        exclude("psl2_full", [nonsq.norm], f"determinant of norm {nonsq.norm} is a nonsquare in F_q")
    elif obs.assume_totally_odd and q % 4 == 3:
        exclude("psl2_full", [], "totally odd and -1 is a nonsquare (q = 3 mod 4)")
    else:
        unresolved.append("psl2_full")

    conclusion = "surjective" if not unresolved else "inconclusive"
    return SurjectivityCertificate(conclusion, exclusions, unresolved)


# ---------------------------------------------------------------------------
# exact group orders and the published-degree audit

def pgl2_group_order(q: int) -> int:
    if q % 2 == 0:
        raise ValueError("odd q expected")
    return q**3 - q


def psl2_group_order(q: int) -> int:
    if q % 2 == 0:
        raise ValueError("odd q expected")
    return (q**3 - q) // 2


@dataclass
class GroupOrderAudit:
    label: str
    multiplier: int
    family: str  # 'pgl2' | 'psl2'
    q: int
    power: int = 1
    claimed: str = ""

    @property
    def computed_degree(self) -> int:
        base = pgl2_group_order(self.q) if self.family == "pgl2" else psl2_group_order(self.q)
        return self.multiplier * base**self.power


@dataclass
class AuditRow:
    label: str
    computed: int
    claimed: Fraction
    ratio: float
    two_sig_repr: str
    matches_two_sig: bool
    flagged: bool


def round_two_significant(value: int) -> str:
    """Round a positive integer to two significant digits, half away from zero."""
    digits = len(str(value))
    if digits <= 2:
        return str(value)
    shift = 10 ** (digits - 2)
    lead = (value + shift // 2) // shift
    if lead >= 100:  # rounding carried into a new digit
        lead //= 10
        digits += 1
    return f"{lead // 10}.{lead % 10}e{digits - 1}"


def _claimed_fraction(text: str) -> Fraction:
    return Fraction(Decimal(text.replace(" ", "")))


def degree_audit(entries: list[GroupOrderAudit]) -> list[AuditRow]:
    """Exact degrees against published approximations; flags ratios off by >2x."""
    rows = []
    for ent in entries:
        computed = ent.computed_degree
        claimed = _claimed_fraction(ent.claimed)
        ratio = float(Fraction(computed) / claimed)
        two_sig = round_two_significant(computed)
        matches = _claimed_fraction(two_sig) == _claimed_fraction(ent.claimed)
        rows.append(
            AuditRow(
                label=ent.label,
                computed=computed,
                claimed=claimed,
                ratio=ratio,
                two_sig_repr=two_sig,
                matches_two_sig=matches,
                flagged=not (0.5 <= ratio <= 2.0),
            )
        )
    return rows


INTRO_DEGREE_ROWS = [
    GroupOrderAudit("9.PGL2(3^27), level 1", 9, "pgl2", 3**27, 1, "4.0e39"),
    GroupOrderAudit("9.PGL2(3^18), level p3", 9, "pgl2", 3**18, 1, "5.2e26"),
    GroupOrderAudit("9.PGL2(3^36), level p3", 9, "pgl2", 3**36, 1, "3.0e52"),
    GroupOrderAudit("5.PGL2(5^5), level p5", 5, "pgl2", 5**5, 1, "1.5e12"),
    GroupOrderAudit("10.PSL2(5)^5, level p5", 10, "psl2", 5, 5, "3600"),
    GroupOrderAudit("5.PGL2(5^10), level p5", 5, "pgl2", 5**10, 1, "4.6e20"),
]


def distinct_traces(values: list) -> bool:
    """True iff the listed trace values are pairwise distinct."""
    if not values:
        raise ValueError("empty trace list")
    return len(set(values)) == len(values)


# ---------------------------------------------------------------------------
# brute-force subgroup oracle over small prime fields
#
# Subgroups of PGL2(F_p) for prime p are all 2-generated (each class in the
# classification above is), so closing pairs of cyclic subgroups under
# multiplication enumerates every subgroup.

def pgl2_elements(p: int) -> list[tuple[int, int, int, int]]:
    """Canonical projective representatives: first nonzero entry scaled to 1."""
    elems = set()
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 0:
                        continue
                    m = (a, b, c, d)
                    lead = next(x for x in m if x)
                    inv = pow(lead, -1, p)
                    elems.add(tuple(x * inv % p for x in m))
    return sorted(elems)


def _pgl2_table(p: int):
    elems = pgl2_elements(p)
    index = {m: i for i, m in enumerate(elems)}
    n = len(elems)
    table = [[0] * n for _ in range(n)]
    for i, (a11, a12, a21, a22) in enumerate(elems):
        for j, (b11, b12, b21, b22) in enumerate(elems):
            m = (
                (a11 * b11 + a12 * b21) % p,
                (a11 * b12 + a12 * b22) % p,
                (a21 * b11 + a22 * b21) % p,
                (a21 * b12 + a22 * b22) % p,
            )
            lead = next(x for x in m if x)
            inv = pow(lead, -1, p)
            table[i][j] = index[tuple(x * inv % p for x in m)]
    return elems, table


def _closure(gens, table, identity) -> frozenset:
    seen = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            row = table[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return frozenset(seen)


def enumerate_pgl2_subgroups(p: int):
    """All subgroups of PGL2(F_p), as frozensets of element indices, plus the
    element list and multiplication table used to build them."""
    elems, table = _pgl2_table(p)
    identity = elems.index((1, 0, 0, 1))
    cyclic = {}
    for g in range(len(elems)):
        sub = _closure([g], table, identity)
        cyclic.setdefault(sub, g)
    subgroups = set(cyclic)
    reps = list(cyclic.items())
    for (s1, g1), (s2, g2) in combinations_with_replacement(reps, 2):
        if s1 <= s2 or s2 <= s1:
            continue
        subgroups.add(_closure([g1, g2], table, identity))
    return sorted(subgroups, key=lambda s: (len(s), sorted(s))), elems, table


def subgroup_observations(p: int):
    """Order/det-class profiles of every proper subgroup of PGL2(F_p).

    Yields (size, observations) with one synthetic observation per element,
    deduplicated by profile.  Orders come from direct powering, determinant
    square classes from canonical matrix lifts.
    """
    subgroups, elems, table = enumerate_pgl2_subgroups(p)
    identity = elems.index((1, 0, 0, 1))
    full = max(len(s) for s in subgroups)
    orders = {}
    for i in range(len(elems)):
        k, cur = 1, i
        while cur != identity:
            cur = table[cur][i]
            k += 1
        orders[i] = k
    squares = {x * x % p for x in range(1, p)}
    seen_profiles = set()
    out = []
    for sub in subgroups:
        if len(sub) == full:
            continue
        profile = tuple(
            sorted(
                (orders[i], (elems[i][0] * elems[i][3] - elems[i][1] * elems[i][2]) % p in squares)
                for i in sub
            )
        )
        if profile in seen_profiles:
            continue
        seen_profiles.add(profile)
        observations = [
            Observation(norm=k + 1, order=o, ambiguous=False, det_is_square=sq)
            for k, (o, sq) in enumerate(profile)
        ]
        out.append((len(sub), observations))
    return out

"""Search and reporting routines behind the command-line front end.

Covers sequences of groups whose normality degrees approach a rational
target, witness searches for degrees of the form a/(a+1), formula-vs-brute
verification grids, limit tables for the structured families, and a JSON
Lines result ledger.
"""

from __future__ import annotations

import json
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import TextIO

from . import __version__
from . import formulas as F
from .degrees import DegreeReport, ndeg_brute
from .errors import ConstraintError
from .formulas import Family, family_limit, formula_counts, ndeg_family
from .groups import build
from .lattice import enumerate_subgroups
from .numtheory import is_prime, nth_primes

# ---------------------------------------------------------------------------
# sequences approaching a rational target

@dataclass(frozen=True)
class DensitySequenceStep:
    """One step of a group sequence: ndeg is the product over factor_specs."""

    index: int
    factor_specs: tuple[str, ...]
    ndeg: Fraction
    target: Fraction
    gap: Fraction


def density_sequence(target: Fraction, steps: int = 20) -> list[DensitySequenceStep]:
    """Groups whose normality degrees approach target from above, gap shrinking.

    Interior targets a/b use direct products of modular groups M(p, a+i+1)
    over i = 1..b-a with pairwise distinct primes (step t, factor i takes
    the prime of index t*(b-a)+i-1), so the coprime product formula applies
    and the step value telescopes toward a/b.  Targets 0 and 1 use the
    dihedral 2-group and modular 3-group sequences instead.
    """
    if not 0 <= target <= 1:
        raise ConstraintError("density target must lie in [0, 1]", f"target={target}")
    if steps < 1:
        raise ConstraintError("density sequence needs at least one step", f"steps={steps}")
    out: list[DensitySequenceStep] = []
    if target == 0:
        for t in range(1, steps + 1):
            nd = ndeg_family(Family.DIHEDRAL, 2, t + 2)
            out.append(DensitySequenceStep(t, (f"Dih({2 ** (t + 1)})",),
                                           nd, target, nd))
        return out
    if target == 1:
        for t in range(1, steps + 1):
            nd = ndeg_family(Family.MODULAR, 3, t + 2)
            out.append(DensitySequenceStep(t, (f"M(3,{t + 2})",),
                                           nd, target, 1 - nd))
        return out
    a, b = target.numerator, target.denominator
    width = b - a
    for t in range(1, steps + 1):
        primes = nth_primes(t * width, width)
        specs = []
        nd = Fraction(1)
        for i, p in enumerate(primes, start=1):
            specs.append(f"M({p},{a + i + 1})")
            nd *= ndeg_family(Family.MODULAR, p, a + i + 1)
        out.append(DensitySequenceStep(t, tuple(specs), nd, target, nd - target))
    return out


# ---------------------------------------------------------------------------
# witnesses for normality degree a/(a+1)

def mpn_witnesses(a: int) -> list[str]:
    """Modular-group specs M(q, n) with normality degree exactly a/(a+1).

    For a prime q with (q+1) | (a+3) the unique candidate exponent is
    n = q*(a+3)/(q+1) - 1; candidates failing the family constraints are
    discarded and survivors are verified exactly.
    """
    if a < 1:
        raise ConstraintError("witness search requires a >= 1", f"a={a}")
    target = Fraction(a, a + 1)
    found = []
    for q in range(2, a + 3):
        if not is_prime(q) or (a + 3) % (q + 1):
            continue
        n = q * (a + 3) // (q + 1) - 1
        if n < 3 or (q == 2 and n < 4):
            continue
        if ndeg_family(Family.MODULAR, q, n) == target:
            found.append((q ** n, f"M({q},{n})"))
    return [spec for _, spec in sorted(found)]


_CATALOG_RANK = {"C": 0, "EA": 1, "Sym": 2, "Q": 3, "SD": 4,
                 "M": 5, "Dih": 6, "SDP": 7, "ZM": 8}
_EA_ORDER_LIMIT = 32  # elementary abelian lattices explode far below the cap

_SYM_ORDERS = {1: 1, 2: 2, 3: 6, 4: 24, 5: 120}


def catalog_specs(order_cap: int) -> list[tuple[str, int]]:
    """Deterministic (spec, order) catalog of single-constructor groups up to order_cap."""
    if order_cap < 1:
        raise ConstraintError("catalog cap must be positive", f"order_cap={order_cap}")
    entries: list[tuple[int, int, tuple[int, ...], str]] = []

    def add(name: str, params: tuple[int, ...], order: int) -> None:
        entries.append((order, _CATALOG_RANK[name], params,
                        f"{name}({','.join(map(str, params))})"))

    for n in range(1, order_cap + 1):
        add("C", (n,), n)
    for p in range(2, _EA_ORDER_LIMIT + 1):
        if not is_prime(p):
            continue
        k = 2
        while p ** k <= min(order_cap, _EA_ORDER_LIMIT):
            add("EA", (p, k), p ** k)
            k += 1
    for n in range(3, 6):
        if _SYM_ORDERS[n] <= order_cap:
            add("Sym", (n,), _SYM_ORDERS[n])
    for n in range(3, order_cap.bit_length()):
        if 2 ** n <= order_cap:
            add("Q", (n,), 2 ** n)
        if n >= 4 and 2 ** n <= order_cap:
            add("SD", (n,), 2 ** n)
    for p in range(2, order_cap):
        if not is_prime(p):
            continue
        n = 4 if p == 2 else 3
        while p ** n <= order_cap:
            add("M", (p, n), p ** n)
            n += 1
        if p ** 3 > order_cap and p > 2:
            break
    for n in range(3, order_cap // 2 + 1):
        add("Dih", (n,), 2 * n)
    for p in range(2, order_cap // 2 + 1):
        if not is_prime(p):
            continue
        for n in range(2, order_cap // p + 1):
            if n % p == 0:
                continue
            for k0 in range(2, n):
                if (math.gcd(k0, n) == 1 and pow(k0, p, n) == 1 % n
                        and k0 % n != 1):
                    add("SDP", (p, n, k0), p * n)
    for m in range(3, order_cap + 1, 2):
        for n in range(2, order_cap // m + 1):
            if math.gcd(m, n) != 1:
                continue
            for r in range(2, m):
                if (math.gcd(r, m) == 1 and math.gcd(m, r - 1) == 1
                        and pow(r, n, m) == 1):
                    add("ZM", (m, n, r), m * n)
    entries.sort()
    return [(spec, order) for order, _, _, spec in entries]


def catalog_ndeg(spec: str, order: int, cap: int) -> Fraction:
    """Normality degree of a catalog entry: closed form when backed, else brute force."""
    counts = formula_counts(spec)
    if counts is not None:
        return Fraction(counts[1], counts[0])
    return ndeg_brute(build(spec), spec_text=spec, cap=max(cap, order)).ndeg


@dataclass(frozen=True)
class WitnessRow:
    """Search outcome for one target a/(a+1)."""

    a: int
    target: Fraction
    criterion_witness: str | None
    catalog_witness: str | None


def conjecture_witness_rows(a_max: int, order_cap: int) -> list[WitnessRow]:
    """For each a <= a_max, hunt a group with normality degree a/(a+1) two ways."""
    if a_max < 1:
        raise ConstraintError("witness table requires a_max >= 1", f"a_max={a_max}")
    catalog = catalog_specs(order_cap)
    degree_cache: dict[str, Fraction] = {}
    rows = []
    for a in range(1, a_max + 1):
        target = Fraction(a, a + 1)
        crit = mpn_witnesses(a)
        hit = None
        for spec, order in catalog:
            if spec not in degree_cache:
                degree_cache[spec] = catalog_ndeg(spec, order, order_cap)
            if degree_cache[spec] == target:
                hit = spec
                break
        rows.append(WitnessRow(a, target, crit[0] if crit else None, hit))
    return rows


# ---------------------------------------------------------------------------
# verification grids: closed forms against the brute-force oracle

@dataclass(frozen=True)
class VerifyRow:
    """One formula-vs-brute comparison."""

    family: str
    params: str
    check: str
    formula_value: int
    brute_value: int

    @property
    def ok(self) -> bool:
        return self.formula_value == self.brute_value


VERIFY_FAMILIES = ("sdp", "dihedral", "zm", "mpn", "dihedral2n",
                   "quaternion2n", "semidihedral2n", "abelian2")

_DEFAULT_RANGES = {
    "sdp": {"p": (2, 5), "n": (2, 40)},
    "dihedral": {"n": (3, 60)},
    "zm": {"mn": (2, 300)},
    "mpn": {"p": (2, 7), "n": (3, 9)},
    "dihedral2n": {"n": (2, 9)},
    "quaternion2n": {"n": (3, 9)},
    "semidihedral2n": {"n": (4, 9)},
    "abelian2": {"p": (2, 3), "asum": (2, 9)},
}


def default_ranges(family: str) -> dict[str, tuple[int, int]]:
    """Built-in parameter ranges for a verification family."""
    if family not in _DEFAULT_RANGES:
        raise ConstraintError("unknown verification family", family)
    return dict(_DEFAULT_RANGES[family])


def verify_grid(family: str, ranges: dict[str, tuple[int, int]] | None = None,
                cap: int = 512) -> tuple[list[VerifyRow], int]:
    """Run one family's formula-vs-brute grid; returns (rows, skipped count)."""
    base = default_ranges(family)
    if ranges:
        for key in ranges:
            if key not in base:
                raise ConstraintError(
                    f"family {family} accepts ranges {sorted(base)}", key)
        base.update(ranges)
    rows: list[VerifyRow] = []
    skipped = 0

    def brute_counts(spec: str, order: int) -> tuple[int, int] | None:
        nonlocal skipped
        if order > cap:
            skipped += 1
            return None
        lat = enumerate_subgroups(build(spec), cap=cap)
        return len(lat.subgroups), lat.normal_count

    def compare(params: str, spec: str, order: int,
                formula: tuple[int, int]) -> None:
        got = brute_counts(spec, order)
        if got is None:
            return
        rows.append(VerifyRow(family, params, "lattice_size", formula[0], got[0]))
        rows.append(VerifyRow(family, params, "normal_count", formula[1], got[1]))

    if family == "sdp":
        for p in _range(base["p"]):
            if not is_prime(p):
                continue
            for n in _range(base["n"]):
                if n < 2 or n % p == 0:
                    continue
                for k0 in range(2, n):
                    if (math.gcd(k0, n) != 1 or pow(k0, p, n) != 1 % n
                            or k0 % n == 1):
                        continue
                    formula = (F.lattice_size_semidirect(p, n, k0),
                               F.normal_count_semidirect(p, n, k0))
                    compare(f"p={p},n={n},k0={k0}", f"SDP({p},{n},{k0})",
                            p * n, formula)
    elif family == "dihedral":
        for n in _range(base["n"]):
            if n < 3:
                continue
            compare(f"n={n}", f"Dih({n})", 2 * n, F.dihedral_counts(n))
    elif family == "zm":
        lo, hi = base["mn"]
        for m in range(3, hi + 1, 2):
            for n in range(2, hi // m + 1):
                if m * n < lo or math.gcd(m, n) != 1:
                    continue
                for r in range(2, m):
                    if (math.gcd(r, m) == 1 and math.gcd(m, r - 1) == 1
                            and pow(r, n, m) == 1):
                        compare(f"m={m},n={n},r={r}", f"ZM({m},{n},{r})",
                                m * n, F.zm_counts(m, n, r))
    elif family in ("mpn", "dihedral2n", "quaternion2n", "semidihedral2n"):
        fam = {"mpn": Family.MODULAR, "dihedral2n": Family.DIHEDRAL,
               "quaternion2n": Family.QUATERNION,
               "semidihedral2n": Family.SEMIDIHEDRAL}[family]
        plist = [p for p in _range(base["p"])] if family == "mpn" else [2]
        for p in plist:
            if not is_prime(p):
                continue
            for n in _range(base["n"]):
                try:
                    formula = (F.family_lattice_size(fam, p, n),
                               F.family_normal_count(fam, p, n))
                except ConstraintError:
                    continue
                spec = {Family.MODULAR: f"M({p},{n})",
                        Family.DIHEDRAL: f"Dih({2 ** (n - 1)})",
                        Family.QUATERNION: f"Q({n})",
                        Family.SEMIDIHEDRAL: f"SD({n})"}[fam]
                params = f"p={p},n={n}" if family == "mpn" else f"n={n}"
                compare(params, spec, p ** n, formula)
    elif family == "abelian2":
        for p in _range(base["p"]):
            if not is_prime(p):
                continue
            for asum in _range(base["asum"]):
                for a1 in range(1, asum // 2 + 1):
                    a2 = asum - a1
                    if p ** asum > cap:
                        skipped += 1
                        continue
                    spec = f"C({p ** a1}) x C({p ** a2})"
                    lat = enumerate_subgroups(build(spec), cap=cap)
                    per: dict[int, int] = {}
                    for s in lat.subgroups:
                        per[s.size] = per.get(s.size, 0) + 1
                    params = f"p={p},a1={a1},a2={a2}"
                    for k in range(asum + 1):
                        rows.append(VerifyRow(
                            family, params, f"count_order_p^{k}",
                            F.abelian_rank2_count(p, a1, a2, k),
                            per.get(p ** k, 0)))
                    rows.append(VerifyRow(
                        family, params, "total",
                        F.abelian_rank2_total(p, a1, a2), len(lat.subgroups)))
    return rows, skipped


def _range(bounds: tuple[int, int]) -> range:
    return range(bounds[0], bounds[1] + 1)


# ---------------------------------------------------------------------------
# limit tables

_FAMILY_MIN_N = {Family.MODULAR: 3, Family.DIHEDRAL: 2,
                 Family.QUATERNION: 3, Family.SEMIDIHEDRAL: 4}


def limits_rows(family: Family, p: int, n_max: int) -> list[tuple[int, Fraction, Fraction]]:
    """(n, ndeg, |ndeg - limit|) for the family's order-p**n members up to n_max."""
    limit = family_limit(family)
    start = _FAMILY_MIN_N[family]
    if family is Family.MODULAR and p == 2:
        start = 4
    if n_max < start:
        raise ConstraintError(f"family needs n >= {start}", f"n_max={n_max}")
    out = []
    for n in range(start, n_max + 1):
        nd = ndeg_family(family, p, n)
        out.append((n, nd, abs(nd - limit)))
    return out


# ---------------------------------------------------------------------------
# JSON Lines ledger

def ledger_append(path: str, report: DegreeReport) -> None:
    """Append one result record to the JSON Lines ledger at path."""
    record = {"timestamp": time.time(), **report.to_json_dict(),
              "tool_version": __version__}
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")


def ledger_summarize(path: str, err: TextIO = sys.stderr) -> dict:
    """Aggregate a ledger: record counts by method and family, distinct ndeg values."""
    records = 0
    malformed = 0
    by_method: dict[str, int] = {}
    by_family: dict[str, int] = {}
    ndeg_seen: dict[Fraction, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                method = rec["method"]
                spec = rec["spec"]
                num, den = rec["ndeg"].split("/")
                value = Fraction(int(num), int(den))
            except (json.JSONDecodeError, KeyError, ValueError, AttributeError) as exc:
                malformed += 1
                print(f"ledger line {lineno}: skipping malformed record ({exc})",
                      file=err)
                continue
            records += 1
            by_method[method] = by_method.get(method, 0) + 1
            fam = "product" if " x " in spec else spec.split("(", 1)[0]
            by_family[fam] = by_family.get(fam, 0) + 1
            ndeg_seen[value] = ndeg_seen.get(value, 0) + 1
    return {
        "records": records,
        "malformed": malformed,
        "by_method": dict(sorted(by_method.items())),
        "by_family": dict(sorted(by_family.items())),
        "ndeg_values": [(f"{v.numerator}/{v.denominator}", c)
                        for v, c in sorted(ndeg_seen.items())],
    }

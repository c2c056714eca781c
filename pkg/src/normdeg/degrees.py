"""Normality degree and subgroup commutativity degree, all exact.

Three independent routes produce the same value on overlapping domains:
brute force over the full lattice, the conjugacy-class route via
normalizer indices, and (for coprime direct products) multiplicativity.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ConstraintError
from .groups import GroupTable
from .lattice import DEFAULT_CAP, SubgroupLattice, enumerate_subgroups, normalizer
from .numtheory import factorize, format_ratio

METHODS = ("brute", "conjugacy", "formula", "product")


@dataclass
class DegreeReport:
    """Result bundle for one group; ndeg == normal_count/lattice_size exactly."""

    spec: str
    order: int
    lattice_size: int
    normal_count: int
    ndeg: Fraction
    sd: Fraction | None = None
    method: str = "brute"
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.ndeg != Fraction(self.normal_count, self.lattice_size):
            raise ValueError("ndeg does not match normal_count/lattice_size")
        if not 0 < self.ndeg <= 1:
            raise ValueError("ndeg out of range (0, 1]")

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec,
            "order": self.order,
            "lattice_size": self.lattice_size,
            "normal_count": self.normal_count,
            "ndeg": format_ratio(self.ndeg),
            "sd": format_ratio(self.sd) if self.sd is not None else None,
            "method": self.method,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _spec_of(G: GroupTable, spec_text: str | None) -> str:
    return spec_text or G.spec_text or f"<order {G.order}>"


def ndeg_brute(
    G: GroupTable,
    spec_text: str | None = None,
    lattice: SubgroupLattice | None = None,
    cap: int = DEFAULT_CAP,
) -> DegreeReport:
    """Normal-subgroup count over subgroup count from the full lattice."""
    start = time.perf_counter()
    lat = lattice if lattice is not None else enumerate_subgroups(G, cap)
    total = len(lat)
    normal = lat.normal_count
    elapsed = int((time.perf_counter() - start) * 1000)
    return DegreeReport(
        spec=_spec_of(G, spec_text),
        order=G.order,
        lattice_size=total,
        normal_count=normal,
        ndeg=Fraction(normal, total),
        method="brute",
        elapsed_ms=elapsed,
    )


def ndeg_conjugacy(
    G: GroupTable,
    spec_text: str | None = None,
    lattice: SubgroupLattice | None = None,
    cap: int = DEFAULT_CAP,
) -> DegreeReport:
    """Same value through class representatives and normalizer indices."""
    start = time.perf_counter()
    lat = lattice if lattice is not None else enumerate_subgroups(G, cap)
    normal = lat.normal_count
    denom = normal
    for cls in lat.classes:
        if len(cls) > 1:
            rep = lat.subgroups[cls[0]]
            denom += G.order // normalizer(G, rep).size
    elapsed = int((time.perf_counter() - start) * 1000)
    return DegreeReport(
        spec=_spec_of(G, spec_text),
        order=G.order,
        lattice_size=denom,
        normal_count=normal,
        ndeg=Fraction(normal, denom),
        method="conjugacy",
        elapsed_ms=elapsed,
    )


def sd_brute(
    G: GroupTable,
    lattice: SubgroupLattice | None = None,
    cap: int = DEFAULT_CAP,
) -> Fraction:
    """Fraction of ordered subgroup pairs (H, K) whose product set is a subgroup.

    HK is a subgroup exactly when |H||K|/|H meet K| (the product-set size)
    equals the size of the join, so each pair needs only bitset work.
    """
    lat = lattice if lattice is not None else enumerate_subgroups(G, cap)
    subs = [(s.mask, s.size) for s in lat.subgroups]
    k = len(subs)
    n = G.order
    ordered = 0
    for i in range(k):
        mask_i, size_i = subs[i]
        for j in range(i, k):
            mask_j, size_j = subs[j]
            t = size_i * size_j // (mask_i & mask_j).bit_count()
            if t == size_i or t == size_j:
                good = True  # one factor absorbs the other
            elif n % t:
                good = False  # product-set size cannot be a subgroup order
            else:
                good = lat.min_container_size(mask_i | mask_j) == t
            if good:
                ordered += 1 if i == j else 2
    return Fraction(ordered, k * k)


def is_dedekind(
    G: GroupTable,
    lattice: SubgroupLattice | None = None,
    cap: int = DEFAULT_CAP,
) -> bool:
    """True when every subgroup is normal."""
    lat = lattice if lattice is not None else enumerate_subgroups(G, cap)
    return lat.normal_count == len(lat)


def pgroup_bound_check(
    G: GroupTable,
    p: int,
    lattice: SubgroupLattice | None = None,
    cap: int = DEFAULT_CAP,
) -> tuple[Fraction, bool]:
    """Upper bound |N|/(|N| + p*s) for p-groups, and whether ndeg meets it.

    s counts conjugacy classes with at least two members; each such orbit
    has size at least p in a p-group.
    """
    fac = factorize(G.order)
    if len(fac) != 1 or fac[0][0] != p:
        raise ConstraintError(
            "p-group bound needs a p-group", f"order {G.order} is not a power of {p}"
        )
    lat = lattice if lattice is not None else enumerate_subgroups(G, cap)
    normal = lat.normal_count
    multi = sum(1 for cls in lat.classes if len(cls) > 1)
    bound = Fraction(normal, normal + p * multi)
    ndeg = Fraction(normal, len(lat))
    return bound, ndeg <= bound


def ndeg_coprime_product(parts: list[DegreeReport]) -> DegreeReport:
    """Combine reports of pairwise coprime factors multiplicatively."""
    if not parts:
        raise ValueError("need at least one factor report")
    for a, b in combinations(parts, 2):
        if math.gcd(a.order, b.order) != 1:
            raise ConstraintError(
                "coprime product needs pairwise coprime orders",
                f"{a.spec} (order {a.order}) and {b.spec} (order {b.order})",
            )
    order = 1
    lattice_size = 1
    normal = 1
    ndeg = Fraction(1)
    for part in parts:
        order *= part.order
        lattice_size *= part.lattice_size
        normal *= part.normal_count
        ndeg *= part.ndeg
    return DegreeReport(
        spec=" x ".join(part.spec for part in parts),
        order=order,
        lattice_size=lattice_size,
        normal_count=normal,
        ndeg=ndeg,
        method="product",
        elapsed_ms=sum(part.elapsed_ms for part in parts),
    )

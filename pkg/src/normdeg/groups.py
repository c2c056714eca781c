"""Group spec language and multiplication-table construction.

A spec is a product of family constructors, e.g. "SDP(3,7,2) x C(2)".
Every constructor validates its parameter constraints up front; build()
materializes an immutable multiplication table and checks the group
axioms on it.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, SpecParseError
from .numtheory import is_prime

# Hard ceiling for table materialization; the lattice cap is separate and lower.
MAX_BUILD_ORDER = 4096

_ASSOC_EXHAUSTIVE_MAX = 128
_ASSOC_SAMPLES = 100_000


# ---------------------------------------------------------------------------
# spec AST


@dataclass(frozen=True)
class Constructor:
    """A single family term, e.g. Dih(6) or SDP(3,7,2)."""

    name: str
    params: tuple[int, ...]

    def __post_init__(self):
        check_params(self.name, self.params)

    def render(self) -> str:
        return f"{self.name}({','.join(str(p) for p in self.params)})"

    def order(self) -> int:
        return _FAMILIES[self.name].order(self.params)


@dataclass(frozen=True)
class Product:
    """Direct product of two specs; 'A x B x C' parses left-associated."""

    left: "GroupSpec"
    right: "GroupSpec"

    def render(self) -> str:
        return f"{self.left.render()} x {self.right.render()}"

    def order(self) -> int:
        return self.left.order() * self.right.order()


GroupSpec = Constructor | Product


def terms(spec: GroupSpec) -> list[Constructor]:
    """Leaf constructors of a spec, left to right."""
    if isinstance(spec, Constructor):
        return [spec]
    return terms(spec.left) + terms(spec.right)


def render(spec: GroupSpec) -> str:
    """Canonical string form; parse(render(s)) round-trips."""
    return spec.render()


# ---------------------------------------------------------------------------
# parameter constraints


def _check_sdp(params: tuple[int, ...]) -> None:
    p, n, k0 = params
    if not is_prime(p):
        raise ConstraintError("SDP requires p prime", f"p={p}")
    if n < 2:
        raise ConstraintError("SDP requires n >= 2", f"n={n}")
    if n % p == 0:
        raise ConstraintError("SDP requires p not dividing n", f"p={p}, n={n}")
    if k0 < 0 or math.gcd(k0, n) != 1:
        raise ConstraintError("SDP requires gcd(k0, n) == 1", f"k0={k0}, n={n}")
    if k0 % n == 1:
        raise ConstraintError("SDP requires k0 != 1 (mod n)", f"k0={k0}")
    if pow(k0, p, n) != 1 % n:
        raise ConstraintError("SDP requires k0**p == 1 (mod n)", f"k0={k0}, p={p}, n={n}")


def _check_zm(params: tuple[int, ...]) -> None:
    m, n, r = params
    if m < 1 or n < 1 or r < 1:
        raise ConstraintError("ZM requires m, n, r >= 1", f"m={m}, n={n}, r={r}")
    if math.gcd(m, n) != 1:
        raise ConstraintError("ZM requires gcd(m, n) == 1", f"m={m}, n={n}")
    if math.gcd(m, r - 1) != 1:
        raise ConstraintError("ZM requires gcd(m, r-1) == 1", f"m={m}, r={r}")
    if pow(r, n, m) != 1 % m:
        raise ConstraintError("ZM requires r**n == 1 (mod m)", f"m={m}, n={n}, r={r}")


def _check_mpn(params: tuple[int, ...]) -> None:
    p, n = params
    if not is_prime(p):
        raise ConstraintError("M requires p prime", f"p={p}")
    if n < 3:
        raise ConstraintError("M requires n >= 3", f"n={n}")
    if p == 2 and n < 4:
        raise ConstraintError("M requires n >= 4 when p == 2", f"n={n}")


def _check_positive(name: str, minimum: int):
    def check(params: tuple[int, ...]) -> None:
        (n,) = params
        if n < minimum:
            raise ConstraintError(f"{name} requires n >= {minimum}", f"n={n}")

    return check


def _check_sym(params: tuple[int, ...]) -> None:
    (n,) = params
    if not 1 <= n <= 5:
        raise ConstraintError("Sym supports 1 <= n <= 5", f"n={n}")


def _check_ea(params: tuple[int, ...]) -> None:
    p, k = params
    if not is_prime(p):
        raise ConstraintError("EA requires p prime", f"p={p}")
    if k < 1:
        raise ConstraintError("EA requires k >= 1", f"k={k}")


# ---------------------------------------------------------------------------
# table builders (numpy blocks; element ids documented per family)


def _table_cyclic(n: int) -> tuple[np.ndarray, list[str]]:
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n, [str(i) for i in range(n)]


def _pow_label(sym: str, e: int) -> str:
    if e == 0:
        return ""
    return sym if e == 1 else f"{sym}^{e}"


def _pair_labels(m: int, k: int) -> list[str]:
    # id = a*m + i stands for x^i y^a
    out = []
    for a in range(k):
        for i in range(m):
            word = " ".join(w for w in (_pow_label("x", i), _pow_label("y", a)) if w)
            out.append(word or "1")
    return out


def _table_dihedral(n: int) -> tuple[np.ndarray, list[str]]:
    # x^i -> i, x^i y -> n + i; y x y = x^-1
    i = np.arange(n)
    rot = (i[:, None] + i[None, :]) % n
    ref = (i[:, None] - i[None, :]) % n
    top = np.hstack([rot, rot + n])
    bot = np.hstack([ref + n, ref])
    return np.vstack([top, bot]), _pair_labels(n, 2)


def metacyclic_table(m: int, k: int, r: int) -> np.ndarray:
    """Table of <x,y | x^m = y^k = 1, y^-1 x y = x^r>; id of x^i y^a is a*m + i.

    Requires gcd(r, m) == 1 and r^k == 1 (mod m). Internally the product
    uses s = r^-1 mod m so that the labeled generators satisfy the stated
    relation exactly.
    """
    if math.gcd(r, m) != 1 or pow(r, k, m) != 1 % m:
        raise ConstraintError("metacyclic requires gcd(r, m) == 1 and r**k == 1 (mod m)")
    s = pow(r, -1, m) if m > 1 else 0
    i = np.arange(m)
    blocks = []
    for a1 in range(k):
        sa = pow(s, a1, m) if m > 1 else 0
        inner = (i[:, None] + sa * i[None, :]) % m
        row = [inner + ((a1 + a2) % k) * m for a2 in range(k)]
        blocks.append(np.hstack(row))
    return np.vstack(blocks)


def _table_semidihedral(n: int) -> tuple[np.ndarray, list[str]]:
    m = 1 << (n - 1)
    return metacyclic_table(m, 2, (1 << (n - 2)) - 1), _pair_labels(m, 2)


def _table_mpn(p: int, n: int) -> tuple[np.ndarray, list[str]]:
    m = p ** (n - 1)
    return metacyclic_table(m, p, p ** (n - 2) + 1), _pair_labels(m, p)


def _table_quaternion(n: int) -> tuple[np.ndarray, list[str]]:
    # x of order 2^(n-1); y^2 = x^(2^(n-2)); y x y^-1 = x^-1
    m = 1 << (n - 1)
    h = 1 << (n - 2)
    i = np.arange(m)
    add = (i[:, None] + i[None, :]) % m
    sub = (i[:, None] - i[None, :]) % m
    top = np.hstack([add, add + m])
    bot = np.hstack([sub + m, (sub + h) % m])
    return np.vstack([top, bot]), _pair_labels(m, 2)


def _table_sdp(p: int, n: int, k0: int) -> tuple[np.ndarray, list[str]]:
    # pairs (x, y) in Z_p x Z_n with id x*n + y;
    # (x1,y1)*(x2,y2) = (x1+x2, k0^x2 * y1 + y2)
    y = np.arange(n)
    blocks = []
    for x1 in range(p):
        row = []
        for x2 in range(p):
            c = pow(k0, x2, n)
            inner = (c * y[:, None] + y[None, :]) % n
            row.append(inner + ((x1 + x2) % p) * n)
        blocks.append(np.hstack(row))
    labels = [f"({x},{yy})" for x in range(p) for yy in range(n)]
    return np.vstack(blocks), labels


def _table_zm(m: int, n: int, r: int) -> tuple[np.ndarray, list[str]]:
    return metacyclic_table(m, n, r % m if m > 1 else 0), _pair_labels(m, n)


def _table_sym(n: int) -> tuple[np.ndarray, list[str]]:
    perms = list(itertools.permutations(range(n)))
    rank = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    mul = np.empty((size, size), dtype=np.int32)
    for a, pa in enumerate(perms):
        for b, pb in enumerate(perms):
            mul[a, b] = rank[tuple(pa[pb[i]] for i in range(n))]
    return mul, ["".join(map(str, p)) for p in perms]


def _product_table(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    na, nb = a.shape[0], b.shape[0]
    return (
        a.astype(np.int64)[:, None, :, None] * nb + b[None, :, None, :]
    ).reshape(na * nb, na * nb)


def _table_ea(p: int, k: int) -> tuple[np.ndarray, list[str]]:
    mul, labels = _table_cyclic(p)
    for _ in range(k - 1):
        next_mul, _ = _table_cyclic(p)
        mul = _product_table(mul, next_mul)
    n = p**k
    lab = []
    for idx in range(n):
        digits = []
        v = idx
        for _ in range(k):
            digits.append(v % p)
            v //= p
        lab.append("(" + ",".join(map(str, reversed(digits))) + ")")
    return mul, lab


class _Family:
    def __init__(self, arity, check, order, build):
        self.arity = arity
        self.check = check
        self.order = order
        self.build = build


_FAMILIES: dict[str, _Family] = {
    "C": _Family(1, _check_positive("C", 1), lambda p: p[0], lambda p: _table_cyclic(p[0])),
    "Dih": _Family(1, _check_positive("Dih", 1), lambda p: 2 * p[0], lambda p: _table_dihedral(p[0])),
    "Q": _Family(1, _check_positive("Q", 3), lambda p: 1 << p[0], lambda p: _table_quaternion(p[0])),
    "SD": _Family(1, _check_positive("SD", 4), lambda p: 1 << p[0], lambda p: _table_semidihedral(p[0])),
    "M": _Family(2, _check_mpn, lambda p: p[0] ** p[1], lambda p: _table_mpn(*p)),
    "Sym": _Family(1, _check_sym, lambda p: math.factorial(p[0]), lambda p: _table_sym(p[0])),
    "SDP": _Family(3, _check_sdp, lambda p: p[0] * p[1], lambda p: _table_sdp(*p)),
    "ZM": _Family(3, _check_zm, lambda p: p[0] * p[1], lambda p: _table_zm(*p)),
    "EA": _Family(2, _check_ea, lambda p: p[0] ** p[1], lambda p: _table_ea(*p)),
}


def check_params(name: str, params: tuple[int, ...]) -> None:
    """Validate constructor parameters, raising ConstraintError when violated."""
    fam = _FAMILIES.get(name)
    if fam is None:
        raise ConstraintError(f"unknown constructor {name!r}")
    if len(params) != fam.arity:
        raise ConstraintError(
            f"{name} takes {fam.arity} parameter(s)", f"got {len(params)}"
        )
    fam.check(params)


# ---------------------------------------------------------------------------
# parser


_TOKEN_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*|\d+|[(),]")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SpecParseError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group()
        kind = "int" if tok[0].isdigit() else ("punct" if tok in "()," else "name")
        tokens.append((kind, tok, pos))
        pos = m.end()
    return tokens


def parse_spec(text: str) -> GroupSpec:
    """Parse 'NAME(INT,...) [x NAME(INT,...)]*' into a validated spec."""
    tokens = _tokenize(text)
    if not tokens:
        raise SpecParseError("empty spec", 0)
    idx = 0

    def expect(kind: str, value: str | None = None):
        nonlocal idx
        if idx >= len(tokens):
            raise SpecParseError(f"unexpected end of spec, wanted {value or kind}", len(text))
        k, v, p = tokens[idx]
        if k != kind or (value is not None and v != value):
            raise SpecParseError(f"expected {value or kind}, found {v!r}", p)
        idx += 1
        return v, p

    def parse_term() -> Constructor:
        name, pos = expect("name")
        if name == "x":
            raise SpecParseError("'x' is the product separator, not a constructor", pos)
        expect("punct", "(")
        params = [int(expect("int")[0])]
        while idx < len(tokens) and tokens[idx][:2] == ("punct", ","):
            expect("punct", ",")
            params.append(int(expect("int")[0]))
        expect("punct", ")")
        return Constructor(name, tuple(params))

    spec: GroupSpec = parse_term()
    while idx < len(tokens):
        k, v, p = tokens[idx]
        if (k, v) != ("name", "x"):
            raise SpecParseError(f"expected 'x' between terms, found {v!r}", p)
        idx += 1
        spec = Product(spec, parse_term())
    return spec


# ---------------------------------------------------------------------------
# group tables


class GroupTable:
    """Immutable finite group presented by its full multiplication table.

    Element 0 is the identity. `mul` is an order x order integer array,
    frozen after the axioms check.
    """

    __slots__ = ("order", "mul", "inv", "labels", "spec_text", "_rows", "_fingerprint", "_generators")

    def __init__(self, mul, labels=None, spec_text=None, validate=True):
        mul = np.ascontiguousarray(mul)
        n = mul.shape[0]
        if mul.shape != (n, n):
            raise ValueError("multiplication table must be square")
        dtype = np.int16 if n <= 2**15 - 1 else np.int32
        mul = mul.astype(dtype, copy=False)
        self.order = n
        self.mul = mul
        where = np.nonzero(mul == 0)
        if len(where[0]) != n or not np.array_equal(where[0], np.arange(n)):
            raise ValueError("table has no unique two-sided inverse per element")
        self.inv = where[1].astype(dtype)
        self.labels = list(labels) if labels is not None else None
        self.spec_text = spec_text
        self._rows = None
        self._fingerprint = None
        self._generators = None
        if validate:
            self.validate()
        self.mul.flags.writeable = False
        self.inv.flags.writeable = False

    @property
    def rows(self) -> list[list[int]]:
        """Table rows as plain lists; the fast path for elementwise loops."""
        if self._rows is None:
            self._rows = self.mul.tolist()
        return self._rows

    def validate(self) -> None:
        """Check identity, Latin square, inverses, associativity.

        Associativity is exhaustive up to order 128 and sampled on 10^5
        deterministic random triples above that.
        """
        n = self.order
        mul = self.mul
        idx = np.arange(n)
        if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
            raise ValueError("element 0 is not a two-sided identity")
        if not np.array_equal(np.sort(mul, axis=1), np.tile(idx, (n, 1))):
            raise ValueError("rows are not permutations")
        if not np.array_equal(np.sort(mul, axis=0), np.tile(idx[:, None], (1, n))):
            raise ValueError("columns are not permutations")
        if not np.array_equal(mul[idx, self.inv], np.zeros(n, dtype=mul.dtype)):
            raise ValueError("inverse table is inconsistent")
        if n <= _ASSOC_EXHAUSTIVE_MAX:
            if not np.array_equal(mul[mul], mul[:, mul]):
                raise ValueError("associativity fails")
        else:
            rng = np.random.default_rng(0x5EED ^ n)
            a, b, c = rng.integers(0, n, size=(3, _ASSOC_SAMPLES))
            if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
                raise ValueError("associativity fails on sampled triples")

    @property
    def fingerprint(self) -> dict[int, int]:
        """Histogram {element order: count}; a cheap isomorphism surrogate."""
        if self._fingerprint is None:
            hist: dict[int, int] = {}
            for x in range(self.order):
                d = element_order(self, x)
                hist[d] = hist.get(d, 0) + 1
            self._fingerprint = hist
        return dict(self._fingerprint)

    def generators(self) -> list[int]:
        """A small generating set found greedily; identity-only group gives []."""
        if self._generators is None:
            rows = self.rows
            gens: list[int] = []
            mask = 1
            for g in range(self.order):
                if not mask >> g & 1:
                    gens.append(g)
                    mask = _closure_mask(rows, gens)
            self._generators = gens
        return list(self._generators)

    def __repr__(self) -> str:
        tag = self.spec_text or "?"
        return f"GroupTable({tag}, order={self.order})"


def _closure_mask(rows: list[list[int]], gens: list[int]) -> int:
    mask = 1
    elems = [0]
    pos = 0
    while pos < len(elems):
        row = rows[elems[pos]]
        pos += 1
        for g in gens:
            b = row[g]
            if not mask >> b & 1:
                mask |= 1 << b
                elems.append(b)
    return mask


def element_order(G: GroupTable, x: int) -> int:
    """Multiplicative order of element x."""
    rows = G.rows
    d = 1
    y = x
    while y != 0:
        y = rows[y][x]
        d += 1
    return d


def is_abelian(G: GroupTable) -> bool:
    """True when the table is symmetric."""
    return bool(np.array_equal(G.mul, G.mul.T))


def build(spec: GroupSpec | str, validate: bool = True) -> GroupTable:
    """Materialize the multiplication table for a spec (string or AST)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    order = spec.order()
    if order > MAX_BUILD_ORDER:
        raise ConstraintError(
            "group too large to materialize",
            f"order {order} exceeds build ceiling {MAX_BUILD_ORDER}",
        )
    mul, labels = _build_raw(spec)
    return GroupTable(mul, labels=labels, spec_text=render(spec), validate=validate)


def _build_raw(spec: GroupSpec) -> tuple[np.ndarray, list[str]]:
    if isinstance(spec, Constructor):
        return _FAMILIES[spec.name].build(spec.params)
    mul_a, lab_a = _build_raw(spec.left)
    mul_b, lab_b = _build_raw(spec.right)
    labels = [f"({a},{b})" for a in lab_a for b in lab_b]
    return _product_table(mul_a, mul_b), labels

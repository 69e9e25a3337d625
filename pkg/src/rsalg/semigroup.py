"""Finite inverse semigroups given by Cayley tables.

Elements are the dense indices ``0..n-1``; ``table[x][y]`` is the product
``xy`` and ``star[x]`` the inverse ``x*``.  Generated corpora put the identity
at index 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Optional

import numpy as np

from .errors import AxiomError, ParseError, SizeCapError, StructuralError

SIZE_CAP = 64
MAX_WITNESSES = 16

AXIOMS = (
    "associativity",
    "involution",
    "star_antimultiplicative",
    "regularity",
    "idempotents_commute",
    "identity",
    "zero",
)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple = ()

    def by_axiom(self):
        out = {}
        for name, witness in self.violations:
            out.setdefault(name, []).append(witness)
        return out

    def to_dict(self):
        return {
            "valid": self.valid,
            "violations": [{"axiom": a, "witness": list(w)} for a, w in self.violations],
        }


def _frozen(a):
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class InverseSemigroup:
    """A validated finite inverse semigroup (identity optional, zero optional)."""

    table: np.ndarray
    star: np.ndarray
    identity: Optional[int]
    zero: Optional[int] = None
    name: str = ""

    @classmethod
    def from_tables(cls, table, star, identity, zero=None, name="", detect_zero=True):
        report = check_inverse_semigroup(table, star, identity, zero)
        if not report.valid:
            first = report.violations[0]
            raise AxiomError(f"{name or 'semigroup'} violates {first[0]} at {first[1]}", report)
        t = _frozen(table)
        if zero is None and detect_zero:
            zero = find_zero(t, _frozen(star))
        return cls(t, _frozen(star), None if identity is None else int(identity),
                   None if zero is None else int(zero), name)

    @property
    def n(self):
        return int(self.table.shape[0])

    def __len__(self):
        return self.n

    def mul(self, x, y):
        return int(self.table[x, y])

    @cached_property
    def src(self):
        """x*x for every x."""
        return _frozen(self.table[self.star, np.arange(self.n)])

    @cached_property
    def rng(self):
        """xx* for every x."""
        return _frozen(self.table[np.arange(self.n), self.star])

    @cached_property
    def admissible(self):
        """Boolean matrix of pairs (x, y) with x*x = yy*."""
        a = self.src[:, None] == self.rng[None, :]
        a.setflags(write=False)
        return a

    def __eq__(self, other):
        if not isinstance(other, InverseSemigroup):
            return NotImplemented
        return (
            np.array_equal(self.table, other.table)
            and np.array_equal(self.star, other.star)
            and self.identity == other.identity
            and self.zero == other.zero
            and self.name == other.name
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return f"InverseSemigroup(name={self.name!r}, n={self.n})"


def _structural(table, star, identity, zero):
    try:
        t = np.asarray(table)
        s = np.asarray(star)
    except ValueError as exc:  # ragged nested lists
        raise StructuralError(f"table is not rectangular: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise StructuralError(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if not np.issubdtype(t.dtype, np.integer):
        raise StructuralError("table entries must be integers")
    if s.shape != (n,) or not np.issubdtype(s.dtype, np.integer):
        raise StructuralError(f"star must hold {n} integers, got shape {s.shape}")
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        x, y = bad[0]
        raise StructuralError(f"table[{x}][{y}] = {t[x, y]} out of range [0, {n})")
    bad = np.flatnonzero((s < 0) | (s >= n))
    if len(bad):
        raise StructuralError(f"star[{bad[0]}] = {s[bad[0]]} out of range [0, {n})")
    for label, v in (("identity", identity), ("zero", zero)):
        if v is not None and not (isinstance(v, (int, np.integer)) and 0 <= v < n):
            raise StructuralError(f"{label} = {v!r} out of range [0, {n})")
    return t.astype(np.int64), s.astype(np.int64)


def check_inverse_semigroup(table, star, identity, zero=None):
    """Scan every axiom exhaustively; at most MAX_WITNESSES witnesses per axiom.

    Raises StructuralError for malformed input.  ``identity=None`` skips the
    identity axiom (restricted semigroups are usually not unital).
    """
    t, s = _structural(table, star, identity, zero)
    n = t.shape[0]
    ar = np.arange(n)
    violations = []

    def record(name, mask):
        for w in np.argwhere(mask)[:MAX_WITNESSES]:
            violations.append((name, tuple(int(i) for i in w)))

    lhs = t[t]  # (xy)z
    rhs = t[ar[:, None, None], t[None, :, :]]  # x(yz)
    record("associativity", lhs != rhs)
    record("involution", s[s] != ar)
    record("star_antimultiplicative", s[t] != t[s][:, s].T)
    record("regularity", t[t[ar, s], ar] != ar)
    idem = np.flatnonzero(t[ar, ar] == ar)
    sub = t[np.ix_(idem, idem)]
    bad = np.argwhere(sub != sub.T)
    for i, j in bad[:MAX_WITNESSES]:
        violations.append(("idempotents_commute", (int(idem[i]), int(idem[j]))))
    if identity is not None:
        record("identity", (t[identity] != ar) | (t[:, identity] != ar))
    if zero is not None:
        record("zero", (t[zero] != zero) | (t[:, zero] != zero))
        if s[zero] != zero:
            violations.append(("zero", (int(zero),)))
    return ValidationReport(not violations, tuple(violations))


def find_zero(table, star):
    n = table.shape[0]
    for z in range(n):
        if star[z] == z and np.all(table[z] == z) and np.all(table[:, z] == z):
            return z
    return None


@dataclass(frozen=True)
class IdempotentSet:
    members: tuple = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members


def idempotents(S):
    ar = np.arange(S.n)
    return IdempotentSet(tuple(int(x) for x in np.flatnonzero(S.table[ar, ar] == ar)))


def idempotents_via_star(S):
    """The set {ss*}, computed independently of the xx = x scan."""
    return IdempotentSet(tuple(sorted({S.mul(s, int(S.star[s])) for s in range(S.n)})))


# -- constructors -----------------------------------------------------------

def _cap(n, cap):
    if n > cap:
        raise SizeCapError(f"semigroup would have {n} elements, above the cap of {cap}")


def cyclic_group(k, cap=SIZE_CAP):
    if k < 1:
        raise ValueError("k must be positive")
    _cap(k, cap)
    ar = np.arange(k)
    return InverseSemigroup.from_tables((ar[:, None] + ar[None, :]) % k, (-ar) % k, 0,
                                        name=f"Z{k}")


def semilattice_chain(k, cap=SIZE_CAP):
    """The chain 1 = e_0 > e_1 > ... > e_{k-1}; e_i e_j = e_max(i,j)."""
    if k < 1:
        raise ValueError("k must be positive")
    _cap(k, cap)
    ar = np.arange(k)
    return InverseSemigroup.from_tables(np.maximum(ar[:, None], ar[None, :]), ar, 0,
                                        name=f"semilattice{k}")


def partial_injections(k):
    """All partial injections of {0..k-1}, as tuples with -1 for 'undefined'.

    Ordered by rank, then domain, then images; the identity map is moved first.
    """
    maps = []
    for r in range(k + 1):
        for dom in combinations(range(k), r):
            for img in permutations(range(k), r):
                m = [-1] * k
                for d, i in zip(dom, img):
                    m[d] = i
                maps.append(tuple(m))
    ident = tuple(range(k))
    maps.remove(ident)
    return [ident] + maps


def symmetric_inverse_monoid_order(k):
    return sum(comb(k, i) ** 2 * factorial(i) for i in range(k + 1))


def symmetric_inverse_monoid(k, cap=SIZE_CAP):
    """I_k with product xy = 'apply y, then x'."""
    if k < 0:
        raise ValueError("k must be non-negative")
    _cap(symmetric_inverse_monoid_order(k), cap)
    maps = partial_injections(k)
    index = {m: i for i, m in enumerate(maps)}
    n = len(maps)

    def compose(x, y):
        return tuple(-1 if y[p] == -1 else x[y[p]] for p in range(k))

    def inverse(x):
        m = [-1] * k
        for p, q in enumerate(x):
            if q != -1:
                m[q] = p
        return tuple(m)

    table = [[index[compose(maps[a], maps[b])] for b in range(n)] for a in range(n)]
    star = [index[inverse(m)] for m in maps]
    return InverseSemigroup.from_tables(table, star, 0, name=f"I{k}")


def brandt_unital(k, cap=SIZE_CAP):
    """Matrix units e_ij (i, j < k) with zero and an adjoined identity.

    Index 0 is the identity, e_ij sits at 1 + i*k + j, and the zero is last.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = k * k + 2
    _cap(n, cap)
    zero = n - 1
    table = np.full((n, n), zero, dtype=np.int64)
    table[0] = np.arange(n)
    table[:, 0] = np.arange(n)
    for i, j, p, q in product(range(k), repeat=4):
        if j == p:
            table[1 + i * k + j, 1 + p * k + q] = 1 + i * k + q
    star = [0] + [1 + j * k + i for i in range(k) for j in range(k)] + [zero]
    return InverseSemigroup.from_tables(table, star, 0, zero=zero, name=f"brandt{k}")


def direct_product(a, b, cap=SIZE_CAP):
    """Pairs (x, y) at index x * |b| + y, componentwise product."""
    _cap(a.n * b.n, cap)
    nb = b.n
    table = (a.table[:, None, :, None] * nb + b.table[None, :, None, :]).reshape(a.n * nb, a.n * nb)
    star = (a.star[:, None] * nb + b.star[None, :]).ravel()
    identity = None
    if a.identity is not None and b.identity is not None:
        identity = a.identity * nb + b.identity
    return InverseSemigroup.from_tables(table, star, identity,
                                        name=f"{a.name}x{b.name}")


_KINDS = {
    "cyclic_group": cyclic_group,
    "semilattice_chain": semilattice_chain,
    "symmetric_inverse_monoid": symmetric_inverse_monoid,
    "brandt_unital": brandt_unital,
    "direct_product": direct_product,
}


def build_standard(kind, *args, cap=SIZE_CAP):
    try:
        make = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(_KINDS)}") from None
    return make(*args, cap=cap)


# -- text format ------------------------------------------------------------

def render_semigroup(S):
    """Canonical JSON document; fields in the order n, table, star, identity, zero, name."""
    rows = ",\n".join("    " + json.dumps([int(v) for v in row]) for row in S.table)
    lines = ["{", f'  "n": {S.n},', '  "table": [', rows, "  ],",
             f'  "star": {json.dumps([int(v) for v in S.star])}']
    if S.identity is not None:
        lines[-1] += ","
        lines.append(f'  "identity": {S.identity}')
    if S.zero is not None:
        lines[-1] += ","
        lines.append(f'  "zero": {S.zero}')
    if S.name:
        lines[-1] += ","
        lines.append(f'  "name": {json.dumps(S.name)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _line_of(document, key):
    needle = f'"{key}"'
    for i, line in enumerate(document.splitlines(), 1):
        if needle in line:
            return i
    return None


def parse_semigroup(document, name=None):
    try:
        obj = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("document must be an object", line=1)

    def need(key, kind, optional=False):
        if key not in obj:
            if optional:
                return None
            raise ParseError("missing required field", field=key)
        v = obj[key]
        if not kind(v):
            raise ParseError(f"bad value {v!r}", line=_line_of(document, key), field=key)
        return v

    def is_int(v):
        return isinstance(v, int) and not isinstance(v, bool)

    def is_int_list(v):
        return isinstance(v, list) and all(is_int(e) for e in v)

    n = need("n", is_int)
    table = need("table", lambda v: isinstance(v, list) and all(is_int_list(r) for r in v))
    star = need("star", is_int_list)
    identity = need("identity", is_int, optional=True)
    zero = need("zero", is_int, optional=True)
    label = need("name", lambda v: isinstance(v, str), optional=True)
    if n < 1:
        raise ParseError("n must be positive", line=_line_of(document, "n"), field="n")
    if len(table) != n or any(len(r) != n for r in table):
        raise StructuralError(f"field 'table' must be {n} rows of {n} integers")
    try:
        return InverseSemigroup.from_tables(table, star, identity, zero,
                                            name=name or label or "")
    except StructuralError as exc:
        raise StructuralError(f"{exc} (line {_line_of(document, 'table')})") from None

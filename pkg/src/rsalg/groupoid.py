"""Finite discrete groupoids, with the associated groupoid S_a of an inverse semigroup.

Haar systems are counting measures.  A section of a Hilbert bundle is stored as
the concatenation of its per-unit vectors, in the order of ``units``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._linalg import DEFAULT_TOL, PsdCertificate, psd_certificate, scaled_tol
from .errors import CarrierError, StructuralError
from .restricted import CFunction
from .semigroup import MAX_WITNESSES, ValidationReport, idempotents

UNDEFINED = -1


@dataclass(frozen=True, eq=False)
class Groupoid:
    defined: np.ndarray  # (n, n) bool, membership in G^2
    prod: np.ndarray  # (n, n) int, UNDEFINED off G^2
    inv: np.ndarray
    units: tuple
    name: str = ""

    @property
    def n(self):
        return int(self.inv.shape[0])

    @cached_property
    def source(self):
        return np.array([self.prod[self.inv[x], x] for x in range(self.n)])

    @cached_property
    def range(self):
        return np.array([self.prod[x, self.inv[x]] for x in range(self.n)])

    def __repr__(self):
        return f"Groupoid(name={self.name!r}, n={self.n}, units={len(self.units)})"


def build_associated_groupoid(S):
    """S_a: the elements of S, composable when x*x = yy*, with inverse x -> x*.

    The carrier name is that of S, since S_a has the same element set.
    """
    defined = S.admissible.copy()
    prod = np.where(defined, S.table, UNDEFINED)
    return Groupoid(defined, prod, S.star.copy(), idempotents(S).members, S.name)


def groupoid_from_arrays(defined, prod, inv, units, name=""):
    d = np.asarray(defined, dtype=bool)
    p = np.asarray(prod)
    i = np.asarray(inv)
    n = i.shape[0]
    if d.shape != (n, n) or p.shape != (n, n):
        raise StructuralError(f"defined/prod must be {n}x{n}")
    if np.any((i < 0) | (i >= n)) or np.any(d & ((p < 0) | (p >= n))):
        raise StructuralError("index out of range")
    return Groupoid(d, np.where(d, p, UNDEFINED), i, tuple(int(u) for u in units), name)


def check_groupoid(G):
    """Exhaustive scan of the four groupoid axioms plus unit-space consistency."""
    n = G.n
    d, p, inv = G.defined, G.prod, G.inv
    if d.shape != (n, n) or p.shape != (n, n):
        raise StructuralError("defined/prod shape does not match inv")
    violations = []

    def add(name, w):
        if sum(1 for a, _ in violations if a == name) < MAX_WITNESSES:
            violations.append((name, tuple(int(v) for v in w)))

    for x in range(n):
        if inv[inv[x]] != x:
            add("inverse_involutive", (x,))
        xi = inv[x]
        if not d[xi, x]:
            add("inverse_composable", (x,))
        if not d[x, xi]:
            add("inverse_composable", (xi, x))
    for x, y in np.argwhere(d):
        xy = p[x, y]
        xi = inv[x]
        if not (d[xi, xy] and p[xi, xy] == y):
            add("left_cancellation", (x, y))
        yi = inv[y]
        if not (d[xy, yi] and p[xy, yi] == x):
            add("right_cancellation", (x, y))
        for z in np.flatnonzero(d[y]):
            yz = p[y, z]
            if not (d[xy, z] and d[x, yz]) or p[xy, z] != p[x, yz]:
                add("associativity", (x, y, z))
    if not violations:
        s_units = {int(p[inv[x], x]) for x in range(n)}
        r_units = {int(p[x, inv[x]]) for x in range(n)}
        if s_units != r_units or s_units != set(G.units):
            add("unit_space", tuple(sorted(s_units ^ set(G.units))))
    return ValidationReport(not violations, tuple(violations))


@dataclass(frozen=True)
class Fiber:
    unit: int
    members: tuple
    kind: str  # "range" (G^u) or "source" (G_u)


def range_fiber(G, u):
    return Fiber(u, tuple(int(x) for x in np.flatnonzero(G.range == u)), "range")


def source_fiber(G, u):
    return Fiber(u, tuple(int(x) for x in np.flatnonzero(G.source == u)), "source")


def isotropy(G, u):
    return tuple(int(x) for x in np.flatnonzero((G.range == u) & (G.source == u)))


def _values(G, f):
    if isinstance(f, CFunction):
        if len(f) != G.n or (f.carrier and G.name and f.carrier != G.name):
            raise CarrierError(f"function on {f.carrier!r}[{len(f)}] used on groupoid {G.name!r}")
        return f.values
    v = np.asarray(f, dtype=complex).ravel()
    if v.shape[0] != G.n:
        raise CarrierError(f"function has {v.shape[0]} values, groupoid has {G.n}")
    return v


def i_norm_parts(G, f):
    """(||f||_{I,s}, ||f||_{I,r})."""
    a = np.abs(_values(G, f))
    s = max(a[G.source == u].sum() for u in G.units)
    r = max(a[G.range == u].sum() for u in G.units)
    return float(s), float(r)


def i_norm(G, f):
    return max(i_norm_parts(G, f))


def groupoid_convolution(G, f, g):
    """(f * g)(x) = sum of f(y) g(z) over composable (y, z) with yz = x."""
    fv, gv = _values(G, f), _values(G, g)
    ys, zs = np.nonzero(G.defined)
    out = np.zeros(G.n, dtype=complex)
    np.add.at(out, G.prod[ys, zs], fv[ys] * gv[zs])
    return CFunction(out, G.name)


def check_fn(G, f):
    """f^(x) = f(x^-1)."""
    return CFunction(_values(G, f)[G.inv], G.name)


def theta(G, f, g):
    """theta(f, g) = g * f^ (the bilinear map behind the fourth Fourier-algebra candidate)."""
    return groupoid_convolution(G, g, check_fn(G, f))


@dataclass(frozen=True)
class GroupoidPsdCertificate:
    positive: bool
    blocks: dict  # unit -> PsdCertificate
    witness_unit: int | None = None

    @property
    def min_eigenvalues(self):
        return {u: c.min_eigenvalue for u, c in self.blocks.items()}

    @property
    def marginal(self):
        return any(c.marginal for c in self.blocks.values())

    def __bool__(self):
        return self.positive


def fiber_matrix(G, phi, u):
    """M^u[i][j] = phi(y_i^-1 x_j) over the range fiber G^u."""
    v = _values(G, phi)
    members = np.array(range_fiber(G, u).members)
    yi = G.inv[members]
    composable = G.defined[yi[:, None], members[None, :]]
    # y^-1 x is always defined inside one range fiber
    assert composable.all(), "range fiber with non-composable pair"
    return v[G.prod[yi[:, None], members[None, :]]]


def is_positive_definite_groupoid(G, phi, tol=DEFAULT_TOL):
    # one scale for all fibers: the fiber matrices together hold every value of phi
    scale = float(np.abs(_values(G, phi)).max(initial=0.0))
    blocks = {}
    bad = None
    for u in G.units:
        cert = psd_certificate(fiber_matrix(G, phi, u), tol, scale=scale)
        blocks[u] = cert
        if not cert.positive and bad is None:
            bad = u
    return GroupoidPsdCertificate(bad is None, blocks, bad)


@dataclass(frozen=True, eq=False)
class GroupoidRep:
    """A bundle representation: fiber_dims[u] per unit, mats[x] maps fiber s(x) to r(x)."""

    units: tuple
    fiber_dims: dict
    mats: tuple

    @cached_property
    def offsets(self):
        out, k = {}, 0
        for u in self.units:
            out[u] = k
            k += self.fiber_dims[u]
        return out

    @property
    def total_dim(self):
        return sum(self.fiber_dims[u] for u in self.units)

    def section(self, vec, u):
        o = self.offsets[u]
        return np.asarray(vec)[o:o + self.fiber_dims[u]]


def check_groupoid_rep(G, rep, tol=DEFAULT_TOL):
    """Unitarity between fibers, star compatibility, multiplicativity on G^2."""
    violations = []
    eps = scaled_tol(1.0, tol) * 10
    if set(rep.units) != set(G.units):
        raise StructuralError("representation units differ from the groupoid unit space")
    for x in range(G.n):
        m = rep.mats[x]
        r, s = int(G.range[x]), int(G.source[x])
        if m.shape != (rep.fiber_dims[r], rep.fiber_dims[s]):
            raise StructuralError(f"mats[{x}] has shape {m.shape}, expected "
                                  f"({rep.fiber_dims[r]}, {rep.fiber_dims[s]})")
        if (np.abs(m.conj().T @ m - np.eye(m.shape[1])).max(initial=0) > eps
                or np.abs(m @ m.conj().T - np.eye(m.shape[0])).max(initial=0) > eps):
            violations.append(("unitary", (x,)))
        if np.abs(rep.mats[G.inv[x]] - m.conj().T).max(initial=0) > eps:
            violations.append(("star", (x,)))
    for x, y in np.argwhere(G.defined):
        if np.abs(rep.mats[G.prod[x, y]] - rep.mats[x] @ rep.mats[y]).max(initial=0) > eps:
            violations.append(("multiplicative", (int(x), int(y))))
    return ValidationReport(not violations, tuple(violations[: 3 * MAX_WITNESSES]))


def left_regular_groupoid_rep(G):
    """Fiber at u is l2(G^u); (L_x xi)(y) = xi(x^-1 y) for y in G^{r(x)}."""
    fibers = {u: range_fiber(G, u).members for u in G.units}
    pos = {u: {y: i for i, y in enumerate(m)} for u, m in fibers.items()}
    mats = []
    for x in range(G.n):
        r, s = int(G.range[x]), int(G.source[x])
        m = np.zeros((len(fibers[r]), len(fibers[s])))
        for i, y in enumerate(fibers[r]):
            m[i, pos[s][G.prod[G.inv[x], y]]] = 1.0
        mats.append(m)
    return GroupoidRep(tuple(G.units), {u: len(m) for u, m in fibers.items()}, tuple(mats))


def groupoid_coefficient(G, rep, xi, eta):
    """x -> <pi(x) xi(s(x)), eta(r(x))>, with xi, eta concatenated sections."""
    out = np.zeros(G.n, dtype=complex)
    for x in range(G.n):
        a = rep.mats[x] @ rep.section(xi, int(G.source[x]))
        out[x] = np.vdot(rep.section(eta, int(G.range[x])), a)
    return CFunction(out, G.name)

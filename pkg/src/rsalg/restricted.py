"""The restricted product, S_r, the convolution algebra and the regular representations.

The restricted product ``x . y`` is defined exactly when ``x*x = yy*``.
Functions on S are ``CFunction`` values; convolution of point masses is
``delta_x . delta_y = delta_xy`` on admissible pairs and 0 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import DEFAULT_TOL, scaled_tol
from .errors import CarrierError, NumericalError
from .semigroup import InverseSemigroup


@dataclass(frozen=True, eq=False)
class CFunction:
    """Complex values indexed by the elements of a carrier (semigroup or groupoid)."""

    values: np.ndarray
    carrier: str = ""

    def __post_init__(self):
        v = np.array(self.values, dtype=complex).ravel()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    def __getitem__(self, x):
        return self.values[x]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def norm1(self):
        return float(np.abs(self.values).sum())

    def norm2(self):
        return float(np.linalg.norm(self.values))

    def sup(self):
        return float(np.abs(self.values).max()) if len(self) else 0.0

    def _other(self, other):
        if isinstance(other, CFunction):
            _same_carrier(self, other)
            return other.values
        return other

    def __add__(self, other):
        return CFunction(self.values + self._other(other), self.carrier)

    def __sub__(self, other):
        return CFunction(self.values - self._other(other), self.carrier)

    def __mul__(self, other):
        """Pointwise product, or scaling by a number."""
        return CFunction(self.values * self._other(other), self.carrier)

    __rmul__ = __mul__

    def __neg__(self):
        return CFunction(-self.values, self.carrier)

    def conj(self):
        return CFunction(self.values.conj(), self.carrier)

    def allclose(self, other, atol=1e-9):
        return bool(np.allclose(self.values, np.asarray(other), rtol=0, atol=atol))

    def __repr__(self):
        return f"CFunction({self.carrier!r}, {np.round(self.values, 12).tolist()})"


def _same_carrier(f, g):
    if len(f) != len(g) or (f.carrier and g.carrier and f.carrier != g.carrier):
        raise CarrierError(f"carrier mismatch: {f.carrier!r}[{len(f)}] vs {g.carrier!r}[{len(g)}]")


def as_function(S, f):
    """Coerce an array-like or CFunction to a CFunction on S, checking the carrier."""
    if isinstance(f, CFunction):
        if len(f) != S.n or (f.carrier and S.name and f.carrier != S.name):
            raise CarrierError(
                f"function on {f.carrier!r}[{len(f)}] used on {S.name!r}[{S.n}]")
        return f
    v = np.asarray(f, dtype=complex).ravel()
    if v.shape[0] != S.n:
        raise CarrierError(f"function has {v.shape[0]} values, {S.name!r} has {S.n} elements")
    return CFunction(v, S.name)


def delta(S, x, coeff=1.0):
    v = np.zeros(S.n, dtype=complex)
    v[x] = coeff
    return CFunction(v, S.name)


def indicator(S, members):
    v = np.zeros(S.n, dtype=complex)
    v[list(members)] = 1.0
    return CFunction(v, S.name)


def restricted_product(S, x, y):
    if S.admissible[x, y]:
        return S.mul(x, y)
    return None


@dataclass(frozen=True, eq=False)
class RestrictedSemigroup:
    base: InverseSemigroup
    sr: InverseSemigroup
    embed: tuple
    zero_index: int

    def extend_by_zero(self, f):
        f = as_function(self.base, f)
        v = np.zeros(self.sr.n, dtype=complex)
        v[list(self.embed)] = f.values
        return CFunction(v, self.sr.name)


def build_restricted_semigroup(S):
    """Adjoin a fresh zero (always, even if S has one) absorbing undefined products."""
    n = S.n
    z = n
    table = np.full((n + 1, n + 1), z, dtype=np.int64)
    table[:n, :n] = np.where(S.admissible, S.table, z)
    star = np.append(S.star, z)
    ar = np.arange(n + 1)
    identity = None
    for e in range(n):
        if np.all(table[e] == ar) and np.all(table[:, e] == ar):
            identity = e
            break
    sr = InverseSemigroup.from_tables(table, star, identity, zero=z, name=f"{S.name}_r")
    return RestrictedSemigroup(S, sr, tuple(range(n)), z)


def restricted_convolution(S, f, g):
    """(f . g)(z) = sum of f(x) g(y) over admissible pairs with xy = z."""
    f, g = as_function(S, f), as_function(S, g)
    xs, ys = np.nonzero(S.admissible)
    out = np.zeros(S.n, dtype=complex)
    np.add.at(out, S.table[xs, ys], f.values[xs] * g.values[ys])
    return CFunction(out, S.name)


def tilde(S, g):
    """g~(x) = conj(g(x*))."""
    g = as_function(S, g)
    return CFunction(g.values[S.star].conj(), S.name)


@dataclass(frozen=True, eq=False)
class MatrixRep:
    """One dim x dim matrix per semigroup element, stacked as mats[x]."""

    mats: np.ndarray
    carrier: str = ""

    def __post_init__(self):
        m = np.array(self.mats, dtype=complex)
        if m.ndim != 3 or m.shape[1] != m.shape[2]:
            raise ValueError(f"expected an (n, d, d) stack, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "mats", m)

    @property
    def dim(self):
        return int(self.mats.shape[1])

    @property
    def n(self):
        return int(self.mats.shape[0])

    def __getitem__(self, x):
        return self.mats[x]

    def extend(self, f):
        """pi~(f) = sum_x f(x) pi(x)."""
        return np.tensordot(np.asarray(f, dtype=complex), self.mats, axes=1)


def lambda_r(S):
    """lambda_r(x) delta_y = delta_xy when x*x = yy*, else 0."""
    n = S.n
    mats = np.zeros((n, n, n))
    xs, ys = np.nonzero(S.admissible)
    mats[xs, S.table[xs, ys], ys] = 1.0
    return MatrixRep(mats, S.name)


def rho_r(S):
    """rho_r(x) delta_y = delta_{y x*} when y*y = x*x, else 0.

    This is right translation delta_y -> delta_{y x*}; it is multiplicative
    (not anti-multiplicative) and commutes with lambda_r.
    """
    n = S.n
    mats = np.zeros((n, n, n))
    # admissible[y, x*] means y*y = x*(x*)* = x*x
    ys, xs_star = np.nonzero(S.admissible)
    xs = S.star[xs_star]
    mats[xs, S.table[ys, xs_star], ys] = 1.0
    return MatrixRep(mats, S.name)


def right_translations(S):
    """R_x delta_y = delta_yx when y*y = xx*: right multiplication by delta_x."""
    n = S.n
    mats = np.zeros((n, n, n))
    ys, xs = np.nonzero(S.admissible)
    mats[xs, S.table[ys, xs], ys] = 1.0
    return mats


def coefficient_pair(S, f, g, tol=DEFAULT_TOL):
    """u = f . g~, cross-checked against u(y) = <lambda_r(y*) f, g>."""
    f, g = as_function(S, f), as_function(S, g)
    u = restricted_convolution(S, f, tilde(S, g))
    lam = lambda_r(S).mats
    # <lambda_r(y*) f, g> = g^H lambda_r(y*) f
    direct = np.einsum("i,yij,j->y", g.values.conj(), lam[S.star], f.values)
    err = float(np.abs(direct - u.values).max())
    if err > scaled_tol(f.norm2() * g.norm2(), tol):
        raise NumericalError(f"f.g~ disagrees with <lambda_r(y*)f, g> by {err:.3e}")
    return u

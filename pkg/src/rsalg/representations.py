"""Restricted representations as matrices.

A restricted representation assigns a matrix pi(x) to each x with
pi(x*) = pi(x)^H, pi(x) pi(y) = pi(xy) when x*x = yy* and 0 otherwise.
Unitary equivalence is always tested through coefficient functions, since
bases are not canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ._linalg import DEFAULT_TOL, scaled_tol
from .analysis.cones import is_extendible, is_restricted_pd
from .errors import (
    CarrierError,
    NotPositiveDefiniteError,
    NumericalError,
    ProjectionError,
    StructuralError,
)
from .groupoid import GroupoidRep, build_associated_groupoid
from .restricted import CFunction, MatrixRep, as_function, build_restricted_semigroup
from .semigroup import MAX_WITNESSES, idempotents

GNS_RANK_CUTOFF = 1e-10


@dataclass(frozen=True)
class RestrictedRepCheckReport:
    star_ok: bool
    product_rule_ok: bool
    contraction_ok: bool
    witnesses: tuple = ()

    @property
    def valid(self):
        return self.star_ok and self.product_rule_ok and self.contraction_ok


def _check_dims(S, pi):
    if pi.n != S.n:
        raise StructuralError(f"representation has {pi.n} matrices, {S.name!r} has {S.n} elements")


def check_restricted_rep(S, pi, tol=DEFAULT_TOL):
    _check_dims(S, pi)
    m = pi.mats
    eps = scaled_tol(np.abs(m).max(initial=0.0), tol) * 10
    witnesses = []
    star_bad = np.abs(m[S.star] - m.conj().transpose(0, 2, 1)).max(axis=(1, 2), initial=0.0) > eps
    for x in np.flatnonzero(star_bad)[:MAX_WITNESSES]:
        witnesses.append(("star", (int(x),)))
    prod_bad = np.zeros((S.n, S.n), dtype=bool)
    for x in range(S.n):
        prods = np.einsum("ij,yjk->yik", m[x], m)
        target = np.where(S.admissible[x, :, None, None], m[S.table[x]], 0.0)
        prod_bad[x] = np.abs(prods - target).max(axis=(1, 2), initial=0.0) > eps
    for x, y in np.argwhere(prod_bad)[:MAX_WITNESSES]:
        witnesses.append(("product_rule", (int(x), int(y))))
    norms = np.array([np.linalg.norm(a, 2) if a.size else 0.0 for a in m])
    contraction_bad = norms > 1 + eps
    for x in np.flatnonzero(contraction_bad)[:MAX_WITNESSES]:
        witnesses.append(("contraction", (int(x),)))
    return RestrictedRepCheckReport(not star_bad.any(), not prod_bad.any(),
                                    not contraction_bad.any(), tuple(witnesses))


def coefficient(S, pi, xi, eta):
    """u(x) = <pi(x) xi, eta>."""
    _check_dims(S, pi)
    xi = np.asarray(xi, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    if xi.shape != (pi.dim,) or eta.shape != (pi.dim,):
        raise StructuralError(f"vectors must have length {pi.dim}")
    return CFunction(np.einsum("i,xij,j->x", eta.conj(), pi.mats, xi), S.name)


def zero_rep(S, dim=1):
    return MatrixRep(np.zeros((S.n, dim, dim)), S.name)


def _same_carrier(pi, sigma):
    if pi.n != sigma.n or (pi.carrier and sigma.carrier and pi.carrier != sigma.carrier):
        raise CarrierError("representations live on different semigroups")


def direct_sum(pi, sigma):
    _same_carrier(pi, sigma)
    a, b = pi.dim, sigma.dim
    out = np.zeros((pi.n, a + b, a + b), dtype=complex)
    out[:, :a, :a] = pi.mats
    out[:, a:, a:] = sigma.mats
    return MatrixRep(out, pi.carrier or sigma.carrier)


def tensor(pi, sigma):
    _same_carrier(pi, sigma)
    out = np.einsum("xij,xkl->xikjl", pi.mats, sigma.mats)
    d = pi.dim * sigma.dim
    return MatrixRep(out.reshape(pi.n, d, d), pi.carrier or sigma.carrier)


@dataclass(frozen=True, eq=False)
class GnsResult:
    rep: MatrixRep
    cyclic: np.ndarray
    ext_constant: float
    zero_image_norm: float  # ||pi(0)|| on the internal S_r^1 construction
    cyclic_zero_norm: float  # ||pi(0) xi||
    gram_rank: int = field(default=0)


def gns(S, u, unit_value=None, tol=DEFAULT_TOL):
    """Cyclic restricted representation with <pi(.) xi, xi> = u.

    u is extended by zero to S_r, then to the unitization S_r^1 with corner
    value c* (the least admissible one) unless unit_value is given.  The Hilbert
    space is functions on S_r^1 modulo the null space of the Gram form
    <f, g> = sum conj(g(s)) f(t) u'(s* t), and pi(x) is left translation.
    """
    u = as_function(S, u)
    R = build_restricted_semigroup(S)
    cert = is_restricted_pd(S, u, tol, restricted=R)
    if not cert.positive:
        raise NotPositiveDefiniteError(
            f"u is not restricted positive definite (min eigenvalue {cert.min_eigenvalue:.3e})")
    v = R.extend_by_zero(u)
    ext = is_extendible(R.sr, v, tol)
    if not ext.extendible:
        raise NotPositiveDefiniteError(f"u is not extendible (range residual {ext.range_residual:.3e})")
    c = ext.c_star if unit_value is None else float(unit_value)
    if c < ext.c_star - scaled_tol(ext.c_star, tol):
        raise NotPositiveDefiniteError(f"unit value {c} is below the least admissible {ext.c_star}")

    T = R.sr
    N = T.n + 1  # index T.n is the adjoined unit
    unit = T.n
    table = np.empty((N, N), dtype=np.int64)
    table[:T.n, :T.n] = T.table
    table[unit, :] = np.arange(N)
    table[:, unit] = np.arange(N)
    star = np.append(T.star, unit)
    vals = np.append(v.values, c)
    gram = vals[table[star[:, None], np.arange(N)[None, :]]]
    gram = 0.5 * (gram + gram.conj().T)

    w, vecs = np.linalg.eigh(gram)
    top = w[-1] if w.size else 0.0
    keep = w > GNS_RANK_CUTOFF * top if top > 0 else np.zeros(N, dtype=bool)
    w, vecs = w[keep], vecs[:, keep]
    root = np.sqrt(w)
    r = root.size

    mats = np.zeros((N, r, r), dtype=complex)
    for x in range(N):
        left = np.zeros((N, N))
        left[table[x], np.arange(N)] = 1.0  # delta_t -> delta_xt
        mats[x] = (root[:, None] * (vecs.conj().T @ left @ vecs)) / root[None, :]
    xi = root * vecs[unit].conj()

    zero_op = mats[R.zero_index]
    zero_norm = float(np.linalg.norm(zero_op, 2)) if r else 0.0
    cyclic_zero = float(np.linalg.norm(zero_op @ xi)) if r else 0.0
    scale = max(1.0, float(np.abs(gram).max(initial=0.0)))
    if cyclic_zero > 1e-6 * scale:
        raise NumericalError(f"pi(0) xi = {cyclic_zero:.3e}, expected 0")
    rep = MatrixRep(mats[list(R.embed)], S.name)
    return GnsResult(rep, xi, c, zero_norm, cyclic_zero, r)


def fiber_bases(S, pi, tol=DEFAULT_TOL):
    """Orthonormal basis of range(pi(e)) per idempotent e, via pivoted QR."""
    _check_dims(S, pi)
    eps = scaled_tol(1.0, tol) * 100
    out = {}
    for e in idempotents(S):
        p = pi.mats[e]
        if (np.abs(p @ p - p).max(initial=0.0) > eps
                or np.abs(p - p.conj().T).max(initial=0.0) > eps):
            raise ProjectionError(f"pi({e}) is not an orthogonal projection")
        if pi.dim == 0:
            out[e] = np.zeros((0, 0), dtype=complex)
            continue
        q, r, _ = scipy.linalg.qr(p, pivoting=True)
        diag = np.abs(np.diag(r))
        rank = int((diag > 1e-8 * max(1.0, diag.max(initial=0.0))).sum())
        out[e] = q[:, :rank]
    return out


def rep_to_groupoid(S, pi, tol=DEFAULT_TOL):
    """H_u = pi(u) H; pi(x) becomes a unitary H_{x*x} -> H_{xx*}."""
    bases = fiber_bases(S, pi, tol)
    units = idempotents(S).members
    mats = tuple(bases[int(S.rng[x])].conj().T @ pi.mats[x] @ bases[int(S.src[x])]
                 for x in range(S.n))
    return GroupoidRep(units, {u: bases[u].shape[1] for u in units}, mats)


def vector_to_sections(S, pi, vec, tol=DEFAULT_TOL):
    """The section (pi(u) vec)_u written in the fiber bases of rep_to_groupoid."""
    bases = fiber_bases(S, pi, tol)
    return np.concatenate([bases[u].conj().T @ np.asarray(vec) for u in idempotents(S)])


def groupoid_to_rep(S, rep):
    """Direct sum of the fibers, pi(x) acting from block x*x to block xx*, zero elsewhere."""
    G = build_associated_groupoid(S)
    if set(rep.units) != set(G.units):
        raise StructuralError("bundle units differ from the idempotents of S")
    d = rep.total_dim
    mats = np.zeros((S.n, d, d), dtype=complex)
    off = rep.offsets
    for x in range(S.n):
        r, s = int(S.rng[x]), int(S.src[x])
        mats[x, off[r]:off[r] + rep.fiber_dims[r], off[s]:off[s] + rep.fiber_dims[s]] = rep.mats[x]
    return MatrixRep(mats, S.name)

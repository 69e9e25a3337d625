"""Positive-definite cone membership and extendibility.

A function u on an inverse semigroup T is positive definite when the matrix
``[u(s* t)]`` over T is positive semidefinite.  Restricted positive definite
functions on S are those whose extension by zero to S_r is positive definite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._linalg import DEFAULT_TOL, psd_certificate, scaled_tol
from ..restricted import as_function, build_restricted_semigroup


def gram_matrix(T, u):
    """M[s][t] = u(s* t) over all of T."""
    v = as_function(T, u).values
    return v[T.table[T.star[:, None], np.arange(T.n)[None, :]]]


def is_positive_definite_star(T, u, tol=DEFAULT_TOL):
    return psd_certificate(gram_matrix(T, u), tol)


def is_restricted_pd(S, u, tol=DEFAULT_TOL, restricted=None):
    R = restricted or build_restricted_semigroup(S)
    return is_positive_definite_star(R.sr, R.extend_by_zero(u), tol)


@dataclass(frozen=True)
class Extendibility:
    extendible: bool
    c_star: float
    range_residual: float

    def __iter__(self):
        # unpacks as (extendible, c_star)
        return iter((self.extendible, self.c_star))


def is_extendible(T, u, tol=DEFAULT_TOL):
    """Can the unitization Gram matrix [[M, b], [b^H, c]] be made PSD?

    b_s = u(s*).  This holds iff b lies in the range of M, and then the least
    admissible corner is c* = b^H M^+ b.  Assumes M is already PSD.
    """
    u = as_function(T, u)
    m = gram_matrix(T, u)
    b = u.values[T.star]
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    pinv = np.linalg.pinv(m, rcond=1e-10, hermitian=True)
    residual = float(np.linalg.norm(m @ (pinv @ b) - b))
    ok = residual <= scaled_tol(scale, tol) * max(1.0, np.sqrt(T.n))
    c_star = float(np.real(np.vdot(b, pinv @ b))) if ok else float("inf")
    return Extendibility(bool(ok), max(c_star, 0.0), residual)

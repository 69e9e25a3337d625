"""Small numerical helpers shared by the cone tests and the norm code."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

DEFAULT_TOL = 1e-9
# verdicts whose minimum eigenvalue lies in [-MARGINAL_FACTOR*eps, -eps/MARGINAL_FACTOR]
MARGINAL_FACTOR = 10.0


def scaled_tol(scale, tol=DEFAULT_TOL):
    return tol * max(1.0, float(scale))


def inner(xi, eta):
    """<xi, eta>, linear in the first slot."""
    return complex(np.vdot(eta, xi))


def opnorm(a):
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def trace_norm(a):
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False).sum())


@dataclass(frozen=True)
class PsdCertificate:
    """Outcome of a Hermitian PSD test on one matrix."""

    matrix_size: int
    min_eigenvalue: float
    verdict: str  # "positive_definite_cone_member" | "rejected"
    eps: float
    marginal: bool = False
    witness: Optional[np.ndarray] = None
    hermitian_defect: float = 0.0
    reason: str = ""

    @property
    def positive(self):
        return self.verdict == "positive_definite_cone_member"

    def __bool__(self):
        return self.positive


def psd_certificate(m, tol=DEFAULT_TOL, scale=None):
    """scale defaults to the largest entry of m; pass it to compare several matrices alike."""
    m = np.asarray(m, dtype=complex)
    size = m.shape[0]
    if size == 0:
        return PsdCertificate(0, 0.0, "positive_definite_cone_member", tol)
    eps = scaled_tol(np.abs(m).max() if scale is None else scale, tol)
    defect = np.abs(m - m.conj().T)
    worst = float(defect.max())
    if worst > eps:
        i, j = np.unravel_index(int(defect.argmax()), defect.shape)
        witness = np.zeros(size, dtype=complex)
        witness[[i, j]] = 1.0
        return PsdCertificate(size, float("nan"), "rejected", eps, witness=witness,
                              hermitian_defect=worst, reason=f"not Hermitian at ({i}, {j})")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    lo = float(w[0])
    positive = lo >= -eps
    marginal = -MARGINAL_FACTOR * eps <= lo <= -eps / MARGINAL_FACTOR
    return PsdCertificate(
        size,
        lo,
        "positive_definite_cone_member" if positive else "rejected",
        eps,
        marginal=marginal,
        witness=None if positive else v[:, 0],
        hermitian_defect=worst,
        reason="" if positive else "negative eigenvalue",
    )


def orth_columns(a, rtol=1e-10):
    """Orthonormal basis of the column space, via SVD with a relative cutoff."""
    a = np.asarray(a)
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=a.dtype)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return u[:, :0]
    return u[:, s > rtol * s[0]]


def null_space(a, rtol=1e-10):
    a = np.asarray(a)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    top = s[0] if s.size else 0.0
    rank = int((s > rtol * max(top, 1.0)).sum())
    return vh[rank:].conj().T


def cluster_sorted(values, threshold):
    """Split ascending values into runs separated by gaps larger than threshold.

    Returns (groups, ambiguous) where ambiguous is True when some gap sits in the
    grey zone (threshold, 100 * threshold].
    """
    groups = [[0]] if len(values) else []
    ambiguous = False
    for k in range(1, len(values)):
        gap = values[k] - values[k - 1]
        if gap > threshold:
            if gap <= 100 * threshold:
                ambiguous = True
            groups.append([k])
        else:
            groups[-1].append(k)
    return groups, ambiguous

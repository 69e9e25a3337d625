"""Numerical Artin-Wedderburn decomposition of the algebra spanned by lambda_r.

lambda_r is the left regular module of the restricted convolution algebra, so
its commutant is spanned by the right translations and each irreducible block
of size d occurs with multiplicity d.  The decomposition proceeds in three
steps:

1. a random Hermitian central element splits C^S into isotypic components;
2. a random Hermitian commutant element splits each component into copies;
3. commutant intertwiners align the bases of the copies, so that conjugating
   by the transform gives literally repeated blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._linalg import cluster_sorted, null_space
from ..errors import DecompositionError
from ..restricted import as_function, lambda_r, right_translations

CLUSTER_REL = 1e-7
BLOCK_TOL = 1e-8
MAX_TRIES = 8


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    algebra_dim: int
    blocks: tuple  # (d_i, m_i) per isotypic component
    transform: np.ndarray  # unitary, columns grouped by block then copy
    bases: tuple  # n x d_i isometry onto the first copy of block i
    images: np.ndarray  # (D, n): stacked vec of a_i(delta_x) in column x
    off_block_residual: float

    def block_slices(self):
        out, k = [], 0
        for d, m in self.blocks:
            out.append([slice(k + c * d, k + (c + 1) * d) for c in range(m)])
            k += d * m
        return out


def _center_basis(S):
    """Coefficient vectors c with sum_x c_x delta_x central in the convolution algebra."""
    n = S.n
    adm = S.admissible
    rows = np.zeros((n, n, n))  # [y, z, x]
    xs, ys = np.nonzero(adm)
    np.add.at(rows, (ys, S.table[xs, ys], xs), 1.0)  # delta_x . delta_y
    ys2, xs2 = np.nonzero(adm)
    np.add.at(rows, (ys2, S.table[ys2, xs2], xs2), -1.0)  # delta_y . delta_x
    return null_space(rows.reshape(n * n, n))


def _hermitian_part(S, c):
    """(c + c~)/2 where c~(x) = conj(c(x*)); keeps central elements central."""
    return 0.5 * (c + c[S.star].conj())


def _attempt(S, lam, rt, rng):
    n = S.n
    zbasis = _center_basis(S)
    # complex coefficients: real Hermitian central elements cannot separate
    # complex-conjugate characters
    k = zbasis.shape[1]
    z = _hermitian_part(S, zbasis @ (rng.standard_normal(k) + 1j * rng.standard_normal(k)))
    h = np.tensordot(z, lam, axes=1)
    w, v = np.linalg.eigh(h)
    spread = max(w[-1] - w[0], 1.0)
    groups, ambiguous = cluster_sorted(w, CLUSTER_REL * spread)
    if ambiguous:
        return None, "central eigenvalue gap in the ambiguity band"
    components = []
    for g in groups:
        q = v[:, g]
        k = len(g)
        # split the isotypic component with a random Hermitian commutant element
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        hc = np.tensordot(c, rt, axes=1)
        hc = q.conj().T @ (hc + hc.conj().T) @ q
        wc, vc = np.linalg.eigh(hc)
        sub, amb = cluster_sorted(wc, CLUSTER_REL * max(wc[-1] - wc[0], 1.0))
        if amb:
            return None, "commutant eigenvalue gap in the ambiguity band"
        sizes = {len(s) for s in sub}
        if len(sizes) != 1:
            return None, f"copies of unequal size {sorted(sizes)}"
        d = sizes.pop()
        m = len(sub)
        if d * m != k:
            return None, "component size mismatch"
        copies = [q @ vc[:, s] for s in sub]
        aligned = [copies[0]]
        for other in copies[1:]:
            for _ in range(4):
                c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
                t = other.conj().T @ np.tensordot(c, rt, axes=1) @ copies[0]
                sv = np.linalg.svd(t, compute_uv=False)
                if sv[-1] > 1e-6 * max(sv[0], 1e-300) and sv[0] > 1e-8:
                    break
            else:
                return None, "no intertwiner found between copies"
            uu, _, vh = np.linalg.svd(t)
            aligned.append(other @ (uu @ vh))
        # canonical key: diagonal of the central projection, independent of randomness
        proj_diag = np.round(np.real(np.einsum("ij,ij->i", q, q.conj())), 9)
        components.append((d, m, aligned, tuple(proj_diag)))
    components.sort(key=lambda c: (c[0], c[3]))
    return components, ""


def wedderburn_blocks(S, seed=0):
    lam = lambda_r(S).mats
    rt = right_translations(S)
    n = S.n
    algebra_dim = int(np.linalg.matrix_rank(lam.reshape(n, n * n)))
    rng = np.random.default_rng(seed)
    reason = ""
    for _ in range(MAX_TRIES):
        comps, reason = _attempt(S, lam, rt, rng)
        if comps is None:
            continue
        blocks = tuple((d, m) for d, m, _, _ in comps)
        transform = np.hstack([np.hstack(al) for _, _, al, _ in comps])
        bases = tuple(al[0] for _, _, al, _ in comps)
        ok, residual, why = _validate(lam, blocks, transform, algebra_dim)
        if not ok:
            reason = why
            continue
        images = np.stack([np.concatenate([(b.conj().T @ lam[x] @ b).ravel() for b in bases])
                           for x in range(n)], axis=1)
        return BlockDecomposition(algebra_dim, blocks, transform, bases, images, residual)
    raise DecompositionError(f"block decomposition of {S.name!r} failed after "
                             f"{MAX_TRIES} attempts: {reason}")


def _validate(lam, blocks, transform, algebra_dim):
    n = lam.shape[1]
    if transform.shape != (n, n):
        return False, np.inf, "transform is not square"
    if np.abs(transform.conj().T @ transform - np.eye(n)).max() > BLOCK_TOL:
        return False, np.inf, "transform is not unitary"
    if sum(d * d for d, _ in blocks) != algebra_dim:
        return False, np.inf, "sum of d_i^2 differs from the algebra dimension"
    mask = np.zeros((n, n), dtype=bool)
    k = 0
    spans = []
    for d, m in blocks:
        for c in range(m):
            mask[k:k + d, k:k + d] = True
            spans.append((k, d, c))
            k += d
    conj = np.einsum("ia,xij,jb->xab", transform.conj(), lam, transform)
    residual = float(np.abs(conj[:, ~mask]).max(initial=0.0))
    if residual > BLOCK_TOL:
        return False, residual, f"off-block residual {residual:.2e}"
    first = {}
    k = 0
    for d, m in blocks:
        ref = conj[:, k:k + d, k:k + d]
        for c in range(1, m):
            o = k + c * d
            if np.abs(conj[:, o:o + d, o:o + d] - ref).max() > BLOCK_TOL:
                return False, residual, "repeated blocks differ"
        k += d * m
    return True, residual, ""


def block_functional(S, u, dec):
    """Matrices Omega_i with sum_x f(x) u(x) = sum_i tr(Omega_i a_i(f))."""
    u = as_function(S, u)
    w = np.linalg.solve(dec.images.T, u.values)
    out, k = [], 0
    for d, _ in dec.blocks:
        out.append(w[k:k + d * d].reshape(d, d).T)
        k += d * d
    return out


def functional_from_blocks(dec, omegas):
    """Inverse of block_functional: u(x) = sum_i tr(Omega_i a_i(delta_x))."""
    w = np.concatenate([np.asarray(o).T.ravel() for o in omegas])
    return dec.images.T @ w


def coefficients_from_blocks(dec, blocks):
    """The f with a_i(f) = blocks[i] for every i."""
    vec = np.concatenate([np.asarray(b).ravel() for b in blocks])
    return np.linalg.solve(dec.images, vec)

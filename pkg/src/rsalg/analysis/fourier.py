"""Fourier-space constructions: generating sets, plateaus, separation, sample pools."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._linalg import DEFAULT_TOL, PsdCertificate
from ..errors import PropertyViolation
from ..restricted import (
    CFunction,
    as_function,
    delta,
    indicator,
    lambda_r,
    restricted_convolution,
    tilde,
)
from ..semigroup import idempotents
from .blocks import block_functional, functional_from_blocks, wedderburn_blocks
from .cones import is_positive_definite_star, is_restricted_pd
from .norms import b_norm

RANK_TOL = 1e-9
RANDOM_PROJECTIONS = 50


def rng_for(seed, *labels):
    """Independent, reproducible stream per (seed, label) pair."""
    key = [seed] + [sum(ord(c) * 31 ** i for i, c in enumerate(str(lab))) % 2**32 for lab in labels]
    return np.random.default_rng(key)


def random_vector(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def hermitian_symmetric(S, values):
    """(v + v~)/2: the part satisfying u(x*) = conj(u(x))."""
    v = np.asarray(values, dtype=complex)
    return 0.5 * (v + v[S.star].conj())


def conv_tilde(S, f, g):
    return restricted_convolution(S, f, tilde(S, g))


def unit_witness(S, x):
    """delta_{x*x} . delta~_{x*}, the function proposed as taking the value 1 at x."""
    return conv_tilde(S, delta(S, int(S.src[x])), delta(S, int(S.star[x])))


def point_witness(S, x):
    """delta_x . delta~_{x*x} = delta_x."""
    return conv_tilde(S, delta(S, x), delta(S, int(S.src[x])))


def ordinary_regular(S):
    """The ordinary left regular *-representation: delta_y -> delta_xy when x*x y = y."""
    n = S.n
    mats = np.zeros((n, n, n))
    for x in range(n):
        for y in range(n):
            if S.table[S.src[x], y] == y:
                mats[x, S.table[x, y], y] = 1.0
    return mats


def restricted_product_set(S, F):
    F = sorted(set(F))
    return sorted({S.mul(x, y) for x in F for y in F if S.admissible[x, y]})


@dataclass(frozen=True, eq=False)
class PlateauResult:
    u: CFunction
    K: tuple
    F: tuple
    FF: tuple  # F . F under the restricted product
    equals_indicator: bool  # u == chi_{F.F}
    unit_on_k: bool  # u == 1 on K
    certificate: PsdCertificate
    max_deviation: float  # max |u - chi_{F.F}|


def plateau(S, K, tol=DEFAULT_TOL):
    """u = chi_F . chi~_F with F = K u K* u {x*x : x in K}, and the checks made on it."""
    K = tuple(sorted({int(x) for x in K}))
    if not K:
        raise ValueError("K must be nonempty")
    F = tuple(sorted(set(K) | {int(S.star[x]) for x in K} | {int(S.src[x]) for x in K}))
    chi = indicator(S, F)
    u = conv_tilde(S, chi, chi)
    FF = tuple(restricted_product_set(S, F))
    target = indicator(S, FF).values
    dev = float(np.abs(u.values - target).max())
    return PlateauResult(
        u, K, F, FF,
        equals_indicator=dev == 0.0,
        unit_on_k=bool(np.all(u.values[list(K)] == 1.0)),
        certificate=is_restricted_pd(S, u, tol),
        max_deviation=dev,
    )


def _rank(vectors):
    if not len(vectors):
        return 0
    m = np.array([np.asarray(v) for v in vectors])
    s = np.linalg.svd(m, compute_uv=False)
    return int((s > RANK_TOL * max(1.0, s[0])).sum())


def _span_residual(basis, v):
    """Distance from v to the row span of basis, relative to max(1, |v|)."""
    b = np.array(basis)
    coef, *_ = np.linalg.lstsq(b.T, np.asarray(v), rcond=None)
    return float(np.linalg.norm(b.T @ coef - v) / max(1.0, np.linalg.norm(v)))


def positive_projections(S, count, rng, dec=None):
    """Random Hermitian-symmetric functionals with negative block parts clipped.

    Positive functionals on the restricted algebra are exactly the restricted
    positive definite functions; membership is re-certified by the Gram test
    by whoever consumes these.
    """
    dec = dec or wedderburn_blocks(S)
    out = []
    for _ in range(count):
        u = hermitian_symmetric(S, random_vector(rng, S.n))
        clipped = []
        for om in block_functional(S, u, dec):
            w, v = np.linalg.eigh(0.5 * (om + om.conj().T))
            clipped.append((v * np.clip(w, 0, None)) @ v.conj().T)
        out.append(CFunction(functional_from_blocks(dec, clipped), S.name))
    return out


def positive_pool(S, seed=0, size=24, dec=None, tol=DEFAULT_TOL):
    """At least `size` certified restricted, extendible positive definite samples.

    Mixes basis products h.h~, lambda_r coefficients of random vectors, singleton
    plateaus and clipped random functionals; every member passes the Gram test.
    """
    rng = rng_for(seed, "positive_pool", S.name)
    lam = lambda_r(S)
    pool = [conv_tilde(S, delta(S, x), delta(S, x)) for x in range(S.n)]
    for x in range(S.n):
        pool.append(plateau(S, [x]).u)
    for _ in range(max(4, size // 3)):
        h = random_vector(rng, S.n)
        pool.append(CFunction(np.einsum("i,xij,j->x", h.conj(), lam.mats, h), S.name))
    pool.extend(positive_projections(S, max(4, size // 3), rng, dec))
    certified = [u for u in pool if is_restricted_pd(S, u, tol).positive]
    return certified


@dataclass
class SpanReport:
    ranks: dict
    n: int
    e2_in_e1: float  # worst residual
    e3_in_e1: float
    e2_in_e3: list = field(default_factory=list)  # E2 generators failing the restricted test
    e3_in_e4: list = field(default_factory=list)  # E3 generators failing the unrestricted test
    e4_generators: int = 0
    e3_generators: int = 0
    e2_generators: int = 0

    @property
    def spans_full(self):
        return all(r == self.n for r in self.ranks.values())

    @property
    def chain_ok(self):
        return (self.spans_full and self.e2_in_e1 <= RANK_TOL and self.e3_in_e1 <= RANK_TOL
                and not self.e2_in_e3 and not self.e3_in_e4)

    def to_dict(self):
        return {
            "n": self.n,
            "ranks": self.ranks,
            "e2_in_span_e1_residual": self.e2_in_e1,
            "e3_in_span_e1_residual": self.e3_in_e1,
            "e2_not_restricted_pd": self.e2_in_e3,
            "e3_not_in_P(S)": self.e3_in_e4,
            "generators": {"E2": self.e2_generators, "E3": self.e3_generators,
                           "E4": self.e4_generators},
            "spans_full": self.spans_full,
            "chain_ok": self.chain_ok,
        }


def fourier_spans(S, seed=0, tol=DEFAULT_TOL, dec=None):
    """Generating sets for E1..E6 at finite scale, their ranks and the inclusion chain."""
    rng = rng_for(seed, "fourier_spans", S.name)
    n = S.n
    dec = dec or wedderburn_blocks(S, seed=seed)
    e1 = [conv_tilde(S, delta(S, x), delta(S, y)).values for x in range(n) for y in range(n)]
    basis = [v for v in e1 if np.any(v)]

    hs = [delta(S, x).values for x in range(n)]
    for x in range(n):
        for y in range(x + 1, n):
            hs.append(delta(S, x).values + delta(S, y).values)
            hs.append(delta(S, x).values + 1j * delta(S, y).values)
    hs.extend(random_vector(rng, n) for _ in range(8))
    e2 = [conv_tilde(S, h, h) for h in hs]

    e3 = [plateau(S, [x]).u for x in range(n)]
    e3 += [e for e in e2[:n]]
    e3 += positive_projections(S, RANDOM_PROJECTIONS, rng, dec)
    e3 = [u for u in e3 if is_restricted_pd(S, u, tol).positive]

    regular = ordinary_regular(S)
    e4 = [CFunction(np.ones(n), S.name)]
    for h in [delta(S, x).values for x in range(n)] + [random_vector(rng, n) for _ in range(8)]:
        e4.append(CFunction(np.einsum("i,xij,j->x", h.conj(), regular, h), S.name))
    e4 = [u for u in e4 if is_positive_definite_star(S, u, tol).positive]

    e2_bad = [i for i, u in enumerate(e2) if not is_restricted_pd(S, u, tol).positive]
    e3_bad = []
    for i, u in enumerate(e3):
        cert = is_positive_definite_star(S, u, tol)
        if not cert.positive:
            e3_bad.append({"index": i, "values": _fmt(u.values),
                           "min_eigenvalue": cert.min_eigenvalue})
    ranks = {
        "E1": _rank(e1),
        "E2": _rank([u.values for u in e2]),
        "E3": _rank([u.values for u in e3]),
        "E4": _rank([u.values for u in e4]),
        # with S finite, l2 = l2_f, so E5 = E2 and E6 = E1
        "E5": _rank([u.values for u in e2]),
        "E6": _rank(e1),
    }
    return SpanReport(
        ranks, n,
        e2_in_e1=max(_span_residual(basis, u.values) for u in e2),
        e3_in_e1=max(_span_residual(basis, u.values) for u in e3),
        e2_in_e3=e2_bad,
        e3_in_e4=e3_bad,
        e4_generators=len(e4),
        e3_generators=len(e3),
        e2_generators=len(e2),
    )


def _fmt(values):
    return [[round(float(z.real), 12), round(float(z.imag), 12)] for z in values]


@dataclass
class SeparationReport:
    unit_values: dict  # x -> value of the proposed witness at x
    unit_failures: list
    pairs: dict  # (x, y) -> witness description

    @property
    def all_separated(self):
        return len(self.pairs) == 0 or all(p is not None for p in self.pairs.values())


def separation_suite(S, tol=DEFAULT_TOL):
    """Point values of the unit witnesses and a separating function per pair.

    Pairs are separated by the first E1 generator delta_a . delta~_b whose values
    differ; failing that, by products u v of a witness u with u(x) = u(y) = 1.
    """
    n = S.n
    unit_values = {}
    failures = []
    for x in range(n):
        val = complex(unit_witness(S, x)[x])
        unit_values[x] = val
        if abs(val - 1) > tol:
            failures.append(x)
    gens = [((a, b), conv_tilde(S, delta(S, a), delta(S, b)).values)
            for a in range(n) for b in range(n)]
    pairs = {}
    for x in range(n):
        for y in range(x + 1, n):
            found = None
            for (a, b), v in gens:
                if abs(v[x] - v[y]) > tol:
                    found = {"kind": "E1", "f": a, "g": b,
                             "value_x": _fmt([v[x]])[0], "value_y": _fmt([v[y]])[0]}
                    break
            if found is None:
                u = point_witness(S, x).values
                for (a, b), v in gens:
                    w = u * v
                    if abs(w[x] - w[y]) > tol:
                        found = {"kind": "product", "f": a, "g": b,
                                 "value_x": _fmt([w[x]])[0], "value_y": _fmt([w[y]])[0]}
                        break
            if found is None:
                raise PropertyViolation(f"no function separates {x} and {y}", (x, y))
            pairs[(x, y)] = found
    return SeparationReport(unit_values, failures, pairs)


@dataclass
class ConvolutionBoundReport:
    trials: int
    max_ratio: float
    equality_at_identity: float  # ||delta_1 . delta~_1||_r


def verify_convolution_bound(S, trials=100, seed=0, dec=None, rel_tol=1e-7):
    """||f . g~||_r <= ||f||_2 ||g||_2 on random complex f, g; hard error on violation."""
    dec = dec or wedderburn_blocks(S, seed=seed)
    rng = rng_for(seed, "convolution_bound", S.name)
    worst = 0.0
    for t in range(trials):
        f, g = random_vector(rng, S.n), random_vector(rng, S.n)
        bound = np.linalg.norm(f) * np.linalg.norm(g)
        val = b_norm(S, conv_tilde(S, f, g), decomposition=dec, seed=seed).value
        ratio = val / bound
        worst = max(worst, ratio)
        if ratio > 1 + rel_tol:
            raise PropertyViolation(f"||f.g~||_r / (||f|| ||g||) = {ratio} > 1", t)
    one = S.identity if S.identity is not None else 0
    eq = b_norm(S, conv_tilde(S, delta(S, one), delta(S, one)), decomposition=dec).value
    return ConvolutionBoundReport(trials, worst, eq)


# public name used by the operation catalogue
verify_lemma_2_7 = verify_convolution_bound


def idempotent_sum(S, u):
    u = as_function(S, u)
    return complex(sum(u.values[e] for e in idempotents(S)))

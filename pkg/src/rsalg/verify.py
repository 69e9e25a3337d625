"""The full property suite, run per semigroup and assembled into one report.

Every check returns a plain dict with a ``status`` ("pass" or "fail") plus
its numeric margins and, on failure, a witness.  Reports contain no timings
and floats are rounded, so equal inputs give byte-identical documents.
"""

from __future__ import annotations

import json

import numpy as np

from ._linalg import DEFAULT_TOL, opnorm
from .analysis.blocks import BLOCK_TOL, wedderburn_blocks
from .analysis.cones import is_restricted_pd
from .analysis.fourier import (
    fourier_spans,
    hermitian_symmetric,
    idempotent_sum,
    plateau,
    positive_pool,
    positive_projections,
    random_vector,
    rng_for,
    separation_suite,
    unit_witness,
    verify_convolution_bound,
)
from .analysis.norms import BOUND_GAP, b_norm, sigma_r_norm
from .errors import NotPositiveDefiniteError, PropertyViolation
from .groupoid import (
    build_associated_groupoid,
    check_groupoid,
    groupoid_coefficient,
    is_positive_definite_groupoid,
    left_regular_groupoid_rep,
)
from .io import complex_pairs
from .representations import (
    check_restricted_rep,
    coefficient,
    direct_sum,
    gns,
    groupoid_to_rep,
    rep_to_groupoid,
    tensor,
    vector_to_sections,
)
from .restricted import CFunction, build_restricted_semigroup, lambda_r
from .semigroup import check_inverse_semigroup

SCHEMA = "rsalg-report/1"
SIG = 10  # significant digits kept in reports

CHECKS = (
    "axioms",
    "block_validity",
    "norm_equals_unit_value",
    "norm_equals_idempotent_sum",
    "convolution_norm_bound",
    "fourier_spans",
    "unit_witness",
    "plateau",
    "separation",
    "gns_round_trip",
    "groupoid_dictionary",
    "cone_identification",
    "duality",
    "algebra_property",
    "sigma_dominance",
)


def rnd(v):
    """Round for reports: floats to SIG significant digits, recursively."""
    if isinstance(v, dict):
        return {str(k): rnd(w) for k, w in v.items()}
    if isinstance(v, (list, tuple)):
        return [rnd(w) for w in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not np.isfinite(v):
            return str(v)
        if v == 0.0:
            return 0.0
        return float(f"{v:.{SIG}g}")
    if isinstance(v, (complex, np.complexfloating)):
        return rnd([v.real, v.imag])
    return v


def _status(ok):
    return "pass" if ok else "fail"


class Context:
    """Per-semigroup values shared between checks; computed once."""

    def __init__(self, S, seed, tol):
        self.S = S
        self.seed = seed
        self.tol = tol
        self.R = build_restricted_semigroup(S)
        self.G = build_associated_groupoid(S)
        self.dec = wedderburn_blocks(S, seed=seed)
        self.lam = lambda_r(S)
        self.pool = positive_pool(S, seed=seed, size=24, dec=self.dec, tol=tol)

    def rng(self, label):
        return rng_for(self.seed, label, self.S.name)

    def bnorm(self, u):
        return b_norm(self.S, u, decomposition=self.dec, seed=self.seed)


def check_axioms(ctx):
    T = ctx.R.sr
    rep_r = check_inverse_semigroup(T.table, T.star, T.identity, T.zero)
    rep_a = check_groupoid(ctx.G)
    zero_ok = T.zero is not None and T.zero == ctx.R.zero_index
    return {
        "status": _status(rep_r.valid and rep_a.valid and zero_ok),
        "restricted_semigroup": rep_r.to_dict(),
        "restricted_zero": int(ctx.R.zero_index),
        "groupoid": rep_a.to_dict(),
        "units": len(ctx.G.units),
    }


def check_block_validity(ctx):
    d = ctx.dec
    ok = d.off_block_residual <= BLOCK_TOL and sum(b * b for b, _ in d.blocks) == d.algebra_dim
    return {"status": _status(ok), "algebra_dim": d.algebra_dim,
            "blocks": [list(b) for b in d.blocks], "off_block_residual": d.off_block_residual}


def check_norm_equals_unit_value(ctx):
    """Claim under test: ||u||_r = u(1) for restricted extendible positive definite u."""
    S = ctx.S
    if S.identity is None:
        return {"status": "pass", "skipped": "no identity"}
    worst, witness = 0.0, None
    for i, u in enumerate(ctx.pool):
        val = ctx.bnorm(u).value
        u1 = float(u.values[S.identity].real)
        dev = abs(val - u1) / max(1.0, u1)
        if dev > worst:
            worst = dev
            witness = {"sample": i, "values": complex_pairs(u.values), "b_norm": val,
                       "u_identity": u1, "idempotent_sum": idempotent_sum(S, u).real}
    ok = len(ctx.pool) >= 20 and worst <= 1e-7
    out = {"status": _status(ok), "samples": len(ctx.pool), "max_relative_deviation": worst}
    if not ok:
        out["witness"] = witness
    return out


def check_norm_equals_idempotent_sum(ctx):
    """||u||_r = sum over idempotents of u(e), for restricted positive definite u."""
    worst, witness = 0.0, None
    for i, u in enumerate(ctx.pool):
        val = ctx.bnorm(u).value
        target = idempotent_sum(ctx.S, u).real
        dev = abs(val - target) / max(1.0, target)
        if dev > worst:
            worst, witness = dev, {"sample": i, "b_norm": val, "idempotent_sum": target}
    ok = worst <= 1e-7
    out = {"status": _status(ok), "samples": len(ctx.pool), "max_relative_deviation": worst}
    if not ok:
        out["witness"] = witness
    return out


def check_convolution_bound(ctx):
    try:
        rep = verify_convolution_bound(ctx.S, trials=100, seed=ctx.seed, dec=ctx.dec)
    except PropertyViolation as exc:
        return {"status": "fail", "error": str(exc), "witness": exc.witness}
    eq_ok = abs(rep.equality_at_identity - 1.0) <= 1e-7
    return {"status": _status(eq_ok), "trials": rep.trials, "max_ratio": rep.max_ratio,
            "identity_value": rep.equality_at_identity}


def check_fourier_spans(ctx):
    rep = fourier_spans(ctx.S, seed=ctx.seed, tol=ctx.tol, dec=ctx.dec)
    out = rep.to_dict()
    out["e3_not_in_P(S)"] = out["e3_not_in_P(S)"][:4]  # witnesses, not the whole list
    out["e3_not_in_P(S)_count"] = len(rep.e3_in_e4)
    return {"status": _status(rep.chain_ok), **out}


def check_unit_witness(ctx):
    S = ctx.S
    values = {x: complex(unit_witness(S, x)[x]) for x in range(S.n)}
    bad = [x for x, v in values.items() if v != 1]
    out = {"status": _status(not bad), "failures": len(bad)}
    if bad:
        out["witness"] = [{"x": x, "value": values[x]} for x in bad[:8]]
    return out


def check_plateau(ctx):
    S = ctx.S
    rng = ctx.rng("plateau")
    Ks = [[x] for x in range(S.n)]
    if S.n >= 2:
        Ks.append(sorted(int(v) for v in rng.choice(S.n, size=2, replace=False)))
    failures = []
    for K in Ks:
        p = plateau(S, K, ctx.tol)
        if not (p.unit_on_k and p.equals_indicator and p.certificate.positive):
            failures.append({"K": list(p.K), "F": list(p.F), "FF": list(p.FF),
                             "unit_on_K": p.unit_on_k, "equals_indicator": p.equals_indicator,
                             "restricted_pd": p.certificate.positive,
                             "max_deviation": p.max_deviation,
                             "values": complex_pairs(p.u.values)})
    out = {"status": _status(not failures), "sets": len(Ks), "failures": len(failures)}
    if failures:
        out["witness"] = failures[:4]
    return out


def check_separation(ctx):
    try:
        rep = separation_suite(ctx.S, ctx.tol)
    except PropertyViolation as exc:
        return {"status": "fail", "error": str(exc), "witness": list(exc.witness)}
    pairs = [{"x": x, "y": y, **w} for (x, y), w in sorted(rep.pairs.items())]
    return {"status": _status(rep.all_separated), "pairs": pairs}


def check_gns_round_trip(ctx):
    S = ctx.S
    worst, zero_worst, bad = 0.0, 0.0, []
    for i, u in enumerate(ctx.pool):
        try:
            g = gns(S, u, tol=ctx.tol)
        except NotPositiveDefiniteError as exc:
            bad.append({"sample": i, "error": str(exc)})
            continue
        back = coefficient(S, g.rep, g.cyclic, g.cyclic)
        scale = max(1.0, u.sup())
        worst = max(worst, float(np.abs(back.values - u.values).max()) / scale)
        zero_worst = max(zero_worst, g.cyclic_zero_norm / scale)
        if not check_restricted_rep(S, g.rep, ctx.tol).valid:
            bad.append({"sample": i, "error": "GNS output is not a restricted representation"})
    ok = not bad and worst <= 1e-8 and zero_worst <= 1e-8
    out = {"status": _status(ok), "samples": len(ctx.pool), "max_error": worst,
           "max_zero_image_of_cyclic": zero_worst}
    if bad:
        out["witness"] = bad[:4]
    return out


def _dictionary_error(S, G, pi, rng, tol):
    """Coefficient drift across rep -> bundle -> rep, for random vectors."""
    xi, eta = random_vector(rng, pi.dim), random_vector(rng, pi.dim)
    scale = max(1.0, np.linalg.norm(xi) * np.linalg.norm(eta))
    u = coefficient(S, pi, xi, eta).values
    bundle = rep_to_groupoid(S, pi, tol)
    sx, se = vector_to_sections(S, pi, xi, tol), vector_to_sections(S, pi, eta, tol)
    u_g = groupoid_coefficient(G, bundle, sx, se).values
    pi2 = groupoid_to_rep(S, bundle)
    u_back = coefficient(S, pi2, sx, se).values
    return max(float(np.abs(u - u_g).max()), float(np.abs(u - u_back).max())) / scale


def check_groupoid_dictionary(ctx):
    S, G = ctx.S, ctx.G
    rng = ctx.rng("dictionary")
    errors = {"lambda_r": _dictionary_error(S, G, ctx.lam, rng, ctx.tol)}
    g = gns(S, ctx.pool[-1], tol=ctx.tol)
    errors["gns"] = _dictionary_error(S, G, g.rep, rng, ctx.tol)
    # converse: bundle -> rep -> bundle, starting from the left regular bundle
    L = left_regular_groupoid_rep(G)
    xi, eta = random_vector(rng, L.total_dim), random_vector(rng, L.total_dim)
    scale = max(1.0, np.linalg.norm(xi) * np.linalg.norm(eta))
    u_g = groupoid_coefficient(G, L, xi, eta).values
    pi = groupoid_to_rep(S, L)
    u_s = coefficient(S, pi, xi, eta).values
    L2 = rep_to_groupoid(S, pi, ctx.tol)
    sx, se = vector_to_sections(S, pi, xi, ctx.tol), vector_to_sections(S, pi, eta, ctx.tol)
    u_g2 = groupoid_coefficient(G, L2, sx, se).values
    errors["left_regular_bundle"] = max(float(np.abs(u_g - u_s).max()),
                                        float(np.abs(u_g - u_g2).max())) / scale
    ok = all(e <= 1e-9 for e in errors.values())
    return {"status": _status(ok), "max_error": errors}


def check_cone_identification(ctx, samples=100):
    S, G = ctx.S, ctx.G
    rng = ctx.rng("cones")
    positives = positive_projections(S, samples // 2, rng, ctx.dec)
    funcs = []
    for k in range(samples):
        noise = hermitian_symmetric(S, random_vector(rng, S.n))
        if k % 2 == 0:
            size = (0.0, 1e-9, 1e-6, 1e-3, 0.1)[(k // 2) % 5]
            funcs.append(positives[k // 2].values + size * noise)
        else:
            funcs.append(noise)
    members = disagreements = marginal = 0
    witness = None
    for k, v in enumerate(funcs):
        f = CFunction(v, S.name)
        a = is_restricted_pd(S, f, ctx.tol, restricted=ctx.R)
        b = is_positive_definite_groupoid(G, f, ctx.tol)
        if a.marginal or b.marginal:
            marginal += 1
            a = is_restricted_pd(S, f, ctx.tol / 10, restricted=ctx.R)
            b = is_positive_definite_groupoid(G, f, ctx.tol / 10)
        members += a.positive
        if a.positive != b.positive:
            disagreements += 1
            if witness is None:
                witness = {"sample": k, "values": complex_pairs(v),
                           "restricted_min_eigenvalue": a.min_eigenvalue,
                           "groupoid_min_eigenvalues": b.min_eigenvalues}
    out = {"status": _status(disagreements == 0), "samples": samples, "members": members,
           "marginal_reruns": marginal, "disagreements": disagreements}
    if witness:
        out["witness"] = witness
    return out


def check_duality(ctx, pairs=100):
    S = ctx.S
    rng = ctx.rng("duality")
    worst, gap = 0.0, 0.0
    for _ in range(pairs):
        f, u = random_vector(rng, S.n), random_vector(rng, S.n)
        nf = sigma_r_norm(S, f).value
        rep = ctx.bnorm(u)
        gap = max(gap, (rep.upper_bound - rep.lower_bound) / max(1.0, rep.value))
        worst = max(worst, abs(np.dot(f, u)) / (nf * rep.value))
    reps = {"lambda_r": ctx.lam, "lambda_r+lambda_r": direct_sum(ctx.lam, ctx.lam)}
    if S.n <= 8:  # the tensor square has dimension n^2
        reps["lambda_r(x)lambda_r"] = tensor(ctx.lam, ctx.lam)
    coeff_excess = {}
    for name, pi in reps.items():
        xi, eta = random_vector(rng, pi.dim), random_vector(rng, pi.dim)
        val = ctx.bnorm(coefficient(S, pi, xi, eta)).value
        coeff_excess[name] = val - np.linalg.norm(xi) * np.linalg.norm(eta)
    ok = worst <= 1 + 1e-7 and gap <= BOUND_GAP and all(e <= 1e-7 for e in coeff_excess.values())
    return {"status": _status(ok), "pairs": pairs, "max_pairing_ratio": worst,
            "max_bound_gap": gap, "coefficient_excess": coeff_excess}


def check_algebra_property(ctx, pairs=20):
    S = ctx.S
    rng = ctx.rng("algebra")
    worst = 0.0
    for _ in range(pairs):
        u, v = random_vector(rng, S.n), random_vector(rng, S.n)
        lhs = ctx.bnorm(CFunction(u * v, S.name)).value
        rhs = ctx.bnorm(CFunction(u, S.name)).value * ctx.bnorm(CFunction(v, S.name)).value
        worst = max(worst, lhs / rhs)
    return {"status": _status(worst <= 1 + 1e-6), "pairs": pairs, "max_ratio": worst}


def check_sigma_dominance(ctx, trials=20):
    """||sum f(x) pi(x)|| <= ||f||_{Sigma_r} for every representation built here."""
    S = ctx.S
    rng = ctx.rng("dominance")
    reps = {"lambda_r+lambda_r": direct_sum(ctx.lam, ctx.lam),
            "gns": gns(S, ctx.pool[-1], tol=ctx.tol).rep}
    if S.n <= 8:
        reps["lambda_r(x)lambda_r"] = tensor(ctx.lam, ctx.lam)
    worst = 0.0
    for _ in range(trials):
        f = random_vector(rng, S.n)
        nf = sigma_r_norm(S, f).value
        for pi in reps.values():
            worst = max(worst, opnorm(pi.extend(f)) / nf)
    return {"status": _status(worst <= 1 + 1e-9), "trials": trials, "max_ratio": worst}


RUNNERS = {
    "axioms": check_axioms,
    "block_validity": check_block_validity,
    "norm_equals_unit_value": check_norm_equals_unit_value,
    "norm_equals_idempotent_sum": check_norm_equals_idempotent_sum,
    "convolution_norm_bound": check_convolution_bound,
    "fourier_spans": check_fourier_spans,
    "unit_witness": check_unit_witness,
    "plateau": check_plateau,
    "separation": check_separation,
    "gns_round_trip": check_gns_round_trip,
    "groupoid_dictionary": check_groupoid_dictionary,
    "cone_identification": check_cone_identification,
    "duality": check_duality,
    "algebra_property": check_algebra_property,
    "sigma_dominance": check_sigma_dominance,
}


def verify_semigroup(S, seed=0, tol=DEFAULT_TOL, checks=CHECKS):
    ctx = Context(S, seed, tol)
    results = {name: RUNNERS[name](ctx) for name in checks}
    ok = all(r["status"] == "pass" for r in results.values())
    return {"name": S.name, "n": S.n, "status": _status(ok), "checks": results}


def verify_all(semigroups, seed=0, tol=DEFAULT_TOL, checks=CHECKS):
    entries = [verify_semigroup(S, seed, tol, checks) for S in sorted(semigroups, key=lambda s: s.name)]
    summary = {}
    for name in checks:
        passed = sum(e["checks"][name]["status"] == "pass" for e in entries)
        summary[name] = {"pass": passed, "fail": len(entries) - passed}
    return rnd({
        "schema": SCHEMA,
        "seed": seed,
        "tol": tol,
        "status": _status(all(e["status"] == "pass" for e in entries)),
        "summary": summary,
        "semigroups": entries,
    })


def render_report(report):
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def render_text(report):
    lines = [f"seed {report['seed']}  tol {report['tol']}  overall {report['status'].upper()}"]
    for entry in report["semigroups"]:
        lines.append(f"{entry['name']} (n={entry['n']}): {entry['status'].upper()}")
        for name, res in entry["checks"].items():
            lines.append(f"  {res['status'].upper():4}  {name}")
    return "\n".join(lines) + "\n"

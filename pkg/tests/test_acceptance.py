"""Acceptance criteria, one test per criterion and corpus member.

Each test records its outcome in RESULTS; the terminal summary hook in
conftest.py prints one PASS/FAIL line per criterion.  Run this file directly
(`python tests/test_acceptance.py`) for the summary lines alone.
"""

import subprocess
import sys
from functools import lru_cache

import numpy as np
import pytest

from rsalg.analysis import fourier_spans, plateau, separation_suite, verify_convolution_bound
from rsalg.analysis.fourier import conv_tilde, random_vector, rng_for, unit_witness
from rsalg.corpus import NAMES, builtin
from rsalg.errors import PropertyViolation
from rsalg.restricted import delta
from rsalg.semigroup import check_inverse_semigroup
from rsalg.groupoid import check_groupoid
from rsalg.verify import (
    Context,
    check_cone_identification,
    check_duality,
    check_gns_round_trip,
    check_groupoid_dictionary,
)

SEED = 7
TITLES = {
    1: "S_r and S_a axioms",
    2: "dual norm of restricted positive u equals u(1)",
    3: "||f.g~||_r <= ||f||_2 ||g||_2",
    4: "Fourier span chain E1..E4",
    5: "unit witness and plateau identities",
    6: "points separated by explicit witnesses",
    7: "GNS round trip",
    8: "semigroup/groupoid representation dictionary",
    9: "restricted and groupoid cones agree",
    10: "duality and coefficient bounds",
    11: "deterministic structured verify report",
}
RESULTS = {k: {} for k in TITLES}


@lru_cache(maxsize=None)
def context(name):
    return Context(builtin(name), SEED, 1e-9)


def record(criterion, member, ok, detail=""):
    RESULTS[criterion][member] = (bool(ok), detail)
    assert ok, f"criterion {criterion} ({member}): {detail}"


@pytest.mark.parametrize("name", NAMES)
def test_criterion_01_axioms(name):
    ctx = context(name)
    T = ctx.R.sr
    rep_r = check_inverse_semigroup(T.table, T.star, T.identity, T.zero)
    rep_a = check_groupoid(ctx.G)
    ok = rep_r.valid and rep_a.valid and T.zero == ctx.R.zero_index
    record(1, name, ok, f"S_r violations {len(rep_r.violations)}, S_a violations {len(rep_a.violations)}")


@pytest.mark.parametrize("name", NAMES)
def test_criterion_02_norm_equals_unit_value(name):
    ctx = context(name)
    S = ctx.S
    assert len(ctx.pool) >= 20
    worst = 0.0
    for u in ctx.pool:
        u1 = u.values[S.identity].real
        worst = max(worst, abs(ctx.bnorm(u).value - u1) / max(1.0, u1))
    record(2, name, worst <= 1e-7, f"{len(ctx.pool)} samples, worst |b_norm(u) - u(1)| / max(1, u(1)) = {worst:.3e}")


@pytest.mark.parametrize("name", NAMES)
def test_criterion_03_convolution_bound(name):
    ctx = context(name)
    try:
        rep = verify_convolution_bound(ctx.S, trials=100, seed=SEED, dec=ctx.dec, rel_tol=1e-7)
    except PropertyViolation as exc:
        record(3, name, False, str(exc))
    one = delta(ctx.S, ctx.S.identity)
    equality = ctx.bnorm(conv_tilde(ctx.S, one, one)).value
    ok = rep.max_ratio <= 1 + 1e-7 and abs(equality - 1.0) <= 1e-7
    record(3, name, ok, f"max ratio {rep.max_ratio:.9f}, ||d1.d1~||_r = {equality:.12g}")


@pytest.mark.parametrize("name", NAMES)
def test_criterion_04_spans(name):
    ctx = context(name)
    rep = fourier_spans(ctx.S, seed=SEED, dec=ctx.dec)
    ok = (rep.ranks["E1"] == ctx.S.n and rep.e2_in_e1 <= 1e-9 and rep.e3_in_e1 <= 1e-9
          and not rep.e3_in_e4)
    record(4, name, ok, f"rank E1 {rep.ranks['E1']}/{ctx.S.n}, residuals {rep.e2_in_e1:.1e}/"
                        f"{rep.e3_in_e1:.1e}, E3 generators outside P(S): {len(rep.e3_in_e4)}"
                        f"/{rep.e3_generators}")


@pytest.mark.parametrize("name", NAMES)
def test_criterion_05_unit_witness_and_plateau(name):
    S = context(name).S
    witness_bad = [x for x in range(S.n) if unit_witness(S, x)[x] != 1]
    rng = rng_for(SEED, "acceptance_plateau", name)
    Ks = [[x] for x in range(S.n)] + [list(rng.choice(S.n, size=2, replace=False))]
    plateau_bad = []
    for K in Ks:
        p = plateau(S, K)
        if not (p.unit_on_k and p.equals_indicator):
            plateau_bad.append(list(p.K))
    ok = not witness_bad and not plateau_bad
    record(5, name, ok, f"u_x(x) != 1 at {witness_bad}; plateau fails for K in {plateau_bad}")


@pytest.mark.parametrize("name", NAMES)
def test_criterion_06_separation(name):
    S = context(name).S
    rep = separation_suite(S)
    ok = rep.all_separated and len(rep.pairs) == S.n * (S.n - 1) // 2
    record(6, name, ok, f"{len(rep.pairs)} pairs separated")


@pytest.mark.parametrize("name", NAMES)
def test_criterion_07_gns(name):
    r = check_gns_round_trip(context(name))
    record(7, name, r["status"] == "pass",
           f"max error {r['max_error']:.2e}, max |pi(0) xi| {r['max_zero_image_of_cyclic']:.2e}")


@pytest.mark.parametrize("name", NAMES)
def test_criterion_08_dictionary(name):
    r = check_groupoid_dictionary(context(name))
    record(8, name, r["status"] == "pass", f"max errors {r['max_error']}")


@pytest.mark.parametrize("name", NAMES)
def test_criterion_09_cones(name):
    r = check_cone_identification(context(name), samples=100)
    record(9, name, r["status"] == "pass",
           f"{r['disagreements']} disagreements, {r['members']} members, {r['marginal_reruns']} reruns")


@pytest.mark.parametrize("name", NAMES)
def test_criterion_10_duality(name):
    r = check_duality(context(name), pairs=100)
    record(10, name, r["status"] == "pass",
           f"max pairing ratio {r['max_pairing_ratio']:.9f}, coefficient excess "
           f"{max(r['coefficient_excess'].values()):.2e}")


def test_criterion_11_determinism():
    cmd = [sys.executable, "-m", "rsalg.cli", "verify", "--builtin", "all", "--seed", "7",
           "--format", "structured"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    ok = a.stdout == b.stdout and a.stdout.startswith(b"{") and a.returncode in (0, 1)
    record(11, "all", ok, f"{len(a.stdout)} bytes, identical: {a.stdout == b.stdout}")


def summary_lines():
    lines = []
    for k, title in TITLES.items():
        res = RESULTS[k]
        if not res:
            lines.append(f"criterion {k:2d} NOT RUN  {title}")
            continue
        failed = sorted(m for m, (ok, _) in res.items() if not ok)
        verdict = "PASS" if not failed else "FAIL"
        tail = f" (failing: {', '.join(failed)})" if failed else ""
        lines.append(f"criterion {k:2d} {verdict}  {title}{tail}")
    return lines


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

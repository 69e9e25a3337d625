import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import CORPUS, cvec
from rsalg.corpus import builtin
from rsalg.errors import CarrierError
from rsalg.representations import check_restricted_rep
from rsalg.restricted import (
    CFunction,
    as_function,
    build_restricted_semigroup,
    coefficient_pair,
    delta,
    lambda_r,
    restricted_convolution,
    restricted_product,
    rho_r,
    right_translations,
    tilde,
)
from rsalg.semigroup import check_inverse_semigroup, symmetric_inverse_monoid


def brute_convolution(S, f, g):
    out = np.zeros(S.n, dtype=complex)
    for x in range(S.n):
        for y in range(S.n):
            if S.src[x] == S.rng[y]:
                out[S.table[x, y]] += f[x] * g[y]
    return out


def test_restricted_product_examples():
    Z2 = builtin("Z2")
    assert restricted_product(Z2, 1, 1) == 0
    sl = builtin("semilattice2")
    assert restricted_product(sl, 0, 1) is None
    I2 = symmetric_inverse_monoid(2)
    for x in range(I2.n):
        assert restricted_product(I2, x, int(I2.star[x])) == I2.table[x, I2.star[x]]


def test_restricted_semigroup_is_valid(S):
    R = build_restricted_semigroup(S)
    T = R.sr
    assert T.n == S.n + 1
    assert T.zero == R.zero_index
    assert check_inverse_semigroup(T.table, T.star, T.identity, T.zero).valid
    embed = list(R.embed)
    assert sorted(embed + [R.zero_index]) == list(range(T.n))
    for x in range(S.n):
        assert T.star[embed[x]] == embed[S.star[x]]
        for y in range(S.n):
            expected = embed[S.table[x, y]] if S.admissible[x, y] else R.zero_index
            assert T.table[embed[x], embed[y]] == expected


def test_restricted_semigroup_examples():
    R = build_restricted_semigroup(builtin("Z2"))
    e = list(R.embed)
    assert R.sr.n == 3 and R.sr.table[e[1], e[1]] == e[0]
    R = build_restricted_semigroup(builtin("semilattice2"))
    one, idem = R.embed
    assert R.sr.table[one, idem] == R.zero_index
    assert R.sr.table[one, one] == one and R.sr.table[idem, idem] == idem


def test_point_mass_convolution(S):
    for x in range(S.n):
        for y in range(S.n):
            got = restricted_convolution(S, delta(S, x), delta(S, y)).values
            want = delta(S, int(S.table[x, y])).values if S.admissible[x, y] else np.zeros(S.n)
            assert np.array_equal(got, want)


def test_convolution_examples():
    Z2 = builtin("Z2")
    f = CFunction([1, 1], "Z2")
    assert np.allclose(restricted_convolution(Z2, f, f).values, [2, 2])
    sl = builtin("semilattice2")
    assert not np.any(restricted_convolution(sl, delta(sl, 0), delta(sl, 1)).values)


def test_convolution_matches_brute_force(S, rng):
    for _ in range(5):
        f, g = cvec(rng, S.n), cvec(rng, S.n)
        got = restricted_convolution(S, f, g)
        assert np.allclose(got.values, brute_convolution(S, f, g))
        assert got.norm1() <= np.abs(f).sum() * np.abs(g).sum() + 1e-12


def test_convolution_associative(S, rng):
    f, g, h = (cvec(rng, S.n) for _ in range(3))
    left = restricted_convolution(S, restricted_convolution(S, f, g), h)
    right = restricted_convolution(S, f, restricted_convolution(S, g, h))
    assert np.allclose(left.values, right.values)


def test_carrier_mismatch():
    Z2, Z3 = builtin("Z2"), builtin("Z3")
    with pytest.raises(CarrierError):
        restricted_convolution(Z2, CFunction([1, 0], "Z2"), CFunction([1, 0], "other"))
    with pytest.raises(CarrierError):
        as_function(Z3, CFunction([1, 0], "Z2"))


def test_tilde_examples(S, rng):
    for y in range(S.n):
        assert np.array_equal(tilde(S, delta(S, y)).values, delta(S, int(S.star[y])).values)
    g = cvec(rng, S.n)
    assert np.allclose(tilde(S, tilde(S, g)).values, g)
    assert np.isclose(tilde(S, g).norm2(), np.linalg.norm(g))
    Z2 = builtin("Z2")
    assert np.allclose(tilde(Z2, CFunction([0, 1j], "Z2")).values, [0, -1j])
    sl = builtin("semilattice3")
    real = CFunction([0.5, -2.0, 3.0], sl.name)
    assert np.array_equal(tilde(sl, real).values, real.values)


def test_lambda_examples():
    assert np.array_equal(lambda_r(builtin("Z2")).mats[1], [[0, 1], [1, 0]])
    lam = lambda_r(builtin("semilattice2")).mats
    assert np.array_equal(lam[0], np.diag([1, 0]))
    assert np.array_equal(lam[1], np.diag([0, 1]))


@pytest.mark.parametrize("build", [lambda_r, rho_r])
def test_regular_reps_are_restricted(S, build):
    pi = build(S)
    assert pi.dim == S.n
    assert check_restricted_rep(S, pi).valid
    m = pi.mats
    for x in range(S.n):
        assert np.array_equal(m[x] @ m[S.star[x]] @ m[x], m[x])


def test_lambda_tilde_is_multiplicative(S, rng):
    lam = lambda_r(S)
    f, g = cvec(rng, S.n), cvec(rng, S.n)
    fg = restricted_convolution(S, f, g).values
    assert np.allclose(lam.extend(fg), lam.extend(f) @ lam.extend(g))


def test_rho_acts_on_the_right(S):
    rho = rho_r(S).mats
    for x in range(S.n):
        for y in range(S.n):
            col = rho[x][:, y]
            if S.src[y] == S.src[x]:
                assert np.array_equal(col, delta(S, int(S.table[y, S.star[x]])).values)
            else:
                assert not np.any(col)


def test_right_translations_commute_with_lambda(S):
    lam = lambda_r(S).mats
    rt = right_translations(S)
    for a in lam:
        for b in rt:
            assert np.array_equal(a @ b, b @ a)


def test_coefficient_pair_examples(S):
    one = S.identity
    u = coefficient_pair(S, delta(S, one), delta(S, one))
    assert np.array_equal(u.values, delta(S, one).values)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CORPUS), st.integers(0, 2**31 - 1))
def test_coefficient_pair_two_ways(name, seed):
    S = builtin(name)
    r = np.random.default_rng(seed)
    f, g = cvec(r, S.n), cvec(r, S.n)
    u = coefficient_pair(S, f, g)
    lam = lambda_r(S).mats
    for y in range(S.n):
        assert np.isclose(u[y], np.vdot(g, lam[S.star[y]] @ f))


def test_plateau_identity_needs_multiplicity_one():
    # chi_F . chi~_F counts factorizations, so on a group with F = G it is |G| chi_G
    Z2 = builtin("Z2")
    chi = CFunction([1, 1], "Z2")
    assert np.allclose(coefficient_pair(Z2, chi, chi).values, [2, 2])


def test_cfunction_basics():
    f = CFunction([1, -2j, 3], "c")
    assert f.norm1() == pytest.approx(6)
    assert f.norm2() == pytest.approx(np.sqrt(14))
    assert f.sup() == pytest.approx(3)
    assert (f + f).allclose(f * 2)
    assert (f - f).allclose(CFunction(np.zeros(3), "c"))
    with pytest.raises(ValueError):
        f.values[0] = 2

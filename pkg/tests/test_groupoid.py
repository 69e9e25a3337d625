from dataclasses import replace

import numpy as np
import pytest

from conftest import cvec
from rsalg.corpus import builtin
from rsalg.groupoid import (
    UNDEFINED,
    build_associated_groupoid,
    check_fn,
    check_groupoid,
    check_groupoid_rep,
    groupoid_convolution,
    i_norm,
    i_norm_parts,
    is_positive_definite_groupoid,
    isotropy,
    left_regular_groupoid_rep,
    range_fiber,
    source_fiber,
    theta,
)
from rsalg.restricted import CFunction, delta, restricted_convolution
from rsalg.semigroup import idempotents, symmetric_inverse_monoid


def test_associated_groupoid_is_valid(S):
    G = build_associated_groupoid(S)
    assert check_groupoid(G).valid
    assert list(G.units) == list(idempotents(S))
    assert np.array_equal(G.defined, S.admissible)
    assert np.array_equal(G.inv, S.star)
    assert np.all(G.prod[G.defined] == S.table[G.defined])
    assert np.all(G.prod[~G.defined] == UNDEFINED)


def test_groupoid_examples():
    G = build_associated_groupoid(builtin("Z2"))
    assert list(G.units) == [0] and G.defined.all()
    G = build_associated_groupoid(builtin("semilattice2"))
    assert list(G.units) == [0, 1]
    assert np.array_equal(G.defined, np.eye(2, dtype=bool))
    I2 = symmetric_inverse_monoid(2)
    G = build_associated_groupoid(I2)
    assert len(G.units) == 4
    iso = isotropy(G, I2.identity)
    assert len(iso) == 2  # the identity and the swap


def test_tampered_inverse_is_reported():
    G = build_associated_groupoid(builtin("Z3"))
    inv = np.array(G.inv)
    inv[1] = 1
    rep = check_groupoid(replace(G, inv=inv))
    assert not rep.valid
    assert "inverse_involutive" in rep.by_axiom() or "inverse_composable" in rep.by_axiom()


def test_z3_one_unit():
    G = build_associated_groupoid(builtin("Z3"))
    assert check_groupoid(G).valid and len(G.units) == 1


def test_fibers_partition(S):
    G = build_associated_groupoid(S)
    for fibers in (range_fiber, source_fiber):
        seen = sorted(x for u in G.units for x in fibers(G, u).members)
        assert seen == list(range(G.n))


def test_i_norm_examples(S):
    G = build_associated_groupoid(S)
    for x in range(S.n):
        assert i_norm(G, delta(S, x)) == pytest.approx(1.0)
    Z3 = build_associated_groupoid(builtin("Z3"))
    assert i_norm(Z3, CFunction(np.ones(3), "Z3")) == pytest.approx(3.0)
    ones = CFunction(np.ones(S.n), S.name)
    largest = max(len(range_fiber(G, u).members) for u in G.units)
    assert i_norm(G, ones) == pytest.approx(largest)
    s_part, r_part = i_norm_parts(G, ones)
    assert max(s_part, r_part) == pytest.approx(largest)


def test_convolution_agrees_with_restricted(S, rng):
    G = build_associated_groupoid(S)
    f, g = cvec(rng, S.n), cvec(rng, S.n)
    assert np.allclose(groupoid_convolution(G, f, g).values,
                       restricted_convolution(S, f, g).values)


def test_convolution_examples():
    G = build_associated_groupoid(builtin("Z2"))
    f = CFunction([1, 1], "Z2")
    g = CFunction([1, -1], "Z2")
    assert np.allclose(groupoid_convolution(G, f, g).values, 0)


def test_convolution_properties(S, rng):
    G = build_associated_groupoid(S)
    f, g, h = (cvec(rng, S.n) for _ in range(3))
    left = groupoid_convolution(G, groupoid_convolution(G, f, g), h)
    right = groupoid_convolution(G, f, groupoid_convolution(G, g, h))
    assert np.allclose(left.values, right.values)
    assert i_norm(G, groupoid_convolution(G, f, g)) <= i_norm(G, f) * i_norm(G, g) + 1e-9


def test_theta_on_point_masses(S):
    G = build_associated_groupoid(S)
    for x in range(S.n):
        t = theta(G, delta(S, x), delta(S, x))
        r = int(G.range[x])
        assert t[r] == pytest.approx(1.0)
        assert np.allclose(check_fn(G, check_fn(G, delta(S, x))).values, delta(S, x).values)


def test_groupoid_pd_examples(S):
    G = build_associated_groupoid(S)
    units = CFunction(np.isin(np.arange(S.n), G.units).astype(float), S.name)
    assert is_positive_definite_groupoid(G, units).positive
    Z3 = build_associated_groupoid(builtin("Z3"))
    assert is_positive_definite_groupoid(Z3, CFunction(np.ones(3), "Z3")).positive


def test_groupoid_pd_rejects_pullback():
    # on Z2 the fiber matrix of phi is [[phi(1), phi(a)], [phi(a), phi(1)]]; phi = delta_a gives eigenvalue -1
    G = build_associated_groupoid(builtin("Z2"))
    cert = is_positive_definite_groupoid(G, CFunction([0, 1], "Z2"))
    assert not cert.positive
    assert cert.witness_unit == 0
    assert cert.min_eigenvalues[0] == pytest.approx(-1)


def test_left_regular_rep(S):
    G = build_associated_groupoid(S)
    L = left_regular_groupoid_rep(G)
    assert check_groupoid_rep(G, L).valid
    for u in G.units:
        assert L.fiber_dims[u] == len(range_fiber(G, u).members)


def test_left_regular_examples():
    G = build_associated_groupoid(builtin("Z2"))
    L = left_regular_groupoid_rep(G)
    assert L.fiber_dims == {0: 2}
    assert np.array_equal(L.mats[1], [[0, 1], [1, 0]])
    G = build_associated_groupoid(builtin("semilattice2"))
    L = left_regular_groupoid_rep(G)
    assert L.fiber_dims == {0: 1, 1: 1}
    assert all(np.array_equal(m, [[1]]) for m in L.mats)

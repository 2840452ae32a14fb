from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from finite_epsilon import AdditiveChar, Cyclotomic, GammaChar, build_ambient, rs_gamma_via_epsilon
from finite_epsilon import glnq
from finite_epsilon.characters import orbits_of_degree
from finite_epsilon.errors import DegreeOrderViolation, NonDivisorDegree, NonRegularOrbit, ScaleExceeded


def conj(x, g, q):
    return glnq.mat_mul(glnq.mat_mul(x, g, q), glnq.mat_inverse(x, q), q)


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3)])
def test_enumeration_matches_oracle(n, q, oracle):
    elems = list(glnq.enumerate_gl(n, q))
    assert len(elems) == len(set(elems)) == oracle["gl_orders"][f"{q},{n}"] == glnq.gl_order(n, q)
    assert all(glnq.is_invertible(g, q) for g in elems)


def test_coset_count_matches_oracle(oracle):
    reps = glnq.coset_reps(2, 3)
    assert len(reps) == oracle["gl2_f3_left_cosets"]
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = glnq.random_gl(2, 3, rng)
        u = glnq.random_unipotent(2, 3, rng)
        assert glnq.coset_rep(glnq.mat_mul(u, g, 3), 3) == glnq.coset_rep(g, 3)


def test_guard_refuses_large_groups():
    with pytest.raises(ScaleExceeded):
        next(glnq.enumerate_gl(4, 5))


def test_matrix_helpers():
    A = ((1, 2), (3, 4))
    assert glnq.mat_mul(A, glnq.mat_inverse(A, 5), 5) == glnq.identity(2)
    assert glnq.rank(((1, 2), (2, 4)), 5) == 1
    # x^2 - 5x - 2 over F_5 is x^2 + 3
    assert glnq.charpoly(A, 5) == (3, 0, 1)
    assert glnq.poly_at_matrix(glnq.charpoly(A, 5), A, 5) == ((0, 0), (0, 0))


def test_class_data_examples():
    F = build_ambient(3, 2)
    assert not glnq.class_data(F, ((1, 0), (0, 2))).primary
    cd = glnq.class_data(F, ((0, 1), (1, 0)))  # x^2 - 1 splits
    assert not cd.primary
    cd = glnq.class_data(F, ((1, 1), (0, 1)))
    assert cd.primary and cd.d == 1 and cd.h_count == 1 and cd.eigenvalue == F.one
    cd = glnq.class_data(F, ((2, 0), (0, 2)))
    assert cd.d == 1 and cd.h_count == 2
    cd = glnq.class_data(F, ((0, 2), (1, 0)))  # x^2 + 1 irreducible over F_3
    assert cd.d == 2 and cd.h_count == 1
    with pytest.raises(NonDivisorDegree):
        glnq.class_data(build_ambient(3, 1), ((0, 2), (1, 0)))


def test_cuspidal_rejects_non_regular():
    with pytest.raises(NonRegularOrbit):
        glnq.CuspidalCharacter(build_ambient(3, 2), GammaChar(3, 2, 4))


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_cuspidal_orthonormal_and_degree(q, n):
    F = build_ambient(q, n)
    orbits = orbits_of_degree(q, n)
    chars = [glnq.CuspidalCharacter(F, f) for f in orbits]
    for i, a in enumerate(chars):
        assert a(glnq.identity(n)) == a.dimension
        assert glnq.character_sum(a).is_zero()
        for j, b in enumerate(chars):
            assert glnq.character_inner_product(a, b) == int(i == j)


def test_cuspidal_is_class_function():
    F = build_ambient(3, 2)
    chi = glnq.CuspidalCharacter(F, orbits_of_degree(3, 2)[0])
    rng = np.random.default_rng(1)
    for _ in range(25):
        g, x = glnq.random_gl(2, 3, rng), glnq.random_gl(2, 3, rng)
        assert chi(conj(x, g, 3)) == chi(g)


@pytest.mark.parametrize("convention", glnq.CONVENTIONS)
def test_bessel_at_identity(convention):
    F = build_ambient(3, 2)
    for f in orbits_of_degree(3, 2):
        assert glnq.bessel(F, f, AdditiveChar(3), glnq.identity(2), convention) == 1


def _equivariant(B, n, q, a, rng, trials=6):
    for _ in range(trials):
        g = glnq.random_gl(n, q, rng)
        u, v = glnq.random_unipotent(n, q, rng), glnq.random_unipotent(n, q, rng)
        s = glnq.superdiagonal_sum(u, q) + glnq.superdiagonal_sum(v, q)
        lhs = B(glnq.mat_mul(glnq.mat_mul(u, g, q), v, q))
        if lhs != Cyclotomic.root_of_unity(q, a * s) * B(g):
            return False
    return True


def test_bessel_convention_equivariance():
    q, n = 3, 2
    F = build_ambient(q, n)
    f = orbits_of_degree(q, n)[0]
    psi = AdditiveChar(q)
    assert _equivariant(glnq.Bessel(F, f, psi, "inverse"), n, q, 1, np.random.default_rng(0))
    direct = glnq.Bessel(F, f, psi, "direct")
    assert not _equivariant(direct, n, q, 1, np.random.default_rng(0), trials=30)
    assert _equivariant(direct, n, q, -1, np.random.default_rng(0))


def test_bessel_convention_gamma_agrees():
    F = build_ambient(2, 6)
    psi = AdditiveChar(2)
    f, g = orbits_of_degree(2, 3)[0], orbits_of_degree(2, 2)[0]
    expected = rs_gamma_via_epsilon(F, f, g, psi)
    for convention in glnq.CONVENTIONS:
        assert expected == glnq.rs_gamma_bessel(F, f, g, psi, convention)


def test_rs_gamma_bessel_degree_order():
    F = build_ambient(3, 2)
    with pytest.raises(DegreeOrderViolation):
        glnq.rs_gamma_bessel(F, GammaChar(3, 1, 1), GammaChar(3, 2, 1), AdditiveChar(3))


def test_block_antidiagonal():
    assert glnq.block_antidiagonal(((2,),), 3) == ((0, 1, 0), (0, 0, 1), (2, 0, 0))


@given(st.sampled_from([(2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 3, 2)]), st.data())
def test_bessel_route_matches_epsilon_route(qnm, data):
    from math import lcm

    q, n, m = qnm
    F = build_ambient(q, lcm(n, m))
    f = data.draw(st.sampled_from(orbits_of_degree(q, n)))
    g = data.draw(st.sampled_from(orbits_of_degree(q, m)))
    psi = AdditiveChar(q, data.draw(st.integers(1, q - 1)))
    assert glnq.rs_gamma_bessel(F, f, g, psi) == rs_gamma_via_epsilon(F, f, g, psi)


@given(st.integers(0, 10_000))
def test_gamma_sum_term_is_independent_of_coset_representative(seed):
    q, n, m = 2, 3, 2
    F = build_ambient(q, 6)
    psi = AdditiveChar(q)
    f, g = orbits_of_degree(q, n)[0], orbits_of_degree(q, m)[0]
    B_f, B_g = glnq.Bessel(F, f, psi), glnq.Bessel(F, g, psi.inverse())
    rng = np.random.default_rng(seed)
    h = glnq.random_gl(m, q, rng)
    u = glnq.random_unipotent(m, q, rng)
    uh = glnq.mat_mul(u, h, q)

    def term(x):
        return B_f(glnq.block_antidiagonal(x, n)) * B_g(x)

    assert term(uh) == term(h)


def test_bessel_on_unipotents_is_psi():
    q, n = 3, 2
    F = build_ambient(q, n)
    psi = AdditiveChar(q, 2)
    B = glnq.Bessel(F, orbits_of_degree(q, n)[1], psi)
    for u, s in glnq.unipotents(n, q):
        assert B(u) == Cyclotomic.root_of_unity(q, psi.a * s)

from __future__ import annotations

import cmath
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finite_epsilon import Cyclotomic, QHalfScalar, qhalf_eq
from finite_epsilon.cyclotomic import cyc_approx, euler_phi

z = Cyclotomic.root_of_unity


def test_root_of_unity_identities():
    assert z(8, 4) == -1
    assert z(3).raise_to(240) == z(240, 80)
    assert z(3) == z(240, 80)
    assert z(12, 0) == 1


def test_abs_square_of_quadratic_gauss_sum():
    g = z(3, 2) - z(3, 1)
    assert (z(3) - z(3, 2)) * g == 3
    assert g.abs_square() == 3


def test_approximations():
    assert cyc_approx(Cyclotomic.rational(-1)) == (-1.0, 0.0)
    re, im = cyc_approx(z(4))
    assert abs(re) < 1e-15 and im == pytest.approx(1.0)
    target = Cyclotomic.rational(Fraction(-2, 9)) + (Cyclotomic.sqrt_prime(5) * z(4)).scale(Fraction(1, 9))
    assert target.raise_to(240).conductor == 240
    re, im = cyc_approx(target)
    assert re == pytest.approx(-2 / 9) and im == pytest.approx(5**0.5 / 9)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_sqrt_prime(p):
    s = Cyclotomic.sqrt_prime(p)
    assert s * s == p
    assert s.approx_complex() == pytest.approx(p**0.5)


def test_qhalf_normalization_and_equality():
    c = Cyclotomic.rational(Fraction(2, 3)) - (Cyclotomic.sqrt_prime(5) * z(4)).scale(Fraction(1, 3))
    assert qhalf_eq(QHalfScalar(c, 0, 3), QHalfScalar(c, 0, 3))
    assert qhalf_eq(QHalfScalar(1, 2, 3), QHalfScalar(3, 0, 3))
    assert QHalfScalar(1, -3, 3) == QHalfScalar(Fraction(1, 3), -1, 3)


def test_qhalf_mixed_parity_is_exact():
    # zeta_3^2 - zeta_3 = -i sqrt(3)
    g = QHalfScalar(z(3, 2) - z(3), 0, 3)
    assert g == QHalfScalar(-z(4), 1, 3)
    assert g != QHalfScalar(z(4), 1, 3)
    assert QHalfScalar(0, 1, 3) == QHalfScalar(0, 0, 3)


def test_lower_and_minimal():
    x = z(3).raise_to(60)
    assert x.lower_to(3) == z(3)
    assert z(5).raise_to(60).lower_to(3) is None
    assert x.minimal().conductor == 3
    assert hash(x) == hash(z(3))


def test_inverse_and_division():
    x = z(7) + 2 * z(7, 3) - Fraction(1, 2)
    assert x * x.inverse() == 1
    assert (x / x) == 1
    assert (x / 2) * 2 == x


def test_json_round_trip():
    x = (z(15, 4) - Fraction(3, 7) * z(15, 2)).scale(5)
    data = json.loads(json.dumps(x.to_json()))
    assert Cyclotomic.from_json(data) == x
    assert data["re"] == pytest.approx(x.approx_complex().real)
    h = QHalfScalar(x, -3, 5)
    assert QHalfScalar.from_json(json.loads(json.dumps(h.to_json()))) == h


def test_str_is_readable():
    assert str(Cyclotomic.rational(Fraction(-1, 3))) == "-1/3"
    assert "E(3)" in str(z(3))


def test_big_coefficients_stay_exact():
    x = Cyclotomic.rational(3) ** 60 * z(8)
    assert (x * x.conj()) == 3**120


def test_euler_phi():
    assert [euler_phi(n) for n in (1, 2, 3, 4, 12, 240)] == [1, 1, 2, 2, 4, 64]


conductors = st.sampled_from([1, 2, 3, 4, 5, 8, 9, 12, 15, 20, 24])


@st.composite
def cyclotomics(draw):
    N = draw(conductors)
    terms = draw(st.lists(st.tuples(st.integers(0, N - 1), st.integers(-4, 4)), max_size=5))
    den = draw(st.integers(1, 3))
    return Cyclotomic.from_terms(N, terms, den)


def _approx(x: Cyclotomic) -> complex:
    return x.approx_complex()


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert cmath.isclose(_approx(a * b), _approx(a) * _approx(b), abs_tol=1e-9)


@given(cyclotomics())
def test_conjugation(a):
    assert a.conj().conj() == a
    n = a.abs_square()
    assert n.conj() == n
    assert abs(_approx(n).imag) < 1e-9


@given(cyclotomics(), st.sampled_from([2, 3, 5]))
def test_raise_then_lower(a, k):
    M = a.conductor * k
    assert a.raise_to(M).lower_to(a.conductor) == a


@given(st.sampled_from([3, 5, 7, 8, 9, 12]))
def test_cyclotomic_polynomial_vanishes(N):
    total = Cyclotomic.zero()
    for k in range(N):
        total = total + z(N, k)
    assert total == (1 if N == 1 else 0)

from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from finite_epsilon import fp_poly

polys = st.lists(st.integers(0, 4), max_size=6).map(lambda c: fp_poly.trim(c, 5))


@given(polys, polys.filter(bool))
def test_division_identity(f, g):
    quo, rem = fp_poly.divmod_poly(f, g, 5)
    assert fp_poly.add(fp_poly.mul(quo, g, 5), rem, 5) == f
    assert fp_poly.degree(rem) < fp_poly.degree(g)


def test_irreducible_counts_match_necklace_formula():
    # Number of monic irreducibles of degree d over F_p: (1/d) sum_{k|d} mu(k) p^(d/k).
    assert len(fp_poly.monic_irreducibles(1, 3)) == 3
    assert len(fp_poly.monic_irreducibles(2, 3)) == 3
    assert len(fp_poly.monic_irreducibles(4, 3)) == 18
    assert len(fp_poly.monic_irreducibles(3, 2)) == 2


def test_primitive_examples():
    assert fp_poly.is_primitive((2, 0, 0, 2, 1), 3)
    assert fp_poly.is_primitive((2, 2, 1), 3)
    # x^2 + 1 over F_3 is irreducible, but its root has order 4.
    assert fp_poly.is_irreducible((1, 0, 1), 3)
    assert not fp_poly.is_primitive((1, 0, 1), 3)


def test_prime_helpers():
    assert fp_poly.prime_factors(240) == [2, 3, 5]
    assert [n for n in range(20) if fp_poly.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

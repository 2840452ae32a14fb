"""GL_n(F_q) by brute force: enumeration, class data, cuspidal characters, Bessel functions.

Matrices are tuples of row tuples with entries in 0..q-1.  The cuspidal
character attached to a regular orbit {alpha, alpha^q, ...} of degree n is
evaluated on primary classes as

    chi(g) = (-1)^(n-1) * prod_{k=1}^{h-1} (1 - q^(d k)) * sum_{i<d} alpha(t^(q^i))

where the characteristic polynomial of g is f^(n/d) with f irreducible of
degree d, t is a root of f, and h is the number of Jordan blocks of the
unipotent part.  chi vanishes off primary classes.  This formula is a
reconstruction; the test suite checks orthonormality, the degree, class
invariance and the known gamma value before trusting it.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from . import fp_poly
from .ambient_field import AmbientField, FqElem
from .characters import AdditiveChar
from .cyclotomic import Cyclotomic
from .epsilon import Orbitish, as_regular_orbit
from .errors import DegreeOrderViolation, InternalMismatch, NonDivisorDegree, ScaleExceeded

Matrix = tuple[tuple[int, ...], ...]

MAX_GROUP_SIZE = 10**7


# ----------------------------------------------------------------------
# matrices over F_q


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(A: Matrix, B: Matrix, q: int) -> Matrix:
    cols = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % q for col in cols) for row in A)


def mat_inverse(A: Matrix, q: int) -> Matrix:
    n = len(A)
    rows = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] % q), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = pow(rows[c][c], -1, q)
        rows[c] = [x * inv % q for x in rows[c]]
        for r in range(n):
            if r != c and rows[r][c]:
                t = rows[r][c]
                rows[r] = [(x - t * y) % q for x, y in zip(rows[r], rows[c])]
    return tuple(tuple(r[n:]) for r in rows)


def rank(A, q: int) -> int:
    rows = [list(r) for r in A]
    n_cols = len(rows[0]) if rows else 0
    rk = 0
    for c in range(n_cols):
        piv = next((r for r in range(rk, len(rows)) if rows[r][c] % q), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], -1, q)
        for r in range(rk + 1, len(rows)):
            if rows[r][c] % q:
                t = rows[r][c] * inv
                rows[r] = [(x - t * y) % q for x, y in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def is_invertible(A: Matrix, q: int) -> bool:
    return rank(A, q) == len(A)


def charpoly(A: Matrix, q: int) -> tuple[int, ...]:
    """Characteristic polynomial (constant term first) via Hessenberg reduction."""
    n = len(A)
    H = [list(r) for r in A]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(H[j + 1][j], -1, q)
        for i in range(j + 2, n):
            u = H[i][j] * inv % q
            if u:
                H[i] = [(a - u * b) % q for a, b in zip(H[i], H[j + 1])]
                for row in H:
                    row[j + 1] = (row[j + 1] + u * row[i]) % q
    polys: list[tuple[int, ...]] = [(1,)]
    for k in range(n):
        pk = fp_poly.mul((-H[k][k] % q, 1), polys[k], q)
        t = 1
        for i in range(k - 1, -1, -1):
            t = t * H[i + 1][i] % q
            c = H[i][k] * t % q
            if c:
                pk = fp_poly.sub(pk, fp_poly.mul((c,), polys[i], q), q)
        polys.append(pk)
    return polys[n]


def poly_at_matrix(f: tuple[int, ...], A: Matrix, q: int) -> Matrix:
    n = len(A)
    R = tuple((0,) * n for _ in range(n))
    for coef in reversed(f):
        R = mat_mul(R, A, q)
        R = tuple(tuple((x + coef * (i == j)) % q for j, x in enumerate(row)) for i, row in enumerate(R))
    return R


# ----------------------------------------------------------------------
# groups


def gl_order(n: int, q: int) -> int:
    return math.prod(q**n - q**i for i in range(n))


def unipotent_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2)


def _guard(n: int, q: int) -> None:
    if gl_order(n, q) > MAX_GROUP_SIZE:
        raise ScaleExceeded(f"|GL_{n}(F_{q})| = {gl_order(n, q)} exceeds {MAX_GROUP_SIZE}")


def enumerate_gl(n: int, q: int) -> Iterator[Matrix]:
    """All invertible n x n matrices, built row by row outside the span so far."""
    _guard(n, q)
    vectors = list(product(range(q), repeat=n))

    def span(rows: tuple[tuple[int, ...], ...]) -> set[tuple[int, ...]]:
        out = set()
        for coeffs in product(range(q), repeat=len(rows)):
            out.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % q for j in range(n)))
        return out

    def extend(rows):
        if len(rows) == n:
            yield rows
            return
        taken = span(rows)
        for v in vectors:
            if v not in taken:
                yield from extend(rows + (v,))

    yield from extend(())


@lru_cache(maxsize=None)
def unipotents(n: int, q: int) -> tuple[tuple[Matrix, int], ...]:
    """Upper unitriangular matrices, each with its superdiagonal sum mod q."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for vals in product(range(q), repeat=len(slots)):
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), v in zip(slots, vals):
            M[i][j] = v
        U = tuple(tuple(r) for r in M)
        out.append((U, sum(U[i][i + 1] for i in range(n - 1)) % q))
    return tuple(out)


def superdiagonal_sum(u: Matrix, q: int) -> int:
    return sum(u[i][i + 1] for i in range(len(u) - 1)) % q


def coset_rep(g: Matrix, q: int) -> Matrix:
    """Canonical representative of U g under left multiplication by U.

    Scanning rows from the bottom, each row's first nonzero column is a pivot
    and the entries above it are cleared with row_i += c row_j (j > i).
    """
    rows = [list(r) for r in g]
    for j in range(len(rows) - 1, -1, -1):
        c = next(k for k, x in enumerate(rows[j]) if x)
        inv = pow(rows[j][c], -1, q)
        for i in range(j):
            t = rows[i][c] * inv % q
            if t:
                rows[i] = [(a - t * b) % q for a, b in zip(rows[i], rows[j])]
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def coset_reps(m: int, q: int) -> tuple[Matrix, ...]:
    reps = sorted({coset_rep(g, q) for g in enumerate_gl(m, q)})
    expected = gl_order(m, q) // unipotent_order(m, q)
    if len(reps) != expected:
        raise InternalMismatch(f"found {len(reps)} coset representatives, expected {expected}")
    return tuple(reps)


def random_gl(n: int, q: int, rng) -> Matrix:
    while True:
        A = tuple(tuple(int(x) for x in rng.integers(0, q, n)) for _ in range(n))
        if is_invertible(A, q):
            return A


def random_unipotent(n: int, q: int, rng) -> Matrix:
    return tuple(tuple(int(i == j) if j <= i else int(rng.integers(0, q)) for j in range(n)) for i in range(n))


# ----------------------------------------------------------------------
# class data


@lru_cache(maxsize=None)
def _primary_table(n: int, q: int) -> dict[tuple[int, ...], tuple[tuple[int, ...], int]]:
    table = {}
    for d in range(1, n + 1):
        if n % d:
            continue
        for f in fp_poly.monic_irreducibles(d, q):
            if f[0]:
                table[fp_poly.poly_pow(f, n // d, q)] = (f, d)
    return table


@lru_cache(maxsize=None)
def _root(F: AmbientField, f: tuple[int, ...]) -> FqElem:
    d = len(f) - 1
    for x in F.elements(d):
        acc = F.zero
        for coef in reversed(f):
            acc = acc * x + coef
        if acc.is_zero():
            return x
    raise InternalMismatch(f"no root of {f} in the degree-{d} subfield")  # pragma: no cover


@dataclass(frozen=True)
class ClassData:
    charpoly: tuple[int, ...]
    primary: bool
    irr_factor: tuple[int, ...] | None = None
    d: int | None = None
    h_count: int | None = None
    eigenvalue: FqElem | None = None


def _primary_data(g: Matrix, q: int):
    """(charpoly, f, d, h) or (charpoly, None, None, None) for non-primary g."""
    n = len(g)
    cp = charpoly(g, q)
    hit = _primary_table(n, q).get(cp)
    if hit is None:
        return cp, None, None, None
    f, d = hit
    h = 1 if d == n else (n - rank(poly_at_matrix(f, g, q), q)) // d
    return cp, f, d, h


def class_data(F: AmbientField, g: Matrix) -> ClassData:
    cp, f, d, h = _primary_data(g, F.q)
    if f is None:
        return ClassData(cp, False)
    if F.L % d:
        raise NonDivisorDegree(f"eigenvalues need the degree-{d} subfield, ambient degree is {F.L}")
    return ClassData(cp, True, f, d, h, _root(F, f))


# ----------------------------------------------------------------------
# cuspidal characters and Bessel functions


class CuspidalCharacter:
    """chi_f on GL_n(F_q) for a regular orbit f of degree n.

    ``terms(g)`` returns (c, exps) with chi(g) = c * sum_k zeta_{q^n - 1}^k over
    k in exps, or None where chi vanishes.  Values are cached per (f, h).
    """

    def __init__(self, F: AmbientField, f: Orbitish):
        self.F = F
        self.orbit = as_regular_orbit(f)
        self.n = self.orbit.degree
        self.q = F.q
        if F.L % self.n:
            raise NonDivisorDegree(f"degree {self.n} does not divide ambient degree {F.L}")
        self.alpha = self.orbit.representative.at_level(self.n)
        self.Q = self.q**self.n - 1
        self._cache: dict = {}

    def _value(self, f: tuple[int, ...], d: int, h: int):
        key = (f, h)
        hit = self._cache.get(key)
        if hit is None:
            F, q, Q = self.F, self.q, self.Q
            t = _root(F, f)
            j = F.dlog_level(t, self.n)
            exps = tuple(sorted(self.alpha.exponent * j * q**i % Q for i in range(d)))
            shifted = tuple(sorted(self.alpha.exponent * F.dlog_level(t.frobenius(), self.n) * q**i % Q for i in range(d)))
            if shifted != exps:
                raise InternalMismatch("character value depends on the choice of eigenvalue")
            coef = (-1) ** (self.n - 1) * math.prod(1 - q ** (d * k) for k in range(1, h))
            hit = (coef, exps)
            self._cache[key] = hit
        return hit

    def terms(self, g: Matrix):
        _, f, d, h = _primary_data(g, self.q)
        if f is None:
            return None
        return self._value(f, d, h)

    def __call__(self, g: Matrix) -> Cyclotomic:
        t = self.terms(g)
        if t is None:
            return Cyclotomic.zero()
        coef, exps = t
        return Cyclotomic.from_terms(self.Q, [(k, coef) for k in exps])

    @property
    def dimension(self) -> int:
        return math.prod(self.q**i - 1 for i in range(1, self.n))


def cuspidal_character(F: AmbientField, f: Orbitish, g: Matrix) -> Cyclotomic:
    return CuspidalCharacter(F, f)(g)


CONVENTIONS = ("inverse", "direct")


class Bessel:
    """B(g) = |U|^-1 sum_u chi(g u) psi(u)^s with s = -1 ("inverse") or +1 ("direct").

    psi(u) is psi applied to the sum of the superdiagonal entries of u.
    """

    def __init__(self, F: AmbientField, f: Orbitish, psi: AdditiveChar, convention: str = "inverse"):
        if convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}")
        self.chi = f if isinstance(f, CuspidalCharacter) else CuspidalCharacter(F, f)
        self.psi = psi
        self.sign = -1 if convention == "inverse" else 1
        self.conductor = self.chi.q * self.chi.Q

    def group_ring(self, g: Matrix) -> np.ndarray:
        """Unnormalized sum as a vector over Z/(p (q^n - 1))."""
        chi, q = self.chi, self.chi.q
        Q, N = chi.Q, self.conductor
        shift = self.sign * self.psi.a
        vec = np.zeros(N, dtype=np.int64)
        for u, s in unipotents(chi.n, q):
            t = chi.terms(mat_mul(g, u, q))
            if t is None:
                continue
            coef, exps = t
            off = (shift * s % q) * Q
            for k in exps:
                vec[(k * q + off) % N] += coef
        return vec

    def __call__(self, g: Matrix) -> Cyclotomic:
        n = self.chi.n
        return Cyclotomic.from_group_ring(self.conductor, self.group_ring(g), unipotent_order(n, self.chi.q))


def bessel(F: AmbientField, f: Orbitish, psi: AdditiveChar, g: Matrix, convention: str = "inverse") -> Cyclotomic:
    return Bessel(F, f, psi, convention)(g)


def block_antidiagonal(h: Matrix, n: int) -> Matrix:
    """The n x n matrix with I_{n-m} in the upper right and h in the lower left."""
    m = len(h)
    top = tuple((0,) * m + tuple(int(i == j) for j in range(n - m)) for i in range(n - m))
    return top + tuple(tuple(row) + (0,) * (n - m) for row in h)


def rs_gamma_bessel(
    F: AmbientField, f: Orbitish, g: Orbitish, psi: AdditiveChar, convention: str = "inverse"
) -> Cyclotomic:
    """sum over U_m \\ GL_m of B_{f,psi}(block(h)) * B_{g,psi^-1}(h)."""
    f, g = as_regular_orbit(f), as_regular_orbit(g)
    n, m = f.degree, g.degree
    if n <= m:
        raise DegreeOrderViolation(f"need n > m, got n={n}, m={m}")
    q = F.q
    B_f = Bessel(F, f, psi, convention)
    B_g = Bessel(F, g, psi.inverse(), convention)
    total = Cyclotomic.zero()
    for h in coset_reps(m, q):
        left = B_f(block_antidiagonal(h, n))
        if left.is_zero():
            continue
        total = total + left * B_g(h)
    return total


def class_sizes(n: int, q: int, key) -> Counter:
    """Counter of key(g) over GL_n(F_q)."""
    return Counter(key(g) for g in enumerate_gl(n, q))


def character_inner_product(chi1: CuspidalCharacter, chi2: CuspidalCharacter) -> Cyclotomic:
    """<chi1, chi2> = |G|^-1 sum_g chi1(g) conj(chi2(g)), grouping by class data."""
    n, q = chi1.n, chi1.q
    counts = class_sizes(n, q, lambda g: _primary_data(g, q)[1:])
    total = Cyclotomic.zero()
    for (f, d, h), k in counts.items():
        if f is None:
            continue
        a = _expand(chi1, chi1._value(f, d, h))
        b = _expand(chi2, chi2._value(f, d, h))
        total = total + (a * b.conj()).scale(k)
    return total.scale(1) / gl_order(n, q)


def character_sum(chi: CuspidalCharacter) -> Cyclotomic:
    counts = class_sizes(chi.n, chi.q, lambda g: _primary_data(g, chi.q)[1:])
    total = Cyclotomic.zero()
    for (f, d, h), k in counts.items():
        if f is not None:
            total = total + _expand(chi, chi._value(f, d, h)).scale(k)
    return total


def _expand(chi: CuspidalCharacter, value) -> Cyclotomic:
    coef, exps = value
    return Cyclotomic.from_terms(chi.Q, [(k, coef) for k in exps])

"""Gauss sums tau(gamma, psi_n) = -sum_{x != 0} gamma(x^-1) psi_n(x).

The sum is accumulated in the group ring of Z/(p (q^n - 1)): writing
x = xi_n^j, the term gamma(x^-1) psi_n(x) is the root of unity with exponent
(-e j mod Q) p + (a Tr(x) mod p) Q, where Q = q^n - 1.  One ``bincount``
collects all Q terms before a single reduction to canonical form.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .ambient_field import AmbientField
from .characters import AdditiveChar, FOrbit, FSet, GammaChar
from .cyclotomic import Cyclotomic
from .errors import NonDivisorDegree


@lru_cache(maxsize=4096)
def _gauss(F: AmbientField, level: int, exponent: int, a: int) -> Cyclotomic:
    q = F.q
    Q = q**level - 1
    N = q * Q
    j = np.arange(Q, dtype=np.int64)
    tr = F.trace_table(level).astype(np.int64)
    k = ((-exponent * j) % Q) * q + ((a * tr) % q) * Q
    counts = np.bincount(k % N, minlength=N)
    return -Cyclotomic.from_group_ring(N, counts)


def gauss_sum(F: AmbientField, gamma: GammaChar, psi: AdditiveChar) -> Cyclotomic:
    """Exact Gauss sum of ``gamma`` at its stated level, in Q(zeta_{p(q^n - 1)})."""
    if F.L % gamma.level:
        raise NonDivisorDegree(f"level {gamma.level} does not divide ambient degree {F.L}")
    return _gauss(F, gamma.level, gamma.exponent, psi.a)


def gauss_sum_orbit(F: AmbientField, f: FOrbit, psi: AdditiveChar, level: int | None = None) -> Cyclotomic:
    """tau(f, psi_n) for any member of f; n defaults to the orbit degree."""
    rep = f.representative.canonical
    return gauss_sum(F, rep.inflate(level or rep.level), psi)


def gauss_sum_fset(F: AmbientField, h: FSet, psi: AdditiveChar) -> Cyclotomic:
    return gauss_sum(F, h.base.inflate(h.N), psi)


def gauss_sum_bruteforce(F: AmbientField, gamma: GammaChar, psi: AdditiveChar) -> Cyclotomic:
    """Term-by-term summation through field elements; a slow independent oracle."""
    n = gamma.level
    total = Cyclotomic.zero()
    for x in F.elements(n):
        if x.is_zero():
            continue
        total = total + gamma(F, x.inverse()) * psi(F, n, x)
    return -total

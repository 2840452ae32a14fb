"""Epsilon factors eps_0 and the Rankin-Selberg gamma factor of cuspidal pairs.

``epsilon0_generic`` is the reference: (-1)^N q^(-N/2) times one Gauss sum per
Frobenius orbit of a character multiset, raised to the orbit's multiplicity.
Every closed form below is a shortcut for a particular multiset and, with
``crosscheck=True``, is compared against the reference before returning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ambient_field import AmbientField
from .characters import AdditiveChar, FOrbit, GammaChar, frobenius_orbit
from .cyclotomic import Cyclotomic, QHalfScalar
from .errors import (
    DegreeOrderViolation,
    DegreeTooSmall,
    InternalMismatch,
    NonRegularOrbit,
    PreconditionNotDegenerate,
)
from .gauss import gauss_sum, gauss_sum_orbit
from .multiset import (
    CharMultiset,
    PartitionFn,
    ms_tensor,
    ms_wedge2,
    restriction_multiset,
)

Orbitish = FOrbit | GammaChar


def as_regular_orbit(f: Orbitish) -> FOrbit:
    """Accept a character or an orbit; require orbit size equal to its level."""
    orbit = frobenius_orbit(f) if isinstance(f, GammaChar) else f
    if orbit.degree != orbit.level:
        raise NonRegularOrbit(f"orbit {orbit} has size {orbit.degree}, not {orbit.level}")
    return orbit


def _scaled(q: int, sign_exp: int, half_exp: int, c: Cyclotomic) -> QHalfScalar:
    return QHalfScalar(c if sign_exp % 2 == 0 else -c, half_exp, q)


def _crosscheck(name: str, fast: QHalfScalar, ref: QHalfScalar) -> None:
    if fast != ref:
        raise InternalMismatch(f"{name}: closed form {fast!r} != reference {ref!r}")


def epsilon0_generic(F: AmbientField, S: CharMultiset, psi: AdditiveChar) -> QHalfScalar:
    N = S.degree
    c = Cyclotomic.one()
    for f, mult in S.orbits():
        c = c * gauss_sum_orbit(F, f, psi) ** mult
    return _scaled(F.q, N, -N, c)


def epsilon0(F: AmbientField, lam: PartitionFn, psi: AdditiveChar) -> QHalfScalar:
    return epsilon0_generic(F, restriction_multiset(lam), psi)


def epsilon0_direct_sum(
    F: AmbientField, lam: PartitionFn, mu: PartitionFn, psi: AdditiveChar, crosscheck: bool = True
) -> QHalfScalar:
    value = epsilon0(F, lam, psi) * epsilon0(F, mu, psi)
    if crosscheck:
        _crosscheck("direct sum", value, epsilon0(F, lam.concat(mu), psi))
    return value


def _tensor_gauss_product(F: AmbientField, f: FOrbit, g: FOrbit, psi: AdditiveChar) -> Cyclotomic:
    """prod_{i<d} tau(alpha beta^(q^i), psi_l), d = gcd, l = lcm of the degrees."""
    n, m = f.degree, g.degree
    d, l = math.gcd(n, m), math.lcm(n, m)
    alpha = f.representative.inflate(l)
    beta = g.representative.inflate(l)
    c = Cyclotomic.one()
    for i in range(d):
        c = c * gauss_sum(F, alpha * beta.frobenius(i), psi)
    return c


def epsilon0_tensor_cuspidal(
    F: AmbientField, f: Orbitish, g: Orbitish, psi: AdditiveChar, crosscheck: bool = True
) -> QHalfScalar:
    f, g = as_regular_orbit(f), as_regular_orbit(g)
    nm = f.degree * g.degree
    value = _scaled(F.q, nm, -nm, _tensor_gauss_product(F, f, g, psi))
    if crosscheck:
        ref = epsilon0_generic(F, ms_tensor(_orbit_multiset(f), _orbit_multiset(g)), psi)
        _crosscheck("tensor of cuspidals", value, ref)
    return value


def epsilon0_tensor(
    F: AmbientField, lam: PartitionFn, mu: PartitionFn, psi: AdditiveChar, crosscheck: bool = True
) -> QHalfScalar:
    value = QHalfScalar(1, 0, F.q)
    for f, a in lam.items():
        for g, b in mu.items():
            value = value * epsilon0_tensor_cuspidal(F, f, g, psi, crosscheck=False) ** (a.size * b.size)
    if crosscheck:
        ref = epsilon0_generic(F, ms_tensor(restriction_multiset(lam), restriction_multiset(mu)), psi)
        _crosscheck("tensor", value, ref)
    return value


def wedge2_characters(f: FOrbit) -> list[GammaChar]:
    """The m characters whose Gauss sums enter the exterior-square closed form.

    alpha^(1+q^i) at level n for 1 <= i < m, and alpha^(1+q^m) at level n (n odd)
    or deflated to level m (n even).
    """
    n = f.degree
    m = n // 2
    q = f.q
    e = f.representative.at_level(n).exponent
    chars = []
    top = GammaChar(q, n, e * (1 + q**m))
    if n % 2 == 0:
        low = GammaChar(q, m, e % (q**m - 1))
        if low.inflate(n).exponent != top.exponent:
            raise InternalMismatch(f"deflation of {top} to level {m} failed")
        top = low
    chars.append(top)
    chars.extend(GammaChar(q, n, e * (1 + q**i)) for i in range(1, m))
    return chars


def epsilon0_wedge2_cuspidal(
    F: AmbientField, f: Orbitish, psi: AdditiveChar, crosscheck: bool = True
) -> QHalfScalar:
    f = as_regular_orbit(f)
    n = f.degree
    if n < 2:
        raise DegreeTooSmall("the exterior square of a character of GL_1 is zero")
    c = Cyclotomic.one()
    for chi in wedge2_characters(f):
        c = c * gauss_sum(F, chi, psi)
    N = n * (n - 1) // 2
    value = _scaled(F.q, N, -N, c)
    if crosscheck:
        _crosscheck("exterior square of a cuspidal", value, epsilon0_generic(F, ms_wedge2(_orbit_multiset(f)), psi))
    return value


def epsilon0_wedge2(F: AmbientField, lam: PartitionFn, psi: AdditiveChar, crosscheck: bool = True) -> QHalfScalar:
    parts = [(f, a.size) for f, a in lam.items()]
    value = QHalfScalar(1, 0, F.q)
    for i, (fi, ni) in enumerate(parts):
        for fj, nj in parts[i + 1 :]:
            value = value * epsilon0_tensor_cuspidal(F, fi, fj, psi, crosscheck=False) ** (ni * nj)
        if ni > 1:
            value = value * epsilon0_tensor_cuspidal(F, fi, fi, psi, crosscheck=False) ** (ni * (ni - 1) // 2)
        if fi.degree > 1:
            value = value * epsilon0_wedge2_cuspidal(F, fi, psi, crosscheck=False) ** ni
    if crosscheck:
        _crosscheck("exterior square", value, epsilon0_generic(F, ms_wedge2(restriction_multiset(lam)), psi))
    return value


def _orbit_multiset(f: FOrbit) -> CharMultiset:
    return CharMultiset(f.q, f.members())


def _sign_at_minus_one(F: AmbientField, gamma: GammaChar) -> Cyclotomic:
    return gamma(F, -F.one)


def rs_gamma_via_epsilon(
    F: AmbientField, f: Orbitish, g: Orbitish, psi: AdditiveChar, crosscheck: bool = True
) -> QHalfScalar:
    """Gamma factor of a cuspidal pair (degrees n > m) from its tensor epsilon factor.

    Two expressions are evaluated: the epsilon factor rescaled by
    q^(-m(n-m-1)/2) beta(-1)^(n-1), and the direct Gauss-sum product with
    prefactor (-1)^(nm) q^(-nm + m(m+1)/2) beta(-1)^(n-1).  They must agree.
    """
    f, g = as_regular_orbit(f), as_regular_orbit(g)
    n, m = f.degree, g.degree
    if n <= m:
        raise DegreeOrderViolation(f"need n > m, got n={n}, m={m}")
    omega = _sign_at_minus_one(F, g.representative) ** (n - 1)
    eps = epsilon0_tensor_cuspidal(F, f, g, psi, crosscheck=crosscheck)
    via_eps = eps * QHalfScalar(omega, -m * (n - m - 1), F.q)
    direct = _scaled(F.q, n * m, -2 * n * m + m * (m + 1), omega * _tensor_gauss_product(F, f, g, psi))
    if via_eps != direct:
        raise InternalMismatch(f"gamma routes disagree: {via_eps!r} vs {direct!r}")
    return direct


def nien_zhang_rhs(F: AmbientField, f: Orbitish, g: Orbitish, psi: AdditiveChar) -> QHalfScalar:
    """The single-Gauss-sum expression with alpha beta taken at level nm."""
    f, g = as_regular_orbit(f), as_regular_orbit(g)
    n, m = f.degree, g.degree
    if n <= m:
        raise DegreeOrderViolation(f"need n > m, got n={n}, m={m}")
    alpha, beta = f.representative, g.representative
    ab = alpha.inflate(n * m) * beta.inflate(n * m)
    c = (
        _sign_at_minus_one(F, alpha) ** (m - 1)
        * _sign_at_minus_one(F, beta) ** (n - 1)
        * gauss_sum(F, ab, psi)
    )
    return _scaled(F.q, n * m - m + 1, -2 * n * m + m * (m + 1), c)


@dataclass(frozen=True)
class DegenerateWedge2:
    epsilon: QHalfScalar
    trivial_multiplicity: int
    m: int


def degenerate_wedge2_report(F: AmbientField, f: Orbitish, psi: AdditiveChar) -> DegenerateWedge2:
    """For n = 2m and alpha trivial on the degree-m subfield: (-q^(-m/2), m)."""
    f = as_regular_orbit(f)
    n = f.degree
    q = F.q
    if n % 2 or f.representative.at_level(n).exponent % (q ** (n // 2) - 1):
        raise PreconditionNotDegenerate(f"{f} is not of even degree with alpha trivial on the half-degree subfield")
    m = n // 2
    eps = epsilon0_wedge2_cuspidal(F, f, psi)
    mult = ms_wedge2(_orbit_multiset(f)).trivial_multiplicity()
    expected = QHalfScalar(-1, -m, q)
    if eps != expected or mult != m:
        raise InternalMismatch(f"degenerate exterior square gave ({eps!r}, {mult}), expected ({expected!r}, {m})")
    return DegenerateWedge2(eps, mult, m)

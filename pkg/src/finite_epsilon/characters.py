"""Multiplicative characters of finite fields as elements of the direct limit Gamma.

A character at level n is an exponent e mod q^n - 1, meaning
gamma(xi_n^j) = zeta_{q^n - 1}^(e j), where xi_n is the ambient field's
degree-n subfield generator.  Inflating to level N multiplies the exponent by
(q^N - 1)/(q^n - 1), which is precomposition with the norm map.  Frobenius
acts by gamma -> gamma^q.

Two characters are equal when they agree after inflation to a common level,
so ``GammaChar`` compares and hashes through its canonical (minimal-level)
form.  Labels depend on the chosen modulus: the same exponent names a
different character under a different generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .ambient_field import AmbientField, FqElem
from .cyclotomic import Cyclotomic
from .errors import ElementNotInSubfield, NonDivisorDegree, ZeroElement


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True, eq=False)
class GammaChar:
    q: int
    level: int
    exponent: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        object.__setattr__(self, "exponent", self.exponent % self.group_order)

    @classmethod
    def parse(cls, q: int, spec: str) -> GammaChar:
        """Parse the ``level:exponent`` syntax."""
        level, _, exponent = spec.partition(":")
        if not exponent:
            raise ValueError(f"character spec {spec!r} is not of the form level:exponent")
        return cls(q, int(level), int(exponent))

    def __str__(self) -> str:
        return f"{self.level}:{self.exponent}"

    @property
    def group_order(self) -> int:
        return self.q**self.level - 1

    @cached_property
    def canonical(self) -> GammaChar:
        """Same character at its minimal level (which equals its orbit degree)."""
        n, e = self.level, self.exponent
        for d in _divisors(n):
            c = (self.q**n - 1) // (self.q**d - 1)
            if e % c == 0:
                return GammaChar(self.q, d, e // c)
        raise AssertionError("unreachable: level n always qualifies")  # pragma: no cover

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaChar):
            return NotImplemented
        a, b = self.canonical, other.canonical
        return (a.q, a.level, a.exponent) == (b.q, b.level, b.exponent)

    def __hash__(self) -> int:
        c = self.canonical
        return hash((c.q, c.level, c.exponent))

    def __lt__(self, other: GammaChar) -> bool:
        a, b = self.canonical, other.canonical
        return (a.level, a.exponent) < (b.level, b.exponent)

    def is_trivial(self) -> bool:
        return self.exponent == 0

    def inflate(self, n: int) -> GammaChar:
        """gamma o N_{n, level}, a character at level n."""
        if n % self.level:
            raise NonDivisorDegree(f"level {self.level} does not divide {n}")
        c = (self.q**n - 1) // (self.q**self.level - 1)
        return GammaChar(self.q, n, self.exponent * c)

    def at_level(self, n: int) -> GammaChar:
        """Express at level n; needs the canonical level to divide n."""
        return self.canonical.inflate(n)

    def frobenius(self, k: int = 1) -> GammaChar:
        return GammaChar(self.q, self.level, self.exponent * pow(self.q, k, self.group_order or 1))

    def __mul__(self, other: GammaChar) -> GammaChar:
        if not isinstance(other, GammaChar):
            return NotImplemented
        if self.q != other.q:
            raise ValueError("characters over different base fields")
        l = math.lcm(self.level, other.level)
        return GammaChar(self.q, l, self.inflate(l).exponent + other.inflate(l).exponent)

    def __pow__(self, k: int) -> GammaChar:
        return GammaChar(self.q, self.level, self.exponent * k)

    def inverse(self) -> GammaChar:
        return self**-1

    @property
    def degree(self) -> int:
        return orbit_degree(self)

    def orbit(self) -> FOrbit:
        return frobenius_orbit(self)

    def __call__(self, F: AmbientField, x: FqElem) -> Cyclotomic:
        return char_eval(F, self, x)


@dataclass(frozen=True, eq=False)
class FOrbit:
    """A Frobenius orbit, listed as exponents e, eq, eq^2, ... at a common level."""

    q: int
    level: int
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.exponents)

    @property
    def representative(self) -> GammaChar:
        return GammaChar(self.q, self.level, self.exponents[0])

    def members(self) -> list[GammaChar]:
        return [GammaChar(self.q, self.level, e) for e in self.exponents]

    @cached_property
    def key(self) -> tuple[int, int, int]:
        reps = [m.canonical for m in self.members()]
        return (self.q, reps[0].level, min(r.exponent for r in reps))

    def canonical(self) -> FOrbit:
        """The orbit at its minimal level, starting from its smallest exponent."""
        _, level, e = self.key
        return frobenius_orbit(GammaChar(self.q, level, e))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FOrbit):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: FOrbit) -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return "{" + ", ".join(f"{self.level}:{e}" for e in self.exponents) + "}"

    def __contains__(self, gamma: GammaChar) -> bool:
        return gamma.canonical in {m.canonical for m in self.members()}


@dataclass(frozen=True)
class FSet:
    """The multiset {gamma, F gamma, ..., F^(N-1) gamma}: N / d(gamma) copies of one orbit."""

    base: GammaChar
    N: int

    @property
    def orbit(self) -> FOrbit:
        return frobenius_orbit(self.base)

    @property
    def multiplicity(self) -> int:
        return self.N // orbit_degree(self.base)

    def members(self) -> list[GammaChar]:
        g = self.base.inflate(self.N)
        return [g.frobenius(i) for i in range(self.N)]


@dataclass(frozen=True)
class AdditiveChar:
    """psi(x) = zeta_p^(a x) on F_q = F_p, and psi_n = psi o Tr_{n -> 1} on F_{q^n}."""

    q: int
    a: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.q)
        if self.a == 0:
            raise ValueError("additive character must be nontrivial")

    def inverse(self) -> AdditiveChar:
        return AdditiveChar(self.q, -self.a)

    def exponent(self, F: AmbientField, n: int, x: FqElem) -> int:
        """k with psi_n(x) = zeta_p^k."""
        tr = F.trace(x, n, 1)
        return (self.a * tr.code) % self.q

    def __call__(self, F: AmbientField, n: int, x: FqElem) -> Cyclotomic:
        return additive_eval(F, self, n, x)


def char_eval(F: AmbientField, gamma: GammaChar, x: FqElem) -> Cyclotomic:
    if x.is_zero():
        raise ZeroElement("characters are not defined at zero")
    if not F.in_subfield(x, gamma.level):
        raise ElementNotInSubfield(f"{x} is not in the degree-{gamma.level} subfield")
    j = F.dlog_level(x, gamma.level)
    return Cyclotomic.root_of_unity(gamma.group_order, gamma.exponent * j)


def additive_eval(F: AmbientField, psi: AdditiveChar, n: int, x: FqElem) -> Cyclotomic:
    return Cyclotomic.root_of_unity(psi.q, psi.exponent(F, n, x))


def orbit_degree(gamma: GammaChar) -> int:
    Q = gamma.group_order
    e = gamma.exponent
    d, cur = 1, (e * gamma.q) % Q if Q else 0
    while cur != e:
        cur = (cur * gamma.q) % Q
        d += 1
    return d


def frobenius_orbit(gamma: GammaChar) -> FOrbit:
    Q = gamma.group_order
    exps = [gamma.exponent]
    cur = (gamma.exponent * gamma.q) % Q if Q else 0
    while cur != exps[0]:
        exps.append(cur)
        cur = (cur * gamma.q) % Q
    return FOrbit(gamma.q, gamma.level, tuple(exps))


def inflate(gamma: GammaChar, n: int) -> GammaChar:
    return gamma.inflate(n)


def f_set(gamma: GammaChar, N: int) -> FSet:
    if N % gamma.level:
        raise NonDivisorDegree(f"level {gamma.level} does not divide {N}")
    return FSet(gamma, N)


def is_regular(gamma: GammaChar, n: int) -> bool:
    """True when the orbit of gamma has size n, i.e. it labels a cuspidal of GL_n."""
    if n % gamma.level:
        raise NonDivisorDegree(f"level {gamma.level} does not divide {n}")
    return orbit_degree(gamma) == n


def orbits_of_degree(q: int, n: int) -> list[FOrbit]:
    """All Frobenius orbits of degree exactly n, each in canonical form, sorted."""
    seen: set[int] = set()
    out = []
    for e in range(q**n - 1):
        if e in seen:
            continue
        orb = frobenius_orbit(GammaChar(q, n, e))
        seen.update(orb.exponents)
        if orb.degree == n:
            out.append(orb)
    return out


def orbits_up_to_degree(q: int, n: int) -> list[FOrbit]:
    return [f for d in range(1, n + 1) for f in orbits_of_degree(q, d)]

"""Exact arithmetic in cyclotomic fields Q(zeta_N) and in scaled values c * q^(e/2).

Canonical form
--------------
Write N = prod p^a.  Then Q(zeta_N) is the tensor product of the fields
Q(zeta_{p^a}), each with its power basis 1, z, ..., z^(phi(p^a) - 1) where
z = exp(2 pi i / p^a).  An element is stored as a rational tensor of shape
``(phi(p1^a1), phi(p2^a2), ...)`` over that product basis: an integer
numerator array plus one positive denominator, fully reduced.  Because the
basis is a basis, equal elements at equal conductor have identical arrays.

Raising the conductor never needs a reduction in this basis: the p-axis index
k at p^a becomes k * p^(b-a) at p^b, and a fresh prime contributes index 0.
Lowering is the reverse and succeeds exactly when the element lies in the
smaller field.

Sums of roots of unity are built in the group ring Z[Z/N] (an integer vector
of length N) and reduced once, which is how the Gauss-sum and Bessel loops
feed values in cheaply.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational

import numpy as np

from .fp_poly import prime_factors

_INT64_LIMIT = 1 << 62


@lru_cache(maxsize=None)
def _layout(N: int) -> tuple[tuple[int, int, int, int, int], ...]:
    """Per prime p^a || N: (p, a, p^a, phi(p^a), CRT multiplier)."""
    out = []
    for p in prime_factors(N):
        a, pa = 0, 1
        while N % (pa * p) == 0:
            a += 1
            pa *= p
        mult = pow(N // pa, -1, pa) if pa > 1 else 0
        out.append((p, a, pa, pa - pa // p, mult))
    return tuple(out)


def _full_shape(N: int) -> tuple[int, ...]:
    return tuple(pa for _, _, pa, _, _ in _layout(N))


def _reduced_shape(N: int) -> tuple[int, ...]:
    return tuple(phi for _, _, _, phi, _ in _layout(N))


@lru_cache(maxsize=64)
def _scatter(N: int) -> np.ndarray:
    """Flat index in the full tensor of zeta_N^k, for k in range(N)."""
    k = np.arange(N, dtype=np.int64)
    shape = _full_shape(N)
    if not shape:
        return np.zeros(1, dtype=np.int64)
    idx = tuple((k * mult) % pa for _, _, pa, _, mult in _layout(N))
    return np.ravel_multi_index(idx, shape).astype(np.int64)


def euler_phi(N: int) -> int:
    return math.prod(phi for _, _, _, phi, _ in _layout(N)) if N > 1 else 1


def _reduce(full: np.ndarray, N: int) -> np.ndarray:
    """Reduce a group-ring tensor modulo Phi_{p^a} along every axis."""
    if N == 1:
        return full
    arr = full
    for axis, (p, _, pa, phi, _) in enumerate(_layout(N)):
        s = pa // p
        moved = np.moveaxis(arr, axis, 0)
        blocks = moved.reshape((p, s) + moved.shape[1:])
        # Phi_{p^a}(z) = sum_{j<p} z^(j s) = 0  =>  z^((p-1)s + r) = -sum_{j<p-1} z^(j s + r)
        low = blocks[:-1] - blocks[-1]
        arr = np.moveaxis(low.reshape((phi,) + moved.shape[1:]), 0, axis)
    return np.ascontiguousarray(arr)


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a)))


def _fit(a: np.ndarray) -> np.ndarray:
    """Keep small integer arrays as int64, everything else as Python ints."""
    if a.dtype == object and _maxabs(a) < _INT64_LIMIT // 64:
        return a.astype(np.int64)
    return a


def _widen(a: np.ndarray, bound: int) -> np.ndarray:
    if a.dtype != object and bound >= _INT64_LIMIT:
        return a.astype(object)
    return a


def _array_gcd(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return reduce(math.gcd, (int(v) for v in a.flat), 0)
    return int(np.gcd.reduce(a.ravel()))


class Cyclotomic:
    """An element of Q(zeta_N), kept in canonical reduced form."""

    __slots__ = ("conductor", "num", "den", "_hash")

    def __init__(self, conductor: int, num: np.ndarray, den: int = 1, *, _normalized: bool = False):
        self.conductor = int(conductor)
        self._hash = None
        if _normalized:
            self.num, self.den = num, int(den)
            return
        num = np.asarray(num)
        if num.shape != _reduced_shape(self.conductor):
            raise ValueError(f"coefficient shape {num.shape} does not match conductor {conductor}")
        if num.dtype != object:
            num = num.astype(np.int64)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(_array_gcd(num), den)
        if g > 1:
            num = np.asarray(num // g, dtype=num.dtype).reshape(num.shape)
            den //= g
        self.num = _fit(num)
        self.den = den

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def from_group_ring(cls, N: int, vec, den: int = 1) -> Cyclotomic:
        """The element sum_k vec[k] zeta_N^k / den."""
        vec = np.asarray(vec)
        if vec.shape != (N,):
            raise ValueError(f"expected a length-{N} vector")
        if vec.dtype != object:
            vec = vec.astype(np.int64)
            if _maxabs(vec) << (len(_layout(N)) + 1) >= _INT64_LIMIT:
                vec = vec.astype(object)
        full = np.zeros(N, dtype=vec.dtype)
        full[_scatter(N)] = vec
        return cls(N, _reduce(full.reshape(_full_shape(N)), N), den)

    @classmethod
    def from_terms(cls, N: int, terms, den: int = 1) -> Cyclotomic:
        """Build sum c * zeta_N^k from (k, c) pairs."""
        vec = [0] * N
        for k, c in terms:
            vec[k % N] += c
        return cls.from_group_ring(N, np.array(vec, dtype=object), den)

    @classmethod
    def root_of_unity(cls, N: int, k: int = 1) -> Cyclotomic:
        vec = np.zeros(N, dtype=np.int64)
        vec[k % N] = 1
        return cls.from_group_ring(N, vec)

    @classmethod
    def rational(cls, value) -> Cyclotomic:
        value = Fraction(value)
        return cls(1, np.array(value.numerator, dtype=object), value.denominator)

    @classmethod
    def zero(cls) -> Cyclotomic:
        return cls.rational(0)

    @classmethod
    def one(cls) -> Cyclotomic:
        return cls.rational(1)

    @classmethod
    def sqrt_prime(cls, p: int) -> Cyclotomic:
        """The positive square root of a prime p, as an element of Q(zeta_{4p})."""
        if p == 2:
            return cls.root_of_unity(8, 1) + cls.root_of_unity(8, -1)
        # quadratic Gauss sum: g = sqrt(p) if p = 1 mod 4, i sqrt(p) if p = 3 mod 4
        g = cls.from_terms(p, [(a, 1 if pow(a, (p - 1) // 2, p) == 1 else -1) for a in range(1, p)])
        return g if p % 4 == 1 else g * cls.root_of_unity(4, -1)

    # ------------------------------------------------------------------
    # conductor changes

    def raise_to(self, M: int) -> Cyclotomic:
        N = self.conductor
        if M == N:
            return self
        if M % N:
            raise ValueError(f"conductor {N} does not divide {M}")
        own = {p: a for p, a, _, _, _ in _layout(N)}
        view_shape, slices = [], []
        for p, b, _, _, _ in _layout(M):
            a = own.get(p, 0)
            if a:
                step = p ** (b - a)
                size = (p**a) - p ** (a - 1)
                view_shape.append(size)
                slices.append(slice(0, step * size, step))
            else:
                view_shape.append(1)
                slices.append(slice(0, 1))
        out = np.zeros(_reduced_shape(M), dtype=self.num.dtype)
        out[tuple(slices)] = self.num.reshape(view_shape)
        return Cyclotomic(M, out, self.den, _normalized=True)

    def lower_to(self, M: int) -> Cyclotomic | None:
        """The same element at conductor M | N, or None if it is not in Q(zeta_M)."""
        N = self.conductor
        if M == N:
            return self
        if N % M:
            raise ValueError(f"conductor {M} does not divide {N}")
        target = {p: b for p, b, _, _, _ in _layout(M)}
        slices = []
        for p, a, _, phi, _ in _layout(N):
            b = target.get(p, 0)
            slices.append(slice(0, phi, p ** (a - b)) if b else slice(0, 1))
        sub = self.num[tuple(slices)]
        if np.count_nonzero(sub) != np.count_nonzero(self.num):
            return None
        return Cyclotomic(M, np.ascontiguousarray(sub).reshape(_reduced_shape(M)), self.den, _normalized=True)

    def minimal(self) -> Cyclotomic:
        """Representation at the smallest conductor whose field contains the element."""
        if self.num.ndim == 0:
            return self
        M = 1
        nz = np.nonzero(self.num)
        for axis, (p, a, _, _, _) in enumerate(_layout(self.conductor)):
            idx = nz[axis]
            if idx.size == 0 or not idx.any():
                continue
            g = reduce(math.gcd, (int(v) for v in idx), 0)
            v = 0
            while g % p == 0 and v < a - 1:
                g //= p
                v += 1
            M *= p ** (a - v)
        out = self.lower_to(M)
        assert out is not None
        return out

    def _common(self, other: Cyclotomic) -> tuple[Cyclotomic, Cyclotomic]:
        M = math.lcm(self.conductor, other.conductor)
        return self.raise_to(M), other.raise_to(M)

    # ------------------------------------------------------------------
    # queries

    def as_rational(self) -> Fraction | None:
        if self.num.ndim == 0:
            return Fraction(int(self.num), self.den)
        if np.count_nonzero(self.num) == 0:
            return Fraction(0)
        first = self.num.flat[0]
        if np.count_nonzero(self.num) == 1 and first != 0:
            return Fraction(int(first), self.den)
        return None

    def is_zero(self) -> bool:
        return np.count_nonzero(self.num) == 0

    def is_rational(self) -> bool:
        return self.as_rational() is not None

    def terms(self) -> list[tuple[int, Fraction]]:
        """Nonzero (k, c) with self = sum c zeta_N^k over the canonical basis."""
        lay = _layout(self.conductor)
        if not lay:
            r = self.as_rational()
            return [(0, r)] if r else []
        out = []
        for idx in zip(*np.nonzero(self.num)):
            k = sum(int(i) * (self.conductor // pa) for i, (_, _, pa, _, _) in zip(idx, lay)) % self.conductor
            out.append((k, Fraction(int(self.num[idx]), self.den)))
        return sorted(out)

    def approx_complex(self) -> complex:
        """Evaluate at zeta_N = exp(2 pi i / N) in double precision."""
        arr = np.asarray(self.num, dtype=np.float64).astype(np.complex128)
        for axis, (_, _, pa, phi, _) in reversed(list(enumerate(_layout(self.conductor)))):
            roots = np.exp(2j * np.pi * np.arange(phi) / pa)
            arr = np.tensordot(arr, roots, axes=([axis], [0]))
        return complex(arr) / self.den

    # ------------------------------------------------------------------
    # arithmetic

    @staticmethod
    def _lift(value) -> Cyclotomic:
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Rational)):
            return Cyclotomic.rational(value)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        bound = _maxabs(a.num) * b.den + _maxabs(b.num) * a.den
        x, y = _widen(a.num, bound), _widen(b.num, bound)
        return Cyclotomic(a.conductor, x * b.den + y * a.den, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, -self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value) -> Cyclotomic:
        value = Fraction(value)
        if value == 0:
            return Cyclotomic.zero()
        num = _widen(self.num, _maxabs(self.num) * abs(value.numerator))
        return Cyclotomic(self.conductor, num * value.numerator, self.den * value.denominator)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        r = other.as_rational()
        if r is not None:
            return self.scale(r)
        r = self.as_rational()
        if r is not None:
            return other.scale(r)
        a, b = self._common(other)
        if np.count_nonzero(a.num) < np.count_nonzero(b.num):
            a, b = b, a
        N = a.conductor
        lay = _layout(N)
        bound = int(np.sum(np.abs(a.num))) * _maxabs(b.num) << (len(lay) + 1)
        x, y = _widen(a.num, bound), _widen(b.num, bound)
        full = np.zeros(_full_shape(N), dtype=x.dtype)
        full[tuple(slice(0, s) for s in x.shape)] = x
        acc = np.zeros_like(full)
        axes = tuple(range(len(lay)))
        for idx in zip(*np.nonzero(y)):
            acc += y[idx] * np.roll(full, tuple(int(i) for i in idx), axis=axes)
        return Cyclotomic(N, _reduce(acc, N), a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, Cyclotomic):
            r = other.as_rational()
            if r is not None:
                return self.scale(1 / r)
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def galois(self, t: int) -> Cyclotomic:
        """The automorphism zeta_N -> zeta_N^t, gcd(t, N) = 1."""
        N = self.conductor
        if math.gcd(t, N) != 1:
            raise ValueError(f"{t} is not a unit mod {N}")
        lay = _layout(N)
        if not lay:
            return self
        full = np.zeros(_full_shape(N), dtype=self.num.dtype)
        grids = np.meshgrid(*[np.arange(phi) for _, _, _, phi, _ in lay], indexing="ij")
        target = tuple((g * t) % pa for g, (_, _, pa, _, _) in zip(grids, lay))
        full[target] = self.num
        return Cyclotomic(N, _reduce(full, N), self.den)

    def conj(self) -> Cyclotomic:
        return self.galois(-1)

    def abs_square(self) -> Cyclotomic:
        return self * self.conj()

    def inverse(self) -> Cyclotomic:
        """1/x as (product of the other Galois conjugates) / norm."""
        r = self.as_rational()
        if r is not None:
            if r == 0:
                raise ZeroDivisionError("inverse of zero")
            return Cyclotomic.rational(1 / r)
        x = self.minimal()
        N = x.conductor
        others = Cyclotomic.one()
        for t in range(2, N):
            if math.gcd(t, N) == 1:
                others = others * x.galois(t)
        norm = (x * others).as_rational()
        assert norm is not None and norm != 0
        return others.scale(1 / norm)

    # ------------------------------------------------------------------
    # comparison and display

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and bool(np.array_equal(a.num, b.num))

    def __hash__(self) -> int:
        if self._hash is None:
            m = self.minimal()
            self._hash = hash((m.conductor, tuple(int(v) for v in np.ravel(m.num)), m.den))
        return self._hash

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def __str__(self) -> str:
        m = self.minimal()
        terms = m.terms()
        if not terms:
            return "0"
        parts = []
        for k, c in terms:
            parts.append(str(c) if k == 0 else f"{c}*E({m.conductor})^{k}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        z = self.approx_complex()
        return {
            "conductor": self.conductor,
            "num": [int(v) for v in np.ravel(self.num)],
            "den": self.den,
            "re": z.real,
            "im": z.imag,
        }

    @classmethod
    def from_json(cls, data: dict) -> Cyclotomic:
        N = int(data["conductor"])
        shape = _reduced_shape(N)
        num = np.array([int(v) for v in data["num"]], dtype=object).reshape(shape)
        return cls(N, num, int(data["den"]))


class QHalfScalar:
    """The value c * q^(e/2) with c cyclotomic, kept with e in {0, 1}."""

    __slots__ = ("c", "e", "q")

    def __init__(self, c, e: int = 0, q: int = 2):
        c = Cyclotomic._lift(c)
        half, parity = divmod(int(e), 2)
        if half:
            c = c.scale(Fraction(q) ** half)
        self.c, self.e, self.q = c, parity, int(q)

    def _check(self, other: QHalfScalar) -> None:
        if self.q != other.q:
            raise ValueError(f"mixing q={self.q} and q={other.q}")

    def __mul__(self, other):
        if isinstance(other, QHalfScalar):
            self._check(other)
            return QHalfScalar(self.c * other.c, self.e + other.e, self.q)
        other = Cyclotomic._lift(other)
        if other is NotImplemented:
            return other
        return QHalfScalar(self.c * other, self.e, self.q)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        return QHalfScalar(self.c**k, self.e * k, self.q)

    def __neg__(self):
        return QHalfScalar(-self.c, self.e, self.q)

    def to_cyclotomic(self) -> Cyclotomic:
        """Exact value; sqrt(q) lies in Q(zeta_{4q}) for prime q."""
        return self.c * Cyclotomic.sqrt_prime(self.q) if self.e else self.c

    def abs_square(self) -> Cyclotomic:
        return self.c.abs_square().scale(Fraction(self.q) ** self.e)

    def approx_complex(self) -> complex:
        return self.c.approx_complex() * math.sqrt(self.q) ** self.e

    def __eq__(self, other) -> bool:
        if isinstance(other, QHalfScalar):
            self._check(other)
            if self.e == other.e:
                return self.c == other.c
            if self.c.is_zero() and other.c.is_zero():
                return True
            return self.to_cyclotomic() == other.to_cyclotomic()
        other = Cyclotomic._lift(other)
        if other is NotImplemented:
            return False
        return self.to_cyclotomic() == other

    def __hash__(self) -> int:
        return hash(self.to_cyclotomic())

    def __repr__(self) -> str:
        if self.e == 0:
            return f"QHalfScalar({self.c})"
        return f"QHalfScalar(({self.c}) * sqrt({self.q}))"

    def to_json(self) -> dict:
        out = self.c.to_json()
        z = self.approx_complex()
        out.update({"q": self.q, "half_exponent": self.e, "re": z.real, "im": z.imag})
        return out

    @classmethod
    def from_json(cls, data: dict) -> QHalfScalar:
        return cls(Cyclotomic.from_json(data), int(data["half_exponent"]), int(data["q"]))


def qhalf_eq(x: QHalfScalar, y: QHalfScalar) -> bool:
    return x == y


def cyc_approx(x: Cyclotomic) -> tuple[float, float]:
    z = x.approx_complex()
    return z.real, z.imag

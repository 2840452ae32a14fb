"""One ambient finite field F_{q^L} housing every subfield a computation needs.

Elements are stored by their *code*: the coefficient vector (constant term
first) of the element as a polynomial in the distinguished generator ``xi``,
read as a base-q integer.  Multiplication goes through precomputed
exponential/logarithm tables, so the field must stay at desk scale.

Subfields are never built separately.  The degree-d subfield is generated by
``xi_d = xi ** ((q^L - 1) / (q^d - 1))``, which keeps every embedding
compatible with every other one.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import fp_poly
from .errors import (
    ElementNotInSubfield,
    NonDivisorDegree,
    NonPrimeBase,
    NonPrimitiveModulus,
    ReducibleModulus,
    ScaleExceeded,
    ZeroElement,
)

MAX_FIELD_SIZE = 2_000_000


class AmbientField:
    """The field F_q[x]/(modulus) with ``xi`` the class of x (a primitive element)."""

    def __init__(self, q: int, L: int, modulus: tuple[int, ...], base_modulus: tuple[int, ...] | None = None):
        self.q = q
        self.L = L
        self.modulus = modulus
        # the user-supplied lower-degree modulus this field was built to extend, if any
        self.base_modulus = base_modulus or modulus
        self.size = q**L
        self.order = self.size - 1
        self._powers = q ** np.arange(L, dtype=np.int64)
        self.digits = self._build_digits()
        self.exp = (self.digits.astype(np.int64) @ self._powers).astype(np.int64)
        self.log = np.full(self.size, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(self.order, dtype=np.int64)
        if np.count_nonzero(self.log >= 0) != self.order:
            raise NonPrimitiveModulus(f"{modulus} does not define a primitive element")
        self._trace_tables: dict[int, np.ndarray] = {}

    def _build_digits(self) -> np.ndarray:
        q, L = self.q, self.L
        step = np.zeros((L, L), dtype=np.int64)  # row i: digits of xi^(i+1)
        for i in range(L - 1):
            step[i, i + 1] = 1
        step[L - 1, :] = [(-c) % q for c in self.modulus[:L]]
        table = np.zeros((1, L), dtype=np.int64)
        table[0, 0] = 1
        # doubling: xi^(k + j) = xi^j * xi^k, and multiplication by xi^k is linear
        while table.shape[0] < self.order:
            table = np.vstack([table, table @ step % q])
            step = step @ step % q
        return table[: self.order].astype(np.int8)

    def __repr__(self) -> str:
        return f"AmbientField(q={self.q}, L={self.L}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AmbientField):
            return NotImplemented
        return (self.q, self.L, self.modulus) == (other.q, other.L, other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.L, self.modulus))

    # ------------------------------------------------------------------
    # element construction

    def element(self, coeffs) -> FqElem:
        coeffs = list(coeffs)
        if len(coeffs) > self.L:
            raise ValueError(f"expected at most {self.L} coefficients")
        return FqElem(self, sum((c % self.q) * self.q**i for i, c in enumerate(coeffs)))

    def from_int(self, n: int) -> FqElem:
        """The image of the integer n under Z -> F_q."""
        return FqElem(self, n % self.q)

    def xi_power(self, j: int) -> FqElem:
        return FqElem(self, int(self.exp[j % self.order]))

    @property
    def zero(self) -> FqElem:
        return FqElem(self, 0)

    @property
    def one(self) -> FqElem:
        return FqElem(self, 1)

    @property
    def xi(self) -> FqElem:
        return self.xi_power(1)

    def elements(self, d: int | None = None):
        """Iterate over the degree-d subfield (the whole field by default), zero first."""
        d = self.L if d is None else d
        c = self.cofactor(d)
        yield self.zero
        for j in range(self.q**d - 1):
            yield self.xi_power(c * j)

    # ------------------------------------------------------------------
    # subfields

    def cofactor(self, d: int) -> int:
        """(q^L - 1) / (q^d - 1), the exponent taking xi to xi_d."""
        if d < 1 or self.L % d:
            raise NonDivisorDegree(f"degree {d} does not divide ambient degree {self.L}")
        return self.order // (self.q**d - 1)

    def subfield_generator(self, d: int) -> FqElem:
        return self.xi_power(self.cofactor(d))

    def in_subfield(self, x: FqElem, d: int) -> bool:
        c = self.cofactor(d)
        return x.code == 0 or int(self.log[x.code]) % c == 0

    def _require_subfield(self, x: FqElem, d: int) -> None:
        if not self.in_subfield(x, d):
            raise ElementNotInSubfield(f"{x} is not in the degree-{d} subfield")

    # ------------------------------------------------------------------
    # arithmetic on codes

    def code_digits(self, code: int) -> list[int]:
        q = self.q
        out = []
        for _ in range(self.L):
            code, r = divmod(code, q)
            out.append(r)
        return out

    def add_codes(self, a: int, b: int) -> int:
        if self.q == 2:
            return a ^ b
        q, out, scale = self.q, 0, 1
        while a or b:
            a, ra = divmod(a, q)
            b, rb = divmod(b, q)
            out += ((ra + rb) % q) * scale
            scale *= q
        return out

    def neg_code(self, a: int) -> int:
        q, out, scale = self.q, 0, 1
        while a:
            a, r = divmod(a, q)
            out += ((-r) % q) * scale
            scale *= q
        return out

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % self.order])

    def pow_code(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroElement("zero has no inverse")
            return 0 if e else 1
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    # ------------------------------------------------------------------
    # trace, norm, discrete logarithm

    def dlog(self, x: FqElem) -> int:
        """Exponent j in [0, q^L - 2] with xi^j = x."""
        if x.code == 0:
            raise ZeroElement("discrete log of zero")
        return int(self.log[x.code])

    def dlog_level(self, x: FqElem, n: int) -> int:
        """Exponent j in [0, q^n - 2] with xi_n^j = x, for x in the degree-n subfield."""
        self._require_subfield(x, n)
        return self.dlog(x) // self.cofactor(n)

    def trace(self, x: FqElem, n: int, m: int = 1) -> FqElem:
        """Tr_{n->m}(x) = sum of x^(q^(m i)) for i < n/m."""
        self._check_tower(n, m)
        self._require_subfield(x, n)
        acc = 0
        for i in range(n // m):
            acc = self.add_codes(acc, self.pow_code(x.code, self.q ** (m * i)))
        return FqElem(self, acc)

    def norm(self, x: FqElem, n: int, m: int = 1) -> FqElem:
        """N_{n->m}(x) = x^((q^n - 1) / (q^m - 1))."""
        self._check_tower(n, m)
        self._require_subfield(x, n)
        return FqElem(self, self.pow_code(x.code, (self.q**n - 1) // (self.q**m - 1)))

    def _check_tower(self, n: int, m: int) -> None:
        if m < 1 or n % m or self.L % n:
            raise NonDivisorDegree(f"need m | n | L, got m={m}, n={n}, L={self.L}")

    def trace_table(self, n: int) -> np.ndarray:
        """Array T with T[j] = Tr_{n->1}(xi_n^j) as an integer mod q, for 0 <= j < q^n - 1."""
        if n not in self._trace_tables:
            c = self.cofactor(n)
            qn1 = self.q**n - 1
            j = np.arange(qn1, dtype=np.int64)
            acc = np.zeros((qn1, self.L), dtype=np.int64)
            for i in range(n):
                idx = (c * ((j * self.q**i) % qn1)) % self.order
                acc += self.digits[idx]
            acc %= self.q
            assert not acc[:, 1:].any(), "trace left the prime field"
            self._trace_tables[n] = acc[:, 0].copy()
        return self._trace_tables[n]


class FqElem:
    """An element of an :class:`AmbientField`."""

    __slots__ = ("field", "code")

    def __init__(self, field: AmbientField, code: int):
        self.field = field
        self.code = int(code)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field.code_digits(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def _coerce(self, other) -> FqElem:
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different ambient fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqElem(self.field, self.field.add_codes(self.code, other.code))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.field, self.field.neg_code(self.code))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FqElem(self.field, self.field.mul_codes(self.code, other.code))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow_code(self.code, e))

    def inverse(self) -> FqElem:
        return self ** -1

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def frobenius(self, k: int = 1) -> FqElem:
        return self ** (self.field.q**k)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.code == other % self.field.q
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field == other.field and self.code == other.code

    def __hash__(self) -> int:
        return hash((self.field.q, self.field.L, self.code))

    def __repr__(self) -> str:
        if self.code == 0:
            return "0"
        return f"xi^{self.field.dlog(self)}"


def _parse_modulus(q: int, modulus) -> tuple[int, ...]:
    if isinstance(modulus, str):
        modulus = [c for c in modulus.replace(" ", "").split(",") if c]
    coeffs = tuple(int(c) % q for c in modulus)
    if len(coeffs) < 2 or coeffs[-1] != 1:
        raise ValueError(f"modulus must be monic of positive degree, got {tuple(modulus)}")
    return coeffs


def _check_primitive(q: int, f: tuple[int, ...]) -> None:
    if not fp_poly.is_irreducible(f, q):
        raise ReducibleModulus(f"{f} is reducible over F_{q}")
    if not fp_poly.is_primitive(f, q):
        raise NonPrimitiveModulus(f"{f} is irreducible but its root is not a generator")


def smallest_primitive(q: int, L: int, base: tuple[int, ...] | None = None) -> tuple[int, ...]:
    """First primitive monic degree-L polynomial in :func:`fp_poly.monic_polys` order.

    With ``base`` (a primitive polynomial of degree k | L) only polynomials
    whose root xi satisfies base(xi^((q^L-1)/(q^k-1))) = 0 qualify, so the
    degree-k subfield generator is a root of ``base``.
    """
    c = None
    if base is not None:
        k = len(base) - 1
        c = (q**L - 1) // (q**k - 1)
    for f in fp_poly.monic_polys(L, q):
        if f[0] == 0 or not fp_poly.is_primitive(f, q):
            continue
        if base is not None:
            r = fp_poly.powmod((0, 1), c, f, q)
            acc: tuple[int, ...] = ()
            for coef in reversed(base):
                acc = fp_poly.add(fp_poly.mod(fp_poly.mul(acc, r, q), f, q), (coef,), q)
            if acc:
                continue
        return f
    raise NonPrimitiveModulus(f"no primitive polynomial of degree {L} over F_{q}")  # pragma: no cover


@lru_cache(maxsize=32)
def _build(q: int, L: int, modulus: tuple[int, ...] | None) -> AmbientField:
    if q**L > MAX_FIELD_SIZE:
        raise ScaleExceeded(f"F_{q}^{L} has more than {MAX_FIELD_SIZE} elements")
    if modulus is None:
        return AmbientField(q, L, smallest_primitive(q, L))
    k = len(modulus) - 1
    _check_primitive(q, modulus)
    if k == L:
        return AmbientField(q, L, modulus)
    if L % k:
        raise NonDivisorDegree(f"modulus degree {k} does not divide ambient degree {L}")
    return AmbientField(q, L, smallest_primitive(q, L, base=modulus), base_modulus=modulus)


def build_ambient(q: int, L: int, modulus=None) -> AmbientField:
    """Build F_{q^L} with a primitive generator.

    ``modulus`` is a coefficient list, constant term first.  Its degree may be
    L, or a proper divisor k of L: then the ambient generator is chosen so that
    its norm down to F_{q^k} is a root of ``modulus``.  Without a modulus the
    smallest primitive polynomial is used, so builds are deterministic.
    """
    if not fp_poly.is_prime(q):
        raise NonPrimeBase(f"base size {q} is not prime")
    if L < 1:
        raise ValueError("ambient degree must be positive")
    return _build(q, L, None if modulus is None else _parse_modulus(q, modulus))

"""Partition-valued functions and F-stable character multisets.

A ``PartitionFn`` assigns a partition to each Frobenius orbit; its
restriction multiset lists every orbit member with multiplicity |lambda(f)|.
``CharMultiset`` carries the linear-algebra operations (direct sum, tensor,
exterior and symmetric square) at the level of characters.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from itertools import combinations

from .characters import FOrbit, GammaChar, frobenius_orbit
from .errors import NonFStableInput


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; () is allowed."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __add__(self, other) -> Partition:
        # Concatenation of parts, re-sorted.
        return Partition(tuple(self) + tuple(other))

    def __repr__(self) -> str:
        return f"Partition{tuple(self)}"


class PartitionFn:
    """lambda in P_n(Gamma): orbits mapped to nonempty partitions."""

    def __init__(self, q: int, data: Mapping[FOrbit, Iterable[int]] | None = None):
        self.q = q
        self._data: dict[FOrbit, Partition] = {}
        for f, parts in (data or {}).items():
            if f.q != q:
                raise ValueError("orbit over a different base field")
            lam = Partition(parts)
            if lam:
                key = f.canonical()
                self._data[key] = self._data.get(key, Partition()) + lam
        self._data = dict(sorted(self._data.items()))

    @classmethod
    def cuspidal(cls, f: FOrbit) -> PartitionFn:
        return cls(f.q, {f: (1,)})

    def items(self):
        return self._data.items()

    @property
    def support(self) -> list[FOrbit]:
        return list(self._data)

    def __getitem__(self, f: FOrbit) -> Partition:
        return self._data.get(f, Partition())

    @property
    def degree(self) -> int:
        return sum(f.degree * lam.size for f, lam in self._data.items())

    def concat(self, other: PartitionFn) -> PartitionFn:
        """lambda + mu, orbitwise concatenation; labels lambda boxplus mu."""
        merged: dict[FOrbit, tuple[int, ...]] = {f: tuple(lam) for f, lam in self.items()}
        for f, lam in other.items():
            merged[f] = merged.get(f, ()) + tuple(lam)
        return PartitionFn(self.q, merged)

    __add__ = concat

    def trivial_part(self) -> Partition:
        return self[frobenius_orbit(GammaChar(self.q, 1, 0))]

    def restriction_multiset(self) -> CharMultiset:
        return restriction_multiset(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, PartitionFn) and self.q == other.q and self._data == other._data

    def __repr__(self) -> str:
        inner = ", ".join(f"{f}: {tuple(lam)}" for f, lam in self.items())
        return f"PartitionFn(q={self.q}, {{{inner}}})"


class CharMultiset:
    """Multiset of canonical characters with positive multiplicities."""

    def __init__(self, q: int, chars: Iterable[GammaChar] | Mapping[GammaChar, int] = ()):
        self.q = q
        counts: Counter[GammaChar] = Counter()
        if isinstance(chars, Mapping):
            for g, k in chars.items():
                if k:
                    counts[g.canonical] += k
        else:
            for g in chars:
                counts[g.canonical] += 1
        if any(k < 0 for k in counts.values()):
            raise ValueError("negative multiplicity")
        self.counts = counts

    @property
    def degree(self) -> int:
        return sum(self.counts.values())

    def __len__(self) -> int:
        return self.degree

    def multiplicity(self, gamma: GammaChar) -> int:
        return self.counts.get(gamma.canonical, 0)

    def trivial_multiplicity(self) -> int:
        return self.multiplicity(GammaChar(self.q, 1, 0))

    def elements(self) -> list[GammaChar]:
        """Indexed enumeration x_1, ..., x_N with repetition, in sorted order."""
        return [g for g in sorted(self.counts) for _ in range(self.counts[g])]

    def is_f_stable(self) -> bool:
        return all(self.counts[g.frobenius()] == k for g, k in self.counts.items())

    def require_f_stable(self) -> None:
        if not self.is_f_stable():
            raise NonFStableInput("multiplicity is not constant on Frobenius orbits")

    def orbits(self) -> list[tuple[FOrbit, int]]:
        """Decompose into (canonical orbit, multiplicity) pairs."""
        self.require_f_stable()
        seen: set[GammaChar] = set()
        out = []
        for g in sorted(self.counts):
            if g in seen:
                continue
            f = frobenius_orbit(g)
            seen.update(f.members())
            out.append((f.canonical(), self.counts[g]))
        return sorted(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, CharMultiset) and self.q == other.q and +self.counts == +other.counts

    def __repr__(self) -> str:
        inner = ", ".join(f"{g}" + (f"^{k}" if k > 1 else "") for g, k in sorted(self.counts.items()))
        return f"CharMultiset(q={self.q}, {{{inner}}})"

    def __add__(self, other: CharMultiset) -> CharMultiset:
        return ms_direct_sum(self, other)

    def __mul__(self, other: CharMultiset) -> CharMultiset:
        return ms_tensor(self, other)


def restriction_multiset(lam: PartitionFn) -> CharMultiset:
    counts: Counter[GammaChar] = Counter()
    for f, part in lam.items():
        for g in f.members():
            counts[g.canonical] += part.size
    return CharMultiset(lam.q, counts)


def _check(*sets: CharMultiset) -> None:
    for s in sets:
        s.require_f_stable()
    if len({s.q for s in sets}) > 1:
        raise ValueError("multisets over different base fields")


def ms_direct_sum(a: CharMultiset, b: CharMultiset) -> CharMultiset:
    _check(a, b)
    return CharMultiset(a.q, a.counts + b.counts)


def ms_tensor(a: CharMultiset, b: CharMultiset) -> CharMultiset:
    _check(a, b)
    counts: Counter[GammaChar] = Counter()
    for x, i in a.counts.items():
        for y, j in b.counts.items():
            counts[(x * y).canonical] += i * j
    return CharMultiset(a.q, counts)


def ms_wedge2(a: CharMultiset) -> CharMultiset:
    _check(a)
    counts: Counter[GammaChar] = Counter()
    for x, y in combinations(sorted(a.counts), 2):
        counts[(x * y).canonical] += a.counts[x] * a.counts[y]
    for x, k in a.counts.items():
        if k > 1:
            counts[(x * x).canonical] += k * (k - 1) // 2
    return CharMultiset(a.q, counts)


def ms_sym2(a: CharMultiset) -> CharMultiset:
    _check(a)
    counts: Counter[GammaChar] = Counter()
    for x, y in combinations(sorted(a.counts), 2):
        counts[(x * y).canonical] += a.counts[x] * a.counts[y]
    for x, k in a.counts.items():
        counts[(x * x).canonical] += k * (k + 1) // 2
    return CharMultiset(a.q, counts)


def s_exponent(lam: PartitionFn | CharMultiset) -> int:
    """|lambda(1)|: the multiplicity of the trivial character."""
    if isinstance(lam, CharMultiset):
        return lam.trivial_multiplicity()
    return lam.trivial_part().size


def cor27_applies(lam: PartitionFn | CharMultiset) -> bool:
    """True when lambda(1) is empty, i.e. the trivial character is absent."""
    return s_exponent(lam) == 0

"""Dense polynomials over a prime field F_p.

A polynomial is a tuple of residues, constant term first, with no trailing
zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

from functools import lru_cache

Poly = tuple[int, ...]


def trim(coeffs, p: int) -> Poly:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def sub(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def divmod_poly(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], -1, p)
    quo = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1, dg - 1, -1):
        c = r[k] % p
        if c:
            c = c * inv_lead % p
            quo[k - dg] = c
            for j in range(dg + 1):
                r[k - dg + j] -= c * g[j]
    return trim(quo, p), trim(r[:dg], p)


def mod(f: Poly, g: Poly, p: int) -> Poly:
    return divmod_poly(f, g, p)[1]


def powmod(f: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = (1,)
    base = mod(f, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return mod(result, m, p)


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    while g:
        f, g = g, mod(f, g, p)
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return trim([c * inv for c in f], p)


def evaluate(f: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for primes r | n."""
    n = degree(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x: Poly = (0, 1)
    for r in prime_factors(n):
        h = sub(powmod(x, p ** (n // r), f, p), x, p)
        if degree(gcd(f, h, p)) > 0:
            return False
    return mod(sub(powmod(x, p**n, f, p), x, p), f, p) == ()


def is_primitive(f: Poly, p: int) -> bool:
    """True when the class of x generates (F_p[x]/f)^x, i.e. has order p^n - 1."""
    n = degree(f)
    if n < 1 or f[0] % p == 0:
        return False
    order = p**n - 1
    x: Poly = (0, 1)
    if powmod(x, order, f, p) != (1,):
        return False
    return all(powmod(x, order // r, f, p) != (1,) for r in prime_factors(order))


def monic_polys(d: int, p: int):
    """All monic polynomials of degree d, ordered by their lower coefficients read as a base-p integer."""
    for code in range(p**d):
        low = [(code // p**i) % p for i in range(d)]
        yield tuple(low) + (1,)


@lru_cache(maxsize=None)
def monic_irreducibles(d: int, p: int) -> tuple[Poly, ...]:
    return tuple(f for f in monic_polys(d, p) if is_irreducible(f, p))


def poly_pow(f: Poly, e: int, p: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = mul(out, f, p)
    return out


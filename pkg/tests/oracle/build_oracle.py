"""Independent brute-force oracle; writes tests/data/oracle.json.

Shares no code with the package: field arithmetic is schoolbook polynomial
arithmetic modulo an explicit modulus, and Gauss sums are summed in mpmath
at 40 digits.  Run from the repository root:

    python3 tests/oracle/build_oracle.py
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

import mpmath

mpmath.mp.dps = 40

OUT = Path(__file__).resolve().parents[1] / "data" / "oracle.json"

# (q, modulus constant-term-first) for the fields the oracle covers.
FIELDS = [
    (2, (1, 1, 0, 0, 1)),  # x^4 + x + 1
    (3, (2, 0, 0, 2, 1)),  # x^4 + 2x^3 + 2
    (3, (1, 2, 0, 1)),  # x^3 + 2x + 1
    (5, (2, 1, 1)),  # x^2 + x + 2
]


def polymulmod(a, b, mod, q):
    n = len(mod) - 1
    prod = [0] * (2 * n)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % q
    for k in range(2 * n - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * mod[i]) % q
    return tuple(prod[:n])


def powers_of_x(q, mod):
    n = len(mod) - 1
    x = tuple(1 if i == 1 else 0 for i in range(n))
    cur = tuple(1 if i == 0 else 0 for i in range(n))
    out = []
    for _ in range(q**n - 1):
        out.append(cur)
        cur = polymulmod(cur, x, mod, q)
    assert cur == out[0] and len(set(out)) == q**n - 1, "modulus is not primitive"
    return out


def trace_to_prime(elem, powers, index, q, n, level):
    """Tr_{level -> 1}(y) = sum of y^(q^i) for i < level, via the power list."""
    j = index[elem]
    total = [0] * n
    for i in range(level):
        t = powers[(j * q**i) % (q**n - 1)]
        total = [(a + b) % q for a, b in zip(total, t)]
    assert all(c == 0 for c in total[1:])
    return total[0]


def gauss(q, mod, level, e, a=1):
    """Gauss sum at a level dividing the modulus degree, with xi_level = x^c."""
    n = len(mod) - 1
    powers = powers_of_x(q, mod)
    index = {p: i for i, p in enumerate(powers)}
    Q = q**level - 1
    c = (q**n - 1) // Q
    total = mpmath.mpc(0)
    for j in range(Q):
        y = powers[(c * j) % (q**n - 1)]
        tr = trace_to_prime(y, powers, index, q, n, level)
        total += mpmath.exp(2j * mpmath.pi * (mpmath.mpf(-e * j) / Q + mpmath.mpf(a * tr) / q))
    return -total


def orbits(q, n):
    Q = q**n - 1
    seen, out = set(), []
    for e in range(Q):
        if e in seen:
            continue
        orb = []
        cur = e
        while cur not in orb:
            orb.append(cur)
            cur = cur * q % Q
        seen.update(orb)
        out.append(orb)
    return out


def main():
    gauss_rows = []
    for q, mod in FIELDS:
        n = len(mod) - 1
        for level in range(1, n + 1):
            if n % level:
                continue
            for e in range(q**level - 1):
                for a in range(1, q):
                    z = gauss(q, mod, level, e, a)
                    gauss_rows.append(
                        {"q": q, "modulus": list(mod), "level": level, "exponent": e, "a": a,
                         "re": float(z.real), "im": float(z.imag)}
                    )

    # Left U_2-cosets of GL_2(F_3) by explicit orbit enumeration.
    q = 3
    gl2 = [m for m in itertools.product(range(q), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % q]
    seen, cosets = set(), 0
    for g in gl2:
        if g in seen:
            continue
        cosets += 1
        for t in range(q):
            a, b, c, d = g
            seen.add(((a + t * c) % q, (b + t * d) % q, c, d))

    # Trivial-character multiplicity in the exterior square of a regular orbit.
    degenerate = []
    for q, n in [(2, 2), (2, 4), (3, 2), (3, 4)]:
        Q = q**n - 1
        m = n // 2
        for orb in orbits(q, n):
            if len(orb) == n and orb[0] % (q**m - 1) == 0:
                pair_exps = [(x + y) % Q for x, y in itertools.combinations(orb, 2)]
                degenerate.append({"q": q, "n": n, "exponent": orb[0], "trivial_mult": pair_exps.count(0)})

    sqrt5 = mpmath.sqrt(5)
    data = {
        "gauss": gauss_rows,
        "gl2_f3_left_cosets": cosets,
        "gl_orders": {f"{q},{n}": sum(1 for m in itertools.product(range(q), repeat=n * n) if _det(m, n, q))
                      for q, n in [(2, 2), (3, 2), (2, 3)]},
        "orbit_4_66": next(o for o in orbits(3, 4) if 66 in o),
        "inflate_2_1_to_8": 1 * (3**8 - 1) // (3**2 - 1),
        "degenerate_wedge2": degenerate,
        "example": {
            "gamma": [float(mpmath.mpf(-2) / 9), float(sqrt5 / 9)],
            "epsilon0": [float(mpmath.mpf(2) / 3), float(-sqrt5 / 3)],
            "nien_zhang": [float(mpmath.mpf(-1) / 27), float(-4 * sqrt5 / 27)],
        },
    }
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT} with {len(gauss_rows)} Gauss sums")


def _det(m, n, q):
    rows = [list(m[i * n:(i + 1) * n]) for i in range(n)]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] % q), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c] % q
        inv = pow(rows[c][c], -1, q)
        for r in range(c + 1, n):
            f = rows[r][c] * inv % q
            rows[r] = [(x - f * y) % q for x, y in zip(rows[r], rows[c])]
    return det % q


if __name__ == "__main__":
    main()

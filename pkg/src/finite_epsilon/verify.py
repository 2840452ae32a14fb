"""Invariant sweeps shared by the CLI ``verify`` command and the test suite.

Each suite expands into a list of picklable ``Case`` specs; ``run_case``
evaluates one of them.  Cases can therefore be fanned out to worker
processes, and a failing case carries a CLI replay string.
"""

from __future__ import annotations

import math
import random
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import glnq
from .ambient_field import build_ambient
from .characters import AdditiveChar, FOrbit, GammaChar, f_set, orbits_of_degree
from .cyclotomic import Cyclotomic, QHalfScalar
from .epsilon import (
    degenerate_wedge2_report,
    epsilon0,
    epsilon0_direct_sum,
    epsilon0_generic,
    epsilon0_tensor,
    epsilon0_tensor_cuspidal,
    epsilon0_wedge2,
    epsilon0_wedge2_cuspidal,
    rs_gamma_via_epsilon,
)
from .errors import FiniteEpsilonError
from .gauss import gauss_sum, gauss_sum_fset, gauss_sum_orbit
from .multiset import CharMultiset, PartitionFn, ms_tensor, ms_wedge2, restriction_multiset

SUITES = (
    "gauss-basics",
    "hasse-davenport",
    "oracle-equivalence",
    "thm44-sweep",
    "character-orthogonality",
    "degenerate-wedge2",
)


@dataclass(frozen=True)
class Case:
    suite: str
    kind: str
    params: tuple

    @property
    def name(self) -> str:
        return f"{self.kind}{self.params}"


@dataclass
class CaseResult:
    case: Case
    passed: bool
    detail: str = ""
    replay: str = ""


@dataclass
class SuiteResult:
    suite: str
    results: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def counts(self) -> tuple[int, int]:
        ok = sum(r.passed for r in self.results)
        return ok, len(self.results) - ok

    def first_failure(self) -> CaseResult | None:
        return next((r for r in self.results if not r.passed), None)


def _orbit(q: int, level: int, e: int) -> FOrbit:
    return GammaChar(q, level, e).orbit()


def _ch(f: FOrbit) -> str:
    return str(f.representative)


# ----------------------------------------------------------------------
# case generation


def _gauss_basics(qs=(2, 3), max_level=4) -> list[Case]:
    return [
        Case("gauss-basics", "gauss", (q, n, e))
        for q in qs
        for n in range(1, max_level + 1)
        for e in range(q**n - 1)
    ]


def _hasse_davenport(qs=(2, 3, 5), max_N=6) -> list[Case]:
    cases = []
    for q in qs:
        for N in range(1, max_N + 1):
            for d in range(1, N + 1):
                if N % d == 0:
                    cases += [Case("hasse-davenport", "hd", (q, N, d, f.exponents[0])) for f in orbits_of_degree(q, d)]
    return cases


TENSOR_DEGREES = ((1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3))
RANDOM_DEGREES = {2: (1, 2, 3), 3: (1, 2, 4)}


def _oracle_equivalence(qs=(2, 3), seed: int = 0, random_cases: int = 25) -> list[Case]:
    cases = []
    for q in qs:
        for n, m in TENSOR_DEGREES:
            for f in orbits_of_degree(q, n):
                for g in orbits_of_degree(q, m):
                    cases.append(Case("oracle-equivalence", "tensor-cuspidal", (q, n, f.exponents[0], m, g.exponents[0])))
        for n in range(2, 5):
            for f in orbits_of_degree(q, n):
                cases.append(Case("oracle-equivalence", "wedge2-cuspidal", (q, n, f.exponents[0])))
        for k in range(random_cases):
            cases.append(Case("oracle-equivalence", "random-multi-orbit", (q, seed, k)))
    return cases


def _gamma_sweep(qs=(2, 3), max_n=3) -> list[Case]:
    cases = []
    for q in qs:
        for n in range(2, max_n + 1):
            for m in range(1, n):
                for f in orbits_of_degree(q, n):
                    for g in orbits_of_degree(q, m):
                        cases.append(Case("thm44-sweep", "gamma", (q, n, f.exponents[0], m, g.exponents[0])))
    return cases


ORTHOGONALITY_GROUPS = ((2, 2), (3, 2), (2, 3))


def _orthogonality(seed: int = 0) -> list[Case]:
    cases = []
    for q, n in ORTHOGONALITY_GROUPS:
        orbits = orbits_of_degree(q, n)
        for f in orbits:
            cases.append(Case("character-orthogonality", "cuspidal", (q, n, f.exponents[0], seed)))
        for i, f in enumerate(orbits):
            for g in orbits[i + 1 :]:
                cases.append(Case("character-orthogonality", "distinct", (q, n, f.exponents[0], g.exponents[0])))
    return cases


def _degenerate(qs=(2, 3), degrees=(2, 4)) -> list[Case]:
    cases = []
    for q in qs:
        for n in degrees:
            m = n // 2
            for f in orbits_of_degree(q, n):
                if f.exponents[0] % (q**m - 1) == 0:
                    cases.append(Case("degenerate-wedge2", "degenerate", (q, n, f.exponents[0])))
    return cases


def build_cases(suite: str, seed: int = 0, qs: tuple[int, ...] | None = None) -> list[Case]:
    if suite == "gauss-basics":
        return _gauss_basics(qs or (2, 3))
    if suite == "hasse-davenport":
        return _hasse_davenport(qs or (2, 3, 5))
    if suite == "oracle-equivalence":
        return _oracle_equivalence(qs or (2, 3), seed=seed)
    if suite == "thm44-sweep":
        return _gamma_sweep(qs or (2, 3))
    if suite == "character-orthogonality":
        return _orthogonality(seed)
    if suite == "degenerate-wedge2":
        return _degenerate(qs or (2, 3))
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


# ----------------------------------------------------------------------
# case evaluation


def random_partition_fn(q: int, rng: random.Random, degrees, max_orbits: int = 3) -> PartitionFn:
    """A small random lambda: up to ``max_orbits`` orbits with partitions of size <= 2."""
    data = {}
    for _ in range(rng.randint(1, max_orbits)):
        d = rng.choice(degrees)
        f = rng.choice(orbits_of_degree(q, d))
        data[f] = rng.choice([(1,), (2,), (1, 1)])
    return PartitionFn(q, data)


def _lam_arg(lam: PartitionFn) -> str:
    return ";".join(f"{_ch(f)}={','.join(map(str, part))}" for f, part in lam.items())


def _run_gauss(q, n, e):
    F = build_ambient(q, n)
    psi = AdditiveChar(q)
    gamma = GammaChar(q, n, e)
    tau = gauss_sum(F, gamma, psi)
    if gamma.is_trivial():
        ok = tau == 1
        detail = f"tau(trivial) = {tau}"
    else:
        ok = tau.abs_square() == q**n and gauss_sum(F, gamma.frobenius(), psi) == tau
        detail = f"|tau|^2 = {tau.abs_square()}"
    return ok, detail, f"gauss-sum --q {q} --ambient-degree {n} --alpha {gamma}"


def _run_hd(q, N, d, e):
    F = build_ambient(q, N)
    psi = AdditiveChar(q)
    f = _orbit(q, d, e)
    lhs = gauss_sum_fset(F, f_set(f.representative, N), psi)
    rhs = gauss_sum_orbit(F, f, psi) ** (N // d)
    return lhs == rhs, f"tau(h, psi_{N}) vs tau(f, psi_{d})^{N // d}", (
        f"gauss-sum --q {q} --ambient-degree {N} --alpha {f.representative.inflate(N)}"
    )


def crt_fsets(f: FOrbit, g: FOrbit) -> list[CharMultiset]:
    """The gcd(n, m) F-sets generated by alpha beta^(q^t), t < gcd, inside Gamma_lcm."""
    n, m = f.degree, g.degree
    l = math.lcm(n, m)
    alpha, beta = f.representative.inflate(l), g.representative.inflate(l)
    return [CharMultiset(f.q, f_set(alpha * beta.frobenius(t), l).members()) for t in range(math.gcd(n, m))]


def _run_tensor(q, n, e, m, e2):
    F = build_ambient(q, math.lcm(n, m))
    psi = AdditiveChar(q)
    f, g = _orbit(q, n, e), _orbit(q, m, e2)
    fast = epsilon0_tensor_cuspidal(F, f, g, psi, crosscheck=False)
    S = ms_tensor(CharMultiset(q, f.members()), CharMultiset(q, g.members()))
    ref = epsilon0_generic(F, S, psi)
    parts = crt_fsets(f, g)
    union = CharMultiset(q, {})
    for h in parts:
        union = union + h
    ok = fast == ref and union == S
    return ok, f"closed form vs generic; {len(parts)} F-sets", (
        f"epsilon0-tensor --q {q} --ambient-degree {math.lcm(n, m)} --alpha {f.representative} --beta {g.representative}"
    )


def _run_wedge(q, n, e):
    F = build_ambient(q, n)
    psi = AdditiveChar(q)
    f = _orbit(q, n, e)
    fast = epsilon0_wedge2_cuspidal(F, f, psi, crosscheck=False)
    ref = epsilon0_generic(F, ms_wedge2(CharMultiset(q, f.members())), psi)
    return fast == ref, "closed form vs generic", (
        f"epsilon0-wedge2 --q {q} --ambient-degree {n} --alpha {f.representative}"
    )


def _run_random(q, seed, k):
    rng = random.Random(f"{seed}:{q}:{k}")
    degrees = RANDOM_DEGREES[q]
    L = math.lcm(*degrees)
    F = build_ambient(q, L)
    psi = AdditiveChar(q)
    lam = random_partition_fn(q, rng, degrees)
    mu = random_partition_fn(q, rng, degrees)
    A, B = restriction_multiset(lam), restriction_multiset(mu)
    checks = {
        "direct sum": epsilon0_direct_sum(F, lam, mu, psi, crosscheck=False) == epsilon0_generic(F, A + B, psi),
        "tensor": epsilon0_tensor(F, lam, mu, psi, crosscheck=False) == epsilon0_generic(F, ms_tensor(A, B), psi),
        "exterior square": epsilon0_wedge2(F, lam, psi, crosscheck=False) == epsilon0_generic(F, ms_wedge2(A), psi),
        "concatenation": epsilon0(F, lam.concat(mu), psi) == epsilon0(F, lam, psi) * epsilon0(F, mu, psi),
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"lambda={_lam_arg(lam)} mu={_lam_arg(mu)} failed={bad}", (
        f"verify oracle-equivalence --q {q} --seed {seed}  # random case {k}"
    )


def _run_gamma(q, n, e, m, e2):
    F = build_ambient(q, math.lcm(n, m))
    psi = AdditiveChar(q)
    f, g = _orbit(q, n, e), _orbit(q, m, e2)
    via_eps = rs_gamma_via_epsilon(F, f, g, psi, crosscheck=False)
    via_bessel = glnq.rs_gamma_bessel(F, f, g, psi)
    unit = via_bessel.abs_square() == Fraction(1, q ** (m * (n - m - 1)))
    return via_eps == via_bessel and unit, f"bessel={via_bessel.approx_complex():.6f}", (
        f"rs-gamma --route bessel --q {q} --ambient-degree {math.lcm(n, m)} "
        f"--alpha {f.representative} --beta {g.representative}"
    )


def _run_cuspidal(q, n, e, seed):
    F = build_ambient(q, n)
    psi = AdditiveChar(q)
    chi = glnq.CuspidalCharacter(F, _orbit(q, n, e))
    rng = _np_rng(seed, q, n, e)
    problems = []
    if glnq.character_inner_product(chi, chi) != 1:
        problems.append("<chi,chi> != 1")
    if not glnq.character_sum(chi).is_zero():
        problems.append("sum chi != 0")
    if chi(glnq.identity(n)) != chi.dimension:
        problems.append("chi(1) != degree")
    for _ in range(8):
        g = glnq.random_gl(n, q, rng)
        x = glnq.random_gl(n, q, rng)
        conj = glnq.mat_mul(glnq.mat_mul(x, g, q), glnq.mat_inverse(x, q), q)
        if chi(conj) != chi(g):
            problems.append("not a class function")
            break
    B = glnq.Bessel(F, chi, psi)
    if B(glnq.identity(n)) != 1:
        problems.append("B(1) != 1")
    for _ in range(4):
        g = glnq.random_gl(n, q, rng)
        u, v = glnq.random_unipotent(n, q, rng), glnq.random_unipotent(n, q, rng)
        s = glnq.superdiagonal_sum(u, q) + glnq.superdiagonal_sum(v, q)
        lhs = B(glnq.mat_mul(glnq.mat_mul(u, g, q), v, q))
        if lhs != Cyclotomic.root_of_unity(q, psi.a * s) * B(g):
            problems.append("Bessel equivariance")
            break
    return not problems, ", ".join(problems) or "gates pass", (
        f"verify character-orthogonality --seed {seed}  # q={q} n={n} alpha={n}:{e}"
    )


def _run_distinct(q, n, e, e2):
    F = build_ambient(q, n)
    a = glnq.CuspidalCharacter(F, _orbit(q, n, e))
    b = glnq.CuspidalCharacter(F, _orbit(q, n, e2))
    ip = glnq.character_inner_product(a, b)
    return ip.is_zero(), f"<chi_f, chi_f'> = {ip}", f"verify character-orthogonality  # q={q} n={n} {e} vs {e2}"


def _run_degenerate(q, n, e):
    F = build_ambient(q, n)
    try:
        rep = degenerate_wedge2_report(F, _orbit(q, n, e), AdditiveChar(q))
        ok, detail = True, f"eps={rep.epsilon!r}, mult={rep.trivial_multiplicity}"
    except FiniteEpsilonError as exc:
        ok, detail = False, str(exc)
    return ok, detail, f"epsilon0-wedge2 --q {q} --ambient-degree {n} --alpha {n}:{e}"


def _np_rng(*key):
    return np.random.default_rng([int(k) for k in key])


RUNNERS: dict[str, Callable] = {
    "gauss": _run_gauss,
    "hd": _run_hd,
    "tensor-cuspidal": _run_tensor,
    "wedge2-cuspidal": _run_wedge,
    "random-multi-orbit": _run_random,
    "gamma": _run_gamma,
    "cuspidal": _run_cuspidal,
    "distinct": _run_distinct,
    "degenerate": _run_degenerate,
}


def run_case(case: Case) -> CaseResult:
    try:
        ok, detail, replay = RUNNERS[case.kind](*case.params)
    except FiniteEpsilonError as exc:
        return CaseResult(case, False, f"{type(exc).__name__}: {exc}", "")
    return CaseResult(case, bool(ok), detail, replay)


def run_suite(suite: str, seed: int = 0, jobs: int = 1, qs: tuple[int, ...] | None = None) -> SuiteResult:
    cases = build_cases(suite, seed=seed, qs=qs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_case, cases, chunksize=4))
    else:
        results = [run_case(c) for c in cases]
    return SuiteResult(suite, results)


def worked_example(modulus: str = "2,0,0,2,1", psi_a: int = 1) -> dict:
    """All routes for the F_3 example: alpha = 4:66, beta = 2:1, degree-8 ambient field."""
    from .epsilon import nien_zhang_rhs

    q = 3
    F = build_ambient(q, 8, modulus)
    psi = AdditiveChar(q, psi_a)
    alpha, beta = GammaChar(q, 4, 66), GammaChar(q, 2, 1)
    sqrt5i = Cyclotomic.sqrt_prime(5) * Cyclotomic.root_of_unity(4)
    expected_gamma = Cyclotomic.rational(Fraction(-2, 9)) + sqrt5i.scale(Fraction(1, 9))
    expected_nz = Cyclotomic.rational(Fraction(-1, 27)) - sqrt5i.scale(Fraction(4, 27))
    eps = epsilon0_tensor_cuspidal(F, alpha, beta, psi)
    via_eps = eps * QHalfScalar(beta(F, -F.one) ** 3, -2, q)
    closed = rs_gamma_via_epsilon(F, alpha, beta, psi)
    bessel = glnq.rs_gamma_bessel(F, alpha, beta, psi)
    nz = nien_zhang_rhs(F, alpha, beta, psi)
    return {
        "field": F,
        "epsilon0": eps,
        "gamma_closed_form": closed,
        "gamma_from_epsilon": via_eps,
        "gamma_bessel": bessel,
        "nien_zhang": nz,
        "expected_gamma": expected_gamma,
        "expected_nien_zhang": expected_nz,
    }

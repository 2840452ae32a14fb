"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 precondition violation, 3 failed
assertion or internal mismatch.  Output is JSON by default.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from collections import Counter
from dataclasses import asdict, dataclass

from . import glnq
from .ambient_field import build_ambient
from .characters import AdditiveChar, GammaChar
from .cyclotomic import QHalfScalar
from .epsilon import (
    epsilon0,
    epsilon0_tensor,
    epsilon0_wedge2,
    epsilon0_wedge2_cuspidal,
    nien_zhang_rhs,
    rs_gamma_via_epsilon,
)
from .errors import InternalMismatch, PreconditionError
from .gauss import gauss_sum
from .multiset import PartitionFn
from .verify import SUITES, worked_example, run_suite

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_ASSERTION = 0, 1, 2, 3

CHAR_HELP = (
    "character as level:exponent, meaning xi_level^j -> exp(2 pi i exponent j / (q^level - 1)); "
    "labels depend on the modulus, since xi is its root"
)
LAMBDA_HELP = "partition-valued function as 'L:E=parts;L:E=parts', e.g. '4:66=1;1:0=2,1'"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    q: int
    ambient_degree: int | None
    modulus: str | None
    psi_a: int
    crosscheck: bool
    format: str
    jobs: int
    seed: int


def _char(q: int, spec: str | None, flag: str) -> GammaChar:
    if spec is None:
        raise UsageError(f"{flag} is required")
    try:
        return GammaChar.parse(q, spec)
    except ValueError as exc:
        raise UsageError(f"bad {flag} {spec!r}: {exc}") from None


def _lambda(q: int, spec: str, flag: str) -> PartitionFn:
    data: dict = {}
    try:
        for item in filter(None, spec.split(";")):
            ch, _, parts = item.partition("=")
            orbit = GammaChar.parse(q, ch.strip()).orbit()
            data[orbit] = data.get(orbit, ()) + tuple(int(p) for p in (parts or "1").split(","))
    except ValueError as exc:
        raise UsageError(f"bad {flag} {spec!r}: {exc}") from None
    return PartitionFn(q, data)


def _field(cfg: RunConfig, *degrees: int):
    needed = math.lcm(*degrees) if degrees else 1
    L = cfg.ambient_degree or needed
    if cfg.modulus and not cfg.ambient_degree:
        k = len([c for c in cfg.modulus.split(",") if c.strip()]) - 1
        L = math.lcm(L, k)
    if L % needed:
        raise UsageError(f"--ambient-degree {L} is not a multiple of the required degree {needed}")
    return build_ambient(cfg.q, L, cfg.modulus)


def _value_json(x) -> dict:
    out = x.to_json()
    z = x.approx_complex()
    out["approx"] = {"re": z.real, "im": z.imag}
    if isinstance(x, QHalfScalar):
        out["display"] = f"({x.c}) * sqrt({x.q})" if x.e else str(x.c)
    else:
        out["display"] = str(x)
    return out


def _lam_degrees(*lams: PartitionFn) -> list[int]:
    return [f.degree for lam in lams for f in lam.support] or [1]


def _lam_or_alpha(cfg, args, lam_attr: str, char_attr: str) -> PartitionFn:
    spec = getattr(args, lam_attr, None)
    if spec:
        return _lambda(cfg.q, spec, "--" + lam_attr)
    return PartitionFn.cuspidal(_char(cfg.q, getattr(args, char_attr), "--" + char_attr).orbit())


# ----------------------------------------------------------------------
# commands: each returns (result, assertions)


def cmd_gauss_sum(cfg: RunConfig, args):
    alpha = _char(cfg.q, args.alpha, "--alpha")
    F = _field(cfg, alpha.level)
    return _value_json(gauss_sum(F, alpha, AdditiveChar(cfg.q, cfg.psi_a))), []


def cmd_epsilon0(cfg: RunConfig, args):
    lam = _lam_or_alpha(cfg, args, "lam", "alpha")
    F = _field(cfg, *_lam_degrees(lam))
    return _value_json(epsilon0(F, lam, AdditiveChar(cfg.q, cfg.psi_a))), []


def cmd_epsilon0_tensor(cfg: RunConfig, args):
    lam = _lam_or_alpha(cfg, args, "lam", "alpha")
    mu = _lam_or_alpha(cfg, args, "mu", "beta")
    F = _field(cfg, *_lam_degrees(lam, mu))
    return _value_json(epsilon0_tensor(F, lam, mu, AdditiveChar(cfg.q, cfg.psi_a), cfg.crosscheck)), []


def cmd_epsilon0_wedge2(cfg: RunConfig, args):
    psi = AdditiveChar(cfg.q, cfg.psi_a)
    if args.lam:
        lam = _lambda(cfg.q, args.lam, "--lambda")
        F = _field(cfg, *_lam_degrees(lam))
        return _value_json(epsilon0_wedge2(F, lam, psi, cfg.crosscheck)), []
    alpha = _char(cfg.q, args.alpha, "--alpha")
    F = _field(cfg, alpha.level)
    return _value_json(epsilon0_wedge2_cuspidal(F, alpha, psi, cfg.crosscheck)), []


def cmd_rs_gamma(cfg: RunConfig, args):
    alpha = _char(cfg.q, args.alpha, "--alpha")
    beta = _char(cfg.q, args.beta, "--beta")
    F = _field(cfg, alpha.level, beta.level)
    psi = AdditiveChar(cfg.q, cfg.psi_a)
    route = getattr(args, "route", "bessel")
    if route == "epsilon":
        value = rs_gamma_via_epsilon(F, alpha, beta, psi, cfg.crosscheck)
        return _value_json(value), []
    value = glnq.rs_gamma_bessel(F, alpha, beta, psi)
    assertions = []
    if cfg.crosscheck:
        ref = rs_gamma_via_epsilon(F, alpha, beta, psi, crosscheck=False)
        assertions.append(_assertion("bessel route equals epsilon route", ref, value))
    return _value_json(value), assertions


def cmd_nien_zhang(cfg: RunConfig, args):
    alpha = _char(cfg.q, args.alpha, "--alpha")
    beta = _char(cfg.q, args.beta, "--beta")
    F = _field(cfg, alpha.level * beta.level, alpha.level, beta.level)
    return _value_json(nien_zhang_rhs(F, alpha, beta, AdditiveChar(cfg.q, cfg.psi_a))), []


def _assertion(name: str, expected, actual, equal: bool = True) -> dict:
    same = expected == actual
    return {
        "name": name,
        "pass": same if equal else not same,
        "expected": ("" if equal else "!= ") + str(expected),
        "actual": str(actual.to_cyclotomic() if isinstance(actual, QHalfScalar) else actual),
        "actual_approx": [actual.approx_complex().real, actual.approx_complex().imag],
    }


def cmd_reproduce_example(cfg: RunConfig, args):
    modulus = cfg.modulus or "2,0,0,2,1"
    if cfg.q != 3:
        raise UsageError("the example lives over F_3")
    ex = worked_example(modulus, cfg.psi_a)
    g = ex["expected_gamma"]
    assertions = [
        _assertion("gamma by the Gauss-sum product", g, ex["gamma_closed_form"]),
        _assertion("gamma from epsilon_0 of the tensor product", g, ex["gamma_from_epsilon"]),
        _assertion("gamma by the Bessel sum", g, ex["gamma_bessel"]),
        _assertion("Nien-Zhang right-hand side value", ex["expected_nien_zhang"], ex["nien_zhang"]),
        _assertion("Nien-Zhang right-hand side differs from gamma", ex["gamma_bessel"], ex["nien_zhang"], equal=False),
    ]
    result = {
        "gamma": _value_json(ex["gamma_bessel"]),
        "epsilon0": _value_json(ex["epsilon0"]),
        "nien_zhang": _value_json(ex["nien_zhang"]),
        "ambient_modulus": list(ex["field"].modulus),
    }
    return result, assertions


def cmd_verify(cfg: RunConfig, args):
    qs = tuple(args.qs) if args.qs else None
    res = run_suite(args.suite, seed=cfg.seed, jobs=cfg.jobs, qs=qs)
    by_kind: Counter = Counter()
    for r in res.results:
        by_kind[(r.case.kind, r.passed)] += 1
    kinds = sorted({k for k, _ in by_kind})
    summary = {k: {"pass": by_kind[(k, True)], "fail": by_kind[(k, False)]} for k in kinds}
    failures = [
        {"case": r.case.name, "detail": r.detail, "replay": r.replay} for r in res.results if not r.passed
    ]
    ok, bad = res.counts
    result = {"suite": args.suite, "passed": ok, "failed": bad, "by_kind": summary, "failures": failures[:20]}
    assertions = [{"name": f"{args.suite}: all cases pass", "pass": res.passed, "expected": f"{ok + bad} pass",
                   "actual": f"{ok} pass, {bad} fail"}]
    return result, assertions


COMMANDS = {
    "gauss-sum": cmd_gauss_sum,
    "epsilon0": cmd_epsilon0,
    "epsilon0-tensor": cmd_epsilon0_tensor,
    "epsilon0-wedge2": cmd_epsilon0_wedge2,
    "rs-gamma": cmd_rs_gamma,
    "rs-gamma-bessel": cmd_rs_gamma,
    "nien-zhang": cmd_nien_zhang,
    "reproduce-example": cmd_reproduce_example,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--q", type=int, default=3, help="prime base field size (default 3)")
    common.add_argument("--ambient-degree", type=int, help="degree L of the ambient field (default: smallest that fits)")
    common.add_argument("--modulus", help="primitive modulus, comma-separated coefficients, constant term first")
    common.add_argument("--psi-a", type=int, default=1, help="additive character psi(x) = exp(2 pi i a x / q)")
    common.add_argument("--no-crosscheck", action="store_true", help="skip comparing closed forms with the reference")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--format", choices=("json", "pretty"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweep cases")

    parser = _Parser(prog="finite-epsilon", description="Gauss sums, epsilon factors and gamma factors over F_q.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gauss-sum", parents=[common], help="Gauss sum of one character")
    p.add_argument("--alpha", help=CHAR_HELP)

    for name, helptext in (("epsilon0", "epsilon_0 of a representation"),
                           ("epsilon0-wedge2", "epsilon_0 of the exterior square")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--alpha", help="cuspidal parameter; " + CHAR_HELP)
        p.add_argument("--lambda", dest="lam", help=LAMBDA_HELP)

    p = sub.add_parser("epsilon0-tensor", parents=[common], help="epsilon_0 of a tensor product")
    p.add_argument("--alpha", help=CHAR_HELP)
    p.add_argument("--beta", help=CHAR_HELP)
    p.add_argument("--lambda", dest="lam", help=LAMBDA_HELP)
    p.add_argument("--mu", help=LAMBDA_HELP)

    p = sub.add_parser("rs-gamma", parents=[common], help="Rankin-Selberg gamma factor of two cuspidals")
    p.add_argument("--route", choices=("epsilon", "bessel"), default="epsilon")
    p.add_argument("--alpha", help=CHAR_HELP)
    p.add_argument("--beta", help=CHAR_HELP)

    p = sub.add_parser("rs-gamma-bessel", parents=[common], help="gamma factor via Bessel functions")
    p.add_argument("--alpha", help=CHAR_HELP)
    p.add_argument("--beta", help=CHAR_HELP)

    p = sub.add_parser("nien-zhang", parents=[common], help="single-Gauss-sum expression for the gamma factor")
    p.add_argument("--alpha", help=CHAR_HELP)
    p.add_argument("--beta", help=CHAR_HELP)

    sub.add_parser("reproduce-example", parents=[common], help="the F_3 example: three gamma routes and the counterexample")

    p = sub.add_parser("verify", parents=[common], help="run an invariant sweep")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--qs", type=int, nargs="+", help="restrict the sweep to these base fields")
    return parser


def _emit(payload: dict, fmt: str, stream) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, default=str), file=stream)
        return
    print(f"{payload['command']}  ({payload.get('runtime_ms', 0):.0f} ms)", file=stream)
    if "error" in payload:
        print(f"  error: {payload['error']}: {payload['message']}", file=stream)
    result = payload.get("result")
    if isinstance(result, dict) and "approx" in result:
        print(f"  exact:  {result['display']}", file=stream)
        print(f"  approx: {result['approx']['re']:+.10f} {result['approx']['im']:+.10f}i", file=stream)
    elif isinstance(result, dict):
        for k, v in result.items():
            if isinstance(v, dict) and "approx" in v:
                print(f"  {k}: {v['display']}  ~ {v['approx']['re']:+.6f} {v['approx']['im']:+.6f}i", file=stream)
            elif k != "failures":
                print(f"  {k}: {v}", file=stream)
        for fail in result.get("failures", []):
            print(f"  FAIL {fail['case']}: {fail['detail']}\n    replay: {fail['replay']}", file=stream)
    for a in payload.get("assertions", []):
        print(f"  [{'PASS' if a['pass'] else 'FAIL'}] {a['name']}", file=stream)
        if not a["pass"]:
            print(f"      expected {a['expected']}\n      actual   {a['actual']}", file=stream)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        q=args.q,
        ambient_degree=args.ambient_degree,
        modulus=args.modulus,
        psi_a=args.psi_a,
        crosscheck=not args.no_crosscheck,
        format=args.format,
        jobs=max(1, args.jobs),
        seed=args.seed,
    )
    payload: dict = {"command": args.command, "config": asdict(cfg)}
    start = time.perf_counter()
    code = EXIT_OK
    try:
        result, assertions = COMMANDS[args.command](cfg, args)
        payload["result"] = result
        payload["assertions"] = assertions
        if not all(a["pass"] for a in assertions):
            code = EXIT_ASSERTION
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"finite-epsilon: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        payload.update(error=type(exc).__name__, message=str(exc))
        code = EXIT_PRECONDITION
    except (InternalMismatch, AssertionError) as exc:
        payload.update(error=type(exc).__name__, message=str(exc))
        code = EXIT_ASSERTION
    payload["runtime_ms"] = (time.perf_counter() - start) * 1000
    _emit(payload, cfg.format, sys.stdout)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

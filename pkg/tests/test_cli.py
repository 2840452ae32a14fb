from __future__ import annotations

import json
import subprocess
import sys

import pytest

from finite_epsilon import QHalfScalar
from finite_epsilon.cli import main
from finite_epsilon.cyclotomic import Cyclotomic


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def decode(value):
    return (QHalfScalar if "half_exponent" in value else Cyclotomic).from_json(value)


def test_reproduce_example_passes(capsys):
    code, payload = run(capsys, "reproduce-example")
    assert code == 0
    assert payload["assertions"] and all(a["pass"] for a in payload["assertions"])
    assert payload["result"]["gamma"]["approx"]["re"] == pytest.approx(-2 / 9, abs=1e-12)


def test_wrong_modulus_fails_with_assertion_code(capsys):
    code, payload = run(capsys, "reproduce-example", "--modulus", "2,1,0,0,1")
    assert code == 3
    assert not all(a["pass"] for a in payload["assertions"])


def test_twisted_psi_keeps_the_example(capsys):
    # alpha(-1)^2 beta(-1)^4 = 1, so psi_2 leaves gamma unchanged
    code, _ = run(capsys, "reproduce-example", "--psi-a", "2")
    assert code == 0


def test_json_round_trip(capsys):
    code, payload = run(capsys, "rs-gamma", "--modulus", "2,0,0,2,1", "--alpha", "4:66", "--beta", "2:1")
    assert code == 0
    value = decode({k: v for k, v in payload["result"].items() if k not in ("approx", "display")})
    z = complex(payload["result"]["approx"]["re"], payload["result"]["approx"]["im"])
    assert abs(value.approx_complex() - z) < 1e-12
    assert value.to_json() == decode(value.to_json()).to_json()


def test_gauss_sum_and_epsilon_commands(capsys):
    code, payload = run(capsys, "gauss-sum", "--alpha", "1:1")
    assert code == 0 and payload["result"]["approx"]["im"] == pytest.approx(-(3**0.5))
    code, payload = run(capsys, "epsilon0", "--alpha", "1:0")
    assert code == 0 and payload["result"]["approx"]["re"] == pytest.approx(-(3**-0.5))
    code, payload = run(capsys, "epsilon0", "--lambda", "1:0=1,1")
    assert code == 0 and payload["result"]["approx"]["re"] == pytest.approx(1 / 3)
    code, payload = run(capsys, "epsilon0-tensor", "--alpha", "1:1", "--beta", "1:1")
    assert code == 0 and payload["result"]["approx"]["re"] == pytest.approx(-(3**-0.5))
    code, payload = run(capsys, "epsilon0-wedge2", "--alpha", "2:2")
    assert code == 0 and payload["result"]["approx"]["re"] == pytest.approx(-(3**-0.5))


def test_bessel_route_and_nien_zhang(capsys):
    code, a = run(capsys, "rs-gamma", "--q", "2", "--alpha", "3:1", "--beta", "2:1")
    assert code == 0
    code, b = run(capsys, "rs-gamma-bessel", "--q", "2", "--alpha", "3:1", "--beta", "2:1")
    assert code == 0 and b["result"]["display"] == a["result"]["display"]
    code, _ = run(capsys, "nien-zhang", "--q", "2", "--alpha", "3:1", "--beta", "2:1")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ("rs-gamma", "--alpha", "2:4", "--beta", "1:1"),  # non-regular orbit
        ("rs-gamma", "--alpha", "2:1", "--beta", "2:1"),  # n <= m
        ("gauss-sum", "--q", "4", "--alpha", "1:1"),  # q not prime
        ("epsilon0-wedge2", "--alpha", "1:1"),
    ],
)
def test_precondition_exit_code(capsys, argv):
    code, payload = run(capsys, *argv)
    assert code == 2
    assert "error" in payload


@pytest.mark.parametrize("argv", [("gauss-sum", "--alpha", "oops"), ("no-such-command",), ("epsilon0",)])
def test_usage_exit_code(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
        raise SystemExit(1)
    assert exc.value.code == 1


def test_verify_small_suite(capsys):
    code, payload = run(capsys, "verify", "degenerate-wedge2")
    assert code == 0
    assert payload["result"]["failed"] == 0


def test_pretty_format(capsys):
    code, out = run(capsys, "rs-gamma", "--format", "pretty", "--alpha", "2:1", "--beta", "1:1")
    assert code == 0 and "exact:" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "finite_epsilon", "gauss-sum", "--alpha", "1:1"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "gauss-sum"


def test_json_round_trip_half_exponent(capsys):
    code, payload = run(capsys, "epsilon0", "--alpha", "1:0")
    assert code == 0
    raw = {k: v for k, v in payload["result"].items() if k not in ("approx", "display")}
    value = decode(raw)
    assert isinstance(value, QHalfScalar) and value == QHalfScalar(-1, -1, 3)
    assert value.to_json() == raw

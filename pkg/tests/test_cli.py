"""Command-line interface: envelope schema, determinism, exit codes,
complex-literal parsing, and every subcommand."""

from __future__ import annotations

import json

import pytest
from mpmath import mp, mpc, mpf

from eisenlab.cli import main, parse_complex
from eisenlab.errors import DomainError

ZETA3_STR = "1.20205690315959428539973816151144999076498629"
ESTAR0_I_2 = "0.3053218647257396716848678383107947035914"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# ---------------------------------------------------------------------------
# complex literal parsing
# ---------------------------------------------------------------------------


def test_parse_complex_forms():
    mp.prec = 64
    assert parse_complex("0.3+1.2i") == mpc("0.3", "1.2")
    assert parse_complex("2") == mpc(2, 0)
    assert parse_complex("-1.5") == mpc("-1.5", 0)
    assert parse_complex("i") == mpc(0, 1)
    assert parse_complex("-i") == mpc(0, -1)
    assert parse_complex("+i") == mpc(0, 1)
    assert parse_complex("3-4j") == mpc(3, -4)
    assert parse_complex("2.5e-1+1e2i") == mpc("0.25", "100")
    assert parse_complex(" 1 + 2 i ") == mpc(1, 2)
    assert parse_complex("0.5i") == mpc(0, "0.5")


def test_parse_complex_rejections():
    for bad in ("abc", "", "1+2", "i+1", "1+2x", "--3"):
        with pytest.raises(DomainError):
            parse_complex(bad)


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def test_eval_envelope_schema(capsys):
    payload = run_json(capsys, "eval", "--k", "2", "--z", "0.3+1.2i", "--s", "0.5+3i", "--prec", "128")
    assert list(payload) == ["schema", "value", "err", "terms", "ms"]
    assert payload["schema"] == "eisenlab/1"
    assert isinstance(payload["value"]["re"], str)
    assert isinstance(payload["value"]["im"], str)
    assert isinstance(payload["err"], str)
    assert isinstance(payload["terms"], int) and payload["terms"] > 0
    assert isinstance(payload["ms"], float)
    # decimal strings must parse
    mp.prec = 160
    mpf(payload["value"]["re"])
    mpf(payload["value"]["im"])
    assert mpf(payload["err"]) >= 0


def test_eval_weight0_digits_match_frozen(capsys):
    payload = run_json(capsys, "eval", "--k", "0", "--z", "i", "--s", "2", "--prec", "128")
    mp.prec = 200
    got = mpf(payload["value"]["re"])
    assert abs(got - mpf(ESTAR0_I_2)) < mpf("1e-36")
    assert abs(mpf(payload["value"]["im"])) < mpf("1e-30")


def test_eval_harmonic_weight0_is_one(capsys):
    payload = run_json(capsys, "eval", "--k", "0", "--z", "0.2+0.9i", "--series", "harmonic")
    assert mpf(payload["value"]["re"]) == 1
    assert mpf(payload["value"]["im"]) == 0


def test_eval_brown_series(capsys):
    payload = run_json(capsys, "eval", "--k", "0", "--z", "0.27+1.15i",
                       "--series", "brown", "--a", "2", "--b", "2")
    assert payload["terms"] == 0
    assert mpf(payload["value"]["re"]) != 0


def test_eval_text_output(capsys):
    code, out, _ = run_cli(capsys, "eval", "--k", "0", "--z", "i", "--s", "2", "--output", "text")
    assert code == 0
    assert out.startswith("value = 0.305321864725739671")
    assert "err <=" in out and "terms =" in out


def test_eval_deterministic_modulo_ms(capsys):
    args = ("eval", "--k", "2", "--z", "0.3+1.2i", "--s", "0.5+3i")
    a = run_json(capsys, *args)
    b = run_json(capsys, *args)
    a.pop("ms"), b.pop("ms")
    assert a == b


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------


def test_zeta_odd_lerch_digits(capsys):
    payload = run_json(capsys, "zeta", "--odd", "3", "--formula", "lerch")
    mp.prec = 200
    assert abs(mpf(payload["value"]["re"]) - mpf(ZETA3_STR)) < mpf("1e-36")


def test_zeta_even_closed_form(capsys):
    payload = run_json(capsys, "zeta", "--even", "4", "--k", "6")
    mp.prec = 200
    assert abs(mpf(payload["value"]["re"]) - mp.pi**4 / 90) < mpf("1e-36")


def test_zeta_deterministic_modulo_ms(capsys):
    args = ("zeta", "--odd", "7", "--formula", "grosswald_tg")
    a = run_json(capsys, *args)
    b = run_json(capsys, *args)
    a.pop("ms"), b.pop("ms")
    assert a == b


def test_zeta_respects_trunc(capsys):
    payload = run_json(capsys, "zeta", "--odd", "3", "--formula", "lerch", "--trunc", "20")
    assert payload["terms"] <= 20


# ---------------------------------------------------------------------------
# coeffs
# ---------------------------------------------------------------------------


def test_coeffs_a_table(capsys):
    payload = run_json(capsys, "coeffs", "--a", "6", "2")
    assert [row["value"] for row in payload["rows"]] == ["-1", "4"]
    assert [row["u"] for row in payload["rows"]] == [0, 1]


def test_coeffs_p_table(capsys):
    payload = run_json(capsys, "coeffs", "--p", "1", "0")
    assert [row["coefficient"] for row in payload["rows"]] == ["2", "-2"]


def test_coeffs_theta_table_weight0_pole_row(capsys):
    payload = run_json(capsys, "coeffs", "--theta", "0", "--m-range", "-1", "1")
    by_m = {row["m"]: row for row in payload["rows"]}
    assert by_m[0]["symbolic"] == "pole"
    assert by_m[0]["numeric"] is None
    # theta_0(1) = pi^-1 zeta(2) = pi/6
    mp.prec = 160
    assert abs(mpf(by_m[1]["numeric"]) - mp.pi / 6) < mpf("1e-30")


def test_coeffs_exactly_one_selector(capsys):
    code, _, err = run_cli(capsys, "coeffs")
    assert code == 2
    assert "exactly one" in err
    code2, _, err2 = run_cli(capsys, "coeffs", "--theta", "2", "--p", "1", "0")
    assert code2 == 2


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_suite_passes_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "arith")
    assert code == 0
    assert out.endswith("5/5 checks passed\n")
    assert out.count("PASS") == 5


def test_verify_byte_identical_reports(capsys):
    _, out1, _ = run_cli(capsys, "verify", "--suite", "coeffs")
    _, out2, _ = run_cli(capsys, "verify", "--suite", "coeffs")
    assert out1 == out2


def test_verify_tiny_tolerance_exit_three(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "arith", "--tol", "1e-60")
    assert code == 3
    assert "FAIL" in out


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------


def test_convergence_digits_increase(capsys):
    code, out, _ = run_cli(capsys, "convergence", "--odd", "3", "--formula", "lerch",
                           "--terms", "5", "10", "20")
    assert code == 0
    lines = out.strip().splitlines()
    row = next(line for line in lines if line.startswith("lerch"))
    digs = [int(tok) for tok in row.split()[1:]]
    assert digs == sorted(digs)
    assert digs[-1] > digs[0] >= 10
    assert "ms" not in out  # no timing: reports are reproducible


def test_convergence_deterministic(capsys):
    args = ("convergence", "--odd", "3", "--terms", "5", "10")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


# ---------------------------------------------------------------------------
# exit code 2 paths
# ---------------------------------------------------------------------------


def test_domain_errors_exit_two(capsys):
    cases = [
        ("eval", "--k", "3", "--z", "i", "--s", "2"),  # odd weight
        ("eval", "--k", "2", "--z", "zzz", "--s", "2"),  # bad literal
        ("eval", "--k", "2", "--z", "1-2i", "--s", "2"),  # lower half-plane
        ("eval", "--k", "2", "--z", "i"),  # estar without --s
        ("zeta", "--odd", "4"),  # even passed to --odd
        ("zeta", "--odd", "3", "--even", "4", "--k", "6"),  # both selectors
        ("zeta", "--even", "4"),  # missing --k
        ("zeta", "--odd", "5", "--formula", "lerch"),  # inapplicable route
        ("convergence", "--odd", "4"),
    ]
    for argv in cases:
        code, _, err = run_cli(capsys, *argv)
        assert code == 2, argv
        assert err.startswith("error:"), argv


def test_usage_errors_exit_two():
    # argparse handles unknown subcommands/flags with SystemExit(2)
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc2:
        main(["verify", "--suite", "nonsense"])
    assert exc2.value.code == 2

"""Command-line interface.

Subcommands:

* ``eval``        -- evaluate a series (completed Eisenstein, harmonic, or
                     the even double-index series) at a point.
* ``zeta``        -- zeta values through the accelerated formulas.
* ``coeffs``      -- exact coefficient tables (theta_k(m), A^k_h(u), P^n_r).
* ``verify``      -- run the named identity-check registry.
* ``convergence`` -- terms-vs-correct-digits table for the zeta routes.

JSON envelope: {"schema": "eisenlab/1", "value": {"re": str, "im": str},
"err": str, "terms": int, "ms": float} with numbers as decimal strings.
Every field except ``ms`` is a pure function of the request; ``verify`` and
``convergence`` reports carry no timing at all so repeated runs are
byte-identical.

Exit codes: 0 success; 2 usage/validation/domain error; 3 when a
verification residual exceeds its tolerance.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from typing import Optional

from mpmath import mp, mpc, mpf

from . import coeffs as coeffs_mod
from . import verify as verify_mod
from . import zeta_values
from .arith import default_tol, to_mp, working, zeta_complex
from .coeffs import a_coeff, a_coeff_bound, p_poly, theta_k_int
from .eisenstein import EvalConfig, SeriesValue, brown_e, estar, harmonic_e
from .errors import DomainError, EisenlabError, PoleError, TruncationError

__all__ = ["main"]

_COMPLEX_RE = re.compile(
    r"""^\s*
    (?P<re>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?
    (?P<im>[+-]?(?:(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?[ij])?
    \s*$""",
    re.VERBOSE,
)


def parse_complex(text: str):
    """Parse ``a+bi`` (either part optional, signs allowed) into an mpc.

    Evaluated at the current working precision; accepts ``i`` or ``j``.
    """
    s = text.strip().replace(" ", "")
    m = _COMPLEX_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise DomainError(f"cannot parse complex literal {text!r} (expected a+bi)")
    re_part = m.group("re")
    im_part = m.group("im")
    re_val = mpf(re_part) if re_part else mpf(0)
    if im_part:
        digits = im_part[:-1]
        if digits in ("", "+"):
            im_val = mpf(1)
        elif digits == "-":
            im_val = mpf(-1)
        else:
            im_val = mpf(digits)
    else:
        im_val = mpf(0)
    return mpc(re_val, im_val)


def _num_str(x, prec: int) -> str:
    """Decimal string carrying the full precision of ``x``."""
    dps = max(17, int(prec * 0.30103) + 2)
    return mp.nstr(to_mp(x, prec), dps, strip_zeros=True)


def _emit_value(result: SeriesValue, prec: int, out, as_json: bool, t0: float) -> None:
    with working(prec, 8):
        val = mpc(to_mp(result.value, prec))
        re_s = _num_str(val.real, prec)
        im_s = _num_str(val.imag, prec)
        err_s = _num_str(result.err_estimate, 64)
    ms = (time.perf_counter() - t0) * 1000.0
    if as_json:
        payload = {
            "schema": "eisenlab/1",
            "value": {"re": re_s, "im": im_s},
            "err": err_s,
            "terms": int(result.terms_used),
            "ms": round(ms, 3),
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"value = {re_s} + {im_s}*i\n")
        out.write(f"err <= {err_s}   terms = {result.terms_used}   ms = {ms:.3f}\n")


def _cfg_from_args(args) -> EvalConfig:
    tol = mpf(args.tol) if args.tol is not None else None
    return EvalConfig(prec_bits=args.prec, trunc_M=args.trunc, tol=tol)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_eval(args, out) -> int:
    t0 = time.perf_counter()
    cfg = _cfg_from_args(args)
    with working(args.prec, 8):
        z = parse_complex(args.z)
        if args.series == "estar":
            if args.s is None:
                raise DomainError("eval --series estar requires --s")
            s = parse_complex(args.s)
            result = estar(args.k, z, s, cfg)
        elif args.series == "harmonic":
            result = harmonic_e(args.k, z, cfg)
        else:  # brown
            if args.a is None or args.b is None:
                raise DomainError("eval --series brown requires --a and --b")
            value = brown_e(args.a, args.b, z, cfg)
            result = SeriesValue(value=value, err_estimate=cfg.resolved_tol(), terms_used=0)
    _emit_value(result, args.prec, out, args.output == "json", t0)
    return 0


def _cmd_zeta(args, out) -> int:
    t0 = time.perf_counter()
    cfg = _cfg_from_args(args)
    if (args.odd is None) == (args.even is None):
        raise DomainError("zeta requires exactly one of --odd N or --even N")
    if args.odd is not None:
        n = args.odd
        if n < 3 or n % 2 == 0:
            raise DomainError("--odd expects an odd integer >= 3")
        h = (n + 1) // 2
        result = zeta_values.zeta_odd(h, args.formula, cfg, k=args.k)
    else:
        n = args.even
        if n < 2 or n % 2:
            raise DomainError("--even expects an even integer >= 2")
        if args.k is None:
            raise DomainError("zeta --even requires --k (series weight)")
        result = zeta_values.zeta_even_series(n // 2, args.k, cfg)
    _emit_value(result, args.prec, out, args.output == "json", t0)
    return 0


def _theta_rows(k: int, m_lo: int, m_hi: int, prec: int):
    rows = []
    for m in range(m_lo, m_hi + 1):
        if k == 0 and m == 0:
            rows.append({"m": m, "symbolic": "pole", "numeric": None})
            continue
        tv = theta_k_int(k, m)
        sym = f"{tv.rat}"
        if tv.pi_pow:
            sym += f" * pi^{tv.pi_pow}"
        if tv.zeta_arg is not None:
            sym += f" * zeta({tv.zeta_arg})"
        rows.append({"m": m, "symbolic": sym, "numeric": _num_str(tv.to_mp(prec), prec)})
    return rows


def _cmd_coeffs(args, out) -> int:
    t0 = time.perf_counter()
    chosen = [x is not None for x in (args.theta, args.a, args.p)]
    if sum(chosen) != 1:
        raise DomainError("coeffs requires exactly one of --theta K, --a K H, --p N R")
    if args.theta is not None:
        k = args.theta
        lo, hi = args.m_range
        rows = _theta_rows(k, lo, hi, args.prec)
        title = f"theta_{k}(m) for m in [{lo}, {hi}]"
        key = "m"
    elif args.a is not None:
        k, h = args.a
        bound = a_coeff_bound(k, h)
        rows = [
            {"u": u, "value": str(a_coeff(k, h, u))}
            for u in range(0, max(bound, 0) + 1)
        ]
        title = f"A^{k}_{h}(u) for u in [0, {max(bound, 0)}] (vanishes beyond {bound})"
        key = "u"
    else:
        n, r = args.p
        poly = p_poly(n, r).poly
        rows = [{"power": j, "coefficient": str(c)} for j, c in enumerate(poly.coeffs)]
        title = f"P^{n}_{r}(x) coefficients (ascending powers)"
        key = "power"
    ms = (time.perf_counter() - t0) * 1000.0
    if args.output == "json":
        out.write(
            json.dumps({"schema": "eisenlab/1", "title": title, "rows": rows, "ms": round(ms, 3)})
            + "\n"
        )
    else:
        out.write(title + "\n")
        for row in rows:
            rest = "  ".join(f"{key2}={val}" for key2, val in row.items() if key2 != key)
            out.write(f"  {key}={row[key]}  {rest}\n")
    return 0


def _cmd_verify(args, out) -> int:
    outcomes = verify_mod.run_suite(args.suite, prec=args.prec, tol=args.tol)
    out.write(verify_mod.report_text(outcomes))
    return 0 if all(o.passed for o in outcomes) else 3


def _cmd_convergence(args, out) -> int:
    n = args.odd
    if n < 3 or n % 2 == 0:
        raise DomainError("--odd expects an odd integer >= 3")
    h = (n + 1) // 2
    if args.formula == "all":
        formulas = [
            f
            for f in zeta_values.ZETA_FORMULA_IDS
            if f != "euler" and zeta_values.zeta_odd_applicable(h, f, k=2 * h - 2 if f == "prop_bigb" else None)
        ]
    else:
        formulas = [args.formula]
    prec = args.prec
    with working(prec, 16):
        reference = zeta_complex(2 * h - 1, mp.prec)
    lines = [f"correct digits of zeta({2 * h - 1}) vs terms used, prec={prec}"]
    lines.append("formula" + " " * 13 + "  ".join(f"M={m:<4d}" for m in args.terms))
    for fid in formulas:
        digs = []
        for m_terms in args.terms:
            cfg = EvalConfig(prec_bits=prec, trunc_M=m_terms)
            kk = 2 * h - 2 if fid == "prop_bigb" else None
            try:
                val = zeta_values.zeta_odd(h, fid, cfg, k=kk).value
                diff = abs(to_mp(val, prec) - reference)
                if diff == 0:
                    digits = int(prec * 0.30103)
                else:
                    digits = max(0, int(-mp.log10(diff)))
            except EisenlabError:
                digits = -1
            digs.append(digits)
        lines.append(f"{fid:<20}" + "  ".join(f"{d:<6d}" for d in digs))
    out.write("\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eisenlab",
        description="High-precision real-analytic Eisenstein series and zeta acceleration toolkit",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, with_output=True):
        p.add_argument("--prec", type=int, default=128, help="working precision in bits (default 128)")
        p.add_argument("--tol", type=str, default=None, help="target tolerance (default 2^(16-prec))")
        p.add_argument("--trunc", type=int, default=None, help="series truncation override (default auto)")
        if with_output:
            p.add_argument("--output", choices=("json", "text"), default="json")

    p_eval = sub.add_parser("eval", help="evaluate a series at a point")
    p_eval.add_argument("--k", type=int, required=True, help="even weight")
    p_eval.add_argument("--z", type=str, required=True, help="point in the upper half-plane, a+bi")
    p_eval.add_argument("--s", type=str, default=None, help="spectral parameter, a+bi")
    p_eval.add_argument(
        "--series",
        choices=("estar", "harmonic", "brown"),
        default="estar",
        help="estar: completed series at s; harmonic: weight-k harmonic series; brown: double-index series",
    )
    p_eval.add_argument("--a", type=int, default=None, help="first index (brown)")
    p_eval.add_argument("--b", type=int, default=None, help="second index (brown)")
    add_common(p_eval)

    p_zeta = sub.add_parser("zeta", help="zeta values via accelerated series")
    p_zeta.add_argument("--odd", type=int, default=None, help="odd argument n: compute zeta(n)")
    p_zeta.add_argument("--even", type=int, default=None, help="even argument n: compute zeta(n)")
    p_zeta.add_argument(
        "--formula",
        choices=tuple(f for f in zeta_values.ZETA_FORMULA_IDS if f != "euler"),
        default="combined",
        help="acceleration route for --odd",
    )
    p_zeta.add_argument("--k", type=int, default=None, help="weight for prop_bigb / --even routes")
    add_common(p_zeta)

    p_coeffs = sub.add_parser("coeffs", help="exact coefficient tables")
    p_coeffs.add_argument("--theta", type=int, default=None, metavar="K", help="theta_K(m) table")
    p_coeffs.add_argument(
        "--m-range", type=int, nargs=2, default=(-4, 4), metavar=("LO", "HI"), help="m range for --theta"
    )
    p_coeffs.add_argument("--a", type=int, nargs=2, default=None, metavar=("K", "H"), help="A^K_H(u) table")
    p_coeffs.add_argument("--p", type=int, nargs=2, default=None, metavar=("N", "R"), help="P^N_R coefficients")
    add_common(p_coeffs)

    p_verify = sub.add_parser("verify", help="run identity checks")
    p_verify.add_argument(
        "--suite", choices=verify_mod.SUITES + ("all",), default="all", help="check suite to run"
    )
    p_verify.add_argument("--prec", type=int, default=128)
    p_verify.add_argument("--tol", type=str, default=None)

    p_conv = sub.add_parser("convergence", help="terms-vs-digits tables for the zeta routes")
    p_conv.add_argument("--odd", type=int, required=True, help="odd argument n of zeta(n)")
    p_conv.add_argument(
        "--formula",
        choices=tuple(f for f in zeta_values.ZETA_FORMULA_IDS if f != "euler") + ("all",),
        default="all",
    )
    p_conv.add_argument(
        "--terms", type=int, nargs="+", default=(5, 10, 15, 20, 25), help="truncation points to tabulate"
    )
    p_conv.add_argument("--prec", type=int, default=128)

    return parser


_DISPATCH = {
    "eval": _cmd_eval,
    "zeta": _cmd_zeta,
    "coeffs": _cmd_coeffs,
    "verify": _cmd_verify,
    "convergence": _cmd_convergence,
}


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.subcommand](args, sys.stdout)
    except (DomainError, PoleError, TruncationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Self-verification registry: every identity the library claims is encoded
here as a named, deterministic check.

Each check recomputes an identity's two sides (or an exact property) on a
fixed grid -- seeded pseudo-random where a spread of points is wanted -- and
reports the worst residual against its tolerance.  Checks carrying a stated
absolute tolerance (finite-difference cross-checks, double-precision
identities with polynomial convergence) keep it regardless of the requested
precision; the rest use the scale 2^(16 - prec).

Everything is a pure function of (prec, tol): repeated runs produce
byte-identical reports.  The registry is a static tuple so callers (CLI,
tests) can enumerate the full suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Optional

from mpmath import mp, mpc, mpf

from . import arith, coeffs, eisenstein, modular, special, zeta_values
from .arith import default_tol, sign_pow, to_mp, working
from .eisenstein import EvalConfig, GammaMatrix
from .errors import DomainError

__all__ = [
    "CheckOutcome",
    "REGISTRY",
    "SUITES",
    "registered_checks",
    "report_text",
    "run_suite",
]


@dataclass(frozen=True)
class CheckOutcome:
    suite: str
    name: str
    passed: bool
    residual: str
    tol: str


@dataclass(frozen=True)
class VerifyContext:
    prec: int
    tol: mpf  # generic tolerance for full-precision identity checks


def _fmt(x) -> str:
    """Deterministic short decimal for a nonnegative residual."""
    if isinstance(x, str):
        return x
    xx = abs(to_mp(x, 64))
    if xx == 0:
        return "0"
    return mp.nstr(xx, 4, strip_zeros=True, min_fixed=1, max_fixed=1)


def _outcome(suite, name, passed, residual, tol) -> CheckOutcome:
    return CheckOutcome(suite, name, bool(passed), _fmt(residual), _fmt(tol))


# ---------------------------------------------------------------------------
# arith
# ---------------------------------------------------------------------------


def _chk_bernoulli_recursion(ctx):
    ok = True
    for n in range(0, 31):
        total = sum(comb(n + 1, j) * arith.bernoulli(j) for j in range(n + 1))
        ok = ok and (total == (1 if n == 0 else 0))
    return ok, "exact", "exact"


def _chk_zeta_even_closed(ctx):
    worst = mpf(0)
    with working(ctx.prec, 16):
        for m in range(1, 11):
            rat, pw = arith.zeta_even(2 * m)
            closed = to_mp(rat, mp.prec) * mp.pi ** pw
            worst = max(worst, abs(arith.zeta_complex(2 * m, mp.prec) - closed))
    return worst < ctx.tol, worst, ctx.tol


def _chk_theta_functional_equation(ctx):
    rng = random.Random(190801)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for _ in range(100):
            s = mpc(rng.uniform(-7, 7), rng.uniform(-7, 7))
            if abs(s) < mpf("0.25") or abs(s - 1) < mpf("0.25"):
                s += 2  # keep away from the poles of theta(s/2), theta((1-s)/2)
            a = coeffs.theta((1 - s) / 2, ctx.prec)
            b = coeffs.theta(s / 2, ctx.prec)
            worst = max(worst, abs(a - b))
    return worst < ctx.tol, worst, ctx.tol


def _chk_binom_negation(ctx):
    ok = True
    for z in range(-10, 11):
        for u in range(0, 11):
            ok = ok and arith.binom(-z, u) == sign_pow(u) * arith.binom(z + u - 1, u)
    return ok, "exact", "exact"


def _chk_eulerian_at_one(ctx):
    ok = True
    for m in range(0, 11):
        poly = arith.eulerian_poly(m)
        ok = ok and poly(Fraction(1)) == factorial(m)
    return ok, "exact", "exact"


# ---------------------------------------------------------------------------
# coeffs
# ---------------------------------------------------------------------------

_A_GRID = [
    (k, h, u)
    for k in range(-12, 13, 2)
    for h in range(-12, 13)
    for u in range(0, 21)
]


def _chk_a_integer_valued(ctx):
    ok = all(coeffs.a_coeff(k, h, u).denominator == 1 for (k, h, u) in _A_GRID)
    return ok, "exact", "exact"


def _chk_a_vanishing_range(ctx):
    ok = True
    for (k, h, u) in _A_GRID:
        nonzero = coeffs.a_coeff(k, h, u) != 0
        ok = ok and nonzero == (u <= coeffs.a_coeff_bound(k, h))
    return ok, "exact", "exact"


def _chk_a_three_forms(ctx):
    ok = True
    for (k, h, u) in _A_GRID:
        a = coeffs.a_coeff(k, h, u)
        ok = ok and a == coeffs.a_coeff_binomial(k, h, u) == coeffs.a_coeff_product(k, h, u)
    return ok, "exact", "exact"


def _chk_a_h_symmetry(ctx):
    ok = all(
        coeffs.a_coeff(k, 1 - h, u) == coeffs.a_coeff(k, h, u) for (k, h, u) in _A_GRID
    )
    return ok, "exact", "exact"


def _chk_p_laguerre_link(ctx):
    ok = True
    for n in range(0, 7):
        for r in range(0, n + 1):
            p = coeffs.p_poly(n, r).poly
            lag = coeffs.laguerre_poly(2 * r, n - r)
            # P_r^n(x) = (2n)!/(n+r)! * (-x)^r * L^(2r)_(n-r)(x)
            scale = Fraction(factorial(2 * n), factorial(n + r))
            shifted = [Fraction(0)] * r + [sign_pow(r) * scale * c for c in lag.coeffs]
            ok = ok and list(p.coeffs) + [Fraction(0)] * (len(shifted) - len(p.coeffs)) == shifted
    return ok, "exact", "exact"


def _chk_p_derivative_recurrence(ctx):
    from .arith import ExactPoly

    x = ExactPoly((Fraction(0), Fraction(1)))
    ok = True
    for n in range(0, 6):
        for r in range(-n - 1, n + 2):
            p = coeffs.p_poly(n, r).poly
            pup = coeffs.p_poly(n + 1, r).poly
            pp1 = coeffs.p_poly(n, r + 1).poly
            pm1 = coeffs.p_poly(n, r - 1).poly
            lhs = x * p.derivative() * Fraction(4)
            rhs = pup + (x * Fraction(2) + Fraction(-4 * n - 2)) * p + x * (pp1 + pm1)
            ok = ok and (lhs + rhs * Fraction(-1)).is_zero()
    return ok, "exact", "exact"


def _chk_theta_k_rising_product(ctx):
    rng = random.Random(190802)
    worst = mpf(0)
    with working(ctx.prec, 16):
        wp = mp.prec
        for _ in range(20):
            k = 2 * rng.randint(-5, 5)
            s = mpc(rng.uniform(0.3, 3), rng.uniform(-2, 2))
            lhs = coeffs.theta_k(k, s, ctx.prec)
            prod = mpf(1)
            for j in range(abs(k) // 2):
                prod *= s + j
            rhs = coeffs.theta(s, ctx.prec) * prod
            worst = max(worst, abs(lhs - rhs))
    return worst < ctx.tol, worst, ctx.tol


def _chk_comb_identities(ctx):
    ok = True
    for a in range(0, 7):
        for b in range(-4, 9):
            for c in range(-2, 9):
                ok = ok and coeffs.comb_identities_check(a, b, c)
    return ok, "exact", "exact"


# ---------------------------------------------------------------------------
# special
# ---------------------------------------------------------------------------


def _chk_bessel_modulus_bound(ctx):
    rng = random.Random(190803)
    slack = 1 + mpf(2) ** (-ctx.prec // 2)
    ok = True
    worst = mpf(0)
    for _ in range(50):
        w = mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
        y = mpf(mp.nstr(mpf(rng.uniform(0.2, 6)), 8))
        kv = special.bessel_k(w, y, ctx.prec)
        kb = special.bessel_k(w.real, y, ctx.prec)
        ratio = abs(kv) / kb
        worst = max(worst, ratio)
        ok = ok and ratio <= slack
    return ok, worst, "1"


_BOUND_RS = [mpf(p) / 2 for p in range(-10, 11)]  # 0, +-1/2, ..., +-5


def _chk_bessel_bound_decay(ctx):
    ok = True
    with working(64, 8):
        for r in _BOUND_RS:
            for y in (mpf("0.1"), mpf(1), mpf(10)):
                kv = special.bessel_k(r, y, 64)
                bound = (
                    mpf(2) ** (2 * abs(r) + 1)
                    * (1 + mp.gamma(abs(r) + 1) / y ** (abs(r) + 1))
                    * mp.exp(-y)
                )
                ok = ok and kv < bound
    return ok, "bound holds" if ok else "bound violated", "strict"


def _chk_bessel_bound_decay2(ctx):
    ok = True
    with working(64, 8):
        for r in _BOUND_RS:
            if r == 0:
                continue
            for y in (mpf("0.1"), mpf(1), mpf(10)):
                kv = special.bessel_k(r, y, 64)
                bound = (
                    mpf(4) ** abs(r)
                    * (1 + 1 / y + mp.gamma(abs(r)) / y ** abs(r))
                    * mp.exp(-y)
                )
                ok = ok and kv < bound
    return ok, "bound holds" if ok else "bound violated", "strict"


def _chk_bessel_half_closed(ctx):
    worst = mpf(0)
    for n in range(-5, 7):
        for y in (mpf("0.5"), mpf(1), mpf(2), mpf(10)):
            a = special.bessel_k_half(n, y, ctx.prec)
            b = special.bessel_k(mpf(2 * n - 1) / 2, y, ctx.prec)
            worst = max(worst, abs(a - b))
    return worst < ctx.tol, worst, ctx.tol


def _chk_whittaker_laguerre_closed(ctx):
    worst = mpf(0)
    for k in (2, 4, 6):
        for s in range(1, k // 2 + 1):
            for y in (mpf(1), mpf(2), mpf(5)):
                a = special.whittaker_rhs(k, s, y, ctx.prec)
                b = special.whittaker_closed_laguerre(k, s, y, ctx.prec)
                worst = max(worst, abs(a - b))
    return worst < ctx.tol, worst, ctx.tol


def _chk_bessel_derivative_recurrence(ctx):
    # 2 K_w'(y) = -K_(w+1)(y) - K_(w-1)(y), central differences at double
    tol = mpf("1e-6")
    worst = mpf(0)
    h = mpf(2) ** -18
    for w in (mpf("0.3"), mpf(1), mpc("1.4", "0.8")):
        for y in (mpf(1), mpf(2)):
            der = (special.bessel_k(w, y + h, 64) - special.bessel_k(w, y - h, 64)) / (2 * h)
            rhs = -(special.bessel_k(w + 1, y, 64) + special.bessel_k(w - 1, y, 64))
            worst = max(worst, abs(2 * der - rhs))
    return worst < tol, worst, tol


# ---------------------------------------------------------------------------
# eisenstein
# ---------------------------------------------------------------------------


def _cfg(ctx) -> EvalConfig:
    return EvalConfig(prec_bits=ctx.prec)


def _chk_modularity(ctx):
    rng = random.Random(190804)
    cfg = _cfg(ctx)
    mats = (GammaMatrix(0, -1, 1, 0), GammaMatrix(1, 1, 0, 1))
    worst = mpf(0)
    with working(ctx.prec, 16):
        wp = mp.prec
        for _ in range(20):
            k = 2 * rng.randint(-3, 3)
            z = mpc(rng.uniform(-0.8, 0.8), rng.uniform(0.6, 2.0))
            s = mpc(rng.uniform(0.4, 2.2), rng.uniform(-1.5, 1.5))
            base = eisenstein.estar_general(k, z, s, cfg).value
            for g in mats:
                gz = g.apply(z)
                jj = g.j(z)
                phase = (jj / abs(jj)) ** k
                moved = eisenstein.estar_general(k, gz, s, cfg).value
                worst = max(worst, abs(moved - phase * base))
    return worst < ctx.tol, worst, ctx.tol


def _chk_functional_equation(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for k in (-4, -2, 0, 2, 4, 6):
            for s in (mpc("0.7", "0.4"), mpc("1.6", "-0.8")):
                for z in (mpc(0, 1), mpc("0.28", "0.9")):
                    a = eisenstein.estar_general(k, z, s, cfg).value
                    b = eisenstein.estar_general(k, z, 1 - s, cfg).value
                    worst = max(worst, abs(a - b))
    return worst < ctx.tol, worst, ctx.tol


def _chk_weight0_residues(ctx):
    prec = max(ctx.prec, 128)
    cfg = EvalConfig(prec_bits=prec)
    eps = mpf(2) ** (-prec // 4)
    tol = mpf(2) ** (-prec // 4 + 10)
    z = mpc("0.3", "1.2")
    with working(prec, 16):
        a = eps * eisenstein.estar_general(0, z, eps, cfg).value
        b = eps * eisenstein.estar_general(0, z, 1 + eps, cfg).value
        worst = max(abs(a + mpf(1) / 2), abs(b - mpf(1) / 2))
    return worst < tol, worst, tol


def _chk_integer_route_agreement(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for k in range(-6, 7, 2):
            for h in range(-3, 5):
                if k == 0 and h in (0, 1):
                    continue
                a = eisenstein.estar_general(k, mpc(0, 1), mpf(h), cfg).value
                b = eisenstein.estar_integer(k, mpc(0, 1), h, cfg).value
                worst = max(worst, abs(a - b))
    return worst < ctx.tol, worst, ctx.tol


def _chk_constant_term_decay(ctx):
    cfg = _cfg(ctx)
    s = mpf("1.3")
    ok = True
    implied = mpf(0)
    with working(ctx.prec, 16):
        wp = mp.prec
        for k in (0, 2):
            r = {}
            for y in (2, 4, 8):
                yy = mpf(y)
                const = coeffs.theta_k(k, s, wp) * yy ** s + coeffs.theta_k(
                    k, 1 - s, wp
                ) * yy ** (1 - s)
                val = eisenstein.estar_general(k, mpc(0, yy), s, cfg).value
                r[y] = abs(val - const)
                implied = max(implied, r[y] * mp.exp(2 * mp.pi * yy))
            # exponential decay with at most polynomial-in-y prefactor
            ok = ok and r[4] < r[2] * mp.exp(-2 * mp.pi * (4 - 2)) * 100
            ok = ok and r[8] < r[4] * mp.exp(-2 * mp.pi * (8 - 4)) * 100
    return ok, implied, "e^(-2 pi y) decay"


def _chk_operator_raising(ctx):
    cfg = _cfg(ctx)
    tol = mpf("1e-15")
    worst = mpf(0)
    for k in (-4, 0, 2):
        worst = max(
            worst,
            to_mp(
                eisenstein.operator_check("raise", k, mpc("0.3", "1.1"), mpc("0.8", "0.3"), cfg),
                64,
            ),
        )
    return worst < tol, worst, tol


def _chk_operator_lowering(ctx):
    cfg = _cfg(ctx)
    tol = mpf("1e-15")
    worst = mpf(0)
    for k in (-2, 0, 4):
        worst = max(
            worst,
            to_mp(
                eisenstein.operator_check("lower", k, mpc("-0.2", "0.9"), mpc("1.1", "-0.4"), cfg),
                64,
            ),
        )
    return worst < tol, worst, tol


def _chk_operator_laplacian(ctx):
    cfg = _cfg(ctx)
    tol = mpf("1e-15")
    worst = mpf(0)
    for k in (-2, 0, 2, 6):
        worst = max(
            worst,
            to_mp(
                eisenstein.operator_check(
                    "laplacian", k, mpc("0.25", "1.3"), mpc("0.9", "0.5"), cfg
                ),
                64,
            ),
        )
    return worst < tol, worst, tol


def _chk_operator_compose(ctx):
    cfg = _cfg(ctx)
    tol = mpf("1e-15")
    worst = mpf(0)
    for k in (0, 2):
        worst = max(
            worst,
            to_mp(
                eisenstein.operator_compose_residual(k, mpc("0.1", "1.0"), mpc("0.7", "0.2"), cfg),
                64,
            ),
        )
    return worst < tol, worst, tol


def _chk_operator_finite_difference(ctx):
    tol = mpf("1e-6")
    cfg = EvalConfig(prec_bits=53)
    res = eisenstein.operator_check("raise", 2, mpc("0.2", "1.1"), mpf("1.25"), cfg, mode="fd")
    worst = to_mp(res, 64)
    return worst < tol, worst, tol


def _chk_raising_whittaker(ctx):
    rng = random.Random(190805)
    tol = mpf("1e-8")
    worst = mpf(0)
    for k in (2, 4):
        for m in (1, -2):
            s = mpc(rng.uniform(0.6, 1.8), rng.uniform(-0.8, 0.8))
            worst = max(
                worst,
                to_mp(
                    eisenstein.raising_whittaker_residual(k, m, s, mpc("0.3", "0.9"), prec=53),
                    64,
                ),
            )
    return worst < tol, worst, tol


def _chk_harmonic_skeleton(ctx):
    sk = eisenstein.harmonic_skeleton(2)
    ok = (
        sk.y_coeff == Fraction(-3)
        and sk.y_pi_pow == -1
        and sk.q_coeff == Fraction(-24)
    )
    one = eisenstein.harmonic_e(0, mpc("0.37", "2.1"), _cfg(ctx)).value
    ok = ok and one == 1
    return ok, "exact", "exact"


def _chk_harmonic_matches_holomorphic(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for k in (4, 6):
            for z in (mpc(0, 1), mpc("0.3", "1.1")):
                a = eisenstein.harmonic_e(k, z, cfg).value
                b = eisenstein.e_holomorphic(k, z, cfg).value
                worst = max(worst, abs(a - b))
    return worst < ctx.tol, worst, ctx.tol


def _chk_estar_at_i_vanishing(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for k in (2, 6, -2):
            for s in (mpf("0.75"), mpc("1.3", "0.4")):
                worst = max(
                    worst, abs(eisenstein.estar_general(k, mpc(0, 1), s, cfg).value)
                )
    return worst < ctx.tol, worst, ctx.tol


def _chk_vseries_incgamma_route(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for k in (-2, -4):
            for z in (mpc("0.2", "0.8"), mpc(0, 1)):
                a = eisenstein.v_series(k, z, cfg).value
                b = eisenstein.v_series_incomplete_gamma(k, z, cfg).value
                worst = max(worst, abs(a - b))
    return worst < ctx.tol, worst, ctx.tol


def _chk_lattice_weight0(ctx):
    from . import _lattice

    tol = mpf("1e-10")
    with working(64, 16):
        raw = eisenstein.lattice_oracle_weight0(1.0, 2.0, 600)
        corr = to_mp(raw, 64) + _lattice.lattice_tail_correction(1.0, 2.0, 600, prec=64)
        cfg = EvalConfig(prec_bits=64)
        estar = eisenstein.estar_integer(0, (mpf(0), mpf(1)), 2, cfg).value
        closed = 2 / mp.gamma(2) * mp.pi ** 2 * estar
        worst = abs(corr - closed)
    return worst < tol, worst, tol


def _chk_brown_e_fourier(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for (a, b) in ((1, 1), (2, 2), (3, 1)):
            for z in (mpc("0.3", "1.2"),):
                u = eisenstein.brown_e(a, b, z, cfg)
                v = eisenstein.brown_e_fourier(a, b, z, cfg)
                worst = max(worst, abs(u - v))
    return worst < ctx.tol, worst, ctx.tol


# ---------------------------------------------------------------------------
# zeta_values
# ---------------------------------------------------------------------------


def _chk_odd_cross_agreement(ctx):
    # every applicable accelerated formula vs the direct-sum oracle
    tol = 10 * default_tol(64)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for h in (2, 3, 4, 5):
            target = zeta_values.zeta_oracle(2 * h - 1, 64)
            for fid in zeta_values.ZETA_FORMULA_IDS:
                if fid == "euler":
                    continue
                if fid == "prop_bigb":
                    if not zeta_values.zeta_odd_applicable(h, fid, k=2 * h - 2):
                        continue
                    val = zeta_values.zeta_odd(h, fid, _cfg(ctx), k=2 * h - 2).value
                else:
                    if not zeta_values.zeta_odd_applicable(h, fid):
                        continue
                    val = zeta_values.zeta_odd(h, fid, _cfg(ctx)).value
                worst = max(worst, abs(to_mp(val, 64) - target))
    return worst < tol, worst, tol


def _chk_lerch_companion_combined(ctx):
    # numeric: lerch + companion = 2 x combined; exact: the Bernoulli-block
    # heads cancel, leaving (4pi)^(2h-1)|B_2h|/(2h)! = 2*(4^(h-1)/pi) zeta(2h)
    cfg = _cfg(ctx)
    ok = True
    worst = mpf(0)
    with working(ctx.prec, 16):
        for h in (2, 4):  # these routes are implemented for even h >= 2
            a = zeta_values.zeta_odd(h, "lerch", cfg).value
            b = zeta_values.zeta_odd(h, "lerch_companion", cfg).value
            c = zeta_values.zeta_odd(h, "combined", cfg).value
            worst = max(worst, abs(a + b - 2 * c))
            rat, pw = arith.zeta_even(2 * h)  # zeta(2h) = rat * pi^pw, pw = 2h
            lhs = Fraction(4 ** (2 * h - 1) * abs(arith.bernoulli(2 * h)), 2 * factorial(2 * h))
            rhs = Fraction(4 ** (h - 1)) * rat
            ok = ok and lhs == rhs and pw == 2 * h
    return ok and worst < ctx.tol, worst, ctx.tol


def _chk_master_equals_cos(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for k in (-2, -4, -6):
            for z in (mpc(0, 1), mpc("0.4", "1.1")):
                worst = max(worst, to_mp(zeta_values.master_formula_residual(k, z, cfg), 64))
                worst = max(worst, to_mp(modular.prop_cos_residual(k, z, cfg), 64))
    return worst < ctx.tol, worst, ctx.tol


def _chk_mirror_consistency(ctx):
    worst = mpf(0)
    tol = max(ctx.tol, mpf("1e-25"))
    for k in (2, 6, 10):
        for h in range(1, k // 2 + 3):
            worst = max(
                worst,
                to_mp(zeta_values.mirror_consistency_residual(k, h, ctx.prec, 40), 64),
            )
    return worst < tol, worst, tol


def _chk_even_series_closed(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        wp = mp.prec
        for k in (6, 10):
            for h in (1, 2, 3):
                if h > k // 2:
                    continue
                val = zeta_values.zeta_even_series(h, k, cfg).value
                rat, pw = arith.zeta_even(2 * h)
                closed = to_mp(rat, wp) * mp.pi ** pw
                worst = max(worst, abs(val - closed))
    return worst < ctx.tol, worst, ctx.tol


def _chk_torus_spectral(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for h in (2, 3):
            for y in (mpf(1), mpf("1.4")):
                lhs, rhs = zeta_values.torus_spectral_identity(h, y, cfg)
                worst = max(worst, abs(lhs - rhs))
    return worst < ctx.tol, worst, ctx.tol


def _chk_torus_eulerian_reindex(ctx):
    # The Eulerian block sum_(n>=1) (ny)^-(h+u) e^(-2 pi n y) A(e^(-2 pi n y))
    # /(1-e^(-2 pi n y))^(h-u) equals the double sum over n, l of
    # l^(h-1-u) (ny)^-(h+u) e^(-2 pi n l y)  (geometric/Eulerian reindexing).
    worst = mpf(0)
    with working(ctx.prec, 16):
        wp = mp.prec
        y = mpf("1.1")
        n_max = max(8, int(wp / 8))
        l_max = n_max * 4
        for h in (2, 3):
            for u in range(0, h):
                a = mpf(0)
                apoly = arith.eulerian_poly(h - 1 - u)
                for n in range(1, n_max + 1):
                    q = mp.exp(-2 * mp.pi * n * y)
                    av = sum(
                        to_mp(c, wp) * q ** j for j, c in enumerate(apoly.coeffs)
                    )
                    a += (n * y) ** (-(h + u)) * q * av / (1 - q) ** (h - u)
                b = mpf(0)
                for n in range(1, n_max + 1):
                    for el in range(1, l_max + 1):
                        b += (
                            mpf(el) ** (h - 1 - u)
                            * (n * y) ** (-(h + u))
                            * mp.exp(-2 * mp.pi * n * el * y)
                        )
                worst = max(worst, abs(a - b))
    return worst < ctx.tol, worst, ctx.tol


def _chk_rmz_reciprocity(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for k in (2, -2, -4):
            for z in (mpc(0, 2), mpc("0.4", "1.3")):
                worst = max(
                    worst, to_mp(zeta_values.rmz_residual(k, z, "holomorphic", cfg), 64)
                )
        for k in (-2, -4, -6):
            for z in (mpc(0, 2), mpc("0.4", "1.3")):
                worst = max(
                    worst,
                    to_mp(zeta_values.rmz_residual(k, z, "nonholomorphic", cfg), 64),
                )
    return worst < ctx.tol, worst, ctx.tol


def _chk_master_jkt_residuals(ctx):
    cfg = _cfg(ctx)
    worst = mpf(0)
    with working(ctx.prec, 16):
        for k in (-8, -4, -2, 0, 2):
            for z in (mpc(0, 2), mpc("0.5", "1.5")):
                worst = max(worst, to_mp(zeta_values.master_formula_residual(k, z, cfg), 64))
                worst = max(worst, to_mp(zeta_values.jkt_residual(k, z, cfg), 64))
    return worst < ctx.tol, worst, ctx.tol


# ---------------------------------------------------------------------------
# modular
# ---------------------------------------------------------------------------


def _chk_tau_construction(ctx):
    tq = modular.tau(200)
    oracle = modular.tau_recurrence_oracle(200)
    known = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944]
    ok = list(tq.coefficients) == oracle and list(tq.coefficients[:12]) == known
    return ok, "exact", "exact"


def _chk_tau_hecke(ctx):
    tq = modular.tau(200)
    ok = True
    from math import gcd

    for m in range(2, 15):
        for n in range(2, 15):
            if gcd(m, n) == 1 and m * n <= 200:
                ok = ok and tq[m * n] == tq[m] * tq[n]
    for p in (2, 3, 5, 7, 11, 13):
        ok = ok and tq[p * p] == tq[p] ** 2 - p**11
    return ok, "exact", "exact"


def _chk_summ_lemma(ctx):
    ok = True
    for k in range(0, 21, 2):
        for k2 in range(0, k + 1, 2):
            for u in range(1, 11):
                ok = ok and modular.summ_lemma_check(k, k2, u)
    worst = mpf(0)
    for (k, k2) in ((8, 4), (12, 6)):
        for u in (mpc("0.7", "1.3"), mpc("2.2", "-0.8")):
            worst = max(worst, to_mp(modular.summ_lemma_residual(k, k2, u, ctx.prec), 64))
    return ok and worst < ctx.tol, worst, ctx.tol


def _chk_fnl(ctx):
    tol = mpf("1e-6")
    cfg = EvalConfig(prec_bits=53)
    tv = modular.tau(3005)
    worst = mpf(0)
    ok = True
    for n in (1, 2, 5):
        r = to_mp(modular.fnl_residual(n, cfg, tail_terms=3000, tau_values=tv), 64)
        worst = max(worst, r)
    shorter = to_mp(modular.fnl_residual(2, cfg, tail_terms=1500, tau_values=tv), 64)
    longer = to_mp(modular.fnl_residual(2, cfg, tail_terms=3000, tau_values=tv), 64)
    ok = ok and longer < shorter
    return ok and worst < tol, worst, tol


def _chk_lstar_closed_forms(ctx):
    cfg = EvalConfig(prec_bits=max(ctx.prec, 128))
    tol = mpf("1e-25")
    worst = mpf(0)
    with working(cfg.prec_bits, 16):
        for n in (4, 6):
            for r in range(2, n - 1):
                q = modular.eisenstein_lstar(n, r, cfg)
                c = modular.lstar_closed_form(n, r, cfg.prec_bits)
                worst = max(worst, abs(q - c))
                if r % 2 == 1:
                    worst = max(worst, abs(q))
            s = mpc("2.3", "1.1")
            a = modular.eisenstein_lstar(n, s, cfg)
            b = modular.eisenstein_lstar(n, n - s, cfg)
            worst = max(worst, abs(b - sign_pow(n // 2) * a))
    return worst < tol, worst, tol


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

REGISTRY = (
    ("arith", "bernoulli_recursion", _chk_bernoulli_recursion),
    ("arith", "zeta_even_closed_form", _chk_zeta_even_closed),
    ("arith", "theta_functional_equation", _chk_theta_functional_equation),
    ("arith", "binom_negation", _chk_binom_negation),
    ("arith", "eulerian_at_one", _chk_eulerian_at_one),
    ("coeffs", "a_integer_valued", _chk_a_integer_valued),
    ("coeffs", "a_vanishing_range", _chk_a_vanishing_range),
    ("coeffs", "a_three_forms_agree", _chk_a_three_forms),
    ("coeffs", "a_h_symmetry", _chk_a_h_symmetry),
    ("coeffs", "p_laguerre_link", _chk_p_laguerre_link),
    ("coeffs", "p_derivative_recurrence", _chk_p_derivative_recurrence),
    ("coeffs", "theta_k_rising_product", _chk_theta_k_rising_product),
    ("coeffs", "comb_identities", _chk_comb_identities),
    ("special", "bessel_modulus_bound", _chk_bessel_modulus_bound),
    ("special", "bessel_bound_decay", _chk_bessel_bound_decay),
    ("special", "bessel_bound_decay_small_y", _chk_bessel_bound_decay2),
    ("special", "bessel_half_closed_form", _chk_bessel_half_closed),
    ("special", "whittaker_laguerre_closed_form", _chk_whittaker_laguerre_closed),
    ("special", "bessel_derivative_recurrence", _chk_bessel_derivative_recurrence),
    ("eisenstein", "modularity", _chk_modularity),
    ("eisenstein", "functional_equation", _chk_functional_equation),
    ("eisenstein", "weight0_residues", _chk_weight0_residues),
    ("eisenstein", "integer_route_agreement", _chk_integer_route_agreement),
    ("eisenstein", "constant_term_decay", _chk_constant_term_decay),
    ("eisenstein", "operator_raising", _chk_operator_raising),
    ("eisenstein", "operator_lowering", _chk_operator_lowering),
    ("eisenstein", "operator_laplacian", _chk_operator_laplacian),
    ("eisenstein", "operator_compose", _chk_operator_compose),
    ("eisenstein", "operator_finite_difference", _chk_operator_finite_difference),
    ("eisenstein", "raising_whittaker", _chk_raising_whittaker),
    ("eisenstein", "harmonic_skeleton", _chk_harmonic_skeleton),
    ("eisenstein", "harmonic_matches_holomorphic", _chk_harmonic_matches_holomorphic),
    ("eisenstein", "estar_at_i_vanishing", _chk_estar_at_i_vanishing),
    ("eisenstein", "vseries_incgamma_route", _chk_vseries_incgamma_route),
    ("eisenstein", "lattice_weight0_identity", _chk_lattice_weight0),
    ("eisenstein", "brown_e_fourier_route", _chk_brown_e_fourier),
    ("zeta_values", "odd_cross_agreement", _chk_odd_cross_agreement),
    ("zeta_values", "lerch_companion_combined", _chk_lerch_companion_combined),
    ("zeta_values", "master_equals_cos", _chk_master_equals_cos),
    ("zeta_values", "mirror_consistency", _chk_mirror_consistency),
    ("zeta_values", "even_series_closed_form", _chk_even_series_closed),
    ("zeta_values", "torus_spectral", _chk_torus_spectral),
    ("zeta_values", "torus_eulerian_reindex", _chk_torus_eulerian_reindex),
    ("zeta_values", "rmz_reciprocity", _chk_rmz_reciprocity),
    ("zeta_values", "master_jkt_residuals", _chk_master_jkt_residuals),
    ("modular", "tau_construction", _chk_tau_construction),
    ("modular", "tau_hecke", _chk_tau_hecke),
    ("modular", "summ_lemma", _chk_summ_lemma),
    ("modular", "fnl_identity", _chk_fnl),
    ("modular", "lstar_closed_forms", _chk_lstar_closed_forms),
)

SUITES = tuple(dict.fromkeys(suite for suite, _, _ in REGISTRY))


def registered_checks(suite: str = "all"):
    """The static (suite, name) manifest, optionally filtered."""
    if suite == "all":
        return tuple((s, n) for s, n, _ in REGISTRY)
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; valid: {', '.join(SUITES + ('all',))}")
    return tuple((s, n) for s, n, _ in REGISTRY if s == suite)


def run_suite(suite: str = "all", prec: int = 128, tol=None):
    """Run the named suite (or all) and return CheckOutcome rows in registry
    order.  Deterministic for fixed (suite, prec, tol)."""
    if suite != "all" and suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; valid: {', '.join(SUITES + ('all',))}")
    ctx = VerifyContext(prec=prec, tol=to_mp(tol, prec) if tol is not None else default_tol(prec))
    out = []
    for s, name, fn in REGISTRY:
        if suite != "all" and s != suite:
            continue
        passed, residual, tool = fn(ctx)
        out.append(_outcome(s, name, passed, residual, tool))
    return out


def report_text(outcomes) -> str:
    """Fixed-layout text report; byte-identical for identical outcomes."""
    lines = []
    width = max(len(f"{o.suite}.{o.name}") for o in outcomes) if outcomes else 10
    for o in outcomes:
        status = "PASS" if o.passed else "FAIL"
        lines.append(
            f"{status} {f'{o.suite}.{o.name}':<{width}}  residual={o.residual}  tol={o.tol}"
        )
    n_pass = sum(1 for o in outcomes if o.passed)
    lines.append(f"{n_pass}/{len(outcomes)} checks passed")
    return "\n".join(lines) + "\n"

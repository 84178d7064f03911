"""Special-function layer: Bessel K, Whittaker W, incomplete gamma.

Reference values come from an independent third-party evaluator (mpmath's
own besselk/whitw/gammainc), from exact closed forms at half-integer order,
and from the defining differential equations."""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial

import mpmath
import pytest
from mpmath import mp, mpc, mpf

from eisenlab.arith import ExactPoly, gamma_complex, to_mp
from eisenlab.coeffs import laguerre_poly
from eisenlab.errors import DomainError
from eisenlab.special import (
    bessel_k,
    bessel_k_family,
    bessel_k_half,
    incomplete_gamma,
    laguerre,
    whittaker_closed_laguerre,
    whittaker_family,
    whittaker_rhs,
    whittaker_w0,
    whittaker_ws,
)

# ---------------------------------------------------------------------------
# Bessel K
# ---------------------------------------------------------------------------


def test_bessel_k_half_literal_closed_forms():
    mp.prec = 200
    y = mpf("1.25")
    base = mp.sqrt(mp.pi / (2 * y)) * mp.exp(-y)
    # K_{-1/2}(y) = K_{1/2}(y) = sqrt(pi/2y) e^-y;  K_{3/2} = same * (1 + 1/y)
    assert abs(bessel_k_half(0, y, 160) - base) < mpf(2) ** -150
    assert abs(bessel_k_half(1, y, 160) - base) < mpf(2) ** -150
    assert abs(bessel_k_half(2, y, 160) - base * (1 + 1 / y)) < mpf(2) ** -150


def test_bessel_k_half_matches_general_order():
    mp.prec = 200
    for n in range(-5, 7):
        for y in (mpf("0.5"), mpf(1), mpf(2), mpf(10)):
            a = bessel_k_half(n, y, 160)
            b = bessel_k(n - mpf("0.5"), y, 160)
            assert abs(a - b) / abs(b) < mpf(2) ** -145, (n, y)


def test_bessel_k_matches_reference():
    mp.prec = 220
    for w in (mpf("0.3"), mpc("0.7", "1.3"), mpc(0, 2), mpf("2.2"), mpc("-1.3", "0.4")):
        for y in (mpf("0.5"), mpf(3), mpf(20)):
            v = bessel_k(w, y, 160)
            ref = mpmath.besselk(w, y)
            assert abs(mpc(v) - ref) / abs(ref) < mpf(2) ** -145, (w, y)


def test_bessel_k_symmetric_in_order():
    mp.prec = 200
    w = mpc("0.8", "1.1")
    y = mpf("2.5")
    assert abs(bessel_k(w, y, 160) - bessel_k(-w, y, 160)) < mpf(2) ** -150


def test_bessel_k_family_consistent():
    mp.prec = 220
    w0 = mpc("0.8", "0.9")
    fam = bessel_k_family(w0, -4, 5, mpf("2.5"), 160)
    assert sorted(fam) == list(range(-4, 6))
    for j, v in fam.items():
        ref = mpmath.besselk(w0 + j, mpf("2.5"))
        assert abs(mpc(v) - ref) / abs(ref) < mpf(2) ** -140, j


def test_bessel_modulus_dominated_by_real_order():
    # |K_w(y)| <= K_{Re w}(y)
    mp.prec = 120
    rng = random.Random(8191)
    for _ in range(50):
        w = mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
        y = mpf(rng.uniform(0.2, 12))
        assert abs(bessel_k(w, y, 96)) <= bessel_k(w.real, y, 96) * (1 + mpf(2) ** -80)


@pytest.mark.parametrize("y", [mpf("0.1"), mpf(1), mpf(10)])
def test_bessel_decay_bound_large_order(y):
    # K_r(y) < 2^(2|r|+1) (1 + Gamma(|r|+1)/y^(|r|+1)) e^-y
    mp.prec = 160
    for twice_r in range(-10, 11):
        r = mpf(twice_r) / 2
        bound = (
            mpf(2) ** (2 * abs(r) + 1)
            * (1 + mp.gamma(abs(r) + 1) / y ** (abs(r) + 1))
            * mp.exp(-y)
        )
        assert bessel_k(r, y, 128) < bound, (r, y)


@pytest.mark.parametrize("y", [mpf("0.1"), mpf(1), mpf(10)])
def test_bessel_decay_bound_small_order(y):
    # K_r(y) < 4^|r| (1 + 1/y + Gamma(|r|)/y^|r|) e^-y for r != 0
    mp.prec = 160
    for twice_r in range(-10, 11):
        if twice_r == 0:
            continue
        r = mpf(twice_r) / 2
        bound = (
            mpf(4) ** abs(r)
            * (1 + 1 / y + mp.gamma(abs(r)) / y ** abs(r))
            * mp.exp(-y)
        )
        assert bessel_k(r, y, 128) < bound, (r, y)


def test_bessel_derivative_recurrence_finite_difference():
    # 2 K'_w(y) = -(K_{w+1}(y) + K_{w-1}(y)), derivative in y
    mp.prec = 80
    for w in (mpf("0.7"), mpc("0.4", "1.1"), mpf(2)):
        for y in (mpf("0.8"), mpf(3)):
            h = mpf(2) ** -18
            fd = (bessel_k(w, y + h, 64) - bessel_k(w, y - h, 64)) / (2 * h)
            rhs = -(bessel_k(w + 1, y, 64) + bessel_k(w - 1, y, 64)) / 2
            assert abs(fd - rhs) < mpf("1e-6"), (w, y)


# ---------------------------------------------------------------------------
# Whittaker W
# ---------------------------------------------------------------------------


def test_whittaker_ws_matches_reference_and_conjugation():
    mp.prec = 220
    z = mpc("0.3", "0.8")
    s = mpc("1.1", "0.6")
    v = whittaker_ws(s, z, 160)
    ref = 2 * mp.sqrt(mpf("0.8")) * mpmath.besselk(s - mpf("0.5"), 2 * mp.pi * mpf("0.8")) * mp.expjpi(2 * mpf("0.3"))
    assert abs(v - ref) / abs(ref) < mpf(2) ** -140
    assert v == whittaker_ws(s, mpmath.conj(z), 160)


def test_whittaker_w0_matches_reference():
    mp.prec = 220
    for mu in (mpf("0.4"), mpc("0.2", "1.1")):
        t = mpf("3.7")
        v = whittaker_w0(mu, t, 160)
        ref = mpmath.whitw(0, mu, t)
        assert abs(mpc(v) - ref) / abs(ref) < mpf(2) ** -140


def test_whittaker_closed_laguerre_analytic():
    # closed form is (-1)^n n! e^{-y/2} y^s L^(2s-1)_n(y) with n = k/2 - s;
    # compare against the confluent-U route  W_{kappa,mu}(y) =
    # e^{-y/2} y^{mu+1/2} U(mu - kappa + 1/2, 1 + 2 mu, y), which reduces to
    # a polynomial at these degenerate parameters (an independent evaluator).
    mp.prec = 220
    for k in (2, 4, 6):
        for s in range(1, k // 2 + 1):
            n = k // 2 - s
            lag = laguerre_poly(2 * s - 1, n)
            for y in (mpf(1), mpf(2), mpf(5)):
                v = whittaker_closed_laguerre(k, s, y, 160)
                if lag(Fraction(int(y))) == 0:
                    # exact zero of the underlying polynomial: the reference
                    # evaluator cannot certify relative accuracy there
                    assert v == 0, (k, s, y)
                    continue
                ref = mpmath.whitw(mpf(k) / 2, s - mpf("0.5"), y)
                assert abs(v - ref) / max(abs(ref), mpf("1e-30")) < mpf(2) ** -140, (k, s, y)


def test_whittaker_closed_laguerre_satisfies_ode_exactly():
    # g = y^s L^(2s-1)_n(y) solves y^2 g'' - y^2 g' + (k/2) y g + (1/4 - mu^2) g = 0
    # with mu = s - 1/2, exactly as polynomials (after clearing e^{-y/2}).
    Y = ExactPoly([0, 1])
    for k in range(2, 13, 2):
        for s in range(1, k // 2 + 1):
            n = k // 2 - s
            g = (Y**s) * laguerre_poly(2 * s - 1, n)
            kappa = Fraction(k, 2)
            mu = Fraction(2 * s - 1, 2)
            expr = (
                (Y**2) * g.derivative().derivative()
                - (Y**2) * g.derivative()
                + kappa * Y * g
                + (Fraction(1, 4) - mu * mu) * g
            )
            assert expr.is_zero(), (k, s)


def test_whittaker_closed_laguerre_domain():
    with pytest.raises(DomainError):
        whittaker_closed_laguerre(4, 3, mpf(1), 128)  # s > k/2
    with pytest.raises(DomainError):
        whittaker_closed_laguerre(4, mpf("1.5"), mpf(1), 128)  # non-integer s


def test_whittaker_rhs_equals_closed_form():
    mp.prec = 220
    for k in (2, 4, 6):
        for s in range(1, k // 2 + 1):
            for y in (mpf(1), mpf(2), mpf(5)):
                v1 = whittaker_rhs(k, s, y, 160)
                v2 = whittaker_closed_laguerre(k, s, y, 160)
                assert abs(v1 - v2) / max(abs(v2), mpf("1e-30")) < mpf(2) ** -125, (k, s, y)


def test_whittaker_rhs_weight0_reduces_to_bessel():
    mp.prec = 200
    for s in (1, 2, mpf("1.7")):
        for y in (mpf(1), mpf(3)):
            v1 = whittaker_rhs(0, s, y, 160)
            v2 = mp.sqrt(y / mp.pi) * bessel_k(mpf(s) - mpf("0.5"), y / 2, 160)
            assert abs(v1 - v2) / abs(v2) < mpf(2) ** -140, (s, y)


def test_whittaker_rhs_generic_parameters():
    mp.prec = 220
    for k in (2, 4, -2, -4):
        for s in (mpf("1.3"), mpf("2.6"), mpc("1.2", "0.7")):
            y = mpf(2)
            v = whittaker_rhs(k, s, y, 160)
            ref = mpmath.whitw(mpf(k) / 2, s - mpf("0.5"), y)
            assert abs(mpc(v) - ref) / max(abs(ref), mpf("1e-30")) < mpf(2) ** -120, (k, s)


def test_whittaker_family_consistent():
    # family of archimedean factors W_{s+r}(z) with shared Bessel ladder
    mp.prec = 200
    s = mpc("1.3", "0.4")
    z = mpc("0.3", "2.2")
    y = z.imag
    fam = whittaker_family(s, z, -2, 3, 160)
    assert sorted(fam) == list(range(-2, 4))
    for r, v in fam.items():
        ref = (
            2
            * mp.sqrt(y)
            * mpmath.besselk(s + r - mpf("0.5"), 2 * mp.pi * y)
            * mp.expjpi(2 * z.real)
        )
        assert abs(mpc(v) - ref) / max(abs(ref), mpf("1e-25")) < mpf(2) ** -130, r


def test_laguerre_numeric_matches_exact():
    mp.prec = 160
    for m in (0, 1, 3, 5):
        for alpha in (0, 2, Fraction(1, 2)):
            poly = laguerre_poly(alpha, m)
            for x in (mpf("0.7"), mpf(3)):
                got = laguerre(m, alpha, x, 128)
                want = to_mp(poly(Fraction(7, 10) if x == mpf("0.7") else Fraction(3)), 128)
                assert abs(got - want) < mpf(2) ** -110 * max(1, abs(want)), (m, alpha, x)


# ---------------------------------------------------------------------------
# Incomplete gamma
# ---------------------------------------------------------------------------


def test_incomplete_gamma_integer_closed_form():
    mp.prec = 200
    # Gamma(3, 2) = 2! e^-2 (1 + 2 + 2) = 10 e^-2
    v = incomplete_gamma(3, 2, 160)
    assert abs(v - 10 * mp.exp(-2)) < mpf(2) ** -150


def test_incomplete_gamma_matches_reference():
    mp.prec = 220
    cases = [
        (mpf("0.5"), mpf("0.3")),
        (mpf("2.7"), mpf(9)),
        (mpf("4.2"), mpf("1.1")),
        (7, mpf("3.3")),
        (mpc("1.3", "0.4"), mpf(2)),
    ]
    for a, x in cases:
        v = incomplete_gamma(a, x, 160)
        ref = mpmath.gammainc(a, x)
        assert abs(mpc(v) - ref) / abs(ref) < mpf(2) ** -140, (a, x)


def test_incomplete_gamma_regularized():
    mp.prec = 200
    v = incomplete_gamma(5, mpf(2), 160, regularized=True)
    ref = mpmath.gammainc(5, 2, regularized=True)
    assert abs(v - ref) < mpf(2) ** -150

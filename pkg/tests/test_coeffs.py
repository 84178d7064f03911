"""Combinatorial layer: the raising polynomials P^n_r, the integer
coefficient family A^k_h(u), and the archimedean factor theta_k."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from eisenlab.arith import ExactPoly, sign_pow
from eisenlab.coeffs import (
    ThetaValue,
    a_coeff,
    a_coeff_binomial,
    a_coeff_bound,
    a_coeff_product,
    comb_identities_check,
    h_star,
    laguerre_poly,
    p_poly,
    p_poly_bound,
    require_even_weight,
    theta,
    theta_k,
    theta_k_int,
)
from eisenlab.errors import DomainError, PoleError


# ---------------------------------------------------------------------------
# h_star and weight validation
# ---------------------------------------------------------------------------


def test_h_star_values_and_mirror_invariance():
    assert h_star(1) == 0
    assert h_star(0) == 0
    assert h_star(3) == 2
    assert h_star(-2) == 2
    for h in range(-12, 13):
        assert h_star(h) == h_star(1 - h) >= 0


def test_require_even_weight():
    assert require_even_weight(-8) == -8
    with pytest.raises(DomainError):
        require_even_weight(3)
    with pytest.raises(DomainError):
        require_even_weight(2.0)


# ---------------------------------------------------------------------------
# P^n_r polynomials
# ---------------------------------------------------------------------------


def test_p_poly_small_cases():
    assert p_poly(0, 0).poly.coeffs == (1,)
    assert p_poly(1, 0).poly.coeffs == (2, -2)
    assert p_poly(1, 1).poly.coeffs == (0, -1)
    assert p_poly(-1, 1).poly.coeffs == (0, -1)


def test_p_poly_zero_iff_r_exceeds_n():
    for n in range(-6, 7):
        for r in range(-8, 9):
            assert p_poly(n, r).is_zero() == p_poly_bound(n, r) == (abs(r) > abs(n))


def test_p_poly_negative_index_reflection():
    # P^{-n}_r(x) = (-1)^r P^n_r(-x), coefficientwise
    for n in range(0, 6):
        for r in range(0, n + 1):
            pos = p_poly(n, r).poly.coeffs
            neg = p_poly(-n, r).poly.coeffs
            assert neg == tuple(sign_pow(r + j) * c for j, c in enumerate(pos))


def test_p_poly_symmetric_in_r():
    for n in range(0, 6):
        for r in range(0, n + 1):
            assert p_poly(n, r).poly.coeffs == p_poly(n, -r).poly.coeffs


def test_p_poly_laguerre_link_exact():
    # P^n_r(x) = (2n)!/(n+r)! (-x)^r L^(2r)_{n-r}(x) for 0 <= r <= n
    for n in range(0, 7):
        for r in range(0, n + 1):
            lag = laguerre_poly(2 * r, n - r)
            scale = Fraction(factorial(2 * n), factorial(n + r))
            shifted = [Fraction(0)] * r + [
                scale * sign_pow(r) * c for c in lag.coeffs
            ]
            assert p_poly(n, r).poly == ExactPoly(shifted), (n, r)


def test_p_poly_derivative_recurrence_exact():
    # 4x (P^n_r)' = P^{n+1}_r + (2x - 4n - 2) P^n_r + x (P^n_{r+1} + P^n_{r-1})
    x = ExactPoly([0, 1])
    for n in range(0, 6):
        for r in range(0, n + 1):
            lhs = Fraction(4) * x * p_poly(n, r).poly.derivative()
            rhs = (
                p_poly(n + 1, r).poly
                + (ExactPoly([Fraction(-4 * n - 2), Fraction(2)])) * p_poly(n, r).poly
                + x * (p_poly(n, r + 1).poly + p_poly(n, r - 1).poly)
            )
            assert (lhs - rhs).is_zero(), (n, r)


def test_laguerre_poly_values():
    assert laguerre_poly(0, 0).coeffs == (1,)
    assert laguerre_poly(0, 1).coeffs == (1, -1)
    # L^(1)_2(x) = 3 - 3x + x^2/2
    assert laguerre_poly(1, 2).coeffs == (3, -3, Fraction(1, 2))
    with pytest.raises(DomainError):
        laguerre_poly(0, -1)


# ---------------------------------------------------------------------------
# A^k_h(u)
# ---------------------------------------------------------------------------


def test_a_coeff_frozen_values():
    assert a_coeff(2, 1, 0) == -1
    assert a_coeff(6, 2, 0) == -1
    assert a_coeff(6, 2, 1) == 4
    assert a_coeff(-4, 3, 0) == 24
    assert [a_coeff(0, 3, u) for u in range(4)] == [1, 6, 12, 0]


def test_a_coeff_weight0_closed_form():
    # A^0_h(u) = u! C(h-1, u) C(h-1+u, u) for h >= 1
    from math import comb

    for h in range(1, 9):
        for u in range(0, 12):
            want = factorial(u) * comb(h - 1, u) * comb(h - 1 + u, u)
            assert a_coeff(0, h, u) == want


@pytest.mark.parametrize("k", range(-12, 13, 2))
def test_a_coeff_three_forms_agree_and_integral(k):
    for h in range(-12, 13):
        for u in range(0, 21):
            a = a_coeff(k, h, u)
            assert a.denominator == 1, (k, h, u)
            assert a == a_coeff_binomial(k, h, u) == a_coeff_product(k, h, u)


@pytest.mark.parametrize("k", range(-12, 13, 2))
def test_a_coeff_vanishing_boundary(k):
    for h in range(-12, 13):
        bound = a_coeff_bound(k, h)
        for u in range(0, max(bound, 0) + 4):
            if u <= bound:
                assert a_coeff(k, h, u) != 0, (k, h, u)
            else:
                assert a_coeff(k, h, u) == 0, (k, h, u)


def test_a_coeff_mirror_symmetry():
    for k in range(-10, 11, 2):
        for h in range(-6, 8):
            for u in range(0, 14):
                assert a_coeff(k, h, u) == a_coeff(k, 1 - h, u)


@given(
    k=st.integers(-8, 8).map(lambda v: 2 * v),
    h=st.integers(-15, 15),
    u=st.integers(0, 25),
)
@settings(max_examples=150, deadline=None)
def test_a_coeff_forms_agree_property(k, h, u):
    a = a_coeff(k, h, u)
    assert a.denominator == 1
    assert a == a_coeff_binomial(k, h, u) == a_coeff_product(k, h, u)


def test_a_coeff_rejects_bad_input():
    with pytest.raises(DomainError):
        a_coeff(3, 1, 0)
    with pytest.raises(DomainError):
        a_coeff(2, 1, -1)


# ---------------------------------------------------------------------------
# theta_k
# ---------------------------------------------------------------------------


def test_theta_k_int_frozen_values():
    assert theta_k_int(2, 1) == ThetaValue(Fraction(1), -1, 2)
    assert theta_k_int(2, 0) == ThetaValue(Fraction(1), 0, 0)
    assert theta_k_int(2, -1) == ThetaValue(Fraction(-1, 2), -1, 3)
    assert theta_k_int(4, 2) == ThetaValue(Fraction(6), -2, 4)
    # strip -|k|/2 < m < 0 vanishes identically
    assert theta_k_int(6, -1).is_zero()
    assert theta_k_int(6, -2).is_zero()
    assert not theta_k_int(6, -3).is_zero()


def test_theta_k_int_pole_only_at_weight0_origin():
    with pytest.raises(PoleError):
        theta_k_int(0, 0)
    # nonzero weights are finite at 0: theta_k(0) = (|k|/2 - 1)! zeta(0)
    assert theta_k_int(2, 0).as_pi_rational() == (Fraction(-1, 2), 0)
    assert theta_k_int(4, 0).as_pi_rational() == (Fraction(-1, 2), 0)
    assert theta_k_int(6, 0).as_pi_rational() == (Fraction(-1), 0)


def test_theta_value_pi_rational_collapse():
    # pi^-1 Gamma(2) zeta(2) = pi/6
    assert theta_k_int(2, 1).as_pi_rational() == (Fraction(1, 6), 1)
    # zeta(4) = pi^4/90:  theta_4(2) = 6 pi^-2 zeta(4) = pi^2 6/90
    assert theta_k_int(4, 2).as_pi_rational() == (Fraction(1, 15), 2)
    # odd zeta factor does not collapse
    assert theta_k_int(2, -1).as_pi_rational() is None


def test_theta_k_matches_direct_product():
    # theta_k(s) = pi^-s Gamma(s + |k|/2) zeta(2s) at generic s
    mp.prec = 200
    for k in (0, 2, -6):
        for s in (mpf("0.75"), mpc("0.3", "1.2"), mpc("-1.3", "0.7")):
            got = theta_k(k, s, 160)
            ref = mp.pi ** (-s) * mpmath.gamma(s + abs(k) // 2) * mpmath.zeta(2 * s)
            assert abs(mpc(got) - ref) < mpf(2) ** -140 * max(1, abs(ref)), (k, s)


def test_theta_k_integer_dispatch_consistent_with_exact():
    mp.prec = 200
    for k in (2, 4, -6):
        for m in (2, 1, -3, -5):
            got = theta_k(k, m, 160)
            want = theta_k_int(k, m).to_mp(160)
            assert got == want, (k, m)


def test_theta_poles():
    with pytest.raises(PoleError):
        theta(mpf("0.5"), 128)
    with pytest.raises(PoleError):
        theta(0, 128)
    with pytest.raises(PoleError):
        theta_k(4, mpf("0.5"), 128)
    # negative even integers are finite for k = 0 (pole/zero cancellation)
    val = theta(-2, 128)
    assert mp.isfinite(val)


# ---------------------------------------------------------------------------
# Binomial convolution identities
# ---------------------------------------------------------------------------


@given(st.integers(0, 18), st.integers(-12, 18), st.integers(-5, 25))
@settings(max_examples=200, deadline=None)
def test_comb_identities_hold(a, b, c):
    assert comb_identities_check(a, b, c)


def test_comb_identities_rejects_negative_first_index():
    with pytest.raises(DomainError):
        comb_identities_check(-1, 2, 3)

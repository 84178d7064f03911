"""Discriminant-form coefficients, divisor sums, the factorial collapse
lemma, the completed L-function of the holomorphic series, and the cubic
zeta tail identity for its coefficients."""

from __future__ import annotations

import os
import random
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from eisenlab.eisenstein import EvalConfig
from eisenlab.errors import DomainError, PoleError
from eisenlab.modular import (
    QExpansion,
    eisenstein_lstar,
    fnl_residual,
    lstar_closed_form,
    prop_cos_residual,
    sigma,
    summ_lemma_check,
    summ_lemma_residual,
    tau,
    tau_recurrence_oracle,
)
from eisenlab.zeta_values import master_formula_residual

CFG = EvalConfig(prec_bits=128)

# First twelve coefficients (classical table) and one deep frozen value.
TAU_FIRST_12 = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643,
                -115920, 534612, -370944]
TAU_6000 = -89304493406478336000


# ---------------------------------------------------------------------------
# tau coefficients
# ---------------------------------------------------------------------------


def test_tau_first_twelve_literal():
    t = tau(12)
    assert [t[n] for n in range(1, 13)] == TAU_FIRST_12


def test_tau_matches_recurrence_oracle():
    # an independent route: (n-1) tau(n) = -24 sum sigma_1(j) tau(n-j)
    t = tau(200)
    oracle = tau_recurrence_oracle(200)
    assert list(t.coefficients) == oracle


def test_tau_deep_frozen_value(tau6011):
    assert tau6011[6000] == TAU_6000


def test_tau_multiplicative(tau6011):
    t = tau6011
    rng = random.Random(412)
    from math import gcd

    pairs = 0
    while pairs < 20:
        m = rng.randint(2, 70)
        n = rng.randint(2, 70)
        if gcd(m, n) != 1:
            continue
        assert t[m * n] == t[m] * t[n], (m, n)
        pairs += 1


def test_tau_hecke_at_prime_squares(tau6011):
    t = tau6011
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        assert t[p * p] == t[p] ** 2 - p**11, p


def test_tau_cache_roundtrip(tmp_path):
    cp = os.fspath(tmp_path / "tau_cache.txt")
    t1 = tau(40, cache_path=cp)
    with open(cp) as fh:
        header = fh.readline().strip()
    assert header == "tau v1 n_max=40"
    # a smaller request must reuse the larger cache
    t2 = tau(30, cache_path=cp)
    assert list(t2.coefficients) == list(t1.coefficients[:30])
    # corrupted cache is rejected, then rebuilt
    with open(cp, "w") as fh:
        fh.write("tau v1 n_max=5\n1\n-24\nbroken\n")
    t3 = tau(10, cache_path=cp)
    assert [t3[n] for n in range(1, 11)] == TAU_FIRST_12[:10]


def test_qexpansion_indexing():
    t = tau(8)
    assert isinstance(t, QExpansion)
    assert t.weight == 12
    assert t[1] == 1
    with pytest.raises(DomainError):
        t[0]
    with pytest.raises(DomainError):
        t[9]


# ---------------------------------------------------------------------------
# divisor sums
# ---------------------------------------------------------------------------


def test_sigma_order_and_values():
    assert sigma(1, 6) == 12
    assert sigma(0, 12) == 6
    assert sigma(-3, 2) == Fraction(9, 8)
    assert sigma(3, 4) == 73
    v = sigma(mpc("0.5", "0.5"), 4)
    assert abs(v) > 0


# ---------------------------------------------------------------------------
# factorial collapse lemma
# ---------------------------------------------------------------------------


def test_collapse_lemma_exhaustive_exact():
    for k in range(0, 21, 2):
        for k2 in range(0, k + 1, 2):
            for u in range(1, 11):
                assert summ_lemma_check(k, k2, u), (k, k2, u)


def test_collapse_lemma_numeric_at_complex_u():
    mp.prec = 160
    r = summ_lemma_residual(8, 4, mpc("0.7", "1.3"), 128)
    assert r < mpf("1e-30")


def test_collapse_lemma_validation():
    with pytest.raises(DomainError):
        summ_lemma_check(4, 6, 1)  # k2 > k
    with pytest.raises(DomainError):
        summ_lemma_check(3, 2, 1)  # odd weight


# ---------------------------------------------------------------------------
# completed L-function
# ---------------------------------------------------------------------------


def test_lstar_quadrature_matches_closed_form():
    mp.prec = 160
    for n in (4, 6):
        for s in (2, 3, mpc("2.5", "1.0")):
            q = eisenstein_lstar(n, s, CFG)
            c = lstar_closed_form(n, s, 128)
            assert abs(q - c) < mpf("1e-25"), (n, s)


def test_lstar_functional_equation():
    mp.prec = 160
    rng = random.Random(7)
    for n in (4, 6):
        sign = (-1) ** (n // 2)
        for _ in range(3):
            s = mpc(rng.uniform(0.5, 3.5), rng.uniform(-2, 2))
            a = eisenstein_lstar(n, s, CFG)
            b = eisenstein_lstar(n, n - s, CFG)
            assert abs(b - sign * a) < mpf("1e-25"), (n, s)


def test_lstar_odd_integers_vanish():
    mp.prec = 160
    for n in (4, 6, 8):
        for r in range(3, n - 1, 2):
            assert abs(lstar_closed_form(n, r, 128)) < mpf("1e-30"), (n, r)


def test_lstar_poles_raise():
    for n, s in ((4, 0), (4, 4), (6, 0), (6, 6)):
        with pytest.raises(PoleError):
            eisenstein_lstar(n, s, CFG)


def test_lstar_rejects_bad_weight():
    with pytest.raises(DomainError):
        eisenstein_lstar(5, 2, CFG)
    with pytest.raises(DomainError):
        eisenstein_lstar(2, 1, CFG)


# ---------------------------------------------------------------------------
# cubic zeta tail identity
# ---------------------------------------------------------------------------


def test_fnl_residual_small(tau6011):
    for n in (1, 2, 5):
        r = fnl_residual(n, CFG, tail_terms=3000, tau_values=tau6011)
        assert r < mpf("1e-6"), n


def test_fnl_residual_decreases_with_tail(tau6011):
    r1 = fnl_residual(2, CFG, tail_terms=1500, tau_values=tau6011)
    r2 = fnl_residual(2, CFG, tail_terms=3000, tau_values=tau6011)
    assert r2 < r1


def test_fnl_raw_residual_larger_but_finite(tau6011):
    raw = fnl_residual(5, CFG, tail_terms=1500, tau_values=tau6011, normalized=False)
    norm = fnl_residual(5, CFG, tail_terms=1500, tau_values=tau6011)
    assert raw > norm  # |tau(5)| = 4830 > 1 scales the residual up
    assert raw < mpf("1e-2")


# ---------------------------------------------------------------------------
# independent route for the even-negative-weight identity
# ---------------------------------------------------------------------------


def test_cos_route_matches_master_residuals():
    mp.prec = 160
    for k in (-2, -4, -8):
        for z in (mpc(0, 1), mpc("0.5", "1.5")):
            a = prop_cos_residual(k, z, CFG)
            b = master_formula_residual(k, z, CFG)
            assert a < mpf("1e-25"), (k, z)
            assert b < mpf("1e-25"), (k, z)


def test_cos_route_rejects_positive_weight():
    with pytest.raises(DomainError):
        prop_cos_residual(2, mpc(0, 1), CFG)

"""Odd zeta-value acceleration routes, the even-index series, residual
identities at special points, reciprocity, and the torus spectral identity.

The primary oracle for zeta(2h-1) is a direct 10^6-term partial sum with an
Euler-Maclaurin tail correction (float64 core), plus frozen digit strings
from a third-party evaluator."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
from mpmath import mp, mpc, mpf

from eisenlab.arith import default_tol, to_mp, zeta_complex
from eisenlab.eisenstein import EvalConfig
from eisenlab.errors import DomainError
from eisenlab.zeta_values import (
    ZETA_FORMULA_IDS,
    bernoulli_block,
    jkt_residual,
    master_formula_residual,
    mirror_consistency_residual,
    ramanujan_poly,
    rmz_residual,
    torus_spectral_identity,
    zeta_even_series,
    zeta_odd,
    zeta_odd_applicable,
    zeta_oracle,
)

CFG = EvalConfig(prec_bits=128)

# Digits frozen from a third-party evaluator.
ZETA3_STR = "1.20205690315959428539973816151144999076498629"
ZETA7_STR = "1.00834927738192282683979754984979675959986356"


# ---------------------------------------------------------------------------
# The direct-sum oracle itself
# ---------------------------------------------------------------------------


def test_oracle_matches_frozen_digits():
    mp.prec = 80
    assert abs(zeta_oracle(3, 64) - mpf(ZETA3_STR)) < mpf("5e-15")
    assert abs(zeta_oracle(7, 64) - mpf(ZETA7_STR)) < mpf("5e-15")


def test_oracle_converges_with_more_terms():
    mp.prec = 80
    truth = mpf(ZETA3_STR)
    coarse = abs(zeta_oracle(3, 64, n_terms=10**3) - truth)
    fine = abs(zeta_oracle(3, 64, n_terms=10**5) - truth)
    assert fine <= coarse
    assert fine < mpf("1e-13")


# ---------------------------------------------------------------------------
# Route applicability and dispatch
# ---------------------------------------------------------------------------


def test_formula_registry_contents():
    assert set(ZETA_FORMULA_IDS) == {
        "euler",
        "lerch",
        "lerch_companion",
        "combined",
        "combined_incgamma",
        "grosswald_tg",
        "prop_bigb",
        "master_at_z",
        "jkt_at_z",
    }


def test_applicability_rules():
    # even-h-only routes
    for fid in ("lerch", "lerch_companion", "combined", "combined_incgamma"):
        assert zeta_odd_applicable(2, fid)
        assert zeta_odd_applicable(4, fid)
        assert not zeta_odd_applicable(3, fid)
        assert not zeta_odd_applicable(5, fid)
    for fid in ("grosswald_tg", "master_at_z", "jkt_at_z"):
        assert zeta_odd_applicable(2, fid)
        assert zeta_odd_applicable(3, fid)
    # the weight-family route needs its weight parameter, k = 2 mod 4, h > k/2
    assert zeta_odd_applicable(2, "prop_bigb", k=2)
    assert zeta_odd_applicable(4, "prop_bigb", k=6)
    assert not zeta_odd_applicable(2, "prop_bigb")
    assert not zeta_odd_applicable(3, "prop_bigb", k=4)
    assert not zeta_odd_applicable(3, "prop_bigb", k=6)
    with pytest.raises(DomainError):
        zeta_odd(3, "lerch", CFG)
    with pytest.raises(DomainError):
        zeta_odd(2, "no_such_route", CFG)


def test_all_routes_hit_the_oracle():
    mp.prec = 160
    exercised = set()
    for h in (2, 3, 4, 5):
        ref = zeta_complex(2 * h - 1, 150)
        for fid in ZETA_FORMULA_IDS:
            if fid == "prop_bigb":
                # largest valid weight 2 mod 4 with h > k/2
                k = 2 if h <= 3 else 6
                if not zeta_odd_applicable(h, fid, k=k):
                    continue
                v = zeta_odd(h, fid, CFG, k=k)
            else:
                if fid == "euler" or not zeta_odd_applicable(h, fid):
                    continue
                v = zeta_odd(h, fid, CFG)
            exercised.add(fid)
            err = abs(to_mp(v.value, 150) - ref)
            assert err < default_tol(128) * 10, (h, fid, err)
    assert exercised == set(ZETA_FORMULA_IDS) - {"euler"}


def test_bigb_weight_family():
    mp.prec = 160
    for h, k in ((2, 2), (3, 2), (4, 6), (4, 2), (5, 6), (6, 10)):
        ref = zeta_complex(2 * h - 1, 150)
        v = zeta_odd(h, "prop_bigb", CFG, k=k)
        assert abs(to_mp(v.value, 150) - ref) < default_tol(128) * 10, (h, k)


def test_truncation_override_respected():
    v = zeta_odd(2, "lerch", EvalConfig(prec_bits=128, trunc_M=20))
    assert v.terms_used <= 20


def test_twenty_terms_already_give_1e12():
    mp.prec = 160
    v = zeta_odd(2, "lerch", EvalConfig(prec_bits=128, trunc_M=20))
    assert abs(to_mp(v.value, 150) - zeta_complex(3, 150)) < mpf("1e-12")


# ---------------------------------------------------------------------------
# Even-index series
# ---------------------------------------------------------------------------


def test_even_series_closed_forms():
    mp.prec = 160
    for h, k in ((2, 6), (3, 6), (2, 10), (1, 6)):
        v = zeta_even_series(h, k, CFG)
        ref = zeta_complex(2 * h, 150)
        assert abs(to_mp(v.value, 150) - ref) < default_tol(128) * 10, (h, k)


def test_even_series_pi_powers():
    mp.prec = 160
    # zeta(4) = pi^4/90, zeta(6) = pi^6/945
    v4 = to_mp(zeta_even_series(2, 6, CFG).value, 150)
    v6 = to_mp(zeta_even_series(3, 6, CFG).value, 150)
    assert abs(v4 - mp.pi**4 / 90) < mpf("1e-35")
    assert abs(v6 - mp.pi**6 / 945) < mpf("1e-35")


# ---------------------------------------------------------------------------
# Exact skeletons
# ---------------------------------------------------------------------------


def test_bernoulli_block_against_trig_generating_function():
    # sum_{u+v=h} (-1)^u B_2u B_2v / ((2u)!(2v)!) is the x^{2h} Taylor
    # coefficient of (x^2/4) cot(x/2) coth(x/2).  Extract the coefficients by
    # a discrete Cauchy integral on the unit circle (nearest poles at 2 pi,
    # so aliasing decays like (2 pi)^-N) -- an independent trig-route oracle.
    mp.prec = 240

    def g(x):
        return (x**2 / 4) * mp.cot(x / 2) * mp.coth(x / 2)

    n_pts = 64
    samples = [g(mp.expjpi(mpf(2 * j) / n_pts)) for j in range(n_pts)]

    def coeff(n):
        acc = mp.mpc(0)
        for j, val in enumerate(samples):
            acc += val * mp.expjpi(mpf(-2 * j * n) / n_pts)
        return acc / n_pts

    assert bernoulli_block(0) == 1
    for h in range(0, 7):
        want = coeff(2 * h)
        got = to_mp(bernoulli_block(h), 200)
        assert abs(got - want) < mpf("1e-40"), h
        # odd coefficients vanish (even function)
        assert abs(coeff(2 * h + 1)) < mpf("1e-40")
    with pytest.raises(DomainError):
        bernoulli_block(-1)


def test_ramanujan_poly_literal_low_weights():
    assert ramanujan_poly(2).poly.coeffs == (Fraction(1),)
    # R_0 = (1 + z^2)/12
    assert ramanujan_poly(0).poly.coeffs == (Fraction(1, 12), Fraction(0), Fraction(1, 12))
    # R_{-2} = -1/720 + z^2/144 - z^4/720
    assert ramanujan_poly(-2).poly.coeffs == (
        Fraction(-1, 720),
        Fraction(0),
        Fraction(1, 144),
        Fraction(0),
        Fraction(-1, 720),
    )
    with pytest.raises(DomainError):
        ramanujan_poly(4)


# ---------------------------------------------------------------------------
# Residual identities
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("k", (-8, -4, -2, 0, 2))
def test_master_and_companion_residuals(k):
    mp.prec = 160
    for z in (mpc(0, 1), mpc(0, 2), mpc("0.5", "1.5")):
        r1 = master_formula_residual(k, z, CFG)
        r2 = jkt_residual(k, z, CFG)
        assert r1 < mpf("1e-12"), (k, z, r1)
        assert r2 < mpf("1e-12"), (k, z, r2)


def test_mirror_consistency_small_weights():
    mp.prec = 160
    for k in (2, 6, 10):
        for h in range(1, k // 2 + 3):
            r = mirror_consistency_residual(k, h, 128)
            assert r < mpf("1e-25"), (k, h, r)


def test_mirror_consistency_requires_weight_2_mod_4():
    with pytest.raises(DomainError):
        mirror_consistency_residual(4, 1, 128)


def test_rmz_reciprocity_residuals():
    mp.prec = 160
    z = mpc("0.4", "1.3")
    for k in (2, -2, -4):
        assert rmz_residual(k, z, "holomorphic", CFG) < mpf("1e-25"), k
    for k in (-2, -4, -6):
        assert rmz_residual(k, z, "nonholomorphic", CFG) < mpf("1e-25"), k


def test_rmz_weight0_not_defined():
    with pytest.raises(DomainError):
        rmz_residual(0, mpc("0.4", "1.3"), "holomorphic", CFG)


def test_torus_spectral_identity_converges():
    mp.prec = 160
    for h, y in ((2, 1.0), (3, 1.0), (2, 2.0), (4, 0.8)):
        lhs, rhs = torus_spectral_identity(h, y, CFG)
        assert abs(lhs - rhs) < mpf("1e-20"), (h, y)


def test_eulerian_reorganization_blocks():
    # sum_n (ny)^-(h+u) e^{-2 pi n y} A_{h-1-u}(e^{-2 pi n y}) / (1 - e^{-2 pi n y})^{h-u}
    #   = sum_{n,l} l^{h-1-u} (ny)^-(h+u) e^{-2 pi n l y}
    from eisenlab.arith import eulerian_poly

    mp.prec = 120
    y = mpf("1.1")
    n_max = 24
    l_max = 140
    for h in (2, 3):
        for u in range(0, h):
            lhs = mpf(0)
            for n in range(1, n_max + 1):
                t = mp.exp(-2 * mp.pi * n * y)
                a = eulerian_poly(h - 1 - u)
                aval = sum(to_mp(c, 120) * t**j for j, c in enumerate(a.coeffs))
                lhs += (n * y) ** (-(h + u)) * t * aval / (1 - t) ** (h - u)
            rhs = mpf(0)
            for n in range(1, n_max + 1):
                for el in range(1, l_max + 1):
                    rhs += el ** (h - 1 - u) * (n * y) ** (-(h + u)) * mp.exp(
                        -2 * mp.pi * n * el * y
                    )
            assert abs(lhs - rhs) < mpf("1e-25"), (h, u)

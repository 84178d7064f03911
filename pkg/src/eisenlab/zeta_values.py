"""Exponentially accelerated series for odd zeta values, and the modular
master identities they come from.

The centerpiece: for suitable even weight parameters, the value zeta(2h-1)
is an elementary closed form plus a series in sigma_{1-2h}(m) e^{-2 pi m}
whose terms shrink by a factor e^{-2 pi} ~ 535 each step, so ~20 terms give
~50 digits.  Several inequivalent formulas of this shape are implemented and
kept as independent routes:

* ``lerch``              - the classical Bernoulli-block identity (even h);
* ``lerch_companion``    - its non-holomorphic companion (even h);
* ``combined``           - the half-sum of the two, with the Bernoulli blocks
                           cancelled against 4^{h-1} zeta(2h)/pi (even h);
* ``combined_incgamma``  - the combined form with the companion's inner sum
                           rewritten through regularized incomplete gamma
                           (even h);
* ``grosswald_tg``       - the weight-independent form valid for EVERY
                           h >= 2, even or odd;
* ``prop_bigb(k)``       - a family indexed by weight k = 2 mod 4, h > k/2;
* ``master_at_z``        - solve the master identity for zeta(1-k) at a
                           chosen point (default z = 2i), k = 2 - 2h;
* ``jkt_at_z``           - same through the non-holomorphic companion.

Even zeta values get the analogous treatment (``zeta_even_series``), the
Ramanujan polynomial machinery, the master-formula residuals, and the
weight-0 torus spectral identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from mpmath import mp, mpc, mpf

from .arith import (
    ExactPoly,
    Number,
    as_integer,
    bernoulli,
    default_tol,
    eulerian_poly,
    is_real,
    sigma_power,
    sign_pow,
    to_mp,
    working,
    zeta_complex,
    zeta_even,
    zeta_nonpositive,
)
from .coeffs import a_coeff, a_coeff_bound, require_even_weight, theta_k_int
from .eisenstein import EvalConfig, SeriesValue, as_upper_half, u_series, v_series
from .errors import DomainError
from .special import incomplete_gamma

__all__ = [
    "RamanujanPoly",
    "ZETA_FORMULA_IDS",
    "bernoulli_block",
    "jkt_residual",
    "master_formula_residual",
    "mirror_consistency_residual",
    "ramanujan_poly",
    "rmz_residual",
    "torus_spectral_identity",
    "zeta_even_series",
    "zeta_odd",
    "zeta_odd_applicable",
    "zeta_oracle",
]


# ---------------------------------------------------------------------------
# Small exact building blocks
# ---------------------------------------------------------------------------


def bernoulli_block(h: int) -> Fraction:
    """The Bernoulli convolution sum_{u+v=h} (-1)^u B_{2u} B_{2v} / ((2u)!(2v)!)

    shared verbatim by the lerch and companion formulas (u, v >= 0)."""
    if h < 0:
        raise DomainError("h must be nonnegative")
    total = Fraction(0)
    for u in range(h + 1):
        v = h - u
        total += (
            sign_pow(u)
            * Fraction(bernoulli(2 * u), factorial(2 * u))
            * Fraction(bernoulli(2 * v), factorial(2 * v))
        )
    return total


def _abs_bernoulli_term(h: int) -> Fraction:
    """|B_{2h}| / (2 (2h)!), the closed-form head shared by several routes."""
    return Fraction(abs(bernoulli(2 * h)), 2 * factorial(2 * h))


def _sigma_neg(m: int, h: int) -> Fraction:
    """sigma_{1-2h}(m) as an exact rational."""
    return sigma_power(m, 1 - 2 * h)


@dataclass(frozen=True)
class RamanujanPoly:
    """The even reciprocal polynomial R_k(z) = sum_{u+v=1-k/2} B_{2u} B_{2v}
    z^{2u} / ((2u)!(2v)!), attached to even weight k <= 2."""

    k: int
    poly: ExactPoly

    def __call__(self, z):
        return self.poly(z)


def ramanujan_poly(k: int) -> RamanujanPoly:
    """R_k for even k <= 2 (R_2 = 1, R_0 = (1 + z^2)/12, ...)."""
    require_even_weight(k)
    if k > 2:
        raise DomainError("the reciprocal polynomial exists for even k <= 2")
    n = 1 - k // 2
    coeffs = [Fraction(0)] * (2 * n + 1)
    for u in range(n + 1):
        v = n - u
        coeffs[2 * u] = Fraction(bernoulli(2 * u), factorial(2 * u)) * Fraction(
            bernoulli(2 * v), factorial(2 * v)
        )
    return RamanujanPoly(k=k, poly=ExactPoly(tuple(coeffs)))


# ---------------------------------------------------------------------------
# Direct-sum zeta oracle (slow, independent of every accelerated formula)
# ---------------------------------------------------------------------------


def zeta_oracle(s: int, prec: int = 128, n_terms: int = 1_000_000):
    """zeta(s) for integer s >= 2 by direct summation with an integral tail:

        sum_{n<=N} n^{-s} + N^{1-s}/(s-1) - N^{-s}/2  (+ O(N^{-s-1}))

    Used only as an independent cross-check target.  The partial sum runs in
    float64 (ascending order, deterministic pairwise reduction), so the
    absolute accuracy floor is a few units in 1e-16 regardless of ``prec``;
    the truncation leg decays like s*N^(-s-1)/12.  Intentionally a different
    algorithm from every accelerated formula it is used to check.
    """
    if not isinstance(s, int) or s < 2:
        raise DomainError("oracle expects an integer s >= 2")
    if n_terms < 2:
        raise DomainError("need at least 2 terms")
    import numpy as np

    terms = np.arange(n_terms, 0, -1, dtype=np.float64) ** float(-s)
    total = float(np.sum(terms))
    with working(prec, 16):
        n = n_terms
        tail = mpf(n) ** (1 - s) / (s - 1) - mpf(n) ** (-s) / 2
        result = +(mpf(total) + tail)
    return to_mp(result, prec)


# ---------------------------------------------------------------------------
# The accelerated odd-zeta formulas
# ---------------------------------------------------------------------------

ZETA_FORMULA_IDS = (
    "euler",
    "lerch",
    "lerch_companion",
    "combined",
    "combined_incgamma",
    "grosswald_tg",
    "prop_bigb",
    "master_at_z",
    "jkt_at_z",
)


def zeta_odd_applicable(h: int, formula: str, k: Optional[int] = None) -> bool:
    """Whether the named accelerated route computes zeta(2h-1) at this h."""
    if formula in ("lerch", "lerch_companion", "combined", "combined_incgamma"):
        return h >= 2 and h % 2 == 0
    if formula == "grosswald_tg":
        return h >= 2
    if formula == "prop_bigb":
        return k is not None and k % 4 == 2 and k >= 2 and h > k // 2
    if formula in ("master_at_z", "jkt_at_z"):
        return h >= 2
    if formula == "euler":
        return False  # euler is the tag for even arguments, not odd ones
    raise DomainError(f"unknown formula id {formula!r}")


def _series_cutoff(h: int, tol, extra_powers: int = 0) -> int:
    """Terms needed so m^(extra) e^{-2 pi m} drops below tol/10."""
    lt = float(mp.log(to_mp(tol, 53), 2)) - math.log2(10)
    m = 1
    while (extra_powers * math.log2(max(m, 2)) - 2 * math.pi * m / math.log(2)) >= lt:
        m += 1
        if m > 100_000:
            raise DomainError("cutoff runaway in accelerated series")
    return max(m, 1)


def _exp_series(h: int, weight_fn, M: int, wp: int):
    """sum_{m=1..M} sigma_{1-2h}(m) e^{-2 pi m} * weight_fn(m), at wp bits."""
    total = mpf(0)
    for m in range(1, M + 1):
        total += to_mp(_sigma_neg(m, h), wp) * mp.exp(-2 * mp.pi * m) * weight_fn(m)
    return total


def _zeta_lerch(h: int, wp: int, M: int):
    """zeta(2h-1) = -(2 pi)^{2h-1}/2 * block(h) - 2 sum sigma_{1-2h}(m) e^{-2 pi m}."""
    head = -((2 * mp.pi) ** (2 * h - 1)) / 2 * to_mp(bernoulli_block(h), wp)
    return head - 2 * _exp_series(h, lambda m: mpf(1), M, wp)


def _companion_weight(h: int):
    """Inner polynomial of the companion route: sum_{u=0}^{2h-2} (4 pi m)^u / u!."""

    def weight(m):
        x = 4 * mp.pi * m
        term = mpf(1)
        acc = mpf(1)
        for u in range(1, 2 * h - 1):
            term = term * x / u
            acc += term
        return acc

    return weight


def _zeta_companion(h: int, wp: int, M: int):
    """Companion route:

    zeta(2h-1) = (4 pi)^{2h-1} |B_{2h}|/(2h)! + (2 pi)^{2h-1}/2 * block(h)
                 - 2 sum sigma_{1-2h}(m) e^{-2 pi m} sum_{u<=2h-2} (4 pi m)^u/u!.
    """
    head = (4 * mp.pi) ** (2 * h - 1) * to_mp(
        Fraction(abs(bernoulli(2 * h)), factorial(2 * h)), wp
    )
    head += ((2 * mp.pi) ** (2 * h - 1)) / 2 * to_mp(bernoulli_block(h), wp)
    return head - 2 * _exp_series(h, _companion_weight(h), M, wp)


def _zeta_combined(h: int, wp: int, M: int):
    """Half-sum of lerch and companion with the Bernoulli blocks cancelled:

    zeta(2h-1) = 4^{h-1}/pi * zeta(2h)
                 - sum sigma_{1-2h}(m) e^{-2 pi m} (1 + sum_{u<=2h-2} (4 pi m)^u/u!).
    """
    r, p = zeta_even(2 * h)
    head = mpf(4) ** (h - 1) / mp.pi * to_mp(r, wp) * mp.pi**p
    wfn = _companion_weight(h)
    return head - _exp_series(h, lambda m: 1 + wfn(m), M, wp)


def _zeta_combined_incgamma(h: int, wp: int, M: int):
    """Combined route with the companion sum in regularized-incomplete-gamma
    form:

    zeta(2h-1) = (4 pi)^{2h-1} |B_{2h}|/(2 (2h)!)
                 - sum sigma_{1-2h}(m) [ e^{-2 pi m}
                       + Q(2h-1, 4 pi m) e^{+2 pi m} ],

    Q the regularized upper incomplete gamma."""
    head = (4 * mp.pi) ** (2 * h - 1) * to_mp(_abs_bernoulli_term(h), wp)
    total = mpf(0)
    for m in range(1, M + 1):
        q = incomplete_gamma(2 * h - 1, 4 * mp.pi * m, wp, regularized=True)
        total += to_mp(_sigma_neg(m, h), wp) * (
            mp.exp(-2 * mp.pi * m) + q * mp.exp(2 * mp.pi * m)
        )
    return head - total


def _zeta_grosswald_tg(h: int, wp: int, M: int):
    """The all-h route:

    zeta(2h-1) = (h-2)!/(2h-2)! * [ (4 pi)^{2h-1} h! |B_{2h}| / (2 (2h)!)
        - sum sigma_{1-2h}(m) e^{-2 pi m}
            sum_{l=0}^{h} (h+l-2)! (h(h-1) + l(l-1)) / (l! (h-l)!) (4 pi m)^{h-l} ].
    """
    if h < 2:
        raise DomainError("need h >= 2")
    front = Fraction(factorial(h - 2), factorial(2 * h - 2))
    head = (
        (4 * mp.pi) ** (2 * h - 1)
        * factorial(h)
        * to_mp(_abs_bernoulli_term(h), wp)
    )

    coeff = [
        Fraction(factorial(h + el - 2) * (h * (h - 1) + el * (el - 1)), factorial(el) * factorial(h - el))
        for el in range(h + 1)
    ]

    def weight(m):
        x = 4 * mp.pi * m
        acc = mpf(0)
        for el in range(h + 1):
            acc += to_mp(coeff[el], mp.prec) * x ** (h - el)
        return acc

    return to_mp(front, wp) * (head - _exp_series(h, weight, M, wp))


def _zeta_bigb(h: int, k: int, wp: int, M: int):
    """Weight-k family (k = 2 mod 4, h > k/2):

    zeta(2h-1) = (h-k/2-1)!/(2h-2)! * [
        (4 pi)^{2h-1} (h+k/2-1)! |B_{2h}| / (2 (2h)!)
        - sum sigma_{1-2h}(m) e^{-2 pi m} sum_{l=1-k/2}^{h}
            k! (h+l-2)! / ((l+k/2-1)! (h-l)!)
            [ C(k/2+h-1, k) + C(k/2+l-1, k) ] (4 pi m)^{h-l} ].
    """
    if k % 4 != 2 or k < 2:
        raise DomainError("weight must be 2 mod 4 and positive")
    if h <= k // 2:
        raise DomainError("need h > k/2")
    front = Fraction(factorial(h - k // 2 - 1), factorial(2 * h - 2))
    head = (
        (4 * mp.pi) ** (2 * h - 1)
        * factorial(h + k // 2 - 1)
        * to_mp(_abs_bernoulli_term(h), wp)
    )
    lo = 1 - k // 2
    coeff = []
    for el in range(lo, h + 1):
        c = Fraction(
            factorial(k) * factorial(h + el - 2),
            factorial(el + k // 2 - 1) * factorial(h - el),
        ) * (comb(k // 2 + h - 1, k) + comb(k // 2 + el - 1, k))
        coeff.append((el, c))

    def weight(m):
        x = 4 * mp.pi * m
        acc = mpf(0)
        for el, c in coeff:
            acc += to_mp(c, mp.prec) * x ** (h - el)
        return acc

    return to_mp(front, wp) * (head - _exp_series(h, weight, M, wp))


def _zeta_one_minus(k: int, wp: int):
    """zeta(1 - k): exact rational for k >= 1, reflected value otherwise
    (k = 0 would be the pole at zeta(1) and must be excluded upstream)."""
    if k == 0:
        raise DomainError("zeta(1) pole")
    if k >= 1:
        return to_mp(zeta_nonpositive(1 - k), wp)
    return zeta_complex(1 - k, wp)


def _master_head(k: int, z, wp: int):
    """(2 pi i)^{1-k} sum_{u+v=1-k/2} B_{2u} B_{2v}/((2u)!(2v)!) z^{1-2v}."""
    n = 1 - k // 2
    if n < 0:
        raise DomainError("head defined for even k <= 2")
    i = mpc(0, 1)
    acc = mpf(0)
    for u in range(n + 1):
        v = n - u
        c = Fraction(bernoulli(2 * u), factorial(2 * u)) * Fraction(
            bernoulli(2 * v), factorial(2 * v)
        )
        acc += to_mp(c, wp) * z ** (1 - 2 * v)
    return (2 * mp.pi * i) ** (1 - k) * acc


def master_formula_residual(k: int, z, cfg: Optional[EvalConfig] = None):
    """Residual of the holomorphic master identity at even weight k:

        2 (z^k U_k(z) - U_k(-1/z))
            = (2 pi i)^{1-k} sum_{u+v=1-k/2} B_{2u}B_{2v}/((2u)!(2v)!) z^{1-2v}
              + { -pi i/2 + log z          if k = 0
                { (1 - z^k) zeta(1-k)      if k != 0 }

    for z in the upper half-plane (principal logarithm).  Returns |lhs - rhs|.
    """
    require_even_weight(k)
    if k > 2:
        raise DomainError("master identity stated for even k <= 2")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        zz = mpc(x, y)
        u_here = to_mp(u_series(k, zz, cfg).value, wp)
        u_flip = to_mp(u_series(k, -1 / zz, cfg).value, wp)
        lhs = 2 * (zz**k * u_here - u_flip)
        rhs = _master_head(k, zz, wp)
        if k == 0:
            rhs += -mp.pi * mpc(0, 1) / 2 + mp.log(zz)
        else:
            rhs += (1 - zz**k) * _zeta_one_minus(k, wp)
        res = +abs(lhs - rhs)
    return to_mp(res, prec)


def jkt_residual(k: int, z, cfg: Optional[EvalConfig] = None):
    """Residual of the companion (non-holomorphic) master identity:

        2 (z^k V_k(z) - V_k(-1/z))
            = 2 zeta(2-k)/(2 pi i)^k (y/pi)^{1-k} (|z|^{2k-2} - z^k)
              - (2 pi i)^{1-k} sum_{u+v=1-k/2} B_{2u}B_{2v}/((2u)!(2v)!) z^{1-2v}
              + { 0                     if k > 0
                { pi i/2 + conj(log z)  if k = 0
                { (1 - z^k) zeta(1-k)   if k < 0 }

    for even k <= 2, z in the upper half-plane.  Returns |lhs - rhs|.
    """
    require_even_weight(k)
    if k > 2:
        raise DomainError("companion identity stated for even k <= 2")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        zz = mpc(x, y)
        v_here = to_mp(v_series(k, zz, cfg).value, wp)
        flip = -1 / zz
        v_flip = to_mp(v_series(k, flip, cfg).value, wp)
        lhs = 2 * (zz**k * v_here - v_flip)
        if k == 2:
            z2k = mpf(-1) / 2  # zeta(0)
        elif k == 0:
            z2k = zeta_complex(2, wp)
        else:
            z2k = zeta_complex(2 - k, wp)
        i = mpc(0, 1)
        rhs = (
            2
            * z2k
            / (2 * mp.pi * i) ** k
            * (y / mp.pi) ** (1 - k)
            * (abs(zz) ** (2 * k - 2) - zz**k)
        )
        rhs -= _master_head(k, zz, wp)
        if k == 0:
            rhs += mp.pi * i / 2 + mp.conj(mp.log(zz))
        elif k < 0:
            rhs += (1 - zz**k) * _zeta_one_minus(k, wp)
        res = +abs(lhs - rhs)
    return to_mp(res, prec)


def _zeta_master_at_z(h: int, wp: int, cfg: EvalConfig, companion: bool):
    """Solve the (companion) master identity for zeta(1-k) = zeta(2h-1) with
    k = 2 - 2h at a fixed z (2i by default: valid for every h >= 2)."""
    k = 2 - 2 * h
    zz = mpc(0, 2)
    inner_cfg = EvalConfig(prec_bits=wp, trunc_M=cfg.trunc_M, tol=cfg.tol)
    if companion:
        v_here = to_mp(v_series(k, zz, inner_cfg).value, wp)
        v_flip = to_mp(v_series(k, -1 / zz, inner_cfg).value, wp)
        lhs = 2 * (zz**k * v_here - v_flip)
        y = zz.imag
        z2k = zeta_complex(2 - k, wp)
        i = mpc(0, 1)
        head = (
            2
            * z2k
            / (2 * mp.pi * i) ** k
            * (y / mp.pi) ** (1 - k)
            * (abs(zz) ** (2 * k - 2) - zz**k)
        )
        head -= _master_head(k, zz, wp)
        value = (lhs - head) / (1 - zz**k)
    else:
        u_here = to_mp(u_series(k, zz, inner_cfg).value, wp)
        u_flip = to_mp(u_series(k, -1 / zz, inner_cfg).value, wp)
        lhs = 2 * (zz**k * u_here - u_flip)
        head = _master_head(k, zz, wp)
        value = (lhs - head) / (1 - zz**k)
    if abs(value.imag) < mpf(2) ** (-wp // 2):
        value = value.real
    return value


def zeta_odd(h: int, formula: str = "combined", cfg: Optional[EvalConfig] = None, k: Optional[int] = None) -> SeriesValue:
    """zeta(2h-1) by the named accelerated route (see module docstring).

    ``k`` selects the weight for the ``prop_bigb`` family.  Raises
    DomainError when the route does not apply at this h (parity and range
    constraints differ per route).
    """
    if not isinstance(h, int) or h < 2:
        raise DomainError("need an integer h >= 2 (target zeta(2h-1))")
    if formula not in ZETA_FORMULA_IDS:
        raise DomainError(f"unknown formula id {formula!r}")
    if formula == "euler":
        raise DomainError("'euler' tags the even-argument closed form; use zeta_even_series")
    if not zeta_odd_applicable(h, formula, k):
        raise DomainError(f"route {formula!r} does not apply at h={h}, k={k}")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    with working(prec, 32):
        wp = mp.prec
        extra_powers = 2 * h  # generous polynomial factor for every route
        M = cfg.trunc_M or _series_cutoff(h, tol, extra_powers)
        if formula == "lerch":
            value = _zeta_lerch(h, wp, M)
        elif formula == "lerch_companion":
            value = _zeta_companion(h, wp, M)
        elif formula == "combined":
            value = _zeta_combined(h, wp, M)
        elif formula == "combined_incgamma":
            value = _zeta_combined_incgamma(h, wp, M)
        elif formula == "grosswald_tg":
            value = _zeta_grosswald_tg(h, wp, M)
        elif formula == "prop_bigb":
            value = _zeta_bigb(h, k, wp, M)
        elif formula == "master_at_z":
            value = _zeta_master_at_z(h, wp, cfg, companion=False)
        else:  # jkt_at_z
            value = _zeta_master_at_z(h, wp, cfg, companion=True)
        value = +value
        err = +(
            mpf(2) ** (extra_powers * math.log2(M + 1)) * mp.exp(-2 * mp.pi * (M + 1))
        )
    return SeriesValue(to_mp(value, prec), to_mp(err, prec), M)


# ---------------------------------------------------------------------------
# Accelerated even-zeta series
# ---------------------------------------------------------------------------


def zeta_even_series(h: int, k: int, cfg: Optional[EvalConfig] = None) -> SeriesValue:
    """Accelerated series for zeta(2h) at weight k = 2 mod 4.

    For 2 <= h <= k/2:

        zeta(2h) = -pi^h sum_{m>=1} sigma_{1-2h}(m) m^{h-1} e^{-2 pi m}
                     sum_{r=1-h}^{k/2} (-1)^r C(k/2-h, k/2-r) (4 pi m)^r / (h-1+r)!

    and for h = 1 the inhomogeneous variant, solved for zeta(2):

        zeta(2) k/(2 pi) + zeta(0)
            = - sum_{m>=1} sigma_{-1}(m) e^{-2 pi m}
                  sum_{r=1}^{k/2} (-1)^r C(k/2, r) (4 pi m)^r / (r-1)!.
    """
    if k % 4 != 2 or k < 2:
        raise DomainError("weight must be 2 mod 4 and positive")
    if not isinstance(h, int) or h < 1:
        raise DomainError("need an integer h >= 1")
    if h != 1 and not 2 <= h <= k // 2:
        raise DomainError("need 2 <= h <= k/2 (or h = 1)")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    with working(prec, 32):
        wp = mp.prec
        extra_powers = k // 2 + h + 1
        M = cfg.trunc_M or _series_cutoff(h, tol, extra_powers)
        total = mpf(0)
        if h == 1:
            for m in range(1, M + 1):
                x = 4 * mp.pi * m
                inner = mpf(0)
                for r in range(1, k // 2 + 1):
                    inner += (
                        sign_pow(r)
                        * comb(k // 2, r)
                        * x**r
                        / factorial(r - 1)
                    )
                total += to_mp(_sigma_neg(m, 1), wp) * mp.exp(-2 * mp.pi * m) * inner
            # total = -[zeta(2) k/(2 pi) + zeta(0)]  =>  solve for zeta(2)
            value = (-total - to_mp(zeta_nonpositive(0), wp)) * 2 * mp.pi / k
        else:
            for m in range(1, M + 1):
                x = 4 * mp.pi * m
                inner = mpf(0)
                for r in range(1 - h, k // 2 + 1):
                    inner += (
                        sign_pow(r)
                        * comb(k // 2 - h, k // 2 - r)
                        * x**r
                        / factorial(h - 1 + r)
                    )
                total += (
                    to_mp(_sigma_neg(m, h), wp)
                    * mpf(m) ** (h - 1)
                    * mp.exp(-2 * mp.pi * m)
                    * inner
                )
            value = -(mp.pi**h) * total
        value = +value
        err = +(
            mpf(2) ** (extra_powers * math.log2(M + 1)) * mp.exp(-2 * mp.pi * (M + 1))
        )
    return SeriesValue(to_mp(value, prec), to_mp(err, prec), M)


def mirror_consistency_residual(k: int, h: int, prec: int = 128, n_terms: Optional[int] = None):
    """Residual of the parameter-mirror consistency identity at weight
    k = 2 mod 4 and 1 <= h <= k/2 + 2 (from the vanishing of the series at
    z = i between s = h and s = 1 - h):

        theta_k(h) + theta_k(1-h)
            = - sum_m sigma_{1-2h}(m) m^{h-1} e^{-2 pi m}
                [ sum_u A^{k}_h(u) (4 pi m)^{-u+k/2}
                + sum_u A^{-k}_h(u) (4 pi m)^{-u-k/2} ].
    """
    if k % 4 != 2 or k < 2:
        raise DomainError("weight must be 2 mod 4 and positive")
    with working(prec, 32):
        wp = mp.prec
        tol = default_tol(prec)
        M = n_terms or _series_cutoff(max(h, 1 - h, 2), tol, abs(k) + 2 * abs(h))
        lhs = theta_k_int(k, h).to_mp(wp) + theta_k_int(k, 1 - h).to_mp(wp)
        a_pos = [a_coeff(k, h, u) for u in range(a_coeff_bound(k, h) + 1)]
        a_neg = [a_coeff(-k, h, u) for u in range(a_coeff_bound(-k, h) + 1)]
        total = mpf(0)
        for m in range(1, M + 1):
            x = 4 * mp.pi * m
            inner = mpf(0)
            for u, a in enumerate(a_pos):
                inner += to_mp(a, wp) * x ** (-u + k // 2)
            for u, a in enumerate(a_neg):
                inner += to_mp(a, wp) * x ** (-u - k // 2)
            total += (
                to_mp(_sigma_neg(m, h), wp) * mpf(m) ** (h - 1) * mp.exp(-2 * mp.pi * m) * inner
            )
        res = +abs(lhs + total)
    return to_mp(res, prec)


# ---------------------------------------------------------------------------
# Reciprocity residuals (the rmz / rmz2 forms)
# ---------------------------------------------------------------------------


def rmz_residual(k: int, z, side: str = "holomorphic", cfg: Optional[EvalConfig] = None):
    """Residual of the reciprocity form of the master identity.

    side="holomorphic" (even k <= 2, z^(-k) != 1):

        (2 pi i)^{1-k} R_k(z) / (z (z^{-k} - 1)) + zeta(1-k)
            = 2 (U_k(z) - z^{-k} U_k(-1/z)) / (z^{-k} - 1)

    side="nonholomorphic" (even k < 0, z^(-k) != 1):

        -(2 pi i)^{1-k} R_k(z) / (z (z^{-k} - 1)) + zeta(1-k)
            = 2 (V_k(z) - z^{-k} V_k(-1/z)) / (z^{-k} - 1)
              - B_{2-k}/(2-k)! (4 pi y)^{1-k}
                  (z^{-k} |z|^{2k-2} - 1) / (z^{-k} - 1)

    where the correction coefficient -B_{2-k}/(2-k)! equals
    2 zeta(2-k)/(2 pi i)^k (y/pi)^{1-k} / (4 pi y)^{1-k} exactly, as forced
    by the companion master identity.
    """
    require_even_weight(k)
    if side not in ("holomorphic", "nonholomorphic"):
        raise DomainError(f"unknown side {side!r}")
    if k > 2 or (side == "nonholomorphic" and k >= 0):
        raise DomainError("holomorphic side needs even k <= 2; companion side k < 0")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    rp = ramanujan_poly(k)
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        zz = mpc(x, y)
        denom = zz ** (-k) - 1
        if abs(denom) < mpf(2) ** (-(prec // 2)):
            raise DomainError("z^(-k) = 1: reciprocity denominator vanishes")
        i = mpc(0, 1)
        head = (2 * mp.pi * i) ** (1 - k) * rp(zz) / (zz * denom)
        z1k = _zeta_one_minus(k, wp)
        if side == "holomorphic":
            u_here = to_mp(u_series(k, zz, cfg).value, wp)
            u_flip = to_mp(u_series(k, -1 / zz, cfg).value, wp)
            lhs = head + z1k
            rhs = 2 * (u_here - zz ** (-k) * u_flip) / denom
        else:
            v_here = to_mp(v_series(k, zz, cfg).value, wp)
            v_flip = to_mp(v_series(k, -1 / zz, cfg).value, wp)
            lhs = -head + z1k
            rhs = 2 * (v_here - zz ** (-k) * v_flip) / denom
            rhs -= (
                to_mp(Fraction(bernoulli(2 - k), factorial(2 - k)), wp)
                * (4 * mp.pi * y) ** (1 - k)
                * (zz ** (-k) * abs(zz) ** (2 * k - 2) - 1)
                / denom
            )
        res = +abs(lhs - rhs)
    return to_mp(res, prec)


# ---------------------------------------------------------------------------
# Weight-0 torus spectral identity
# ---------------------------------------------------------------------------


def torus_spectral_identity(h: int, y, cfg: Optional[EvalConfig] = None):
    """Both sides of the weight-0 torus identity at integer h >= 2:

        sum_{(m,n) != (0,0)} ((m y)^2 + n^2)^{-h}
          = 2 zeta(2h)
            + 2 pi zeta(2h-1) C(2h-2, h-1) 4^{1-h} y^{1-2h}
            + sum_{u=0}^{h-1} C(h-1+u, u) 4^{1-u} pi^{h-u} / (h-1-u)!
                sum_{n>=1} (n y)^{-(h+u)} e^{-2 pi n y}
                           A_{h-1-u}(e^{-2 pi n y}) / (1 - e^{-2 pi n y})^{h-u}

    with A_j the Eulerian polynomials (A_0 = 1).  Returns the pair
    (lhs, rhs) where lhs is evaluated through the Eisenstein route
    (2/Gamma(h)) (pi/y)^h E*_0(iy, h) and rhs through the explicit
    right-hand side; their difference is the residual under test.
    """
    if not isinstance(h, int) or h < 2:
        raise DomainError("need an integer h >= 2")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    from .eisenstein import estar_integer
    from .arith import gamma_complex

    with working(prec, 32):
        wp = mp.prec
        yy = to_mp(y, wp)
        if not yy > 0:
            raise DomainError("y must be positive")
        e_val = to_mp(estar_integer(0, (mpf(0), yy), h, cfg).value, wp)
        lhs = 2 / gamma_complex(mpf(h), wp) * (mp.pi / yy) ** h * e_val

        r, p = zeta_even(2 * h)
        rhs = 2 * to_mp(r, wp) * mp.pi**p
        z_odd = zeta_complex(2 * h - 1, wp)
        rhs += (
            2
            * mp.pi
            * z_odd
            * comb(2 * h - 2, h - 1)
            * mpf(4) ** (1 - h)
            * yy ** (1 - 2 * h)
        )
        # cutoff for the doubly exponential block
        lt = float(mp.log(tol, 2)) - math.log2(10)
        n_max = 1
        while (-2 * math.pi * n_max * float(yy) / math.log(2)) >= lt - 8:
            n_max += 1
            if n_max > 100_000:
                raise DomainError("cutoff runaway in torus identity")
        for u in range(h):
            c = (
                comb(h - 1 + u, u)
                * mpf(4) ** (1 - u)
                * mp.pi ** (h - u)
                / factorial(h - 1 - u)
            )
            ep = eulerian_poly(h - 1 - u)
            inner = mpf(0)
            for n in range(1, n_max + 1):
                w = mp.exp(-2 * mp.pi * n * yy)
                inner += (
                    (n * yy) ** (-(h + u)) * w * ep(w) / (1 - w) ** (h - u)
                )
            rhs += c * inner
        lhs = +lhs
        rhs = +rhs
    return to_mp(lhs, prec), to_mp(rhs, prec)

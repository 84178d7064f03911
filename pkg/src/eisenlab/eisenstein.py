"""Evaluators for the completed non-holomorphic Eisenstein series E*_k(z, s).

Two independent evaluation routes are provided and kept separate on purpose,
since each serves as the oracle for the other:

* :func:`estar_general` sums the Whittaker-function Fourier expansion, valid
  for every complex spectral parameter s;
* :func:`estar_integer` sums the elementary closed-form expansion available
  at integer s, with exact rational coefficients.

On top of these sit the holomorphic and harmonic series, Maass/Brown
conversions, brute-force lattice oracles, and analytic operator checks
(raising, lowering, Laplacian) built from exact term-wise derivatives.

Truncation: Fourier tails decay like e^{-2 pi M y} with a polynomial factor;
the default cutoff is the smallest M whose first omitted term bound

    M^(sigma_max + 1/2) (1 + (4 pi M y)^{|k|/2}) e^{-2 pi M y} < tol / 10

holds, with sigma_max = max(Re s, 1 - Re s).  The reported err_estimate is
that bound at M + 1 amplified by the geometric tail factor; it is a heuristic
shape, validated against the dual-route oracles, not a certified bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Union

from mpmath import mp, mpc, mpf

from .arith import (
    ExactPoly,
    Number,
    as_integer,
    bernoulli,
    default_tol,
    divisors,
    gamma_complex,
    is_real,
    sigma_power,
    sign_pow,
    to_mp,
    working,
    zeta_complex,
    zeta_nonpositive,
)
from .coeffs import (
    a_coeff,
    a_coeff_bound,
    p_poly,
    require_even_weight,
    theta_k,
    theta_k_int,
)
from .errors import DomainError, PoleError, TruncationError
from .special import bessel_k_family, whittaker_family
from ._lattice import lattice_sum, lattice_tail_correction

__all__ = [
    "EvalConfig",
    "GammaMatrix",
    "SeriesValue",
    "UpperHalfPoint",
    "as_upper_half",
    "brown_e",
    "brown_e_constant_term",
    "brown_e_fourier",
    "choose_truncation",
    "e_holomorphic",
    "estar",
    "estar_general",
    "estar_integer",
    "harmonic_e",
    "harmonic_skeleton",
    "lattice_oracle_weight0",
    "lattice_tail_correction",
    "maass_g",
    "operator_check",
    "operator_compose_residual",
    "raising_whittaker_residual",
    "u_series",
    "v_series",
    "v_series_incomplete_gamma",
]


# ---------------------------------------------------------------------------
# Plumbing types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UpperHalfPoint:
    """A point x + i y with y > 0."""

    x: Number
    y: Number

    def as_mpc(self, prec: int = 128) -> mpc:
        with working(prec, 0):
            return mpc(to_mp(self.x, prec), to_mp(self.y, prec))


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation knobs: binary precision, series cutoff, tolerance.

    ``trunc_M`` of None picks the automatic cutoff; ``tol`` of None uses
    2^(16 - prec_bits).
    """

    prec_bits: int = 128
    trunc_M: Optional[int] = None
    tol: Optional[Number] = None

    def __post_init__(self):
        if self.prec_bits < 4:
            raise DomainError("prec_bits must be at least 4")
        if self.trunc_M is not None and self.trunc_M < 1:
            raise DomainError("trunc_M must be a positive integer")

    def resolved_tol(self):
        if self.tol is None:
            return default_tol(self.prec_bits)
        t = to_mp(self.tol, max(self.prec_bits, 53))
        if not t > 0:
            raise DomainError("tol must be positive")
        return t


@dataclass(frozen=True)
class SeriesValue:
    """A computed series value with its tail estimate and term count."""

    value: Number
    err_estimate: Number
    terms_used: int


@dataclass(frozen=True)
class GammaMatrix:
    """Integer matrix (a b; c d) with determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError("matrix must have determinant one")

    def apply(self, z):
        """Moebius action (a z + b) / (c z + d)."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def j(self, z):
        """Automorphy denominator j(gamma, z) = c z + d."""
        return self.c * z + self.d


def as_upper_half(z, prec: int = 128):
    """Coerce z (UpperHalfPoint, complex, or (x, y) pair) to mpf (x, y).

    Raises DomainError unless y > 0.
    """
    with working(prec, 0):
        if isinstance(z, UpperHalfPoint):
            x, y = to_mp(z.x, prec), to_mp(z.y, prec)
        elif isinstance(z, tuple) and len(z) == 2:
            x, y = to_mp(z[0], prec), to_mp(z[1], prec)
        else:
            w = to_mp(z, prec)
            if isinstance(w, mpc):
                x, y = w.real, w.imag
            else:
                x, y = w, mpf(0)
        if isinstance(x, mpc) or isinstance(y, mpc):
            raise DomainError("x and y must be real")
        if not y > 0:
            raise DomainError("point must lie in the upper half-plane (y > 0)")
    return x, y


# ---------------------------------------------------------------------------
# Truncation control
# ---------------------------------------------------------------------------

_TRUNC_CAP = 10**7


def _log2_term_bound(m: float, k: int, y: float, sigma_max: float) -> float:
    """log2 of the term bound m^(sigma_max+1/2) (1 + (4 pi m y)^(|k|/2)) e^(-2 pi m y)."""
    half = abs(k) // 2
    l2 = (sigma_max + 0.5) * math.log2(m) - 2 * math.pi * m * y / math.log(2)
    if half:
        t = half * math.log2(4 * math.pi * m * y)
        # log2(1 + 2^t), stable for either sign of t
        l2 += max(t, 0.0) + math.log2(1.0 + 2.0 ** (-abs(t)))
    else:
        l2 += 1.0  # the (1 + ...) factor is 2 at half = 0
    return l2


def choose_truncation(k: int, y, sigma_max, tol) -> int:
    """Smallest M >= 1 whose first omitted term bound is below tol/10."""
    yf = float(y)
    sf = float(sigma_max)
    target = float(mp.log(to_mp(tol, 53), 2)) - math.log2(10.0)
    lo, hi = 0, 1
    while _log2_term_bound(hi + 1, k, yf, sf) >= target:
        lo, hi = hi, hi * 2
        if hi > _TRUNC_CAP:
            raise TruncationError(
                f"series cutoff beyond {_TRUNC_CAP} needed for tol={tol} at y={yf}"
            )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _log2_term_bound(mid + 1, k, yf, sf) < target:
            hi = mid
        else:
            lo = mid
    return max(hi, 1)


def _tail_estimate(M: int, k: int, y, sigma_max):
    """Heuristic tail bound: first omitted term times the geometric factor."""
    l2 = _log2_term_bound(M + 1, k, float(y), float(sigma_max))
    geom = -math.log2(-math.expm1(-2 * math.pi * float(y)))
    return mpf(2) ** (l2 + geom)


def _qseries_truncation(power, y, tol) -> int:
    """Cutoff for sums with terms bounded by m^power e^(-2 pi m y)."""
    return choose_truncation(0, y, power - 0.5, tol)


def _qseries_tail(M: int, power, y):
    return _tail_estimate(M, 0, y, power - 0.5)


# ---------------------------------------------------------------------------
# The two Fourier-expansion evaluators
# ---------------------------------------------------------------------------


def _sigma_coeff_general(m: int, s, wp: int):
    """sigma_{2s-1}(m) / m^s for complex s at working precision."""
    e = 2 * s - 1
    acc = mpf(0)
    for d in divisors(m):
        acc += mp.power(d, e)
    return acc / mp.power(m, s)


def estar_general(k: int, z, s: Number, cfg: Optional[EvalConfig] = None) -> SeriesValue:
    """E*_k(z, s) by the Whittaker-function Fourier expansion (any complex s):

        theta_k(s) y^s + theta_k(1-s) y^{1-s}
        + 2^{-|k|} sum_{m != 0} sigma_{2s-1}(|m|)/|m|^s
              sum_r (m/|m|)^r P^{k/2}_r(4 pi m y) W_{s+r}(m z).

    For k = 0 the points s = 0, 1 are genuine poles (PoleError when s is
    within 2^(-prec/2) of them); every weight has constant-term poles at
    s = 1/2, which this evaluator does not special-case.
    """
    require_even_weight(k)
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    extra = 32
    half = abs(k) // 2
    with working(prec, extra):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        ss = to_mp(s, wp)
        if k == 0:
            guard = mpf(2) ** (-(prec // 2))
            if abs(ss) < guard or abs(ss - 1) < guard:
                raise PoleError("weight-0 series has poles at s = 0 and s = 1")
        re_s = ss.real if isinstance(ss, mpc) else ss
        sigma_max = max(re_s, 1 - re_s)
        M = cfg.trunc_M or choose_truncation(k, y, sigma_max, tol)
        real_in = is_real(s) and x == 0 and k >= 0
        const = theta_k(k, ss, wp) * y**ss + theta_k(k, 1 - ss, wp) * y ** (1 - ss)
        p_pos = [p_poly(k // 2, r).poly for r in range(-half, half + 1)]
        p_neg = [p_poly(-(k // 2), r).poly for r in range(-half, half + 1)]
        two_pi_y = 2 * mp.pi * y
        order0 = ss - mpf(1) / 2
        total = mpf(0)
        for m in range(1, M + 1):
            kv = bessel_k_family(order0, -half, half, m * two_pi_y, wp)
            c = _sigma_coeff_general(m, ss, wp)
            root = 2 * mp.sqrt(m * y)
            big_x = 4 * mp.pi * m * y
            acc_pos = mpf(0)
            acc_neg = mpf(0)
            for i, r in enumerate(range(-half, half + 1)):
                kr = kv[r]
                if not p_pos[i].is_zero():
                    acc_pos += p_pos[i](big_x) * kr
                if not p_neg[i].is_zero():
                    acc_neg += p_neg[i](big_x) * kr
            phase = mp.expjpi(2 * m * x)
            total += c * root * (acc_pos * phase + acc_neg * mp.conj(phase))
        value = const + mpf(2) ** (-abs(k)) * total
        if real_in and isinstance(value, mpc):
            value = value.real
        value = +value
    err = _tail_estimate(M, k, y, sigma_max)
    return SeriesValue(to_mp(value, prec), err, 2 * M)


def _exact_sigma_ratio(m: int, h: int) -> Fraction:
    """sigma_{2h-1}(m) / m^h as an exact rational."""
    return Fraction(sigma_power(m, 2 * h - 1)) * Fraction(m) ** (-h)


def estar_integer(k: int, z, h: int, cfg: Optional[EvalConfig] = None) -> SeriesValue:
    """E*_k(z, h) at integer spectral parameter by the elementary expansion

        theta_k(h) y^h + theta_k(1-h) y^{1-h}
        + sum_{m>=1} c_m e^{2 pi i m z}      sum_u A^{k}_h(u) (4 pi m y)^{-u+k/2}
        + sum_{m>=1} c_m e^{-2 pi i m z-bar} sum_u A^{-k}_h(u) (4 pi m y)^{-u-k/2}

    with exact rational c_m = sigma_{2h-1}(m)/m^h and exact integer A
    coefficients (each u-sum runs to its exact vanishing bound).  The pairs
    (h, k) = (0, 0) and (1, 0) are excluded.
    """
    require_even_weight(k)
    if not isinstance(h, int):
        raise DomainError("spectral parameter must be an integer here")
    if k == 0 and h in (0, 1):
        raise DomainError("(h, k) = (0, 0) and (1, 0) are excluded")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    extra = 32
    a_pos = [a_coeff(k, h, u) for u in range(a_coeff_bound(k, h) + 1)]
    a_neg = [a_coeff(-k, h, u) for u in range(a_coeff_bound(-k, h) + 1)]
    sigma_max = max(h, 1 - h)
    with working(prec, extra):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        M = cfg.trunc_M or choose_truncation(k, y, sigma_max, tol)
        const = theta_k_int(k, h).to_mp(wp) * y**h + theta_k_int(k, 1 - h).to_mp(
            wp
        ) * y ** (1 - h)
        real_in = x == 0 and k >= 0
        total = mpf(0)
        for m in range(1, M + 1):
            c = to_mp(_exact_sigma_ratio(m, h), wp)
            big_x = 4 * mp.pi * m * y
            t = 1 / big_x
            inner_pos = mpf(0)
            for a in reversed(a_pos):
                inner_pos = inner_pos * t + a
            inner_neg = mpf(0)
            for a in reversed(a_neg):
                inner_neg = inner_neg * t + a
            inner_pos *= big_x ** (k // 2)
            inner_neg *= big_x ** (-(k // 2))
            qp = mp.expjpi(2 * m * x) * mp.exp(-2 * mp.pi * m * y)
            total += c * (qp * inner_pos + mp.conj(qp) * inner_neg)
        value = const + total
        if real_in and isinstance(value, mpc):
            value = value.real
        value = +value
    err = _tail_estimate(M, k, y, sigma_max)
    return SeriesValue(to_mp(value, prec), err, 2 * M)


def estar(k: int, z, s: Number, cfg: Optional[EvalConfig] = None) -> SeriesValue:
    """E*_k(z, s), dispatching to the exact integer-parameter expansion when
    s is an integer and to the Whittaker-function expansion otherwise."""
    h = as_integer(s)
    if h is not None and not (k == 0 and h in (0, 1)):
        return estar_integer(k, z, h, cfg)
    return estar_general(k, z, s, cfg)


# ---------------------------------------------------------------------------
# Term-wise analytic derivatives and the Maass operator checks
# ---------------------------------------------------------------------------


def _estar_derivatives(k: int, z, s: Number, cfg: EvalConfig, order: int) -> dict:
    """E*_k(z, s) and its partial derivatives up to the given order.

    Returns {"value", "dx", "dy"} and, for order 2, also {"dxx", "dyy",
    "dxy"}.  Everything is differentiated term-wise: the exponentials are
    exact in x, the Bessel parts use the order-shift recurrence for d/dy,
    and the P polynomial factors are differentiated as polynomials.
    """
    require_even_weight(k)
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    extra = 32
    half = abs(k) // 2
    pad = order
    out: dict = {}
    with working(prec, extra):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        ss = to_mp(s, wp)
        if k == 0:
            guard = mpf(2) ** (-(prec // 2))
            if abs(ss) < guard or abs(ss - 1) < guard:
                raise PoleError("weight-0 series has poles at s = 0 and s = 1")
        re_s = ss.real if isinstance(ss, mpc) else ss
        sigma_max = max(re_s, 1 - re_s)
        M = cfg.trunc_M or choose_truncation(k, y, sigma_max, tol)

        th_a = theta_k(k, ss, wp)
        th_b = theta_k(k, 1 - ss, wp)
        val = th_a * y**ss + th_b * y ** (1 - ss)
        dx = mpf(0)
        dy = th_a * ss * y ** (ss - 1) + th_b * (1 - ss) * y ** (-ss)
        if order >= 2:
            dxx = mpf(0)
            dxy = mpf(0)
            dyy = th_a * ss * (ss - 1) * y ** (ss - 2) + th_b * (1 - ss) * (-ss) * y ** (
                -ss - 1
            )

        p_pos = [p_poly(k // 2, r).poly for r in range(-half, half + 1)]
        p_neg = [p_poly(-(k // 2), r).poly for r in range(-half, half + 1)]
        dp_pos = [p.derivative() for p in p_pos]
        dp_neg = [p.derivative() for p in p_neg]
        if order >= 2:
            ddp_pos = [p.derivative() for p in dp_pos]
            ddp_neg = [p.derivative() for p in dp_neg]

        two_pi_y = 2 * mp.pi * y
        order0 = ss - mpf(1) / 2
        pref = mpf(2) ** (-abs(k))
        f_tot = mpf(0)
        fx_tot = mpf(0)
        fy_tot = mpf(0)
        if order >= 2:
            fxx_tot = mpf(0)
            fxy_tot = mpf(0)
            fyy_tot = mpf(0)
        for m in range(1, M + 1):
            kv = bessel_k_family(order0, -half - pad, half + pad, m * two_pi_y, wp)
            root = 2 * mp.sqrt(m * y)
            b = {j: root * kv[j] for j in kv}
            # dB_j/dy = B_j/(2y) - pi m (B_{j+1} + B_{j-1})
            db = {
                j: b[j] / (2 * y) - mp.pi * m * (b[j + 1] + b[j - 1])
                for j in range(-half - pad + 1, half + pad)
            }
            if order >= 2:
                ddb = {
                    j: db[j] / (2 * y)
                    - b[j] / (2 * y**2)
                    - mp.pi * m * (db[j + 1] + db[j - 1])
                    for j in range(-half - pad + 2, half + pad - 1)
                }
            c = _sigma_coeff_general(m, ss, wp)
            big_x = 4 * mp.pi * m * y
            dxdy = 4 * mp.pi * m
            sides = []
            for polys, dpolys, ddpolys in (
                (p_pos, dp_pos, ddp_pos if order >= 2 else None),
                (p_neg, dp_neg, ddp_neg if order >= 2 else None),
            ):
                f = mpf(0)
                fy = mpf(0)
                fyy = mpf(0)
                for i, r in enumerate(range(-half, half + 1)):
                    pv = polys[i](big_x)
                    dpv = dpolys[i](big_x) * dxdy
                    f += pv * b[r]
                    fy += dpv * b[r] + pv * db[r]
                    if order >= 2:
                        ddpv = ddpolys[i](big_x) * dxdy**2
                        fyy += ddpv * b[r] + 2 * dpv * db[r] + pv * ddb[r]
                sides.append((f, fy, fyy))
            phase = mp.expjpi(2 * m * x)
            ph = (phase, mp.conj(phase))
            rot = 2 * mp.pi * m * mpc(0, 1)
            for side, (f, fy, fyy) in enumerate(sides):
                p = ph[side]
                w = rot if side == 0 else -rot
                f_tot += c * f * p
                fx_tot += c * f * w * p
                fy_tot += c * fy * p
                if order >= 2:
                    fxx_tot += c * f * w * w * p
                    fxy_tot += c * fy * w * p
                    fyy_tot += c * fyy * p
        val += pref * f_tot
        dx += pref * fx_tot
        dy += pref * fy_tot
        out["value"] = +val
        out["dx"] = +dx
        out["dy"] = +dy
        if order >= 2:
            out["dxx"] = +(dxx + pref * fxx_tot)
            out["dxy"] = +(dxy + pref * fxy_tot)
            out["dyy"] = +(dyy + pref * fyy_tot)
        out["_y"] = y
        out["_M"] = M
    return {key: (to_mp(v, prec) if key[0] != "_" else v) for key, v in out.items()}


def _fd_derivatives(k: int, z, s: Number, cfg: EvalConfig, order: int) -> dict:
    """Central finite-difference derivatives of E*_k as an independent
    cross-check (step 2^(-prec/3), evaluated with prec/2 extra guard bits)."""
    prec = cfg.prec_bits
    inner = EvalConfig(prec_bits=prec + prec // 2, trunc_M=cfg.trunc_M, tol=cfg.tol)
    with working(prec, prec // 2 + 16):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        h = mpf(2) ** (-(prec // 3))

        def ev(xx, yy):
            return to_mp(estar_general(k, (xx, yy), s, inner).value, wp)

        f0 = ev(x, y)
        fxp, fxm = ev(x + h, y), ev(x - h, y)
        fyp, fym = ev(x, y + h), ev(x, y - h)
        out = {
            "value": f0,
            "dx": (fxp - fxm) / (2 * h),
            "dy": (fyp - fym) / (2 * h),
            "_y": y,
        }
        if order >= 2:
            fpp, fpm = ev(x + h, y + h), ev(x + h, y - h)
            fmp, fmm = ev(x - h, y + h), ev(x - h, y - h)
            out["dxx"] = (fxp - 2 * f0 + fxm) / h**2
            out["dyy"] = (fyp - 2 * f0 + fym) / h**2
            out["dxy"] = (fpp - fpm - fmp + fmm) / (4 * h**2)
    return out


def _raise_apply(k: int, d: dict, y):
    """R_k f = i y f_x + y f_y + (k/2) f."""
    return mpc(0, 1) * y * d["dx"] + y * d["dy"] + mpf(k) / 2 * d["value"]


def _lower_apply(k: int, d: dict, y):
    """L_k f = -i y f_x + y f_y - (k/2) f."""
    return -mpc(0, 1) * y * d["dx"] + y * d["dy"] - mpf(k) / 2 * d["value"]


def _laplacian_apply(k: int, d: dict, y):
    """Delta_k f = -y^2 (f_xx + f_yy) + i k y f_x."""
    return -(y**2) * (d["dxx"] + d["dyy"]) + mpc(0, 1) * k * y * d["dx"]


def operator_check(
    kind: str, k: int, z, s: Number, cfg: Optional[EvalConfig] = None, mode: str = "analytic"
):
    """Residual of the weight-shifting operator identities on Eisenstein data.

    * ``raise``:     |R_k E_k(z,s) - (s + k/2) E_{k+2}(z,s)|
    * ``lower``:     |L_k E_k(z,s) - (s - k/2) E_{k-2}(z,s)|
    * ``laplacian``: |Delta_k E*_k(z,s) - s(1-s) E*_k(z,s)|

    where E_k = E*_k / theta_k(s) is the non-completed series.  Derivatives
    are analytic term-wise by default; ``mode="fd"`` uses central finite
    differences instead for an independent cross-check.
    """
    require_even_weight(k)
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    if kind not in ("raise", "lower", "laplacian"):
        raise DomainError(f"unknown operator kind {kind!r}")
    order = 2 if kind == "laplacian" else 1
    deriv = _fd_derivatives if mode == "fd" else _estar_derivatives
    if mode not in ("fd", "analytic"):
        raise DomainError(f"unknown derivative mode {mode!r}")
    d = deriv(k, z, s, cfg, order)
    extra = 32
    with working(prec, extra):
        wp = mp.prec
        ss = to_mp(s, wp)
        y = d["_y"]
        if kind == "laplacian":
            lhs = _laplacian_apply(k, d, y)
            rhs = ss * (1 - ss) * d["value"]
            return to_mp(abs(lhs - rhs), prec)
        th_k = theta_k(k, ss, wp)
        if kind == "raise":
            lhs = _raise_apply(k, d, y) / th_k
            other = estar_general(k + 2, z, s, cfg).value
            rhs = (ss + mpf(k) / 2) * to_mp(other, wp) / theta_k(k + 2, ss, wp)
        else:
            lhs = _lower_apply(k, d, y) / th_k
            other = estar_general(k - 2, z, s, cfg).value
            rhs = (ss - mpf(k) / 2) * to_mp(other, wp) / theta_k(k - 2, ss, wp)
        return to_mp(abs(lhs - rhs), prec)


def operator_compose_residual(k: int, z, s: Number, cfg: Optional[EvalConfig] = None):
    """Residual of the composition identity

        Delta_k = -L_{k+2} R_k - (k/2)(1 + k/2)

    applied to E_k(z,s): both sides are assembled from term-wise derivatives
    of E*_k (the theta normalization cancels in the comparison)."""
    require_even_weight(k)
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    d = _estar_derivatives(k, z, s, cfg, 2)
    with working(prec, 32):
        y = d["_y"]
        i = mpc(0, 1)
        # g = R_k f and its first derivatives, from second derivatives of f
        g = _raise_apply(k, d, y)
        gx = i * y * d["dxx"] + y * d["dxy"] + mpf(k) / 2 * d["dx"]
        gy = (
            i * d["dx"]
            + i * y * d["dxy"]
            + d["dy"]
            + y * d["dyy"]
            + mpf(k) / 2 * d["dy"]
        )
        lr = -i * y * gx + y * gy - mpf(k + 2) / 2 * g
        lhs = -lr - mpf(k) / 2 * (1 + mpf(k) / 2) * d["value"]
        rhs = _laplacian_apply(k, d, y)
        return to_mp(abs(lhs - rhs), prec)


def raising_whittaker_residual(k: int, m: int, s: Number, z, prec: int = 53):
    """Residual of the raising-operator action on a single Whittaker term:

        R_{k-2} ... R_2 R_0 W_s(mz)
            = 2^{-k} sum_r (m/|m|)^r P^{k/2}_r(4 pi m y) W_{s+r}(m z)

    for even k >= 2 and m != 0.  The left side is applied symbolically: the
    operator state is kept as polynomial-in-y coefficients on the basis
    W_{s+r}(mz), using the exact x- and y-derivative rules, and only
    evaluated numerically at the end.
    """
    require_even_weight(k)
    if k < 2:
        raise DomainError("need k >= 2 to apply at least one raising step")
    if m == 0:
        raise DomainError("Fourier index m must be nonzero")
    half = k // 2
    extra = 16
    with working(prec, extra):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        am = abs(m)
        pi_m = mp.pi * am
        # state: r -> coefficient polynomial in y (list of mpc, ascending)
        state = {0: [mpf(1)]}

        def padd(p, q):
            n = max(len(p), len(q))
            return [
                (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                for i in range(n)
            ]

        for step in range(half):
            weight = 2 * step
            new: dict = {}
            for r, poly in state.items():
                # i y d/dx contributes -2 pi m y c_r(y) on the same r
                shift = [mpf(0)] + [-2 * mp.pi * m * c for c in poly]
                # y d/dy on c_r(y) W: (y c_r' + c_r / 2) on r,
                #                     -pi |m| y c_r on r +- 1
                ydc = [mpf(0)] + [(i + 1) * c for i, c in enumerate(poly[1:])]
                same = padd(shift, padd(ydc, [c / 2 for c in poly]))
                same = padd(same, [mpf(weight) / 2 * c for c in poly])
                off = [mpf(0)] + [-pi_m * c for c in poly]
                new[r] = padd(new.get(r, []), same)
                new[r + 1] = padd(new.get(r + 1, []), off)
                new[r - 1] = padd(new.get(r - 1, []), off)
            state = new
        wv = whittaker_family(to_mp(s, wp), mpc(m * x, m * y), -half, half, wp)
        lhs = mpf(0)
        for r, poly in state.items():
            cval = mpf(0)
            for c in reversed(poly):
                cval = cval * y + c
            lhs += cval * wv[r]
        rhs = mpf(0)
        sgn = 1 if m > 0 else -1
        big_x = 4 * mp.pi * m * y
        for r in range(-half, half + 1):
            pp = p_poly(half, r).poly
            if pp.is_zero():
                continue
            rhs += sgn**r * pp(big_x) * wv[r]
        rhs *= mpf(2) ** (-k)
        return to_mp(abs(lhs - rhs), prec)


# ---------------------------------------------------------------------------
# Holomorphic, harmonic, and Eichler-type series
# ---------------------------------------------------------------------------


def _zeta_one_minus_k(k: int) -> Fraction:
    """zeta(1 - k) for even k >= 2, exact."""
    return zeta_nonpositive(1 - k)


def e_holomorphic(k: int, z, cfg: Optional[EvalConfig] = None) -> SeriesValue:
    """Holomorphic Eisenstein q-series E_k(z) = 1 + (2/zeta(1-k)) sum sigma_{k-1}(m) q^m.

    Modular for even k >= 4; the same q-series at k = 2 is the
    quasi-modular series.  Requires even k >= 2.
    """
    require_even_weight(k)
    if k < 2:
        raise DomainError("holomorphic series needs even k >= 2")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    coeff = 2 / _zeta_one_minus_k(k)
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        M = cfg.trunc_M or _qseries_truncation(k, y, tol)
        total = mpf(0)
        for m in range(1, M + 1):
            q_m = mp.expjpi(2 * m * x) * mp.exp(-2 * mp.pi * m * y)
            total += to_mp(coeff * sigma_power(m, k - 1), wp) * q_m
        value = +(1 + total)
    return SeriesValue(to_mp(value, prec), _qseries_tail(M, k, y), M)


def u_series(k: int, z, cfg: Optional[EvalConfig] = None) -> SeriesValue:
    """U_k(z) = sum_{m>=1} sigma_{k-1}(m) e^{2 pi i m z} (any even k)."""
    require_even_weight(k)
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    power = max(k, 1)
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        M = cfg.trunc_M or _qseries_truncation(power, y, tol)
        total = mpf(0)
        for m in range(1, M + 1):
            q_m = mp.expjpi(2 * m * x) * mp.exp(-2 * mp.pi * m * y)
            total += to_mp(sigma_power(m, k - 1), wp) * q_m
        value = +total
    return SeriesValue(to_mp(value, prec), _qseries_tail(M, power, y), M)


def v_series(k: int, z, cfg: Optional[EvalConfig] = None) -> SeriesValue:
    """V_k(z) = sum_{m>=1} sigma_{k-1}(m) e^{-2 pi i m z-bar} sum_{u=0}^{-k} (4 pi m y)^u / u!.

    Identically zero for k > 0 (returned exactly); for k <= 0 the inner sum
    has 1 - k terms.
    """
    require_even_weight(k)
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    if k > 0:
        return SeriesValue(to_mp(0, prec), to_mp(0, prec), 0)
    tol = cfg.resolved_tol()
    power = max(1 - k, 1) + abs(k)
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        M = cfg.trunc_M or _qseries_truncation(power, y, tol)
        total = mpf(0)
        for m in range(1, M + 1):
            big_x = 4 * mp.pi * m * y
            inner = mpf(0)
            term = mpf(1)
            for u in range(-k + 1):
                inner += term
                term = term * big_x / (u + 1)
            qbar = mp.conj(mp.expjpi(2 * m * x)) * mp.exp(-2 * mp.pi * m * y)
            total += to_mp(sigma_power(m, k - 1), wp) * qbar * inner
        value = +total
    return SeriesValue(to_mp(value, prec), _qseries_tail(M, power, y), M)


def v_series_incomplete_gamma(k: int, z, cfg: Optional[EvalConfig] = None) -> SeriesValue:
    """V_k(z) in its incomplete-gamma form (k <= 0):

        sum_{m>=1} sigma_{k-1}(m)/(-k)! * e^{-2 pi i m z} Gamma(1-k, 4 pi m y).

    Agrees with :func:`v_series`; kept as an independent route.
    """
    require_even_weight(k)
    if k > 0:
        raise DomainError("incomplete-gamma form applies to k <= 0")
    from .special import incomplete_gamma

    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    power = max(1 - k, 1) + abs(k)
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        M = cfg.trunc_M or _qseries_truncation(power, y, tol)
        fct = factorial(-k)
        total = mpf(0)
        for m in range(1, M + 1):
            g = incomplete_gamma(1 - k, 4 * mp.pi * m * y, wp)
            qm = mp.conj(mp.expjpi(2 * m * x)) * mp.exp(2 * mp.pi * m * y)
            total += to_mp(Fraction(sigma_power(m, k - 1), fct), wp) * qm * g
        value = +total
    return SeriesValue(to_mp(value, prec), _qseries_tail(M, power, y), M)


@dataclass(frozen=True)
class HarmonicSkeleton:
    """Exact coefficient data of the harmonic series for even k >= 2:

        1 + y_coeff * pi^y_pi_pow * y^(1-k) + q_coeff * sum sigma_{k-1}(m) q^m

    (the non-holomorphic V part vanishes for positive weight)."""

    k: int
    y_coeff: Fraction
    y_pi_pow: int
    q_coeff: Fraction


def harmonic_skeleton(k: int) -> HarmonicSkeleton:
    """Exact expansion skeleton of the harmonic series, for even k >= 2."""
    require_even_weight(k)
    if k < 2:
        raise DomainError("exact skeleton available for even k >= 2 only")
    z1k = _zeta_one_minus_k(k)
    q_coeff = 2 / z1k
    if k == 2:
        z2k = Fraction(-1, 2)  # zeta(0)
    else:
        z2k = Fraction(0)  # zeta at negative even integers
    y_coeff = 2 * z2k * sign_pow(k // 2) / (z1k * 2**k)
    return HarmonicSkeleton(k=k, y_coeff=y_coeff, y_pi_pow=-1, q_coeff=q_coeff)


def harmonic_e(k: int, z, cfg: Optional[EvalConfig] = None) -> SeriesValue:
    """The harmonic series of weight k:

        1 + eps(k)/zeta(1-k) [ zeta(2-k)/(2 pi i)^k (y/pi)^{1-k} + U_k(z) + V_k(z) ]

    with eps(k) = 2 for k >= 0 and 1 for k < 0, and the coefficient taken to
    be 0 at k = 0 (so the weight-0 value is identically 1)."""
    require_even_weight(k)
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    if k == 0:
        return SeriesValue(to_mp(1, prec), to_mp(0, prec), 0)
    eps = 2 if k >= 0 else 1
    u_val = u_series(k, z, cfg)
    v_val = v_series(k, z, cfg)
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        if k >= 2:
            z1k = to_mp(_zeta_one_minus_k(k), wp)
        else:
            z1k = zeta_complex(1 - k, wp)
        z2k = zeta_complex(2 - k, wp) if k != 2 else mpf(-1) / 2
        two_pi_i_k = (2 * mp.pi) ** k * sign_pow(k // 2)
        y_term = z2k / two_pi_i_k * (y / mp.pi) ** (1 - k)
        value = 1 + eps / z1k * (
            y_term + to_mp(u_val.value, wp) + to_mp(v_val.value, wp)
        )
        value = +value
        err = +(abs(eps / z1k) * (u_val.err_estimate + v_val.err_estimate))
    return SeriesValue(
        to_mp(value, prec), to_mp(err, prec), u_val.terms_used + v_val.terms_used
    )


# ---------------------------------------------------------------------------
# Lattice oracle and the Maass/Brown conversions
# ---------------------------------------------------------------------------


def lattice_oracle_weight0(y, s: Number, cutoff: int):
    """Direct double sum over the truncated lattice:

        sum_{(m,n) != (0,0), |m|,|n| <= cutoff} ((m y)^2 + n^2)^(-s)

    for Re(s) > 1.  A brute-force float64 oracle, independent of every
    Fourier expansion in the package; its truncation tail decays only
    polynomially (see :func:`lattice_tail_correction`).
    """
    s_c = complex(to_mp(s, 53))
    if s_c.real <= 1:
        raise DomainError("lattice sum needs Re(s) > 1")
    yf = float(to_mp(y, 53))
    if yf <= 0:
        raise DomainError("lattice parameter y must be positive")
    if cutoff < 1:
        raise DomainError("cutoff must be at least 1")
    return lattice_sum(yf, s_c, cutoff)


def maass_g(z, alpha: Number, beta: Number, cfg: Optional[EvalConfig] = None):
    """The double-parameter lattice series summed over (mz+n) powers,

        G(z, z-bar; alpha, beta) = sum (m z + n)^(-alpha) (m z-bar + n)^(-beta)
                                 = sum (m z + n)^(-(alpha-beta)) |m z + n|^(-2 beta),

    where the second form fixes the branch for non-integer parameters (it is
    single-valued because alpha - beta is an even integer); computed via the
    conversion

        G = 2/Gamma((alpha+beta)/2 + |alpha-beta|/2) (pi/y)^{(alpha+beta)/2}
              E*_{alpha-beta}(z, (alpha+beta)/2).

    Requires alpha - beta an even integer and Re(alpha + beta) > 2.
    """
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    with working(prec, 32):
        wp = mp.prec
        aa = to_mp(alpha, wp)
        bb = to_mp(beta, wp)
        k = as_integer(aa - bb)
        if k is None or k % 2:
            raise DomainError("alpha - beta must be an even integer")
        s = (aa + bb) / 2
        re_2s = s.real if isinstance(s, mpc) else s
        if not re_2s > 1:
            raise DomainError("need Re(alpha + beta) > 2 for convergence")
        x, y = as_upper_half(z, wp)
        e_val = to_mp(estar(k, z, s, cfg).value, wp)
        g_arg = s + abs(k) // 2
        value = +(2 / gamma_complex(g_arg, wp) * (mp.pi / y) ** s * e_val)
    return to_mp(value, prec)


def brown_e(a: int, b: int, z, cfg: Optional[EvalConfig] = None):
    """The normalized double-index series of weights (a+1, b+1),

        (-4 pi y)^{-w/2} Gamma(w+1) / (2 Gamma(w/2 + 1 + |a-b|/2))
            * E*_{a-b}(z, w/2 + 1),      w = a + b,

    for nonnegative integers a, b with w positive and even."""
    if not (isinstance(a, int) and isinstance(b, int) and a >= 0 and b >= 0):
        raise DomainError("indices must be nonnegative integers")
    w = a + b
    if w <= 0 or w % 2:
        raise DomainError("a + b must be positive and even")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    k = a - b
    h = w // 2 + 1
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        e_val = to_mp(estar_integer(k, z, h, cfg).value, wp)
        front = (
            sign_pow(w // 2)
            * (4 * mp.pi * y) ** (-(w // 2))
            * Fraction(factorial(w), 2 * factorial(w // 2 + abs(k) // 2))
        )
        value = +(front * e_val)
    return to_mp(value, prec)


def brown_e_constant_term(a: int, b: int, y, prec: int = 128):
    """Constant Fourier term of :func:`brown_e`:

        pi y B_{w+2} / ((w+1)(w+2)) + (-1)^a (w!/2) C(w, a) (4 pi y)^{-w} zeta(w+1).
    """
    w = a + b
    if w <= 0 or w % 2 or a < 0 or b < 0:
        raise DomainError("a + b must be positive and even")
    with working(prec, 32):
        wp = mp.prec
        yy = to_mp(y, wp)
        first = mp.pi * yy * to_mp(bernoulli(w + 2) / ((w + 1) * (w + 2)), wp)
        second = (
            sign_pow(a)
            * to_mp(Fraction(factorial(w), 2) * math.comb(w, a), wp)
            * (4 * mp.pi * yy) ** (-w)
            * zeta_complex(w + 1, wp)
        )
        value = +(first + second)
    return to_mp(value, prec)


def brown_e_fourier(a: int, b: int, z, cfg: Optional[EvalConfig] = None):
    """Independent Fourier-expansion route for :func:`brown_e`:

        E^0_{a,b}(y) + R_{a,b}(z) + conj(R_{b,a}(z)),

        R_{a,b}(z) = (-1)^a/2 sum_{u=0}^a w!/(a-u)! C(b+u, b) (4 pi y)^{-u-b}
                       sum_{m>=1} sigma_{w+1}(m)/m^{b+1+u} e^{2 pi i m z}.
    """
    w = a + b
    if w <= 0 or w % 2 or a < 0 or b < 0:
        raise DomainError("a + b must be positive and even")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    with working(prec, 32):
        wp = mp.prec
        x, y = as_upper_half(z, wp)
        M = cfg.trunc_M or _qseries_truncation(w + 2, y, tol)

        def r_part(aa: int, bb: int):
            qpowers = [
                mp.expjpi(2 * m * x) * mp.exp(-2 * mp.pi * m * y)
                for m in range(1, M + 1)
            ]
            acc = mpf(0)
            for u in range(aa + 1):
                coeff = Fraction(factorial(w), factorial(aa - u)) * math.comb(bb + u, bb)
                inner = mpf(0)
                for m in range(1, M + 1):
                    inner += (
                        to_mp(Fraction(sigma_power(m, w + 1), m ** (bb + 1 + u)), wp)
                        * qpowers[m - 1]
                    )
                acc += to_mp(coeff, wp) * (4 * mp.pi * y) ** (-u - bb) * inner
            return sign_pow(aa) / mpf(2) * acc

        value = +(
            to_mp(brown_e_constant_term(a, b, y, wp), wp)
            + r_part(a, b)
            + mp.conj(r_part(b, a))
        )
    return to_mp(value, prec)

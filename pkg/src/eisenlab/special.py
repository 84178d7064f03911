"""Analytic special functions: modified Bessel K, Whittaker forms, and the
upper incomplete gamma function.

All routines take a binary precision ``prec`` and evaluate internally with
guard bits.  Bessel orders may be arbitrary complex numbers; arguments are
positive reals (the package only ever needs the Bessel kernel on the
positive real axis).

The evaluation strategy for K_w(y):

* half-integer real order: exact finite closed form,
* otherwise: the cosh-kernel integral

      K_w(y) = int_0^inf exp(-y cosh u) cosh(w u) du

  by trapezoidal sums with step halving (exponentially convergent), plus
  the three-term recurrence K_{w+1} = K_{w-1} + (2w/y) K_w to fill ranges
  of orders from quadrature anchors, always recursing in the direction of
  increasing |Re(order)| (the stable direction).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Union

from mpmath import mp, mpc, mpf

from .arith import (
    Number,
    as_integer,
    binom,
    gamma_complex,
    is_real,
    rising,
    sign_pow,
    to_mp,
    working,
)
from .coeffs import h_star, laguerre_poly, p_poly, require_even_weight
from .errors import DomainError

__all__ = [
    "bessel_k",
    "bessel_k_family",
    "bessel_k_half",
    "incomplete_gamma",
    "laguerre",
    "whittaker_closed_laguerre",
    "whittaker_rhs",
    "whittaker_ws",
    "whittaker_w0",
    "whittaker_family",
]


# ---------------------------------------------------------------------------
# Modified Bessel function of the second kind
# ---------------------------------------------------------------------------


def bessel_k_half(n: int, y, prec: int = 128):
    """K_{n - 1/2}(y) by the exact finite sum, for integer n and real y > 0.

    K_{n-1/2}(y) = sqrt(pi/(2y)) e^{-y} sum_{j=0}^{n*} C(n*+j, 2j) (2j)!/(j! (2y)^j)

    with n* = h_star(n); the symmetry K_w = K_{-w} makes the index n and
    1 - n equivalent.
    """
    ns = h_star(n)
    extra = 16
    with working(prec, extra):
        yy = to_mp(y, prec + extra)
        if yy <= 0:
            raise DomainError("Bessel argument must be positive")
        inv2y = 1 / (2 * yy)
        acc = mpf(0)
        p = mpf(1)
        for j in range(ns + 1):
            acc += comb(ns + j, 2 * j) * Fraction(factorial(2 * j), factorial(j)) * p
            p *= inv2y
        value = mp.sqrt(mp.pi * inv2y) * mp.exp(-yy) * acc
        result = +value
    return to_mp(result, prec)


def _quad_cached(w, y, wp: int):
    """Cached quadrature using the K_w = K_{-w} symmetry to canonicalize."""
    re_w = w.real if isinstance(w, mpc) else w
    im_w = w.imag if isinstance(w, mpc) else mpf(0)
    if re_w < 0 or (re_w == 0 and im_w < 0):
        w = -w
    key = (w, y, wp)
    hit = _quad_cache.get(key)
    if hit is not None:
        return hit
    value = _bessel_quad(w, y, wp)
    if len(_quad_cache) > 8192:
        _quad_cache.clear()
    _quad_cache[key] = value
    return value


_quad_cache: dict = {}


def _bessel_quad(w, y, wp: int):
    """Trapezoidal cosh-kernel integral for K_w(y) at working precision wp."""
    aw = abs(mpf(w.real if isinstance(w, mpc) else w))
    bw = abs(mpf(w.imag)) if isinstance(w, mpc) else mpf(0)
    need = wp * mp.log(2) + 20
    u_max = mpf(3)
    for _ in range(40):
        ratio = (need + aw * u_max + 5) / y
        if ratio <= 1:
            # argument so large the integrand is below the precision floor
            # already at u = 0; a short window still captures all the mass
            u_max = mpf("0.5")
            break
        new = mp.acosh(ratio)
        if new <= u_max:
            u_max = max(new, mpf("0.5"))
            break
        u_max = new

    def f(u):
        return mp.exp(-y * mp.cosh(u)) * mp.cosh(w * u)

    h = min(mpf("0.5"), 3 / (1 + bw))
    n = int(mp.ceil(u_max / h))
    total = f(mpf(0)) / 2
    for j in range(1, n + 1):
        total += f(j * h)
    value = total * h
    # Converge to just above the working-precision noise floor; demanding
    # more would chase rounding noise with ever-doubling point counts.
    target = mpf(2) ** (-wp + 8)
    prev_diff = mp.inf
    for it in range(24):
        h2 = h / 2
        n2 = int(mp.ceil(u_max / h2))
        mids = mpf(0)
        for j in range(1, n2 + 1, 2):
            mids += f(j * h2)
        new_value = value / 2 + mids * h2
        diff = abs(new_value - value)
        value = new_value
        h = h2
        scale = abs(new_value)
        if scale == 0:
            scale = mpf(1)
        if diff <= target * scale:
            return value
        if it >= 1 and 2 * diff >= prev_diff:
            # stagnation: successive refinements differ only by rounding noise
            return value
        prev_diff = diff
    return value


def _is_half_integer_order(w) -> bool:
    if isinstance(w, (complex, mpc)) and w.imag != 0:
        return False
    return as_integer((w.real if isinstance(w, (complex, mpc)) else w) + mpf("0.5")) is not None


def bessel_k(w: Number, y, prec: int = 128):
    """Modified Bessel function K_w(y) for complex order w and real y > 0."""
    extra = 24
    if _is_half_integer_order(w):
        n = as_integer((w.real if isinstance(w, (complex, mpc)) else w) + mpf("0.5"))
        return bessel_k_half(n, y, prec)
    real_in = is_real(w)
    with working(prec, extra):
        yy = to_mp(y, prec + extra)
        if yy <= 0:
            raise DomainError("Bessel argument must be positive")
        ww = to_mp(w, prec + extra)
        value = _quad_cached(ww, yy, mp.prec)
        if real_in and isinstance(value, mpc):
            value = value.real
        result = +value
    return to_mp(result, prec)


def bessel_k_family(w0: Number, j_lo: int, j_hi: int, y, prec: int = 128) -> dict:
    """All K_{w0 + j}(y) for integer j in [j_lo, j_hi], as a dict j -> value.

    Uses at most three quadrature anchors and the three-term recurrence,
    recursing away from order zero so the recurrence follows the dominant
    solution.  Half-integer real orders bypass quadrature entirely.
    """
    if j_lo > j_hi:
        return {}
    extra = 24
    if _is_half_integer_order(w0):
        n0 = as_integer((w0.real if isinstance(w0, (complex, mpc)) else w0) + mpf("0.5"))
        return {j: bessel_k_half(n0 + j, y, prec) for j in range(j_lo, j_hi + 1)}
    real_in = is_real(w0)
    out = {}
    with working(prec, extra):
        yy = to_mp(y, prec + extra)
        if yy <= 0:
            raise DomainError("Bessel argument must be positive")
        ww = to_mp(w0, prec + extra)
        wp = mp.prec
        vals: dict[int, mpc] = {}
        if j_hi >= 0 and j_lo <= 1:
            anchor0, anchor1 = None, None
            if j_hi >= 0:
                anchor0 = _quad_cached(ww, yy, wp)
                vals[0] = anchor0
            if j_hi >= 1:
                anchor1 = _quad_cached(ww + 1, yy, wp)
                vals[1] = anchor1
            km1, k0 = anchor0, anchor1
            for j in range(2, j_hi + 1):
                k1 = km1 + (2 * (ww + j - 1) / yy) * k0
                vals[j] = k1
                km1, k0 = k0, k1
        elif j_lo >= 2:
            # isolated high range: anchor at its base
            a0 = _quad_cached(ww + j_lo, yy, wp)
            a1 = _quad_cached(ww + j_lo + 1, yy, wp)
            vals[j_lo], vals[j_lo + 1] = a0, a1
            km1, k0 = a0, a1
            for j in range(j_lo + 2, j_hi + 1):
                k1 = km1 + (2 * (ww + j - 1) / yy) * k0
                vals[j] = k1
                km1, k0 = k0, k1
        if j_lo <= -1:
            # reflected family: K_{w0+j} = K_{(-w0) + (-j)}, recurse upward in -j
            v0 = -ww
            b0 = vals.get(0)
            if b0 is None:
                b0 = _quad_cached(ww, yy, wp)
            b1 = _quad_cached(v0 + 1, yy, wp)
            vals[-1] = b1
            km1, k0 = b0, b1
            for i in range(2, -j_lo + 1):
                k1 = km1 + (2 * (v0 + i - 1) / yy) * k0
                vals[-i] = k1
                km1, k0 = k0, k1
        for j in range(j_lo, j_hi + 1):
            v = vals[j]
            if real_in and isinstance(v, mpc):
                v = v.real
            out[j] = to_mp(+v, prec)
    return out


# ---------------------------------------------------------------------------
# Whittaker functions
# ---------------------------------------------------------------------------


def whittaker_ws(s: Number, z, prec: int = 128):
    """Archimedean Whittaker factor W_s(z) = 2 |y|^{1/2} K_{s-1/2}(2 pi |y|) e^{2 pi i x}.

    z = x + i y with y != 0.  Depends on x and |y| only, so conjugating z
    leaves the value unchanged.
    """
    extra = 24
    with working(prec, extra):
        zz = mpc(to_mp(z, prec + extra))
        x, yabs = zz.real, abs(zz.imag)
        if yabs == 0:
            raise DomainError("Whittaker factor needs a nonreal argument")
        kval = bessel_k(to_mp(s, prec + extra) - mpf("0.5"), 2 * mp.pi * yabs, prec + extra)
        value = 2 * mp.sqrt(yabs) * kval * mp.expjpi(2 * x)
        result = +value
    return to_mp(result, prec)


def whittaker_family(s: Number, z, r_lo: int, r_hi: int, prec: int = 128) -> dict:
    """All W_{s+r}(z) for integer r in [r_lo, r_hi] as a dict r -> value."""
    extra = 24
    with working(prec, extra):
        zz = mpc(to_mp(z, prec + extra))
        x, yabs = zz.real, abs(zz.imag)
        if yabs == 0:
            raise DomainError("Whittaker factor needs a nonreal argument")
        kvals = bessel_k_family(
            to_mp(s, prec + extra) - mpf("0.5"), r_lo, r_hi, 2 * mp.pi * yabs, prec + extra
        )
        phase = 2 * mp.sqrt(yabs) * mp.expjpi(2 * x)
        out = {r: to_mp(+(phase * kv), prec) for r, kv in kvals.items()}
    return out


def whittaker_w0(mu: Number, t, prec: int = 128):
    """Classical Whittaker value W_{0, mu}(t) = sqrt(t/pi) K_mu(t/2), t > 0."""
    extra = 16
    with working(prec, extra):
        tt = to_mp(t, prec + extra)
        if tt <= 0:
            raise DomainError("argument must be positive")
        value = mp.sqrt(tt / mp.pi) * bessel_k(mu, tt / 2, prec + extra)
        result = +value
    return to_mp(result, prec)


def whittaker_closed_laguerre(k: int, s: int, y, prec: int = 128):
    """Closed form for the classical W_{k/2, s-1/2}(y) at integer s in [1, k/2].

    With alpha = 2s - 1 and n = k/2 - s >= 0:

        W_{(alpha+1)/2 + n, alpha/2}(y) = (-1)^n n! e^{-y/2} y^{(alpha+1)/2} L^(alpha)_n(y).
    """
    require_even_weight(k)
    if not (isinstance(s, int) and 1 <= s <= k // 2):
        raise DomainError("closed form needs integer s with 1 <= s <= k/2")
    alpha = 2 * s - 1
    n = k // 2 - s
    lag = laguerre_poly(alpha, n)
    extra = 16
    with working(prec, extra):
        yy = to_mp(y, prec + extra)
        value = (
            sign_pow(n)
            * factorial(n)
            * mp.exp(-yy / 2)
            * yy ** (mpf(alpha + 1) / 2)
            * lag(yy)
        )
        result = +value
    return to_mp(result, prec)


def laguerre(m: int, alpha: Number, x: Number, prec: int = 128):
    """Generalized Laguerre polynomial L^(alpha)_m(x) for complex alpha, x.

    L^(alpha)_m(x) = sum_{j=0}^m C(m+alpha, m-j) (-x)^j / j!

    evaluated numerically; the exact-coefficient variant for rational alpha
    is :func:`eisenlab.coeffs.laguerre_poly`.
    """
    if m < 0:
        raise DomainError("Laguerre degree must be nonnegative")
    extra = 16
    real_in = is_real(alpha) and is_real(x)
    with working(prec, extra):
        aa = to_mp(alpha, prec + extra)
        xx = to_mp(x, prec + extra)
        acc = mpf(0)
        for j in range(m + 1):
            acc += binom(m + aa, m - j) * (-xx) ** j / factorial(j)
        if real_in and isinstance(acc, mpc):
            acc = acc.real
        result = +acc
    return to_mp(result, prec)


def whittaker_rhs(k: int, s: Number, y, prec: int = 128):
    """The finite P-weighted combination representing W_{k/2, s-1/2}(y):

        (-1)^(k/2) 2^(-|k|) / rf(s - |k|/2, (|k|-k)/2)
            * sum_r P^{k/2}_r(y) W_{0, s+r-1/2}(y)

    where rf is the rising factorial (the quotient of Gamma values collapses
    to it exactly, so no Gamma evaluation is involved).
    """
    require_even_weight(k)
    half = abs(k) // 2
    extra = 24
    with working(prec, extra):
        yy = to_mp(y, prec + extra)
        ss = to_mp(s, prec + extra)
        quot = rising(ss - half, (abs(k) - k) // 2)
        acc = mpf(0)
        kvals = bessel_k_family(ss - mpf("0.5"), -half, half, yy / 2, prec + extra)
        root = mp.sqrt(yy / mp.pi)
        for r in range(-half, half + 1):
            pv = p_poly(k // 2, r)(yy)
            if pv == 0:
                continue
            acc += pv * root * kvals[r]
        value = sign_pow(k // 2) * mpf(2) ** (-abs(k)) / quot * acc
        result = +value
    return to_mp(result, prec)


# ---------------------------------------------------------------------------
# Upper incomplete gamma
# ---------------------------------------------------------------------------


def incomplete_gamma(a: Number, x, prec: int = 128, regularized: bool = False):
    """Upper incomplete gamma Gamma(a, x) for x > 0.

    Positive integer a uses the exact finite form
    Gamma(m+1, x) = m! e^{-x} sum_{u<=m} x^u/u!.  Otherwise the lower series
    is used for x < Re(a) + 1 and the Legendre continued fraction beyond.
    With ``regularized`` the result is divided by Gamma(a).
    """
    extra = 24
    n = as_integer(a)
    real_in = is_real(a)
    with working(prec, extra):
        xx = to_mp(x, prec + extra)
        if xx <= 0:
            raise DomainError("incomplete gamma argument must be positive")
        if n is not None and n >= 1:
            m = n - 1
            acc = mpf(0)
            term = mpf(1)
            for u in range(m + 1):
                acc += term
                term = term * xx / (u + 1)
            value = factorial(m) * mp.exp(-xx) * acc
            if regularized:
                value /= factorial(m)
            return to_mp(+value, prec)
        aa = to_mp(a, prec + extra)
        wp = mp.prec
        target = mpf(2) ** (-wp - 4)
        re_a = aa.real if isinstance(aa, mpc) else aa
        if xx < re_a + 1:
            # lower series, then complement
            term = 1 / aa
            acc = term
            j = 1
            while True:
                term = term * xx / (aa + j)
                acc += term
                if abs(term) < target * max(mpf(1), abs(acc)):
                    break
                j += 1
            lower = mp.power(xx, aa) * mp.exp(-xx) * acc
            value = gamma_complex(aa, prec + extra) - lower
        else:
            # Legendre continued fraction via modified Lentz
            tiny = mpf(2) ** (-2 * wp)
            cf_target = mpf(2) ** (-wp + 8)
            b = xx + 1 - aa
            c = 1 / tiny
            d = 1 / b if b != 0 else 1 / tiny
            f = d
            j = 1
            while True:
                an = -j * (j - aa)
                b += 2
                d = an * d + b
                if d == 0:
                    d = tiny
                c = b + an / c
                if c == 0:
                    c = tiny
                d = 1 / d
                delta = d * c
                f *= delta
                if abs(delta - 1) < cf_target:
                    break
                j += 1
            value = mp.exp(-xx) * mp.power(xx, aa) * f
        if regularized:
            value /= gamma_complex(aa, prec + extra)
        if real_in and isinstance(value, mpc):
            value = value.real
        return to_mp(+value, prec)

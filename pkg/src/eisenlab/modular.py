"""Cusp-form side: Ramanujan tau, divisor sums, the binomial-Gamma collapse
lemma, completed L-functions of holomorphic Eisenstein series, and the
tau-convolution identity that pins zeta(3) against cusp-form data.

The discriminant coefficients are built from the cube of Euler's product via
the Jacobi sparse expansion

    prod_n (1 - q^n)^3 = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2},

raised to the 8th power by repeated sparse-times-dense convolution, all in
exact integers:  Delta = q prod (1-q^n)^24.  The classical recurrence
(n-1) tau(n) = -24 sum sigma_1(j) tau(n-j) is implemented separately and
kept as an independent oracle in the tests.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, isqrt
from typing import Optional, Sequence

from mpmath import mp, mpc, mpf

from .arith import (
    Number,
    as_integer,
    bernoulli,
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
from .coeffs import require_even_weight
from .eisenstein import EvalConfig, SeriesValue, e_holomorphic
from .errors import DomainError, PoleError

__all__ = [
    "QExpansion",
    "eisenstein_lstar",
    "fnl_residual",
    "lstar_closed_form",
    "prop_cos_residual",
    "sigma",
    "summ_lemma_check",
    "summ_lemma_residual",
    "tau",
    "tau_recurrence_oracle",
]


# ---------------------------------------------------------------------------
# Ramanujan tau
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QExpansion:
    """Integer q-expansion sum_m coefficients[m-1] q^m of a weight-`weight`
    form (coefficients start at q^1)."""

    coefficients: tuple
    weight: int

    def __getitem__(self, m: int) -> int:
        if not 1 <= m <= len(self.coefficients):
            raise DomainError(f"coefficient q^{m} not computed (have {len(self.coefficients)})")
        return self.coefficients[m - 1]

    def __len__(self) -> int:
        return len(self.coefficients)


_CACHE_MAGIC = "tau v1"


def _jacobi_cube(n_max: int):
    """Sparse exponent/coefficient pairs of prod (1-q^n)^3 up to q^n_max."""
    out = []
    j = 0
    while j * (j + 1) // 2 <= n_max:
        out.append((j * (j + 1) // 2, sign_pow(j) * (2 * j + 1)))
        j += 1
    return out


def _tau_compute(n_max: int) -> list:
    """tau(1..n_max) by (Jacobi cube)^8, exact integers."""
    top = n_max - 1  # power-series degree needed for Delta/q
    spark = _jacobi_cube(top)
    dense = [0] * (top + 1)
    for e, c in spark:
        dense[e] = c
    for _ in range(7):
        new = [0] * (top + 1)
        for e, c in spark:
            if c == 1:
                for i in range(0, top + 1 - e):
                    new[i + e] += dense[i]
            else:
                for i in range(0, top + 1 - e):
                    new[i + e] += c * dense[i]
        dense = new
    return dense  # tau(n) = dense[n-1]


def _tau_cache_read(path: str, n_max: int) -> Optional[list]:
    try:
        with open(path, "r", encoding="ascii") as fh:
            header = fh.readline().strip()
            if not header.startswith(_CACHE_MAGIC):
                return None
            try:
                have = int(header.split("n_max=")[1])
            except (IndexError, ValueError):
                return None
            if have < n_max:
                return None
            vals = []
            for _ in range(n_max):
                line = fh.readline()
                if not line:
                    return None
                vals.append(int(line.strip()))
            return vals
    except OSError:
        return None


def _tau_cache_write(path: str, vals: Sequence[int]) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(f"{_CACHE_MAGIC} n_max={len(vals)}\n")
        for v in vals:
            fh.write(f"{v}\n")
    os.replace(tmp, path)


def tau(n_max: int, cache_path: Optional[str] = None) -> QExpansion:
    """Discriminant-form coefficients tau(1..n_max) as an exact QExpansion.

    With ``cache_path`` the values are read from (or written to) a plain
    text cache: first line ``tau v1 n_max=<N>``, then one decimal value per
    line.  A cache holding at least n_max values is reused.
    """
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    vals = None
    if cache_path:
        cached = _tau_cache_read(cache_path, n_max)
        if cached is not None:
            vals = cached
    if vals is None:
        vals = _tau_compute(n_max)
        if cache_path:
            _tau_cache_write(cache_path, vals)
    return QExpansion(coefficients=tuple(vals[:n_max]), weight=12)


def tau_recurrence_oracle(n_max: int) -> list:
    """tau(1..n_max) from the independent recurrence

        (n - 1) tau(n) = -24 sum_{j=1}^{n-1} sigma_1(j) tau(n-j),

    exact integers (the division by n-1 must be exact).  Slow O(n^2); used
    as the cross-check oracle for :func:`tau`.
    """
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    sig1 = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        for m in range(d, n_max + 1, d):
            sig1[m] += d
    t = [0] * (n_max + 1)
    t[1] = 1
    for n in range(2, n_max + 1):
        acc = 0
        for j in range(1, n):
            acc += sig1[j] * t[n - j]
        num = -24 * acc
        if num % (n - 1):
            raise ArithmeticError("tau recurrence failed to divide exactly")
        t[n] = num // (n - 1)
    return t[1:]


# ---------------------------------------------------------------------------
# Divisor power sums
# ---------------------------------------------------------------------------


def sigma(s, m: int):
    """sigma_s(m) = sum over the positive divisors d of m of d^s.

    Exact (int or Fraction) for integer s; an mpf/mpc at default precision
    otherwise.
    """
    if m < 1:
        raise DomainError("m must be a positive integer")
    if isinstance(s, int):
        return sigma_power(m, s)
    n = as_integer(s)
    if n is not None:
        return sigma_power(m, n)
    acc = mpf(0)
    for d in divisors(m):
        acc += mp.power(d, s)
    return acc


# ---------------------------------------------------------------------------
# The binomial-Gamma collapse lemma
# ---------------------------------------------------------------------------


def summ_lemma_check(k: int, k2: int, u: int) -> bool:
    """Exactly verify, for even 0 <= k2 <= k and integer u >= 1:

        sum_{l=0}^{k2/2} (-1)^l Gamma(k-1+2u+2l) /
                         ( Gamma(k/2+u+l) (k2/2-l)! (2l)! )
            = (2i)^{k2}/k2! * Gamma(k-1+2u) / Gamma(k/2-k2/2+u)

    with (2i)^{k2} = (-1)^{k2/2} 2^{k2} real.  All Gamma arguments are
    positive integers here, so both sides are exact rationals.
    """
    require_even_weight(k)
    require_even_weight(k2)
    if not (0 <= k2 <= k):
        raise DomainError("need 0 <= k2 <= k")
    if not (isinstance(u, int) and u >= 1):
        raise DomainError("exact check needs integer u >= 1")
    lhs = Fraction(0)
    for el in range(k2 // 2 + 1):
        lhs += Fraction(
            sign_pow(el) * factorial(k - 2 + 2 * u + 2 * el),
            factorial(k // 2 + u + el - 1) * factorial(k2 // 2 - el) * factorial(2 * el),
        )
    rhs = (
        Fraction(sign_pow(k2 // 2) * 2**k2, factorial(k2))
        * Fraction(factorial(k - 2 + 2 * u), factorial(k // 2 - k2 // 2 + u - 1))
    )
    return lhs == rhs


def summ_lemma_residual(k: int, k2: int, u: Number, prec: int = 128):
    """Numeric residual of the same collapse identity at arbitrary complex u
    (away from Gamma poles)."""
    require_even_weight(k)
    require_even_weight(k2)
    if not (0 <= k2 <= k):
        raise DomainError("need 0 <= k2 <= k")
    with working(prec, 32):
        wp = mp.prec
        uu = to_mp(u, wp)
        lhs = mpf(0)
        for el in range(k2 // 2 + 1):
            lhs += (
                sign_pow(el)
                * gamma_complex(k - 1 + 2 * uu + 2 * el, wp)
                / gamma_complex(mpf(k) / 2 + uu + el, wp)
                / factorial(k2 // 2 - el)
                / factorial(2 * el)
            )
        rhs = (
            to_mp(Fraction(sign_pow(k2 // 2) * 2**k2, factorial(k2)), wp)
            * gamma_complex(k - 1 + 2 * uu, wp)
            / gamma_complex(mpf(k) / 2 - mpf(k2) / 2 + uu, wp)
        )
        res = +abs(lhs - rhs)
    return to_mp(res, prec)


# ---------------------------------------------------------------------------
# Completed L-function of the holomorphic Eisenstein series
# ---------------------------------------------------------------------------


def _lstar_norm(n: int, wp: int):
    """c_n = (2 pi i)^n / (Gamma(n) zeta(n)) for even n >= 4."""
    return (
        sign_pow(n // 2)
        * (2 * mp.pi) ** n
        / (factorial(n - 1) * zeta_complex(n, wp))
    )


def lstar_closed_form(n: int, s: Number, prec: int = 128):
    """Closed form L*(E_n, s) = c_n Gamma(s) (2 pi)^{-s} zeta(s) zeta(s+1-n)
    (valid wherever the right side is finite)."""
    require_even_weight(n)
    if n < 4:
        raise DomainError("need a modular weight n >= 4")
    with working(prec, 32):
        wp = mp.prec
        ss = to_mp(s, wp)
        value = (
            _lstar_norm(n, wp)
            * gamma_complex(ss, wp)
            * (2 * mp.pi) ** (-ss)
            * zeta_complex(ss, wp)
            * zeta_complex(ss + 1 - n, wp)
        )
        result = +value
    return to_mp(result, prec)


def eisenstein_lstar(n: int, s: Number, cfg: Optional[EvalConfig] = None):
    """Completed L-function of the weight-n holomorphic Eisenstein series,

        L*(E_n, s) = Gamma(s) (2 pi)^{-s} sum_m a_m m^{-s},   E_n = 1 + sum a_m q^m,

    computed by numerical Mellin quadrature folded to [1, oo):

        L*(E_n, s) = int_1^oo (E_n(it) - 1)(t^{s-1} + (-1)^{n/2} t^{n-s-1}) dt
                     - 1/s - (-1)^{n/2}/(n - s)

    (modularity of E_n folds [0,1] onto [1,oo)).  Because
    (2 pi i)^n zeta(1-n) = 2 (n-1)! zeta(n), this equals the closed form
    c_n Gamma(s) (2 pi)^{-s} zeta(s) zeta(s+1-n) with
    c_n = (2 pi i)^n/(Gamma(n) zeta(n)) -- see :func:`lstar_closed_form`.
    Entire except the poles at s = 0 and s = n (PoleError); satisfies
    L*(E_n, n-s) = (-1)^{n/2} L*(E_n, s) by construction.
    """
    require_even_weight(n)
    if n < 4:
        raise DomainError("need a modular weight n >= 4")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    with working(prec, 32):
        wp = mp.prec
        ss = to_mp(s, wp)
        guard = mpf(2) ** (-(prec // 2))
        if abs(ss) < guard or abs(ss - n) < guard:
            raise PoleError("completed L-function has poles at s = 0 and s = n")
        sign = sign_pow(n // 2)
        inner_cfg = EvalConfig(prec_bits=wp, tol=cfg.tol)
        upper = wp * math.log(2) / (2 * math.pi) + 6

        def integrand(t):
            e_val = to_mp(e_holomorphic(n, (mpf(0), t), inner_cfg).value, wp)
            return (e_val - 1) * (t ** (ss - 1) + sign * t ** (n - ss - 1))

        integral = mp.quad(integrand, [1, upper])
        value = +(integral - 1 / ss - sign / (n - ss))
        if is_real(s) and isinstance(value, mpc) and abs(value.imag) < mpf(2) ** (-prec):
            value = value.real
    return to_mp(value, prec)


# ---------------------------------------------------------------------------
# The tau-convolution pin on zeta(3)
# ---------------------------------------------------------------------------


def fnl_residual(n: int, cfg: Optional[EvalConfig] = None, tail_terms: int = 3000,
                 tau_values: Optional[QExpansion] = None, normalized: bool = True):
    """Residual of the cusp-form convolution identity at index n:

        tau(n) (zeta(3) - 11/(16 n^3))
            = - sum_{m=1}^{n-1} tau(n-m) sigma_{-3}(m)
              - sum_{m>=1} tau(m+n) sigma_{-3}(m)
                    sum_{u=0}^{2} C(u+8, 8) m^u n^9 / (m+n)^{u+9}

    evaluated with ``tail_terms`` terms of the infinite sum.  By default
    the identity is read as a series for zeta(3), i.e. divided through by
    tau(n), and the returned value is |lhs - rhs|/|tau(n)| -- the error of
    the implied zeta(3) approximation.  With ``normalized=False`` the raw
    |lhs - rhs| is returned instead; that raw residual inherits the full
    tau(n) n^9 scale of the identity, so only the normalized form admits a
    scale-free tolerance across n.  Convergence is polynomial: the term at
    the cutoff m = M is of order d(M) M^{11/2} sigma_{-3}(M) n^9 / M^9, so
    the residual decreases steadily (like ~M^{-5/2} with sign-oscillation
    gains) as tail_terms grows, with no exponential decay available.
    """
    if n < 1:
        raise DomainError("n must be a positive integer")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    need = n + tail_terms
    tv = tau_values if (tau_values is not None and len(tau_values) >= need) else tau(need)
    with working(prec, 32):
        wp = mp.prec
        lhs = tv[n] * (zeta_complex(3, wp) - to_mp(Fraction(11, 16 * n**3), wp))
        head = mpf(0)
        for m in range(1, n):
            head += to_mp(tv[n - m] * sigma_power(m, -3), wp)
        tail = mpf(0)
        n9 = mpf(n) ** 9
        for m in range(1, tail_terms + 1):
            inner = mpf(0)
            mn = mpf(m + n)
            for u in range(3):
                inner += comb(u + 8, 8) * mpf(m) ** u * n9 / mn ** (u + 9)
            tail += to_mp(tv[m + n] * sigma_power(m, -3), wp) * inner
        res = +abs(lhs + head + tail)
        if normalized:
            res = +(res / abs(tv[n]))
    return to_mp(res, prec)


# ---------------------------------------------------------------------------
# Independent route for the holomorphic master identity at negative weight
# ---------------------------------------------------------------------------


def prop_cos_residual(k: int, z, cfg: Optional[EvalConfig] = None):
    """Residual of the negative-weight holomorphic master identity

        2 (z^k U_k(z) - U_k(-1/z))
            = (2 pi i)^{1-k} sum_{u+v=1-k/2} B_{2u}B_{2v}/((2u)!(2v)!) z^{1-2v}
              + (1 - z^k) zeta(1-k)

    for even k <= -2, implemented as a code path independent of the
    zeta-values module (own Bernoulli loop, own series assembly) so the two
    can be compared.
    """
    require_even_weight(k)
    if k > -2:
        raise DomainError("stated for even k <= -2")
    cfg = cfg or EvalConfig()
    prec = cfg.prec_bits
    tol = cfg.resolved_tol()
    with working(prec, 32):
        wp = mp.prec
        zz = mpc(to_mp(z, wp))
        if not zz.imag > 0:
            raise DomainError("z must lie in the upper half-plane")
        flip = -1 / zz

        def u_k(point):
            # sum_{m>=1} sigma_{k-1}(m) e^{2 pi i m point}, own assembly
            y = point.imag
            lt = float(mp.log(tol, 2)) - 3
            m_max = 1
            while (-2 * math.pi * m_max * float(y) / math.log(2)) >= lt:
                m_max += 1
                if m_max > 10**6:
                    raise DomainError("cutoff runaway")
            acc = mpf(0)
            for m in range(1, m_max + 1):
                acc += to_mp(sigma_power(m, k - 1), wp) * mp.expjpi(2 * m * point.real) * mp.exp(
                    -2 * mp.pi * m * y
                )
            return acc

        lhs = 2 * (zz**k * u_k(zz) - u_k(flip))
        i = mpc(0, 1)
        head = mpf(0)
        nn = 1 - k // 2
        for u in range(nn + 1):
            v = nn - u
            head += (
                to_mp(Fraction(bernoulli(2 * u), factorial(2 * u)), wp)
                * to_mp(Fraction(bernoulli(2 * v), factorial(2 * v)), wp)
                * zz ** (1 - 2 * v)
            )
        rhs = (2 * mp.pi * i) ** (1 - k) * head + (1 - zz**k) * zeta_complex(1 - k, wp)
        res = +abs(lhs - rhs)
    return to_mp(res, prec)

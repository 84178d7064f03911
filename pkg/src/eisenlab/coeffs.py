"""Exact combinatorial coefficients for the Fourier-expansion machinery.

Everything here is exact: polynomials over Fraction, integer-valued
coefficient families, and a tagged symbolic form for the archimedean
normalizing factor at integer arguments.  Floating-point enters only when a
caller explicitly flattens a symbolic value at a chosen precision.

Conventions:

* weights ``k`` are even integers (odd weights raise DomainError),
* ``h_star(h)`` is h-1 for h >= 1 and -h for h <= 0,
* polynomials are :class:`~eisenlab.arith.ExactPoly` in one variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from mpmath import mp, mpf

from .arith import (
    ExactPoly,
    Number,
    as_integer,
    binom,
    gamma_complex,
    is_real,
    rising,
    sign_pow,
    to_mp,
    working,
    zeta_complex,
    zeta_even,
)
from .errors import DomainError, PoleError

__all__ = [
    "PCoeffPoly",
    "ThetaValue",
    "a_coeff",
    "a_coeff_binomial",
    "a_coeff_bound",
    "a_coeff_product",
    "comb_identities_check",
    "h_star",
    "laguerre_poly",
    "p_poly",
    "p_poly_bound",
    "require_even_weight",
    "theta",
    "theta_k",
    "theta_k_int",
]


def require_even_weight(k: int) -> int:
    """Validate that ``k`` is an even integer and return it."""
    if not isinstance(k, int) or k % 2:
        raise DomainError(f"weight must be an even integer, got {k!r}")
    return k


def h_star(h: int) -> int:
    """Symmetrized index: h-1 for h >= 1, -h for h <= 0.

    Invariant under h -> 1-h, and always nonnegative.
    """
    return h - 1 if h >= 1 else -h


# ---------------------------------------------------------------------------
# The raising-operator polynomials P^n_r
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PCoeffPoly:
    """The polynomial P^n_r together with its indices.

    ``poly`` has degree at most |n| and is the zero polynomial exactly when
    |r| > |n|.  Calling the wrapper evaluates ``poly``.
    """

    n: int
    r: int
    poly: ExactPoly

    def __call__(self, x):
        return self.poly(x)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    @property
    def degree(self) -> int:
        return self.poly.degree


def _p_poly_exact(n: int, r: int) -> ExactPoly:
    if n < 0:
        base = _p_poly_exact(-n, r)
        return ExactPoly([sign_pow(r + j) * c for j, c in enumerate(base.coeffs)])
    if abs(r) > n:
        return ExactPoly()
    coeffs = [Fraction(0)] * (n + 1)
    for l in range(abs(r), n + 1):
        coeffs[l] = Fraction(
            (-1) ** l * factorial(2 * n),
            factorial(n - l) * factorial(l + r) * factorial(l - r),
        )
    return ExactPoly(coeffs)


def p_poly(n: int, r: int) -> PCoeffPoly:
    """Polynomial P^n_r(x), defined for all integers n and r.

    For n >= 0:

        P^n_r(x) = sum_{l=|r|}^{n} (2n)! / ((n-l)! (l+r)! (l-r)!) * (-x)^l

    and for n < 0 by P^n_r(x) = (-1)^r P^{-n}_r(-x).  Identically zero
    exactly when |r| > |n|.  Small cases: P^0_0 = 1, P^1_0 = 2 - 2x,
    P^1_1 = -x, P^{-1}_1 = -x.
    """
    return PCoeffPoly(n, r, _p_poly_exact(n, r))


def p_poly_bound(n: int, r: int) -> bool:
    """True when P^n_r is identically zero, i.e. |r| > |n|."""
    return abs(r) > abs(n)


def laguerre_poly(alpha, m: int) -> ExactPoly:
    """Generalized Laguerre polynomial L^(alpha)_m(x) with exact coefficients.

    L^(alpha)_m(x) = sum_{j=0}^m C(m+alpha, m-j) (-x)^j / j!

    ``alpha`` must be rational here; :func:`eisenlab.special.laguerre`
    evaluates the same sum numerically for arbitrary complex alpha.
    """
    if m < 0:
        raise DomainError("Laguerre degree must be nonnegative")
    a = alpha if isinstance(alpha, (int, Fraction)) else Fraction(alpha)
    coeffs = []
    for j in range(m + 1):
        coeffs.append(Fraction((-1) ** j, factorial(j)) * binom(m + a, m - j))
    return ExactPoly(coeffs)


# ---------------------------------------------------------------------------
# The integer coefficient family A^k_h(u)
# ---------------------------------------------------------------------------


def a_coeff(k: int, h: int, u: int) -> Fraction:
    """Coefficient A^k_h(u) of the closed-form expansion at integer spectral
    parameter, as an exact rational (always an integer in lowest terms).

    Computed from the product form

        A^k_h(u) = (-1)^(k/2) / u! * rf(h - k/2, u) * rf(h + k/2 - u, u + (|k|-k)/2)

    where rf is the rising factorial.  Symmetric under h -> 1-h; vanishes
    exactly for u > a_coeff_bound(k, h).
    """
    require_even_weight(k)
    if u < 0:
        raise DomainError("coefficient index u must be nonnegative")
    half = k // 2
    tail = (abs(k) - k) // 2
    num = rising(Fraction(h - half), u) * rising(Fraction(h + half - u), u + tail)
    return Fraction(sign_pow(half) * num, factorial(u))


def a_coeff_bound(k: int, h: int) -> int:
    """Largest u with A^k_h(u) != 0; negative when the family is all zero."""
    require_even_weight(k)
    hs = h_star(h)
    half = k // 2
    if hs < half:
        return half - 1 - hs
    return hs + half


def a_coeff_binomial(k: int, h: int, u: int) -> Fraction:
    """A^k_h(u) by the sign-split binomial form (exact):

        k >= 0:  (-1)^(u+k/2) u! C(k/2+h-1, u) C(k/2-h, u)
        k <= 0:  (-1)^u ((u-k/2)!)^2 / u! * C(h-1, u-k/2) C(-h, u-k/2)

    with generalized binomial coefficients.  Must agree with
    :func:`a_coeff` and :func:`a_coeff_product` everywhere.
    """
    require_even_weight(k)
    if u < 0:
        raise DomainError("coefficient index u must be nonnegative")
    half = k // 2
    if k >= 0:
        return sign_pow(u + half) * factorial(u) * binom(half + h - 1, u) * binom(half - h, u)
    j = u - half  # u + |k|/2
    return Fraction(sign_pow(u) * factorial(j) ** 2, factorial(u)) * binom(h - 1, j) * binom(-h, j)


def a_coeff_product(k: int, h: int, u: int) -> Fraction:
    """A^k_h(u) by the quadratic product form (exact):

        (-1)^(k/2)/u! * prod_{l=k/2+1-u}^{max(0,k/2)} ((h-1/2)^2 - (l-1/2)^2)

    (empty product = 1).  Must agree with :func:`a_coeff` and
    :func:`a_coeff_binomial` everywhere.
    """
    require_even_weight(k)
    if u < 0:
        raise DomainError("coefficient index u must be nonnegative")
    half = k // 2
    hh = Fraction(2 * h - 1, 2) ** 2
    prod = Fraction(1)
    for el in range(half + 1 - u, max(0, half) + 1):
        prod *= hh - Fraction(2 * el - 1, 2) ** 2
    return Fraction(sign_pow(half), factorial(u)) * prod


# ---------------------------------------------------------------------------
# Archimedean factor at integer arguments (exact, tagged)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaValue:
    """Exact symbolic value rat * pi**pi_pow * zeta(zeta_arg).

    ``zeta_arg`` of None means the zeta factor is absent (value 1).  All
    integer-argument archimedean factors have this shape.
    """

    rat: Fraction
    pi_pow: int = 0
    zeta_arg: Optional[int] = None

    def is_zero(self) -> bool:
        return self.rat == 0

    def as_pi_rational(self) -> Optional[tuple[Fraction, int]]:
        """Collapse to (rational, pi exponent) when the zeta factor is a
        rational multiple of a pi power; None otherwise."""
        if self.rat == 0:
            return Fraction(0), 0
        if self.zeta_arg is None:
            return self.rat, self.pi_pow
        if self.zeta_arg >= 0 and self.zeta_arg % 2 == 0:
            r, p = zeta_even(self.zeta_arg)
            return self.rat * r, self.pi_pow + p
        if self.zeta_arg <= 0:
            from .arith import zeta_nonpositive

            return self.rat * zeta_nonpositive(self.zeta_arg), self.pi_pow
        return None

    def to_mp(self, prec: int = 128):
        """Flatten to an mpf at ``prec`` bits."""
        if self.rat == 0:
            return to_mp(0, prec)
        with working(prec, 16):
            value = to_mp(self.rat, prec + 48) * mp.pi ** self.pi_pow
            if self.zeta_arg is not None:
                value *= zeta_complex(self.zeta_arg, prec + 48)
            result = +value
        return to_mp(result, prec)


def theta_k_int(k: int, m: int) -> ThetaValue:
    """Exact archimedean factor theta_k at an integer argument m.

    Piecewise closed form:

    * m >= 0 (and (k, m) != (0, 0)):  pi^(-m) (m + |k|/2 - 1)! zeta(2m)
    * -|k|/2 < m < 0:                 0
    * m <= -|k|/2:  (-1)^(k/2) (4 pi)^m (2|m|)! / (|m| - |k|/2)! zeta(1 - 2m)

    The excluded point (0, 0) is a genuine pole and raises DomainError
    (specifically PoleError, a DomainError subclass).
    """
    require_even_weight(k)
    ha = abs(k) // 2
    if m >= 0:
        if k == 0 and m == 0:
            raise PoleError("theta_0 has a pole at 0")
        return ThetaValue(Fraction(factorial(m + ha - 1)), -m, 2 * m)
    if m > -ha:
        return ThetaValue(Fraction(0))
    rat = (
        sign_pow(k // 2)
        * Fraction(1, 4**-m)
        * Fraction(factorial(2 * (-m)), factorial(-m - ha))
    )
    return ThetaValue(rat, m, 1 - 2 * m)


def theta_k(k: int, s: Number, prec: int = 128):
    """Archimedean factor theta_k(s) = pi^(-s) Gamma(s + |k|/2) zeta(2s).

    Equivalently theta(s) * s (s+1) ... (s + |k|/2 - 1).  Integer arguments
    dispatch to the exact closed form (which encodes the pole/zero
    cancellations); elsewhere the factors are evaluated directly.  Raises
    PoleError at the genuine poles (s = 1/2 for every k, plus s = 0 for
    k = 0).
    """
    require_even_weight(k)
    m = as_integer(s)
    if m is not None:
        return theta_k_int(k, m).to_mp(prec)
    real_in = is_real(s)
    extra = 32
    with working(prec, extra):
        z = to_mp(s, prec + extra)
        value = (
            mp.pi ** (-z)
            * gamma_complex(z + abs(k) // 2, prec + extra)
            * zeta_complex(2 * z, prec + extra)
        )
        if real_in and not isinstance(value, mpf):
            value = value.real
        result = +value
    return to_mp(result, prec)


def theta(s: Number, prec: int = 128):
    """Weight-0 archimedean factor theta(s) = pi^(-s) Gamma(s) zeta(2s).

    Simple poles at s = 0 and s = 1/2 (residues -1/2 and +1/2) raise
    PoleError; elsewhere finite, including the negative integers where the
    Gamma pole cancels against the trivial zeta zero.
    """
    return theta_k(0, s, prec)


# ---------------------------------------------------------------------------
# Binomial summation identities (exact big-integer checks)
# ---------------------------------------------------------------------------


def comb_identities_check(a: int, b: int, c: int) -> bool:
    """Exactly verify four binomial convolution identities at (a, b, c).

    With a >= 0 and any integers b, c:

    1. sum_l C(a,l) C(b+l,c)        = sum_i C(a,i) C(b,c-i) 2^(a-i)
    2. sum_l (-1)^l C(a,l) C(b+l,c) = (-1)^a C(b,c-a)
    3. sum_l (-1)^l C(a,l) C(2l,c)  = (-1)^a C(a,c-a) 2^(2a-c)
    4. sum_l C(a,l) C(b,c-l)        = C(a+b,c)

    All sums run over 0 <= l <= a.  Everything is exact Fraction/bigint
    arithmetic; returns True iff all four hold.
    """
    if a < 0:
        raise DomainError("first index must be nonnegative")
    lhs1 = sum(comb(a, l) * binom(b + l, c) for l in range(a + 1))
    rhs1 = sum(
        comb(a, i) * binom(b, c - i) * Fraction(2) ** (a - i) for i in range(a + 1)
    )
    lhs2 = sum(sign_pow(l) * comb(a, l) * binom(b + l, c) for l in range(a + 1))
    rhs2 = sign_pow(a) * binom(b, c - a)
    lhs3 = sum(sign_pow(l) * comb(a, l) * binom(2 * l, c) for l in range(a + 1))
    rhs3 = sign_pow(a) * binom(a, c - a) * Fraction(2) ** (2 * a - c)
    lhs4 = sum(comb(a, l) * binom(b, c - l) for l in range(a + 1))
    rhs4 = binom(a + b, c)
    return lhs1 == rhs1 and lhs2 == rhs2 and lhs3 == rhs3 and lhs4 == rhs4

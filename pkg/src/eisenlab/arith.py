"""Exact rational and high-precision arithmetic primitives.

This module owns the arithmetic substrate used everywhere else:

* exact integer/rational combinatorics (Bernoulli numbers, generalized
  binomials, Stirling numbers, Eulerian polynomials) over
  :class:`fractions.Fraction`,
* a small exact polynomial type :class:`ExactPoly`,
* arbitrary-precision Gamma and Riemann zeta for complex arguments, built
  on mpmath floating point with explicit working precision.

Precision convention: ``prec`` arguments are binary digits of the target
precision.  Internally every routine evaluates with guard bits and rounds
once at the end, so results are accurate to well within ``2**(8 - prec)``
relative error unless documented otherwise.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial
from typing import Union

from mpmath import mp, mpc, mpf

from .errors import DomainError, PoleError

Number = Union[int, float, complex, Fraction, mpf, mpc]

GUARD_BITS = 32


def working(prec: int, extra: int = 0):
    """Context manager setting the mpmath precision to ``prec`` plus guard bits."""
    return mp.workprec(max(prec, 4) + GUARD_BITS + extra)


def to_mp(x: Number, prec: int = 128):
    """Coerce ``x`` to an mpf/mpc rounded to ``prec`` bits (mpf when real)."""
    with mp.workprec(max(prec, 4)):
        if isinstance(x, Fraction):
            return mpf(x.numerator) / mpf(x.denominator)
        if isinstance(x, (complex, mpc)):
            if x.imag == 0:
                return +mpf(x.real)
            return +mpc(x)
        return +mpf(x)


def is_real(x: Number) -> bool:
    """True when ``x`` carries no imaginary part."""
    if isinstance(x, (complex, mpc)):
        return x.imag == 0
    return True


def as_integer(x: Number):
    """Return the exact integer value of ``x``, or None when it is not one."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else None
    if isinstance(x, (complex, mpc)):
        if x.imag != 0:
            return None
        x = x.real
    if isinstance(x, (float, mpf)):
        n = int(x)
        return n if x == n else None
    return None


def default_tol(prec: int) -> mpf:
    """Default absolute comparison tolerance at ``prec`` bits, ``2**(16 - prec)``."""
    with working(prec):
        return mpf(2) ** (16 - prec)


# ---------------------------------------------------------------------------
# Exact combinatorics
# ---------------------------------------------------------------------------

_bernoulli_cache: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_bernoulli_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n as an exact Fraction, with B_1 = -1/2.

    Computed by the defining recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0,
    cached for all indices up to the largest requested so far.
    """
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    if n >= len(_bernoulli_cache):
        with _bernoulli_lock:
            for m in range(len(_bernoulli_cache), n + 1):
                if m % 2 == 1:
                    _bernoulli_cache.append(Fraction(0))
                    continue
                acc = Fraction(0)
                for j in range(m):
                    bj = _bernoulli_cache[j]
                    if bj:
                        acc += comb(m + 1, j) * bj
                _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[n]


def binom(z: Number, u: int):
    """Generalized binomial coefficient C(z, u) = z(z-1)...(z-u+1)/u!.

    Zero for u < 0.  Exact (int or Fraction) for exact inputs, mpf/mpc for
    floating inputs.
    """
    if u < 0:
        return 0
    if u == 0:
        return 1
    if isinstance(z, int):
        num = 1
        for j in range(u):
            num *= z - j
        return num // factorial(u)
    if isinstance(z, Fraction):
        num = Fraction(1)
        for j in range(u):
            num *= z - j
        return num / factorial(u)
    num = z
    for j in range(1, u):
        num = num * (z - j)
    return num / factorial(u)


def divisors(m: int) -> list[int]:
    """Sorted positive divisors of m >= 1."""
    if m < 1:
        raise DomainError("divisors need a positive integer")
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def sigma_power(m: int, w) -> Union[int, Fraction]:
    """Divisor power sum sigma_w(m) = sum_{d | m} d^w, exact for integer w."""
    if not isinstance(w, int):
        raise TypeError("sigma_power expects an integer exponent")
    if w >= 0:
        return sum(d**w for d in divisors(m))
    return sum(Fraction(1, d**-w) for d in divisors(m))


_stirling2_cache: dict[tuple[int, int], int] = {}


def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind {m, k} (set partitions counts)."""
    if m < 0 or k < 0:
        raise DomainError("Stirling indices must be nonnegative")
    if k > m:
        return 0
    if m == k:
        return 1
    if k == 0:
        return 0
    key = (m, k)
    cached = _stirling2_cache.get(key)
    if cached is not None:
        return cached
    value = k * stirling2(m - 1, k) + stirling2(m - 1, k - 1)
    _stirling2_cache[key] = value
    return value


def sign_pow(e: int) -> int:
    """(-1)**e as an exact int, correct for negative exponents too."""
    return -1 if e % 2 else 1


def rising(a: Number, n: int):
    """Rising factorial a (a+1) ... (a+n-1); empty product is 1."""
    if n < 0:
        raise DomainError("rising factorial length must be nonnegative")
    if isinstance(a, (int, Fraction)):
        out: Union[int, Fraction] = 1
    else:
        out = a * 0 + 1
    for j in range(n):
        out = out * (a + j)
    return out


# ---------------------------------------------------------------------------
# Exact polynomials
# ---------------------------------------------------------------------------


class ExactPoly:
    """Polynomial with exact Fraction coefficients, stored in ascending degree.

    Supports ring arithmetic, differentiation, and evaluation at exact or
    mpmath arguments.  Immutable; trailing zero coefficients are stripped so
    equality is canonical.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactPoly([c * other for c in self.coeffs])
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return ExactPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ExactPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative polynomial power")
        out = ExactPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self):
        return ExactPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        if not self.coeffs:
            return x * 0 if not isinstance(x, (int, Fraction)) else Fraction(0)
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + mpf(c.numerator) / c.denominator
        return acc

    def __eq__(self, other):
        if isinstance(other, ExactPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == _as_poly(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "ExactPoly(0)"
        parts = [f"{c}*x^{k}" if k else f"{c}" for k, c in enumerate(self.coeffs) if c]
        return "ExactPoly(" + " + ".join(parts) + ")"


def _as_poly(x) -> ExactPoly:
    if isinstance(x, ExactPoly):
        return x
    return ExactPoly([x])


POLY_X = ExactPoly([0, 1])


def eulerian_poly(m: int) -> ExactPoly:
    """Eulerian polynomial A_m(z) = sum_k k! {m, k} (z-1)^(m-k).

    A_0 = 1, A_1 = 1, A_2 = 1 + z, A_3 = 1 + 4z + z^2; A_m(1) = m!.
    """
    if m < 0:
        raise DomainError("Eulerian polynomial index must be nonnegative")
    zm1 = ExactPoly([-1, 1])
    acc = ExactPoly()
    for k in range(m + 1):
        acc = acc + (factorial(k) * stirling2(m, k)) * zm1 ** (m - k)
    return acc


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------


def _check_gamma_pole(s: Number) -> None:
    n = as_integer(s)
    if n is not None and n <= 0:
        raise PoleError(f"Gamma pole at s = {n}")


def _log_gamma_stirling(z, wp: int):
    """Stirling asymptotic series for log Gamma, valid for Re(z) large."""
    acc = (z - mpf("0.5")) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
    zpow = z
    z2 = z * z
    target = mpf(2) ** (-wp - 4)
    prev = mp.inf
    j = 1
    while True:
        b = bernoulli(2 * j)
        term = (mpf(b.numerator) / b.denominator) / ((2 * j) * (2 * j - 1)) / zpow
        size = abs(term)
        if size >= prev:
            break
        acc += term
        if size < target * max(mpf(1), abs(acc)):
            break
        prev = size
        zpow *= z2
        j += 1
    return acc


def gamma_complex(s: Number, prec: int = 128):
    """Gamma(s) for complex s at ``prec`` bits.

    Uses the Stirling asymptotic series after shifting the argument to a
    large real part, with the reflection formula for Re(s) < 1/2.  Raises
    PoleError at the poles s = 0, -1, -2, ...
    """
    _check_gamma_pole(s)
    real_in = is_real(s)
    extra = 48
    with working(prec, extra):
        z = mpc(to_mp(s, prec + extra))
        if z.real < mpf("0.5"):
            refl = mp.pi / (mp.sin(mp.pi * z) * gamma_complex(1 - z, prec + extra))
            return _round_result(refl, real_in, prec)
        wp = mp.prec
        shift_to = max(16, wp // 4)
        n = 0
        if z.real < shift_to:
            n = int(shift_to - z.real) + 1
        lg = _log_gamma_stirling(z + n, wp)
        value = mp.exp(lg)
        for j in range(n):
            value /= z + j
        return _round_result(value, real_in, prec)


def _round_result(value, real_in: bool, prec: int):
    with mp.workprec(max(prec, 4)):
        if real_in and isinstance(value, mpc):
            return +value.real
        return +value


# ---------------------------------------------------------------------------
# Riemann zeta
# ---------------------------------------------------------------------------


def zeta_nonpositive(n: int) -> Fraction:
    """Exact zeta value at an integer n <= 0: -B_{1-n}/(1-n), zeta(0) = -1/2.

    The n = 0 case is pinned explicitly: the Bernoulli convention used here
    has B_1 = -1/2, which would flip the sign of the generic formula at the
    single argument where an odd Bernoulli number enters.
    """
    if n > 0:
        raise DomainError("argument must be a nonpositive integer")
    if n == 0:
        return Fraction(-1, 2)
    m = 1 - n
    return -bernoulli(m) / m


def zeta_even(n: int) -> tuple[Fraction, int]:
    """Exact zeta at a nonnegative even integer, as (rational, pi exponent).

    Returns (r, n) with zeta(n) = r * pi**n; zeta(0) = -1/2.
    """
    if n < 0 or n % 2:
        raise DomainError("argument must be a nonnegative even integer")
    if n == 0:
        return Fraction(-1, 2), 0
    r = (-1) ** (n // 2 + 1) * bernoulli(n) * Fraction(2) ** (n - 1) / factorial(n)
    return r, n


def _zeta_euler_maclaurin(s, wp: int):
    """Euler-Maclaurin evaluation of zeta(s); expects Re(s) > -1/2."""
    target = mpf(2) ** (-wp - 4)
    n_cut = max(20, int(0.4 * wp + 0.9 * abs(s.imag)) + 2)
    for _ in range(8):
        acc = mpc(0)
        for n in range(1, n_cut):
            acc += mp.power(n, -s)
        n_pow = mp.power(n_cut, -s)
        acc += n_pow / 2 + n_pow * n_cut / (s - 1)
        rise = s
        pw = n_pow / n_cut
        n2 = mpf(n_cut) ** 2
        prev = mp.inf
        j = 1
        converged = False
        while True:
            b = bernoulli(2 * j)
            term = (mpf(b.numerator) / b.denominator) / factorial(2 * j) * rise * pw
            size = abs(term)
            if size >= prev:
                break
            acc += term
            if size < target * max(mpf(1), abs(acc)):
                converged = True
                break
            prev = size
            rise = rise * (s + 2 * j - 1) * (s + 2 * j)
            pw /= n2
            j += 1
        if converged:
            return acc
        n_cut *= 2
    raise ArithmeticError("Euler-Maclaurin zeta failed to converge")


def zeta_complex(s: Number, prec: int = 128):
    """Riemann zeta(s) for complex s at ``prec`` bits.

    Euler-Maclaurin summation with an automatically chosen cutoff, using the
    functional equation for arguments far left of the critical strip and
    exact Bernoulli values at nonpositive integers.  Raises PoleError at
    s = 1.
    """
    if as_integer(s) == 1 or (not isinstance(s, int) and to_mp(s, 64) == 1):
        raise PoleError("zeta pole at s = 1")
    n = as_integer(s)
    real_in = is_real(s)
    if n is not None and n <= 0:
        return to_mp(zeta_nonpositive(n), prec)
    extra = 48
    with working(prec, extra):
        z = mpc(to_mp(s, prec + extra))
        if z.real >= mpf("-0.5"):
            value = _zeta_euler_maclaurin(z, mp.prec)
        else:
            w = 1 - z
            value = (
                mp.power(2, z)
                * mp.power(mp.pi, z - 1)
                * mp.sin(mp.pi * z / 2)
                * gamma_complex(w, prec + extra)
                * zeta_complex(w, prec + extra)
            )
        return _round_result(value, real_in, prec)

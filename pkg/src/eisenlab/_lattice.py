"""Brute-force truncated lattice sums in float64.

The sum evaluated here is

    S(y, s, N) = sum_{(m, n) != (0, 0), |m| <= N, |n| <= N} ((m y)^2 + n^2)^(-s)

computed directly, with no analytic shortcuts, so it can serve as an oracle
that is completely independent of every Fourier expansion in the package.
The summand depends on m^2 and n^2 only, so the four-fold symmetry

    S = 4 * sum_{m,n >= 1} + 2 * sum_{m >= 1} (m y)^(-2s) + 2 * sum_{n >= 1} n^(-2s)

is used; it changes the floating-point result only at the level of rounding
noise and cuts the work by four.

Determinism contract: rows are split into a FIXED number of chunks
(independent of worker count); each chunk is reduced in row order with
compensated addition, and chunk results are combined in ascending order.
The result is therefore bit-identical across runs and across any setting of
EISENLAB_THREADS.  Worker threads (numpy releases the GIL on large array
ops, the compiled kernel is nogil) only change wall time.

The optional compiled kernel (numba) is used when importable unless
EISENLAB_PURE_NUMPY is set to a nonempty value; the pure-numpy fallback
computes identical chunk sums (same row order, same compensated reduction).

``lattice_tail_correction`` estimates the omitted tail sum_{max(|m|,|n|) > N}
by the exterior integral over the union of the omitted unit cells, which is
the region max(|x|, |u|) >= N + 1/2.  The midpoint-rule error of that
replacement scales like N^(-2 Re s - 1), so for Re s >= 2 and N in the
thousands the corrected sum is limited by float64 rounding, not by the
cutoff.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from mpmath import mp, mpf, mpc

from .errors import DomainError

__all__ = ["lattice_sum", "lattice_tail_correction", "kernel_backend"]

_CHUNKS = 64  # fixed chunk count: the determinism anchor


def _worker_count() -> int:
    raw = os.environ.get("EISENLAB_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError as exc:
            raise DomainError(f"EISENLAB_THREADS must be an integer, got {raw!r}") from exc
        if n < 1:
            raise DomainError("EISENLAB_THREADS must be at least 1")
        return n
    return min(os.cpu_count() or 1, 8)


# ---------------------------------------------------------------------------
# Optional compiled kernel
# ---------------------------------------------------------------------------

_NUMBA_KERNEL = None
_NUMBA_KERNEL_INT = None


def _try_build_numba():
    global _NUMBA_KERNEL, _NUMBA_KERNEL_INT
    if os.environ.get("EISENLAB_PURE_NUMPY", ""):
        return
    try:
        import numba
    except Exception:  # pragma: no cover - environment dependent
        return

    @numba.njit("float64[:](float64, float64, int64, int64, int64)", nogil=True, cache=True)
    def _rows_real(y, s, n_max, m_lo, m_hi):  # pragma: no cover - compiled
        # sum_{m=m_lo..m_hi} sum_{n=1..n_max} ((m y)^2 + n^2)^(-s), Kahan.
        total = 0.0
        comp = 0.0
        for m in range(m_lo, m_hi + 1):
            t = (m * y) * (m * y)
            row = 0.0
            rcomp = 0.0
            for n in range(1, n_max + 1):
                v = (t + n * n) ** (-s)
                yy = v - rcomp
                tt = row + yy
                rcomp = (tt - row) - yy
                row = tt
            yy = row - comp
            tt = total + yy
            comp = (tt - total) - yy
            total = tt
        out = np.empty(1, dtype=np.float64)
        out[0] = total
        return out

    @numba.njit("float64[:](float64, int64, int64, int64, int64)", nogil=True, cache=True)
    def _rows_int(y, p, n_max, m_lo, m_hi):  # pragma: no cover - compiled
        # integer exponent fast path: ((m y)^2 + n^2)^(-p) by multiplication
        total = 0.0
        comp = 0.0
        for m in range(m_lo, m_hi + 1):
            t = (m * y) * (m * y)
            row = 0.0
            rcomp = 0.0
            for n in range(1, n_max + 1):
                base = t + n * n
                acc = base
                for _ in range(p - 1):
                    acc *= base
                v = 1.0 / acc
                yy = v - rcomp
                tt = row + yy
                rcomp = (tt - row) - yy
                row = tt
            yy = row - comp
            tt = total + yy
            comp = (tt - total) - yy
            total = tt
        out = np.empty(1, dtype=np.float64)
        out[0] = total
        return out

    _NUMBA_KERNEL = _rows_real
    _NUMBA_KERNEL_INT = _rows_int


_try_build_numba()


def kernel_backend() -> str:
    """Which kernel computes the quadrant rows: "numba" or "numpy"."""
    return "numpy" if _NUMBA_KERNEL is None else "numba"


# ---------------------------------------------------------------------------
# Chunked quadrant sums
# ---------------------------------------------------------------------------


def _chunk_bounds(n: int, chunks: int):
    """Fixed partition of 1..n into at most `chunks` contiguous ranges."""
    step = max(1, -(-n // chunks))
    lo = 1
    while lo <= n:
        hi = min(n, lo + step - 1)
        yield lo, hi
        lo = hi + 1


def _numpy_rows_real(y: float, s: float, n_max: int, m_lo: int, m_hi: int) -> float:
    n2 = (np.arange(1, n_max + 1, dtype=np.float64)) ** 2
    p = int(round(s))
    int_exp = (p == s) and 2 <= p <= 16
    total = 0.0
    comp = 0.0
    for m in range(m_lo, m_hi + 1):
        base = (m * y) ** 2 + n2
        if int_exp:
            acc = base.copy()
            for _ in range(p - 1):
                acc *= base
            row = float(np.add.reduce(1.0 / acc))
        else:
            row = float(np.add.reduce(base ** (-s)))
        yy = row - comp
        tt = total + yy
        comp = (tt - total) - yy
        total = tt
    return total


def _numpy_rows_complex(y: float, s: complex, n_max: int, m_lo: int, m_hi: int) -> complex:
    n2 = (np.arange(1, n_max + 1, dtype=np.float64)) ** 2
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for m in range(m_lo, m_hi + 1):
        base = (m * y) ** 2 + n2
        row = complex(np.add.reduce(np.exp((-s) * np.log(base))))
        yy = row - comp
        tt = total + yy
        comp = (tt - total) - yy
        total = tt
    return total


def _quadrant_sum(y: float, s: complex, n_max: int):
    """sum_{m=1..N} sum_{n=1..N} ((m y)^2 + n^2)^(-s), chunked and ordered."""
    if s.imag == 0.0:
        sr = s.real
        p = int(round(sr))
        if _NUMBA_KERNEL is not None:
            if p == sr and 2 <= p <= 16:
                fn = lambda lo, hi: float(_NUMBA_KERNEL_INT(y, p, n_max, lo, hi)[0])
            else:
                fn = lambda lo, hi: float(_NUMBA_KERNEL(y, sr, n_max, lo, hi)[0])
        else:
            fn = lambda lo, hi: _numpy_rows_real(y, sr, n_max, lo, hi)
        zero = 0.0
    else:
        fn = lambda lo, hi: _numpy_rows_complex(y, s, n_max, lo, hi)
        zero = 0.0 + 0.0j

    bounds = list(_chunk_bounds(n_max, _CHUNKS))
    workers = min(_worker_count(), len(bounds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: fn(b[0], b[1]), bounds))
    else:
        parts = [fn(lo, hi) for lo, hi in bounds]
    total = zero
    comp = zero
    for part in parts:  # ascending chunk order: deterministic
        yy = part - comp
        tt = total + yy
        comp = (tt - total) - yy
        total = tt
    return total


def lattice_sum(y: float, s: complex, cutoff: int):
    """The truncated double sum S(y, s, cutoff) in float64.

    Returns a float for real s, complex otherwise.
    """
    s = complex(s)
    if s.real <= 1:
        raise DomainError("lattice sum needs Re(s) > 1")
    if y <= 0:
        raise DomainError("lattice parameter y must be positive")
    n = int(cutoff)
    if n < 1:
        raise DomainError("cutoff must be at least 1")
    quad = _quadrant_sum(float(y), s, n)
    if s.imag == 0.0:
        sr = s.real
        axis_m = float(np.add.reduce((np.arange(1, n + 1, dtype=np.float64) * y) ** (-2 * sr)))
        axis_n = float(np.add.reduce(np.arange(1, n + 1, dtype=np.float64) ** (-2 * sr)))
        return 4.0 * quad + 2.0 * axis_m + 2.0 * axis_n
    marr = np.arange(1, n + 1, dtype=np.float64) * y
    narr = np.arange(1, n + 1, dtype=np.float64)
    axis_m = complex(np.add.reduce(np.exp((-2 * s) * np.log(marr))))
    axis_n = complex(np.add.reduce(np.exp((-2 * s) * np.log(narr))))
    return 4.0 * quad + 2.0 * axis_m + 2.0 * axis_n


# ---------------------------------------------------------------------------
# Analytic tail correction
# ---------------------------------------------------------------------------


def lattice_tail_correction(y, s, cutoff: int, prec: int = 53):
    """Integral estimate of the omitted tail sum_{max(|m|,|n|) > cutoff}.

    The omitted lattice points' unit cells tile {max(|x|, |u|) >= a} with
    a = cutoff + 1/2, so the midpoint rule gives

        tail ~ I1 + I2,
        I1 = 2 sqrt(pi) Gamma(s - 1/2)/Gamma(s) y^{1-2s} a^{2-2s} / (2s - 2)
             (the strip |x| > a, all u),
        I2 = 4 int_0^a  a^{1-2s}/(2s-1)
                 2F1(s, s - 1/2; s + 1/2; -(x y / a)^2) dx
             (the caps |x| <= a, |u| > a),

    accurate to O(cutoff^(-2 Re s - 1)).  Returns a float64-compatible value
    (float for real s).
    """
    old = mp.prec
    mp.prec = max(prec, 53) + 16
    try:
        ss = mpc(s) if (isinstance(s, complex) and s.imag != 0) else mpf(s)
        yy = mpf(y)
        if (mpc(ss).real) <= 1:
            raise DomainError("tail correction needs Re(s) > 1")
        if yy <= 0:
            raise DomainError("lattice parameter y must be positive")
        a = mpf(cutoff) + mpf(1) / 2
        i1 = (
            2
            * mp.sqrt(mp.pi)
            * mp.gamma(ss - mpf(1) / 2)
            / mp.gamma(ss)
            * yy ** (1 - 2 * ss)
            * a ** (2 - 2 * ss)
            / (2 * ss - 2)
        )

        front = a ** (1 - 2 * ss) / (2 * ss - 1)

        def cap_integrand(x):
            return front * mp.hyp2f1(ss, ss - mpf(1) / 2, ss + mpf(1) / 2, -((x * yy / a) ** 2))

        i2 = 4 * mp.quad(cap_integrand, [0, a])
        total = i1 + i2
        if isinstance(total, mpc) and abs(total.imag) < mpf(10) ** (-12) * abs(total):
            total = total.real
        return complex(total) if isinstance(total, mpc) else float(total)
    finally:
        mp.prec = old

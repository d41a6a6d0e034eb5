"""Exponential sums F(x; alpha) = sum_{n<=x} f(n) e(alpha n), their prefix
suprema, short-interval windows, and L2 window averages.

Phase reduction is exact: with alpha realized as P/Q, the phase of term m
is (P*m mod Q)/Q computed in integer arithmetic and rounded to double once,
so phases stay accurate even when m*P has hundreds of bits.  Sums use
compensated or pairwise accumulation; sliding windows are recomputed from
scratch every `resync` slides.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .arith import ArithTable, FnKind
from .dioph import AlphaSource, AlphaSpec

RESYNC_DEFAULT = 1 << 16

_TWO_PI = 2.0 * math.pi


class ComplexAcc:
    """Neumaier-compensated complex accumulator."""

    __slots__ = ("re", "im", "re_comp", "im_comp", "terms")

    def __init__(self):
        self.re = 0.0
        self.im = 0.0
        self.re_comp = 0.0
        self.im_comp = 0.0
        self.terms = 0

    def add_parts(self, re: float, im: float, count: int = 1) -> None:
        t = self.re + re
        if abs(self.re) >= abs(re):
            self.re_comp += (self.re - t) + re
        else:
            self.re_comp += (re - t) + self.re
        self.re = t
        t = self.im + im
        if abs(self.im) >= abs(im):
            self.im_comp += (self.im - t) + im
        else:
            self.im_comp += (im - t) + self.im
        self.im = t
        self.terms += count

    def add(self, z: complex) -> None:
        self.add_parts(z.real, z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re + self.re_comp, self.im + self.im_comp)


def compensated_complex_sum(re_terms, im_terms) -> ComplexAcc:
    """Chunked pairwise sums combined with Neumaier compensation."""
    acc = ComplexAcc()
    chunk = 1 << 15
    n = len(re_terms)
    for k in range(0, n, chunk):
        e = min(k + chunk, n)
        acc.add_parts(
            float(np.sum(re_terms[k:e])), float(np.sum(im_terms[k:e])), e - k
        )
    return acc


@dataclass(frozen=True)
class WindowAverage:
    """S = (1/x) * sum over -y < n <= x of |F(n, n+y; alpha)|^2, windows
    clipped to [1, x]."""

    x: int
    y: int
    alpha: AlphaSpec
    kind: FnKind
    S: float
    n_count: int


def _exact_float_ratios(res, q):
    # python int/int division is correctly rounded for arbitrary precision
    return np.array([r / q for r in res.tolist()], dtype=np.float64)


def _phase_residues(p: int, q: int, lo: int, hi: int) -> np.ndarray:
    """frac(p*m/q) for m in [lo, hi], reduced exactly, as float64."""
    count = hi - lo + 1
    step = p % q
    if q < (1 << 62):
        block = 1 << 15
        nblk = (count + block - 1) // block
        stepb = (step * block) % q
        coarse = np.empty(nblk, dtype=np.int64)
        acc = (p * lo) % q
        for i in range(nblk):
            coarse[i] = acc
            acc = (acc + stepb) % q
        fine = np.empty(block, dtype=np.int64)
        acc = 0
        for j in range(block):
            fine[j] = acc
            acc += step
            if acc >= q:
                acc -= q
        res = (coarse[:, None] + fine[None, :]).reshape(-1)[:count]
        np.subtract(res, q, out=res, where=res >= q)
        if q < (1 << 53):
            return res.astype(np.float64) / float(q)
        return _exact_float_ratios(res, q)
    # very large moduli: plain python ints, still exact
    out = np.empty(count, dtype=np.float64)
    acc = (p * lo) % q
    for i in range(count):
        out[i] = acc / q
        acc += step
        if acc >= q:
            acc -= q
    return out


class PhaseContext:
    """Exact phase evaluation e(alpha m) for a realized alpha."""

    def __init__(self, alpha: AlphaSpec):
        self.alpha = alpha
        self._cached_hi = 0
        self._cached_unit = None

    @classmethod
    def from_fraction(cls, f: Fraction) -> "PhaseContext":
        f = Fraction(f)
        spec = AlphaSpec(AlphaSource("rational", f), f.numerator, f.denominator, 1)
        return cls(spec)

    def shifted(self, beta) -> "PhaseContext":
        """Context for alpha + beta, combined exactly."""
        return PhaseContext.from_fraction(self.alpha.fraction + Fraction(beta))

    def phases(self, lo: int, hi: int) -> np.ndarray:
        return _phase_residues(self.alpha.p, self.alpha.q, lo, hi)

    def unit(self, lo: int, hi: int) -> np.ndarray:
        """e(alpha m) for m in [lo, hi]."""
        if lo >= 1 and self._cached_unit is not None and hi <= self._cached_hi:
            return self._cached_unit[lo - 1:hi]
        u = np.exp(2j * np.pi * self.phases(lo, hi))
        if lo == 1 and hi >= self._cached_hi:
            self._cached_hi = hi
            self._cached_unit = u
        return u


def geometric_kernel(y: int, beta) -> complex:
    """E_y(beta) = sum_{1<=n<=y} e(beta n) in closed form
    e((y+1)beta/2) * sin(pi y beta) / sin(pi beta); integer beta gives y.

    Rational beta is reduced mod 1 exactly before any float is formed.
    """
    if y < 1:
        raise ValueError("y must be >= 1")
    if isinstance(beta, (int, Fraction)):
        b = Fraction(beta)
        if b.denominator == 1:
            return complex(y)
        fy = float((y * b) % 2)
        f1 = float(b % 2)
        ph = float(((y + 1) * b / 2) % 1)
        return cmath.exp(2j * math.pi * ph) * (
            math.sin(math.pi * fy) / math.sin(math.pi * f1)
        )
    bf = float(beta)
    if bf == round(bf):
        return complex(y)
    s1 = math.sin(math.pi * math.fmod(bf, 2.0))
    if s1 == 0.0:
        return complex(y)
    fy = math.fmod(y * bf, 2.0)
    ph = math.fmod((y + 1) * bf / 2.0, 1.0)
    return cmath.exp(2j * math.pi * ph) * (math.sin(math.pi * fy) / s1)


def _require_cover(table: ArithTable, x: int) -> None:
    if not table.covers(1, x):
        raise ValueError(
            f"table gap: need [1,{x}], table holds [{table.lo},{table.hi}]"
        )


def expsum_full(table: ArithTable, ctx: PhaseContext, x: int) -> complex:
    """F(x; alpha) = sum_{n<=x} f(n) e(alpha n), compensated."""
    _require_cover(table, x)
    vals = table.slice(1, x)
    unit = ctx.unit(1, x)
    return compensated_complex_sum(vals * unit.real, vals * unit.imag).value


def prefix_sups(table: ArithTable, ctx: PhaseContext, x: int):
    """max over n <= x of |F(n; alpha)| in one streaming pass.

    Returns (sup, argmax_n)."""
    _require_cover(table, x)
    vals = table.slice(1, x)
    unit = ctx.unit(1, x)
    return kernels.prefix_max(
        np.ascontiguousarray(vals * unit.real),
        np.ascontiguousarray(vals * unit.imag),
    )


def _padded_terms(table: ArithTable, ctx: PhaseContext, x: int, y: int):
    vals = table.slice(1, x)
    unit = ctx.unit(1, x)
    pre = np.zeros(x + 2 * y + 1, dtype=np.float64)
    pim = np.zeros(x + 2 * y + 1, dtype=np.float64)
    pre[y + 1:y + x + 1] = vals * unit.real
    pim[y + 1:y + x + 1] = vals * unit.imag
    return pre, pim


def window_l2_stats(table: ArithTable, ctx: PhaseContext, x: int, y: int,
                    resync: int = RESYNC_DEFAULT):
    """(WindowAverage, largest window modulus) in one sliding pass."""
    if y < 1 or y > x:
        raise ValueError(f"y={y} must satisfy 1 <= y <= x={x}")
    if resync < 1:
        raise ValueError("resync must be >= 1")
    _require_cover(table, x)
    pre, pim = _padded_terms(table, ctx, x, y)
    total, max_abs, count = kernels.window_l2(pre, pim, x, y, resync)
    avg = WindowAverage(x, y, ctx.alpha, table.kind, total / x, count)
    return avg, max_abs


def window_l2_average(table: ArithTable, ctx: PhaseContext, x: int, y: int,
                      resync: int = RESYNC_DEFAULT) -> WindowAverage:
    """(1/x) * sum_{-y<n<=x} |F(n, n+y; alpha)|^2 by sliding windows."""
    return window_l2_stats(table, ctx, x, y, resync)[0]


def window_fourier_sum(table: ArithTable, ctx: PhaseContext, x: int, y: int,
                       beta, resync: int = RESYNC_DEFAULT) -> complex:
    """sum over -y < n <= x of F(n, n+y; alpha) e(beta n), beta rational."""
    if y < 1 or y > x:
        raise ValueError(f"y={y} must satisfy 1 <= y <= x={x}")
    _require_cover(table, x)
    b = Fraction(beta)
    pre, pim = _padded_terms(table, ctx, x, y)
    ph = _phase_residues(b.numerator, b.denominator, 1 - y, x)
    wgt = np.exp(2j * np.pi * ph)
    return kernels.window_weighted(
        pre, pim,
        np.ascontiguousarray(wgt.real), np.ascontiguousarray(wgt.imag),
        x, y, resync,
    )


def window_sum(table: ArithTable, ctx: PhaseContext, n: int, y: int,
               x: int) -> complex:
    """F(n, n+y; alpha) over (n, n+y] clipped to [1, x], a single window."""
    if not 0 <= n <= x:
        raise ValueError(f"n={n} must lie in [0, x={x}]")
    lo = max(n + 1, 1)
    hi = min(n + y, x)
    if lo > hi:
        return 0j
    vals = table.slice(lo, hi)
    unit = ctx.unit(lo, hi)
    return complex(np.sum(vals * unit))


def pi_window(table_primes: ArithTable, ctx: PhaseContext, n: int, y: int,
              x: int) -> complex:
    """sum of e(alpha p) over primes p in (n, n+y] intersect [1, x]."""
    if table_primes.kind != FnKind.PRIME_INDICATOR:
        raise ValueError("pi_window needs a prime-indicator table")
    _require_cover(table_primes, x)
    return window_sum(table_primes, ctx, n, y, x)


def expsum_at_rational(table: ArithTable, frac: Fraction, x: int) -> complex:
    """F(x; a/q) via residue-class sums: sum_b e(ab/q) S_b with
    S_b = sum_{m<=x, m=b mod q} f(m)."""
    q = frac.denominator
    if q > x:
        raise ValueError(f"q={q} exceeds x={x}")
    _require_cover(table, x)
    sums = kernels.residue_sums(np.ascontiguousarray(table.slice(1, x)), q)
    a = frac.numerator % q
    idx = (a * np.arange(q, dtype=np.int64)) % q
    roots = np.exp(2j * np.pi * idx.astype(np.float64) / q)
    return complex(np.dot(sums, roots))


def batch_rational(table: ArithTable, q: int, x: int) -> dict:
    """All F(x; a/q) with gcd(a, q) = 1 from one residue-sum pass.

    The numerator sweep is an inverse DFT of the residue sums."""
    if q > x:
        raise ValueError(f"q={q} exceeds x={x}")
    _require_cover(table, x)
    sums = kernels.residue_sums(np.ascontiguousarray(table.slice(1, x)), q)
    spectrum = np.conj(np.fft.fft(sums))
    coprime = np.flatnonzero(np.gcd(np.arange(q, dtype=np.int64), q) == 1)
    return {int(a): complex(spectrum[a]) for a in coprime}

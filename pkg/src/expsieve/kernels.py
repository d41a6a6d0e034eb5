"""Hot numeric kernels, in numba and pure-numpy variants.

The numpy versions fix the reference semantics; the numba versions are
drop-in replacements compiled with ``@njit``.  :mod:`expsieve.backend`
decides which set is active (``EXPSIEVE_BACKEND=numpy`` forces the numpy
path).  ``benchmarks/bench_backends.py`` times the two side by side.

Conventions shared by the window kernels:

* term arrays are zero-padded so that index ``m + y`` holds the term for
  integer position ``m``; positions outside ``[1, x]`` are zero,
* a window at ``n`` covers ``(n, n+y]`` clipped to ``[1, x]``, and ``n``
  runs over ``1-y .. x``,
* the window is maintained by sliding and recomputed from scratch every
  ``resync`` slides so float drift stays bounded,
* scalar accumulators use Neumaier compensation.
"""

import math

import numpy as np

from .backend import NUMBA_ENABLED, njit


# ----------------------------------------------------------------------
# numpy reference implementations
# ----------------------------------------------------------------------

def _mult_segment_np(lo, count, primes):
    """Factor sweep over [lo, lo+count): divisor count, Moebius, totient
    and distinct-prime-factor count, all in one pass over the base primes.

    `primes` must contain every prime <= sqrt(lo+count-1).
    """
    rem = lo + np.arange(count, dtype=np.int64)
    tau = np.ones(count, dtype=np.int64)
    mu = np.ones(count, dtype=np.int64)
    phi = np.ones(count, dtype=np.int64)
    omega = np.zeros(count, dtype=np.int64)
    hi = lo + count - 1
    for p in primes:
        p = int(p)
        if p * p > hi:
            break
        start = ((lo + p - 1) // p) * p
        idx = np.arange(start - lo, count, p)
        if idx.size == 0:
            continue
        r = rem[idx]
        e = np.zeros(idx.size, dtype=np.int64)
        f = np.ones(idx.size, dtype=np.int64)  # accumulates p^(e-1)
        m = (r % p) == 0
        while m.any():
            r[m] //= p
            e[m] += 1
            m = (r % p) == 0
            f[m] *= p
        rem[idx] = r
        tau[idx] *= e + 1
        omega[idx] += 1
        mu[idx] = np.where(e == 1, -mu[idx], 0)
        phi[idx] *= (p - 1) * f
    big = rem > 1  # leftover cofactor is a single prime > sqrt(hi)
    tau[big] *= 2
    omega[big] += 1
    mu[big] = -mu[big]
    phi[big] *= rem[big] - 1
    return tau, mu, phi, omega


def _window_l2_np(pre, pim, x, y, resync):
    """Sum of |window|^2 and the largest window modulus."""
    c = pre + 1j * pim
    off = y
    total = 0.0
    maxsq = 0.0
    n0 = 1 - y
    while n0 <= x:
        length = min(resync, x - n0 + 1)
        a = max(n0 + 1, 1)
        b = min(n0 + y, x)
        w0 = c[a + off:b + off + 1].sum() if b >= a else 0.0 + 0.0j
        if length > 1:
            adds = c[n0 + 1 + y + off:n0 + length - 1 + y + off + 1]
            subs = c[n0 + 1 + off:n0 + length - 1 + off + 1]
            w = np.empty(length, dtype=np.complex128)
            w[0] = w0
            np.cumsum(adds - subs, out=w[1:])
            w[1:] += w0
        else:
            w = np.array([w0], dtype=np.complex128)
        sq = w.real * w.real + w.imag * w.imag
        total += float(sq.sum())
        peak = float(sq.max())
        if peak > maxsq:
            maxsq = peak
        n0 += length
    return total, math.sqrt(maxsq), x + y


def _window_weighted_np(pre, pim, wre, wim, x, y, resync):
    """Sum over n of window(n) * weight(n); weight index j = n - (1-y)."""
    c = pre + 1j * pim
    wgt = wre + 1j * wim
    off = y
    acc = 0.0 + 0.0j
    n0 = 1 - y
    while n0 <= x:
        length = min(resync, x - n0 + 1)
        a = max(n0 + 1, 1)
        b = min(n0 + y, x)
        w0 = c[a + off:b + off + 1].sum() if b >= a else 0.0 + 0.0j
        if length > 1:
            adds = c[n0 + 1 + y + off:n0 + length - 1 + y + off + 1]
            subs = c[n0 + 1 + off:n0 + length - 1 + off + 1]
            w = np.empty(length, dtype=np.complex128)
            w[0] = w0
            np.cumsum(adds - subs, out=w[1:])
            w[1:] += w0
        else:
            w = np.array([w0], dtype=np.complex128)
        j0 = n0 - (1 - y)
        acc += (w * wgt[j0:j0 + length]).sum()
        n0 += length
    return acc


def _prefix_max_np(cre, cim):
    """Largest prefix-sum modulus and its 1-based position."""
    re = np.cumsum(cre)
    im = np.cumsum(cim)
    sq = re * re + im * im
    i = int(np.argmax(sq))
    return math.sqrt(float(sq[i])), i + 1


def _residue_sums_np(values, q):
    """Sums of values over positions m = 1..len grouped by m mod q."""
    x = values.shape[0]
    r = np.arange(1, x + 1, dtype=np.int64) % q
    return np.bincount(r, weights=values, minlength=q)


# ----------------------------------------------------------------------
# numba twins
# ----------------------------------------------------------------------

if NUMBA_ENABLED:

    @njit(cache=True)
    def _mult_segment_nb(lo, count, primes):
        rem = np.empty(count, dtype=np.int64)
        for i in range(count):
            rem[i] = lo + i
        tau = np.ones(count, dtype=np.int64)
        mu = np.ones(count, dtype=np.int64)
        phi = np.ones(count, dtype=np.int64)
        omega = np.zeros(count, dtype=np.int64)
        hi = lo + count - 1
        for p in primes:
            if p * p > hi:
                break
            start = ((lo + p - 1) // p) * p
            for m in range(start, hi + 1, p):
                i = m - lo
                e = 0
                r = rem[i]
                while r % p == 0:
                    r //= p
                    e += 1
                rem[i] = r
                tau[i] *= e + 1
                omega[i] += 1
                if e == 1:
                    mu[i] = -mu[i]
                else:
                    mu[i] = 0
                f = p - 1
                for _ in range(e - 1):
                    f *= p
                phi[i] *= f
        for i in range(count):
            r = rem[i]
            if r > 1:
                tau[i] *= 2
                omega[i] += 1
                mu[i] = -mu[i]
                phi[i] *= r - 1
        return tau, mu, phi, omega

    @njit(cache=True)
    def _window_l2_nb(pre, pim, x, y, resync):
        off = y
        n = 1 - y
        a = max(n + 1, 1)
        b = min(n + y, x)
        wre = 0.0
        wim = 0.0
        for m in range(a, b + 1):
            wre += pre[m + off]
            wim += pim[m + off]
        total = 0.0
        tcomp = 0.0
        maxsq = 0.0
        steps = 0
        while True:
            sq = wre * wre + wim * wim
            t = total + sq
            if abs(total) >= abs(sq):
                tcomp += (total - t) + sq
            else:
                tcomp += (sq - t) + total
            total = t
            if sq > maxsq:
                maxsq = sq
            if n == x:
                break
            n += 1
            steps += 1
            if steps % resync == 0:
                a = max(n + 1, 1)
                b = min(n + y, x)
                wre = 0.0
                wim = 0.0
                for m in range(a, b + 1):
                    wre += pre[m + off]
                    wim += pim[m + off]
            else:
                wre += pre[n + y + off] - pre[n + off]
                wim += pim[n + y + off] - pim[n + off]
        return total + tcomp, math.sqrt(maxsq), x + y

    @njit(cache=True)
    def _window_weighted_nb(pre, pim, wre_a, wim_a, x, y, resync):
        off = y
        n = 1 - y
        a = max(n + 1, 1)
        b = min(n + y, x)
        wre = 0.0
        wim = 0.0
        for m in range(a, b + 1):
            wre += pre[m + off]
            wim += pim[m + off]
        are = 0.0
        cre = 0.0
        aim = 0.0
        cim = 0.0
        steps = 0
        while True:
            j = n - (1 - y)
            tre = wre * wre_a[j] - wim * wim_a[j]
            tim = wre * wim_a[j] + wim * wre_a[j]
            t = are + tre
            if abs(are) >= abs(tre):
                cre += (are - t) + tre
            else:
                cre += (tre - t) + are
            are = t
            t = aim + tim
            if abs(aim) >= abs(tim):
                cim += (aim - t) + tim
            else:
                cim += (tim - t) + aim
            aim = t
            if n == x:
                break
            n += 1
            steps += 1
            if steps % resync == 0:
                a = max(n + 1, 1)
                b = min(n + y, x)
                wre = 0.0
                wim = 0.0
                for m in range(a, b + 1):
                    wre += pre[m + off]
                    wim += pim[m + off]
            else:
                wre += pre[n + y + off] - pre[n + off]
                wim += pim[n + y + off] - pim[n + off]
        return complex(are + cre, aim + cim)

    @njit(cache=True)
    def _prefix_max_nb(cre, cim):
        sre = 0.0
        qre = 0.0
        sim = 0.0
        qim = 0.0
        best = -1.0
        bidx = 0
        for i in range(cre.shape[0]):
            v = cre[i]
            t = sre + v
            if abs(sre) >= abs(v):
                qre += (sre - t) + v
            else:
                qre += (v - t) + sre
            sre = t
            v = cim[i]
            t = sim + v
            if abs(sim) >= abs(v):
                qim += (sim - t) + v
            else:
                qim += (v - t) + sim
            sim = t
            rr = sre + qre
            ii = sim + qim
            sq = rr * rr + ii * ii
            if sq > best:
                best = sq
                bidx = i
        return math.sqrt(best), bidx + 1

    @njit(cache=True)
    def _residue_sums_nb(values, q):
        out = np.zeros(q, dtype=np.float64)
        r = 1 % q
        for i in range(values.shape[0]):
            out[r] += values[i]
            r += 1
            if r == q:
                r = 0
        return out


IMPLEMENTATIONS = {
    "numpy": {
        "mult_segment": _mult_segment_np,
        "window_l2": _window_l2_np,
        "window_weighted": _window_weighted_np,
        "prefix_max": _prefix_max_np,
        "residue_sums": _residue_sums_np,
    }
}
if NUMBA_ENABLED:
    IMPLEMENTATIONS["numba"] = {
        "mult_segment": _mult_segment_nb,
        "window_l2": _window_l2_nb,
        "window_weighted": _window_weighted_nb,
        "prefix_max": _prefix_max_nb,
        "residue_sums": _residue_sums_nb,
    }

_ACTIVE = IMPLEMENTATIONS["numba" if NUMBA_ENABLED else "numpy"]


def mult_segment(lo, count, primes):
    return _ACTIVE["mult_segment"](lo, count, primes)


def window_l2(pre, pim, x, y, resync):
    return _ACTIVE["window_l2"](pre, pim, x, y, resync)


def window_weighted(pre, pim, wre, wim, x, y, resync):
    return _ACTIVE["window_weighted"](pre, pim, wre, wim, x, y, resync)


def prefix_max(cre, cim):
    return _ACTIVE["prefix_max"](cre, cim)


def residue_sums(values, q):
    return _ACTIVE["residue_sums"](values, q)

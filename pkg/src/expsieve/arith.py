"""Segmented sieving of the arithmetic functions used downstream.

A table holds one function's values on an integer range [lo, hi]:
von Mangoldt Lambda, divisor count tau, Moebius mu, Euler totient phi,
distinct-prime-factor count omega, the prime indicator, or the constant 1.
Values are float64; all integer-valued functions are exact in float64 up
to the configured range cap.
"""

import math
import struct
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from . import kernels

MAX_HI_DEFAULT = 10 ** 8
FACTOR_CAP = 10 ** 12
SEGMENT_DEFAULT = 1 << 20

_CACHE_MAGIC = b"EXPSVTBL"
_CACHE_HEADER = struct.Struct("<8sQqq")  # magic, kind, lo, hi (32 bytes)


class FnKind(IntEnum):
    VON_MANGOLDT = 0
    DIVISOR = 1
    MOEBIUS = 2
    EULER_PHI = 3
    OMEGA_DISTINCT = 4
    PRIME_INDICATOR = 5
    ONE = 6


_KIND_ALIASES = {
    "vonmangoldt": FnKind.VON_MANGOLDT,
    "von-mangoldt": FnKind.VON_MANGOLDT,
    "lambda": FnKind.VON_MANGOLDT,
    "divisor": FnKind.DIVISOR,
    "tau": FnKind.DIVISOR,
    "moebius": FnKind.MOEBIUS,
    "mu": FnKind.MOEBIUS,
    "eulerphi": FnKind.EULER_PHI,
    "phi": FnKind.EULER_PHI,
    "omega": FnKind.OMEGA_DISTINCT,
    "primes": FnKind.PRIME_INDICATOR,
    "prime-indicator": FnKind.PRIME_INDICATOR,
    "one": FnKind.ONE,
}


def parse_kind(name: str) -> FnKind:
    key = name.strip().lower().replace("_", "-")
    key2 = key.replace("-", "")
    if key in _KIND_ALIASES:
        return _KIND_ALIASES[key]
    if key2 in _KIND_ALIASES:
        return _KIND_ALIASES[key2]
    raise ValueError(f"unknown function kind {name!r}")


@dataclass(frozen=True)
class ArithTable:
    """Values of one arithmetic function on [lo, hi], immutable."""

    kind: FnKind
    lo: int
    hi: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.values.setflags(write=False)

    def __len__(self):
        return self.hi - self.lo + 1

    def value_at(self, n: int) -> float:
        if not self.lo <= n <= self.hi:
            raise ValueError(f"n={n} outside table range [{self.lo},{self.hi}]")
        return float(self.values[n - self.lo])

    def slice(self, a: int, b: int) -> np.ndarray:
        """Values on [a, b]; raises if not covered."""
        if a < self.lo or b > self.hi:
            raise ValueError(
                f"table gap: [{a},{b}] not inside [{self.lo},{self.hi}]"
            )
        return self.values[a - self.lo:b - self.lo + 1]

    def covers(self, a: int, b: int) -> bool:
        return self.lo <= a and b <= self.hi


def small_primes(limit: int) -> np.ndarray:
    """All primes <= limit, by a plain boolean sieve."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p::p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _composite_mask(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """True where n in [lo, hi] has a prime factor p <= sqrt(hi), p < n."""
    n = hi - lo + 1
    comp = np.zeros(n, dtype=bool)
    for p in base:
        p = int(p)
        if p * p > hi:
            break
        start = max(2 * p, ((lo + p - 1) // p) * p)
        if start > hi:
            continue
        comp[start - lo::p] = True
    return comp


def _lambda_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    out = np.zeros(hi - lo + 1, dtype=np.float64)
    comp = _composite_mask(lo, hi, base)
    # primes in the segment (anything >= 2 with no smaller base factor)
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    is_prime = (~comp) & (ns >= 2)
    out[is_prime] = np.log(ns[is_prime].astype(np.float64))
    # proper prime powers p^k, k >= 2, of base primes
    for p in base:
        p = int(p)
        pk = p * p
        lg = math.log(p)
        while pk <= hi:
            if pk >= lo:
                out[pk - lo] = lg
            pk *= p
    return out


def _prime_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    comp = _composite_mask(lo, hi, base)
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    return ((~comp) & (ns >= 2)).astype(np.float64)


def _segment_values(kind: FnKind, lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    count = hi - lo + 1
    if kind == FnKind.ONE:
        return np.ones(count, dtype=np.float64)
    if kind == FnKind.VON_MANGOLDT:
        return _lambda_segment(lo, hi, base)
    if kind == FnKind.PRIME_INDICATOR:
        return _prime_segment(lo, hi, base)
    tau, mu, phi, omega = kernels.mult_segment(lo, count, base)
    if kind == FnKind.DIVISOR:
        return tau.astype(np.float64)
    if kind == FnKind.MOEBIUS:
        return mu.astype(np.float64)
    if kind == FnKind.EULER_PHI:
        return phi.astype(np.float64)
    if kind == FnKind.OMEGA_DISTINCT:
        return omega.astype(np.float64)
    raise ValueError(f"unhandled kind {kind}")


def sieve_table(kind: FnKind, lo: int, hi: int, *,
                max_hi: int = MAX_HI_DEFAULT,
                segment: int = SEGMENT_DEFAULT) -> ArithTable:
    """Sieve `kind` over [lo, hi] segment by segment.

    O((hi-lo) log log hi + sqrt(hi)) time, O(hi-lo + sqrt(hi)) memory.
    """
    if lo < 1 or lo > hi:
        raise ValueError(f"invalid range [{lo},{hi}]")
    if hi > max_hi:
        raise ValueError(f"range too large: hi={hi} exceeds cap {max_hi}")
    base = small_primes(math.isqrt(hi))
    parts = []
    s = lo
    while s <= hi:
        e = min(s + segment - 1, hi)
        parts.append(_segment_values(kind, s, e, base))
        s = e + 1
    values = parts[0] if len(parts) == 1 else np.concatenate(parts)
    return ArithTable(kind, lo, hi, values)


def factorize(n: int) -> list:
    """Prime factorization [(p, e), ...] with p strictly increasing."""
    if n < 1 or n > FACTOR_CAP:
        raise ValueError(f"factorize: n={n} outside [1, {FACTOR_CAP}]")
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    # 30-wheel over residues coprime to 30
    p = 7
    offsets = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += offsets[i]
        i = (i + 1) % 8
    if n > 1:
        out.append((n, 1))
    return out


def eval_kind(kind: FnKind, n: int) -> float:
    """Single value from the trial-division factorization (test oracle)."""
    if kind == FnKind.ONE:
        return 1.0
    fac = factorize(n)
    if kind == FnKind.VON_MANGOLDT:
        return math.log(fac[0][0]) if len(fac) == 1 and n > 1 else 0.0
    if kind == FnKind.PRIME_INDICATOR:
        return 1.0 if len(fac) == 1 and fac[0][1] == 1 else 0.0
    if kind == FnKind.DIVISOR:
        out = 1
        for _, e in fac:
            out *= e + 1
        return float(out)
    if kind == FnKind.MOEBIUS:
        if any(e > 1 for _, e in fac):
            return 0.0
        return float((-1) ** len(fac))
    if kind == FnKind.EULER_PHI:
        out = 1
        for p, e in fac:
            out *= (p - 1) * p ** (e - 1)
        return float(out)
    if kind == FnKind.OMEGA_DISTINCT:
        return float(len(fac))
    raise ValueError(f"unhandled kind {kind}")


def write_cache(table: ArithTable, path) -> None:
    """Binary cache: 32-byte header then little-endian float64 values."""
    header = _CACHE_HEADER.pack(_CACHE_MAGIC, int(table.kind), table.lo, table.hi)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(table.values.astype("<f8", copy=False).tobytes())


def read_cache(path) -> ArithTable:
    with open(path, "rb") as fh:
        raw = fh.read(_CACHE_HEADER.size)
        if len(raw) != _CACHE_HEADER.size:
            raise ValueError(f"cache file {path}: truncated header")
        magic, kind, lo, hi = _CACHE_HEADER.unpack(raw)
        if magic != _CACHE_MAGIC:
            raise ValueError(f"cache file {path}: bad magic {magic!r}")
        values = np.frombuffer(fh.read(), dtype="<f8").astype(np.float64)
    if len(values) != hi - lo + 1:
        raise ValueError(f"cache file {path}: length mismatch")
    return ArithTable(FnKind(kind), lo, hi, values)

"""Dirichlet characters mod q and Gauss sums.

The unit group (Z/q)* is split into cyclic factors by CRT over the prime
powers of q: a primitive root generates the factor for odd p^k, and 2^k
(k >= 3) splits as <-1> x <5>.  A character is an exponent vector against
those factors and is evaluated through per-factor discrete-log tables, so
a table costs O(q * #factors) memory.  All root-of-unity values come from
one table of e(j/L), L = lcm of the factor orders.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .arith import ArithTable, factorize

MODULUS_CAP = 10 ** 5


def _primitive_root(p: int) -> int:
    phi = p - 1
    prime_divs = [f for f, _ in factorize(phi)]
    g = 2
    while True:
        if all(pow(g, phi // f, p) != 1 for f in prime_divs):
            return g
        g += 1


def _powers_mod(g: int, d: int, mod: int) -> np.ndarray:
    """[g^0, g^1, ..., g^(d-1)] mod `mod`, by doubling blocks."""
    seq = np.empty(d, dtype=np.int64)
    seq[0] = 1 % mod
    filled = 1
    cur = g % mod
    while filled < d:
        take = min(filled, d - filled)
        seq[filled:filled + take] = (seq[:take] * cur) % mod
        filled += take
        cur = (cur * cur) % mod
    return seq


def _factor_dlogs(q: int):
    """Cyclic factors of (Z/q)* as (generator, order, p^k, dlog table over
    [0, p^k), -1 on non-units).  2^k with k >= 3 contributes the pair
    <-1> x <5>, whose two tables come from one joint enumeration."""
    out = []
    for p, e in factorize(q):
        pe = p ** e
        if p == 2:
            if e == 1:
                continue  # trivial factor
            if e == 2:
                tbl = np.full(4, -1, dtype=np.int64)
                tbl[1] = 0
                tbl[3] = 1
                out.append((3, 2, 4, tbl))
            else:
                d5 = pe // 4
                pow5 = _powers_mod(5, d5, pe)
                sign = np.full(pe, -1, dtype=np.int64)
                tval = np.full(pe, -1, dtype=np.int64)
                sign[pow5] = 0
                tval[pow5] = np.arange(d5, dtype=np.int64)
                neg = pe - pow5
                sign[neg] = 1
                tval[neg] = np.arange(d5, dtype=np.int64)
                out.append((pe - 1, 2, pe, sign))
                out.append((5, d5, pe, tval))
        else:
            g = _primitive_root(p)
            if e >= 2 and pow(g, p - 1, p * p) == 1:
                g += p
            d = pe // p * (p - 1)
            powg = _powers_mod(g, d, pe)
            tbl = np.full(pe, -1, dtype=np.int64)
            tbl[powg] = np.arange(d, dtype=np.int64)
            out.append((g, d, pe, tbl))
    return out


@dataclass
class CharacterTable:
    """The full group of phi(q) Dirichlet characters mod q."""

    q: int
    generators: list  # [(generator, order), ...]
    exponents: list   # exponent vectors, all-zero (principal) first
    _orders: np.ndarray = field(repr=False)
    _dlogs: np.ndarray = field(repr=False)     # shape (factors, q), -1 invalid
    _coprime: np.ndarray = field(repr=False)   # bool mask over [0, q)
    _L: int = 1
    _roots: np.ndarray = field(default=None, repr=False)
    _index: dict = field(default=None, repr=False)
    _gauss_cache: dict = field(default_factory=dict, repr=False)

    @property
    def char_count(self) -> int:
        return len(self.exponents)

    @property
    def principal_index(self) -> int:
        return 0

    def index_of(self, vec) -> int:
        return self._index[tuple(vec)]

    def conj_index(self, idx: int) -> int:
        vec = self.exponents[idx]
        return self._index[tuple((-c) % d for c, d in zip(vec, self._orders))]

    def chi_row(self, idx: int) -> np.ndarray:
        """chi values on all residues 0..q-1 (zero off the units)."""
        vec = self.exponents[idx]
        expo = np.zeros(self.q, dtype=np.int64)
        for c, d, dl in zip(vec, self._orders, self._dlogs):
            if c:
                expo += (c * (self._L // int(d))) * dl
        row = self._roots[expo % self._L]
        row[~self._coprime] = 0.0
        return row

    def chi_value(self, idx: int, n: int) -> complex:
        r = n % self.q
        if not self._coprime[r]:
            return 0j
        vec = self.exponents[idx]
        e = 0
        for c, d, dl in zip(vec, self._orders, self._dlogs):
            e += c * (self._L // int(d)) * int(dl[r])
        return complex(self._roots[e % self._L])


def build_characters(q: int) -> CharacterTable:
    """Character group mod q with discrete-log evaluation tables."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if q > MODULUS_CAP:
        raise ValueError(f"q too large: {q} exceeds cap {MODULUS_CAP}")
    residues = np.arange(q, dtype=np.int64)
    coprime = np.gcd(residues, q) == 1
    factors = _factor_dlogs(q)
    dlogs = []
    gens = []
    orders = []
    for g, d, pe, table in factors:
        dlogs.append(table[residues % pe])
        gens.append((g, d))
        orders.append(d)
    orders_arr = np.array(orders, dtype=np.int64)
    L = 1
    for d in orders:
        L = L * d // math.gcd(L, d)
    roots = np.exp(2j * np.pi * np.arange(L, dtype=np.float64) / L)
    exps = list(itertools.product(*[range(d) for d in orders]))
    tab = CharacterTable(
        q=q,
        generators=gens,
        exponents=exps,
        _orders=orders_arr,
        _dlogs=np.array(dlogs, dtype=np.int64).reshape(len(factors), q),
        _coprime=coprime,
        _L=L,
        _roots=roots,
        _index={vec: i for i, vec in enumerate(exps)},
    )
    return tab


def gauss_sum(tab: CharacterTable, chi_index: int) -> complex:
    """G(chi) = sum over (b,q)=1 of e(b/q) chi(b), direct phi(q)-term sum."""
    cached = tab._gauss_cache.get(chi_index)
    if cached is not None:
        return cached
    q = tab.q
    roots_q = np.exp(2j * np.pi * np.arange(q, dtype=np.float64) / q)
    val = complex(np.sum(tab.chi_row(chi_index) * roots_q))
    tab._gauss_cache[chi_index] = val
    return val


def psi_chi(table: ArithTable, tab: CharacterTable, chi_index: int,
            x: int) -> complex:
    """sum_{n<=x} Lambda(n) chi(n) through residue-class sums."""
    if not table.covers(1, x):
        raise ValueError(
            f"table gap: need [1,{x}], table holds [{table.lo},{table.hi}]"
        )
    sums = kernels.residue_sums(np.ascontiguousarray(table.slice(1, x)), tab.q)
    return complex(np.dot(tab.chi_row(chi_index), sums))


def reconstruct_additive(tab: CharacterTable, a: int, n: int) -> complex:
    """(1/phi(q)) sum over chi of chi(a) G(conj chi) chi(n); equals e(an/q)
    for a, n coprime to q."""
    q = tab.q
    if math.gcd(a, q) != 1 or math.gcd(n, q) != 1:
        raise ValueError(f"a={a} and n={n} must be coprime to q={q}")
    total = 0j
    an = (a * n) % q
    for idx in range(tab.char_count):
        total += tab.chi_value(idx, an) * gauss_sum(tab, tab.conj_index(idx))
    return total / tab.char_count

"""Exact Diophantine approximation of the phase alpha.

Alpha is realized once as a big-rational continued-fraction convergent
P/Q with a caller-chosen denominator floor; every membership decision
downstream (approximation quality, major-arc sets, mediant families)
is then made in exact integer arithmetic on that realization.  No
floating-point comparison ever decides set contents.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import FnKind, sieve_table
from .constants import PI_DIGITS

FLOOR_CAP = 1 << 256
SQUAREFREE_SCAN_CAP = 10 ** 6
MEDIANT_MIN_RATIO = 8  # default lower bound for Q/s in mediant_family


def _floor_frac(f: Fraction) -> int:
    return f.numerator // f.denominator


def _ceil_frac(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


@dataclass(frozen=True)
class AlphaSource:
    """Which number alpha is: 'rational', 'sqrt', 'golden', 'e' or 'pi'."""

    kind: str
    value: object = None  # Fraction for 'rational', int d for 'sqrt'

    def __str__(self):
        if self.kind == "rational":
            return f"{self.value.numerator}/{self.value.denominator}"
        if self.kind == "sqrt":
            return f"sqrt{self.value}"
        return self.kind


def parse_alpha_source(text: str) -> AlphaSource:
    t = text.strip().lower()
    if t in ("golden", "golden-ratio", "phi"):
        return AlphaSource("golden")
    if t in ("e", "euler-e"):
        return AlphaSource("e")
    if t == "pi":
        return AlphaSource("pi")
    if t.startswith("sqrt:"):
        return AlphaSource("sqrt", int(t[5:]))
    if t.startswith("sqrt"):
        return AlphaSource("sqrt", int(t[4:]))
    if t.startswith("rational:"):
        t = t[len("rational:"):]
    if "/" in t:
        num, den = t.split("/", 1)
        return AlphaSource("rational", Fraction(int(num), int(den)))
    return AlphaSource("rational", Fraction(int(t), 1))


@dataclass(frozen=True)
class AlphaSpec:
    """A realized alpha: exact big-rational convergent P/Q with Q >= floor
    (for non-rational sources), or the rational itself."""

    source: AlphaSource
    p: int
    q: int
    floor: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def is_rational(self) -> bool:
        return self.source.kind == "rational"

    def __float__(self):
        return self.p / self.q if self.q < (1 << 52) else float(self.fraction)


@dataclass(frozen=True)
class ConvergentSeq:
    partial_quotients: list
    convergents: list  # list of Fraction


@dataclass(frozen=True)
class MajorArcSet:
    """All reduced a/q with q <= Q and |alpha - a/q| <= 1/(6y)."""

    alpha: AlphaSpec
    Q: int
    y: int
    fractions: list

    def to_json_dict(self) -> dict:
        return {
            "Q": self.Q,
            "y": self.y,
            "fractions": [
                {"a": f.numerator, "q": f.denominator} for f in self.fractions
            ],
        }


# ----------------------------------------------------------------------
# partial-quotient streams per source
# ----------------------------------------------------------------------

def _quotients_rational(f: Fraction):
    p, q = f.numerator, f.denominator
    while q:
        a, r = divmod(p, q)
        yield a
        p, q = q, r


def _quotients_golden():
    while True:
        yield 1


def _quotients_sqrt(d: int):
    a0 = math.isqrt(d)
    if a0 * a0 == d:
        raise ValueError(f"sqrt({d}): d is a perfect square")
    yield a0
    m, den, a = 0, 1, a0
    while True:
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        yield a


def _quotients_e():
    yield 2
    k = 1
    while True:
        yield 1
        yield 2 * k
        yield 1
        k += 1


def _quotients_pi():
    # Interval Euclid on the shipped digits: emit quotients only while
    # both interval endpoints agree, so each one is certified for pi.
    digits = PI_DIGITS.replace(".", "")
    scale = 10 ** (len(digits) - 1)
    lo = Fraction(int(digits), scale)
    hi = lo + Fraction(1, scale)
    while True:
        a_lo = _floor_frac(lo)
        a_hi = _floor_frac(hi)
        if a_lo != a_hi or lo == a_lo:
            return
        yield a_lo
        lo, hi = 1 / (hi - a_lo), 1 / (lo - a_lo)


def _quotient_stream(source: AlphaSource):
    if source.kind == "rational":
        return _quotients_rational(source.value)
    if source.kind == "golden":
        return _quotients_golden()
    if source.kind == "sqrt":
        return _quotients_sqrt(source.value)
    if source.kind == "e":
        return _quotients_e()
    if source.kind == "pi":
        return _quotients_pi()
    raise ValueError(f"unknown alpha source {source.kind!r}")


def realize_alpha(source: AlphaSource, floor: int) -> AlphaSpec:
    """Smallest continued-fraction convergent of `source` with q >= floor.

    For a rational source the realization is the number itself.
    """
    if floor < 1 or floor > FLOOR_CAP:
        raise ValueError(f"floor too large: {floor} (cap 2^256)")
    if source.kind == "rational":
        f = source.value
        return AlphaSpec(source, f.numerator, f.denominator, floor)
    p0, q0 = 1, 0
    p1, q1 = 0, 1
    for a in _quotient_stream(source):
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        if q0 >= floor:
            return AlphaSpec(source, p0, q0, floor)
    raise ValueError(
        f"floor too large: no certified convergent of {source} reaches {floor}"
    )


def continued_fraction(alpha: AlphaSpec, K: int) -> ConvergentSeq:
    """First K partial quotients and convergents of the realization."""
    if K < 1:
        raise ValueError("K must be >= 1")
    quots = []
    convs = []
    p0, q0 = 1, 0
    p1, q1 = 0, 1
    for a in _quotients_rational(alpha.fraction):
        quots.append(a)
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        convs.append(Fraction(p0, q0))
        if len(quots) == K:
            break
    return ConvergentSeq(quots, convs)


def _nearest_coprime_numerators(t: Fraction, q: int):
    """The coprime-to-q integers bracketing t most closely (one per side)."""
    fl = _floor_frac(t)
    out = []
    a = fl
    while math.gcd(a, q) != 1:
        a -= 1
    out.append(a)
    a = fl + 1
    while math.gcd(a, q) != 1:
        a += 1
    out.append(a)
    return out


def approx_quality(alpha: AlphaSpec, x: int):
    """Least R such that some reduced a/q with q <= R has
    |alpha - a/q| <= R/(q x); returns (R, witness fraction).

    Scans q <= isqrt(x); a candidate a/q contributes
    max(q, q*x*|alpha - a/q|), and the Dirichlet bound guarantees the
    minimum is attained there.  Exact rational arithmetic throughout.
    """
    if x < 2:
        raise ValueError("x must be >= 2")
    af = alpha.fraction
    best = None
    witness = None
    for q in range(1, math.isqrt(x) + 1):
        t = af * q
        for a in _nearest_coprime_numerators(t, q):
            cand = Fraction(a, q)
            cost = max(Fraction(q), q * x * abs(af - cand))
            if best is None or cost < best:
                best = cost
                witness = cand
    return best, witness


def major_arcs(alpha: AlphaSpec, Q: int, y: int) -> MajorArcSet:
    """The set of reduced a/q, q <= Q, |alpha - a/q| <= 1/(6y), exact."""
    if Q < 1 or y < 1:
        raise ValueError("Q and y must be >= 1")
    af = alpha.fraction
    half = Fraction(1, 6 * y)
    out = []
    for q in range(1, Q + 1):
        t = af * q
        a_min = _ceil_frac(t - q * half)
        a_max = _floor_frac(t + q * half)
        for a in range(a_min, a_max + 1):
            if math.gcd(a, q) == 1:
                out.append(Fraction(a, q))
    return MajorArcSet(alpha, Q, y, out)


def _bezout_pair(u: int, s: int):
    """v, t with v*s - t*u = 1 and s <= t < 2s (t is defined mod s)."""
    g, a, b = _ext_gcd(s, u % s)
    if g != 1:
        raise ValueError("u/s must be reduced")
    # a*s + b*(u mod s) = 1  =>  (a - b*(u//s))*s + b*u = 1
    v0, t0 = a - b * (u // s), -b
    k = 1 - (t0 // s)  # shift t into [s, 2s)
    return v0 + k * u, t0 + k * s


def _ext_gcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    return old_r, old_s, old_t


def mediant_family(us: Fraction, Q: int, min_ratio: int = MEDIANT_MIN_RATIO):
    """Weighted mediants (a*u + b*v)/(a*s + b*t) between u/s and its
    Bezout partner v/t, for coprime weights Q/(s+t) < a, b <= 2Q/(s+t).

    Every member is reduced, has denominator in (Q, 2Q], and lies within
    2/s^2 of u/s.  Requires Q >= min_ratio * s.
    """
    u, s = us.numerator, us.denominator
    if Q < min_ratio * s:
        raise ValueError(f"Q too small: need Q >= {min_ratio}*s = {min_ratio * s}")
    v, t = _bezout_pair(u, s)
    w = s + t
    lo = Q // w + 1
    hi = (2 * Q) // w
    out = []
    for a in range(lo, hi + 1):
        for b in range(lo, hi + 1):
            if math.gcd(a, b) == 1:
                out.append(Fraction(a * u + b * v, a * s + b * t))
    out.sort(key=lambda f: (f.denominator, f.numerator))
    return out


def squarefree_major_arcs(alpha: AlphaSpec, Qlo: int, s: int):
    """Exhaustive scan: all reduced a/q with Qlo < q <= 2*Qlo, q squarefree
    and |alpha - a/q| <= 2/s^2.  Returns (count, fractions)."""
    if Qlo > SQUAREFREE_SCAN_CAP:
        raise ValueError(f"range too large: Qlo={Qlo} exceeds {SQUAREFREE_SCAN_CAP}")
    mu = sieve_table(FnKind.MOEBIUS, Qlo + 1, 2 * Qlo)
    P, D = alpha.p, alpha.q
    s2 = s * s
    lo_num = P * s2 - 2 * D
    hi_num = P * s2 + 2 * D
    den = D * s2
    out = []
    for q in range(Qlo + 1, 2 * Qlo + 1):
        if mu.values[q - mu.lo] == 0.0:
            continue
        a_min = -((-q * lo_num) // den)
        a_max = (q * hi_num) // den
        for a in range(a_min, a_max + 1):
            if math.gcd(a, q) == 1:
                out.append(Fraction(a, q))
    return len(out), out


def farey(order: int):
    """Farey fractions of the given order in [0, 1), sorted."""
    out = {Fraction(0)}
    for q in range(1, order + 1):
        for a in range(1, q):
            if math.gcd(a, q) == 1:
                out.add(Fraction(a, q))
    return sorted(out)


def admissible_window(alpha: AlphaSpec, eps_prime, s_min: int):
    """Smallest convergent denominator s >= s_min of the source, its
    numerator u, and the integer window [ceil(eps'*s^2), floor(s^2/12)]."""
    if alpha.is_rational:
        raise ValueError("admissible window needs a non-rational source")
    eps = Fraction(eps_prime)
    if not 0 < eps <= Fraction(1, 12):
        raise ValueError("eps_prime must lie in (0, 1/12]")
    p0, q0 = 1, 0
    p1, q1 = 0, 1
    for a in _quotient_stream(alpha.source):
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        if q0 >= s_min:
            s, u = q0, p0
            y_lo = _ceil_frac(eps * s * s)
            y_hi = (s * s) // 12
            if y_lo > y_hi:
                raise ValueError(f"empty window for s={s}: [{y_lo},{y_hi}]")
            return s, u, (y_lo, y_hi)
        if q0 > FLOOR_CAP:
            break
    raise ValueError(f"no certified convergent of {alpha.source} reaches {s_min}")

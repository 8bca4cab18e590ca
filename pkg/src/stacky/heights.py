"""Height functions on Bmu_n(Q).

Three heights are provided for a Kummer class a:

* the vector-bundle height (1/2) log |disc|,
* the quasi-discriminant height, a product of local factors whose
  (n^2 - n^2/r)-th power recovers |disc| exactly,
* raising-function heights prod_v q_v^{c_v}, which for the discriminant
  raising datum equal |disc| on the nose.

Also here: the sector table of Bmu_n with its (a, b) invariants, the
ramification sum edd, the linear test function D_{a'}, and the closed-form
height growth exponent 2/(n - n/r) with a divergence witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import FactoredInteger, primes_up_to, smallest_prime_factor
from .kummer import KummerClass, discriminant

__all__ = [
    "HeightValue",
    "SectorTable",
    "RaisingFunction",
    "eszb_height",
    "darda_local",
    "darda_global",
    "sectors",
    "index_raising_function",
    "abc_invariants",
    "raising_height",
    "edd",
    "D_aprime",
    "a_eszb_closed",
    "a_eszb_witness",
]


@dataclass(frozen=True)
class HeightValue:
    """A logarithmic height, with an exact base^power form when available."""

    log_value: float
    exact_base: FactoredInteger | None = None
    exact_power: Fraction | None = None

    def to_json(self) -> dict:
        out: dict = {"log_value": self.log_value}
        if self.exact_base is not None:
            out["exact_form"] = {
                "base": self.exact_base.abs_value,
                "power": f"{self.exact_power.numerator}/{self.exact_power.denominator}",
            }
        return out


def _exact_height(base: FactoredInteger, power: Fraction) -> HeightValue:
    log_value = float(power) * sum(e * math.log(p) for p, e in base.factors)
    return HeightValue(log_value, base, power)


def eszb_height(cls: KummerClass, mode: str = "exact"):
    """(1/2) log |disc|; interval mode returns a (lo, hi) pair."""
    res = discriminant(cls, mode)
    if mode == "interval" and not res.is_exact:
        lo, hi = res.lo, res.hi
        return (_exact_height(lo, Fraction(1, 2)), _exact_height(hi, Fraction(1, 2)))
    return _exact_height(res.lo, Fraction(1, 2))


def _darda_denominator(n: int) -> int:
    r = smallest_prime_factor(n)
    return n * n - n * n // r


def darda_local(cls: KummerClass, place, mode: str = "exact") -> float:
    """Local quasi-discriminant factor at a finite prime or at "inf".

    Finite p: |a|_p^(1/n) * p^(e_p / (n^2 - n^2/r)) with e_p the local
    discriminant exponent; the single real place contributes |a|^(1/n).
    """
    a = cls.a
    if place == "inf" or place == math.inf:
        return a.abs_value ** (1.0 / cls.n)
    p = place
    res = discriminant(cls, mode)
    e_p = 0
    for d in res.locals:
        if d.p == p:
            e_p = d.exponent
    v = a.valuation(p)
    N = _darda_denominator(cls.n)
    return p ** (-v / cls.n) * p ** (e_p / N)


def darda_global(cls: KummerClass, mode: str = "exact"):
    """Product of the local factors over all places.

    Computed in exact exponent arithmetic: the archimedean |a|^(1/n)
    cancels the finite |a|_v^(1/n) by the product formula, leaving
    |disc|^(1/(n^2 - n^2/r)) exactly.  Interval mode returns (lo, hi).
    """
    N = _darda_denominator(cls.n)
    res = discriminant(cls, mode)
    exps_lo: dict[int, Fraction] = {}
    exps_hi: dict[int, Fraction] = {}
    # finite places: -v_p(a)/n from |a|_v^(1/n), e_p/N from the local disc
    for p, v in cls.a.factors:
        exps_lo[p] = exps_lo.get(p, Fraction(0)) - Fraction(v, cls.n)
        exps_hi[p] = exps_hi.get(p, Fraction(0)) - Fraction(v, cls.n)
    for d in res.locals:
        exps_lo[d.p] = exps_lo.get(d.p, Fraction(0)) + Fraction(d.lo, N)
        exps_hi[d.p] = exps_hi.get(d.p, Fraction(0)) + Fraction(d.hi, N)
    # the real place: |a|^(1/n) = prod_p p^(v_p(a)/n)
    for p, v in cls.a.factors:
        exps_lo[p] += Fraction(v, cls.n)
        exps_hi[p] += Fraction(v, cls.n)
    lo = _combine(exps_lo, N)
    if exps_lo == exps_hi:
        return lo
    return (lo, _combine(exps_hi, N))


def _combine(exps: dict[int, Fraction], N: int) -> HeightValue:
    # all residual exponents share denominator N; express as base^(1/N)
    base_exps = {}
    for p, q in sorted(exps.items()):
        k = q * N
        if k.denominator != 1:
            raise ArithmeticError("local exponents do not combine integrally")
        if k:
            base_exps[p] = int(k)
    base = FactoredInteger(1, tuple(sorted(base_exps.items())))
    return _exact_height(base, Fraction(1, N))


@dataclass(frozen=True)
class SectorTable:
    """Twisted sectors j = 1..n-1 of Bmu_n with their index values."""

    n: int
    entries: tuple[tuple[int, int], ...]  # (j, n - gcd(j, n))

    def min_value(self) -> int:
        return min(c for _, c in self.entries)


def sectors(n: int) -> SectorTable:
    if n < 2:
        raise ValueError("n must be >= 2")
    return SectorTable(n, tuple((j, n - math.gcd(j, n)) for j in range(1, n)))


@dataclass(frozen=True)
class RaisingFunction:
    """Nonnegative weights on the twisted sectors of Bmu_n (c(0) = 0)."""

    n: int
    values: tuple[float, ...]  # value at sector j = position j - 1

    def __post_init__(self):
        if len(self.values) != self.n - 1:
            raise ValueError("need one value per twisted sector")
        if any(v < 0 for v in self.values):
            raise ValueError("raising values must be nonnegative")


def index_raising_function(n: int) -> RaisingFunction:
    tab = sectors(n)
    return RaisingFunction(n, tuple(float(c) for _, c in tab.entries))


def abc_invariants(c: RaisingFunction) -> tuple[Fraction, int]:
    """a = 1/min twisted value, b = multiplicity of the minimum."""
    if any(v == 0 for v in c.values):
        raise ValueError("raising function vanishes on a twisted sector")
    vmin = min(c.values)
    b = sum(1 for v in c.values if v == vmin)
    a = (
        Fraction(1, int(vmin))
        if float(vmin).is_integer()
        else Fraction(1 / vmin).limit_denominator(10**9)
    )
    return a, b


def raising_height(cls: KummerClass, mode: str = "exact") -> HeightValue:
    """Height for the discriminant raising datum: exactly |disc|."""
    res = discriminant(cls, mode)
    if not res.is_exact:
        raise ValueError("raising height needs exact local exponents")
    return _exact_height(res.value, Fraction(1))


def edd(cls: KummerClass, mode: str = "exact") -> float:
    """Sum of log p over the primes ramified in the torsor (p | disc)."""
    res = discriminant(cls, mode)
    return sum(math.log(d.p) for d in res.locals if d.lo > 0)


def D_aprime(cls: KummerClass, a_prime: float, mode: str = "exact") -> float:
    """a' * (1/2) log |disc| - edd, the height-vs-ramification test function."""
    h = eszb_height(cls, mode)
    if isinstance(h, tuple):
        raise ValueError("D_aprime needs a point value; use exact or tame mode")
    return a_prime * h.log_value - edd(cls, mode)


def a_eszb_closed(n: int) -> Fraction:
    """Threshold exponent 2/(n - n/r), r the smallest prime factor of n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    r = smallest_prime_factor(n)
    return Fraction(2, n - n // r)


def a_eszb_witness(n: int, a_prime: float, k: int) -> float:
    """D_{a'} of the witness class built from the first k primes coprime to n.

    The witness is a = (p_1 ... p_k)^(n/r); below the threshold exponent
    the returned sequence in k decreases without bound.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    r = smallest_prime_factor(n)
    ps = []
    limit = 64
    while len(ps) < k:
        ps = [p for p in primes_up_to(limit) if n % p != 0][:k]
        limit *= 2
    exps = tuple((p, n // r) for p in ps)
    cls = KummerClass(n, FactoredInteger(1, exps))
    return D_aprime(cls, a_prime, mode="tame")

"""Points of Bmu_n(Q): canonical classes a in Q^x/(Q^x)^n, irreducibility of
t^n - a, and the discriminant of the etale algebra Q[t]/(t^n - a).

Tame primes (p not dividing n) contribute exactly p^(n - gcd(v_p(a), n)).
Wild primes (p | n) are exact for n in {2, 3} via the classical quadratic
and pure-cubic formulas; for other n the wild exponent is reported as an
interval [0, v_p(n^n a^(n-1))].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import FactoredInteger, factor, nth_power_free_reduce, smallest_prime_factor

__all__ = [
    "KummerClass",
    "LocalDiscData",
    "DiscriminantResult",
    "canonical",
    "is_irreducible",
    "tame_local",
    "wild_local",
    "discriminant",
]

MODES = ("exact", "tame", "interval")
EXACT_WILD_DEGREES = (2, 3)


@dataclass(frozen=True)
class KummerClass:
    """Canonical n-th-power-free representative of a class in Q^x/(Q^x)^n."""

    n: int
    a: FactoredInteger

    @property
    def r(self) -> int:
        return smallest_prime_factor(self.n)

    @property
    def is_trivial(self) -> bool:
        return self.a.sign == 1 and not self.a.factors


def canonical(
    a: FactoredInteger | int, n: int, den: FactoredInteger | int | None = None
) -> KummerClass:
    """The canonical Kummer class of a (or a/den) for exponent n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return KummerClass(n, nth_power_free_reduce(a, n, den))


def is_irreducible(cls: KummerClass) -> bool:
    """Whether t^n - a is irreducible over Q.

    Fails exactly when a is a p-th power for some prime p | n, or when
    4 | n and a lies in -4 (Q^x)^4.
    """
    n, a = cls.n, cls.a
    m = n
    while m > 1:
        q = smallest_prime_factor(m)
        if _is_qth_power(a, q):
            return False
        while m % q == 0:
            m //= q
    if n % 4 == 0 and _in_minus_four_fourth_powers(a):
        return False
    return True


def _is_qth_power(a: FactoredInteger, q: int) -> bool:
    if a.sign < 0 and q == 2:
        return False
    return all(e % q == 0 for _, e in a.factors)


def _in_minus_four_fourth_powers(a: FactoredInteger) -> bool:
    if a.sign > 0:
        return False
    for p, e in a.factors:
        want = 2 if p == 2 else 0
        if e % 4 != want:
            return False
    return a.valuation(2) % 4 == 2


@dataclass(frozen=True)
class LocalDiscData:
    """Local discriminant exponent at p: exact when lo == hi."""

    p: int
    kind: str  # "tame" or "wild"
    lo: int
    hi: int
    tame_d: int | None = None

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def exponent(self) -> int:
        if not self.exact:
            raise ValueError(f"wild exponent at {self.p} is only an interval")
        return self.lo


@dataclass(frozen=True)
class DiscriminantResult:
    exactness: str  # "exact" or "tame-exact-wild-interval"
    locals: tuple[LocalDiscData, ...]

    @property
    def lo(self) -> FactoredInteger:
        return FactoredInteger(1, tuple((d.p, d.lo) for d in self.locals if d.lo))

    @property
    def hi(self) -> FactoredInteger:
        return FactoredInteger(1, tuple((d.p, d.hi) for d in self.locals if d.hi))

    @property
    def is_exact(self) -> bool:
        return all(d.exact for d in self.locals)

    @property
    def value(self) -> FactoredInteger:
        if not self.is_exact:
            raise ValueError("discriminant is only known as an interval")
        return self.lo

    def log_abs(self) -> float:
        if not self.is_exact:
            raise ValueError("discriminant is only known as an interval")
        return sum(d.lo * math.log(d.p) for d in self.locals)

    def log_abs_interval(self) -> tuple[float, float]:
        lo = sum(d.lo * math.log(d.p) for d in self.locals)
        hi = sum(d.hi * math.log(d.p) for d in self.locals)
        return lo, hi

    def to_json(self) -> dict:
        out = {
            "exactness": self.exactness,
            "locals": [
                {
                    "p": d.p,
                    "kind": d.kind,
                    "exponent": [d.lo, d.hi] if not d.exact else d.lo,
                    **({"tame_d": d.tame_d} if d.tame_d is not None else {}),
                }
                for d in self.locals
            ],
        }
        if self.is_exact:
            out["value"] = self.value.abs_value
        else:
            out["value_interval"] = [self.lo.abs_value, self.hi.abs_value]
        return out


def tame_local(cls: KummerClass, p: int) -> LocalDiscData:
    """Exact exponent n - gcd(v_p(a), n) at a prime p not dividing n."""
    if cls.n % p == 0:
        raise ValueError(f"{p} divides n={cls.n}; use wild_local")
    v = cls.a.valuation(p)
    if v == 0:
        return LocalDiscData(p, "tame", 0, 0, tame_d=cls.n)
    d = math.gcd(v, cls.n)
    return LocalDiscData(p, "tame", cls.n - d, cls.n - d, tame_d=d)


def _wild_exponent_exact(cls: KummerClass, p: int) -> int:
    n, a = cls.n, cls.a
    if n == 2:
        # quadratic field/etale algebra: disc = a if a = 1 mod 4, else 4a;
        # for even a the factor v_2(a) = 1 of a is folded in here as well.
        if a.value % 4 == 1:
            return 0
        return 2 + a.valuation(2)
    # n == 3, cube-free a = h k^2: |disc| = 3 h^2 k^2 if a^2 = 1 mod 9,
    # else 27 h^2 k^2; the 3-part of h^2 k^2 (3 divides hk at most once)
    # is folded in when 3 | a.
    if a.value**2 % 9 == 1:
        return 1
    return 3 + (2 if a.valuation(3) else 0)


def wild_local(cls: KummerClass, p: int, mode: str = "exact") -> LocalDiscData:
    """Exponent at a prime p | n: exact for n in {2,3}, else an interval."""
    if cls.n % p != 0:
        raise ValueError(f"{p} does not divide n={cls.n}; use tame_local")
    if mode == "exact":
        if cls.n not in EXACT_WILD_DEGREES:
            raise ValueError(
                f"exact wild exponents supported only for n in {EXACT_WILD_DEGREES}"
            )
        e = _wild_exponent_exact(cls, p)
        return LocalDiscData(p, "wild", e, e)
    if mode == "interval":
        bound = cls.n * _val(cls.n, p) + (cls.n - 1) * cls.a.valuation(p)
        return LocalDiscData(p, "wild", 0, bound)
    raise ValueError(f"unknown wild mode {mode!r}")


def _val(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def discriminant(cls: KummerClass, mode: str = "exact") -> DiscriminantResult:
    """Assembled |disc| of Q[t]/(t^n - a) as a product of local exponents.

    mode "exact" requires n in {2,3}; "tame" sets wild exponents to zero;
    "interval" brackets the wild part by [0, v_p(n^n a^(n-1))].
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exact" and cls.n not in EXACT_WILD_DEGREES:
        raise ValueError(
            f"exact wild exponents supported only for n in {EXACT_WILD_DEGREES}"
        )
    n = cls.n
    wild_primes = sorted({p for p, _ in factor(n).factors})
    locals_: list[LocalDiscData] = []
    for p in wild_primes:
        if mode == "exact":
            locals_.append(wild_local(cls, p, "exact"))
        elif mode == "interval":
            locals_.append(wild_local(cls, p, "interval"))
        else:
            locals_.append(LocalDiscData(p, "wild", 0, 0))
    for p, _ in cls.a.factors:
        if n % p != 0:
            locals_.append(tame_local(cls, p))
    locals_.sort(key=lambda d: d.p)
    locals_ = [d for d in locals_ if d.hi > 0]
    exactness = "exact" if mode == "exact" else "tame-exact-wild-interval"
    return DiscriminantResult(exactness, tuple(locals_))

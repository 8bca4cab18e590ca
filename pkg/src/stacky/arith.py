"""Exact integer arithmetic: factorization, valuations, power-free reduction,
unit groups, and cyclotomic signatures.

Everything here works on plain Python integers and :class:`FactoredInteger`
values; all functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "FactoredInteger",
    "CyclotomicSignature",
    "factor",
    "is_prime",
    "valuation",
    "nth_power_free_reduce",
    "unit_group",
    "subgroup_generated",
    "cyclotomic_image",
    "smallest_prime_factor",
    "primes_up_to",
]

TRIAL_DIVISION_BOUND = 10**6

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24
# (comfortably covers the 2**64 contract).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class FactoredInteger:
    """A nonzero integer as sign times an ordered product of prime powers."""

    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            last = p

    @property
    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    @property
    def abs_value(self) -> int:
        return abs(self.value)

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
            if q > p:
                break
        return 0

    def __mul__(self, other: "FactoredInteger") -> "FactoredInteger":
        exps: dict[int, int] = dict(self.factors)
        for p, e in other.factors:
            exps[p] = exps.get(p, 0) + e
        return FactoredInteger(
            self.sign * other.sign,
            tuple(sorted((p, e) for p, e in exps.items() if e)),
        )

    def pow(self, k: int) -> "FactoredInteger":
        if k < 0:
            raise ValueError("negative powers leave the integers")
        sign = self.sign if k % 2 else 1
        return FactoredInteger(sign, tuple((p, e * k) for p, e in self.factors))

    def radical(self) -> int:
        r = 1
        for p, _ in self.factors:
            r *= p
        return r

    def to_json(self) -> dict:
        return {"sign": self.sign, "factors": [[p, e] for p, e in self.factors]}

    @classmethod
    def from_json(cls, obj: dict) -> "FactoredInteger":
        return cls(obj["sign"], tuple((int(p), int(e)) for p, e in obj["factors"]))

    @classmethod
    def one(cls) -> "FactoredInteger":
        return cls(1, ())

    def __str__(self) -> str:
        if not self.factors:
            return str(self.sign)
        body = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)
        return ("-" if self.sign < 0 else "") + body


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact below 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n, Brent's variant.

    Deterministic: cycles through fixed polynomial offsets until a factor
    splits off, which always happens for composite n.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, n):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")  # unreachable for composite n


def _factor_into(n: int, exps: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        exps[n] = exps.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factor_into(d, exps)
    _factor_into(n // d, exps)


def factor(m: int) -> FactoredInteger:
    """Exact factorization of a nonzero integer.

    Trial division up to 10**6, then Brent-Pollard rho with a deterministic
    Miller-Rabin certificate for the remaining cofactor.
    """
    if m == 0:
        raise ValueError("cannot factor zero")
    sign = 1 if m > 0 else -1
    n = abs(m)
    exps: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            n //= p
            exps[p] = exps.get(p, 0) + 1
    p = 7
    # wheel over residues coprime to 30
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= n and p <= TRIAL_DIVISION_BOUND:
        while n % p == 0:
            n //= p
            exps[p] = exps.get(p, 0) + 1
        p += increments[i]
        i = (i + 1) % 8
    if n > 1:
        _factor_into(n, exps)
    return FactoredInteger(sign, tuple(sorted(exps.items())))


def valuation(m: FactoredInteger | int, p: int) -> int:
    """Exponent of the prime p in m (0 if absent)."""
    if isinstance(m, int):
        if m == 0:
            raise ValueError("valuation of zero is undefined")
        v = 0
        m = abs(m)
        while m % p == 0:
            m //= p
            v += 1
        return v
    return m.valuation(p)


def nth_power_free_reduce(
    num: FactoredInteger | int,
    n: int,
    den: FactoredInteger | int | None = None,
) -> FactoredInteger:
    """Canonical integer representative of num/den in Q^x / (Q^x)^n.

    Exponents are reduced into [0, n); a denominator prime p^e contributes
    p^(n-e).  When n is odd the sign is forced positive (-1 is an n-th
    power); when n is even the sign of the input is kept.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if isinstance(num, int):
        num = factor(num)
    if den is None:
        den = FactoredInteger.one()
    elif isinstance(den, int):
        den = factor(den)
    exps: dict[int, int] = {}
    for p, e in num.factors:
        exps[p] = exps.get(p, 0) + e
    for p, e in den.factors:
        exps[p] = exps.get(p, 0) - e
    reduced = tuple(
        sorted((p, e % n) for p, e in exps.items() if e % n)
    )
    sign = num.sign * den.sign
    if n % 2 == 1:
        sign = 1
    return FactoredInteger(sign, reduced)


def unit_group(m: int) -> list[int]:
    """Units of Z/mZ as sorted residues in [1, m]; unit_group(1) == [1]."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if m == 1:
        return [1]
    return [u for u in range(1, m + 1) if math.gcd(u, m) == 1]


def subgroup_generated(m: int, generators: Iterable[int]) -> list[int]:
    """Subgroup of (Z/mZ)^x generated by the given residues, sorted."""
    gens = []
    for g in generators:
        g %= m
        if m > 1 and math.gcd(g, m) != 1:
            raise ValueError(f"generator {g} not coprime to {m}")
        gens.append(g if m > 1 else 1)
    if m == 1:
        return [1]
    group = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % m
            if y not in group:
                group.add(y)
                frontier.append(y)
    return sorted(group)


@dataclass(frozen=True)
class CyclotomicSignature:
    """A subgroup H of (Z/mZ)^x recording a cyclotomic character image."""

    modulus: int
    units: tuple[int, ...]

    def __post_init__(self):
        m = self.modulus
        us = set(self.units)
        if (1 if m == 1 else 1) not in us:
            raise ValueError("signature must contain 1")
        for u in us:
            if m > 1 and math.gcd(u, m) != 1:
                raise ValueError(f"residue {u} not coprime to {m}")
            for v in us:
                if (u * v % m if m > 1 else 1) not in us:
                    raise ValueError("units not closed under multiplication")


def cyclotomic_image(m: int, field: str | tuple | Sequence[int] = "Q") -> CyclotomicSignature:
    """Image of the base field's cyclotomic character in (Z/mZ)^x.

    ``field`` is "Q", ("zeta", d) for the d-th cyclotomic field, or an
    explicit list of generating residues.
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if field == "Q" or field == ("zeta", 1):
        return CyclotomicSignature(m, tuple(unit_group(m)))
    if isinstance(field, tuple) and len(field) == 2 and field[0] == "zeta":
        d = field[1]
        big = math.lcm(d, m)
        image = sorted({u % m if m > 1 else 1 for u in unit_group(big) if u % d == 1 % d})
        return CyclotomicSignature(m, tuple(image))
    # explicit generators
    return CyclotomicSignature(m, tuple(subgroup_generated(m, field)))


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("n must be >= 2")
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit by a byte sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, b in enumerate(sieve) if b]

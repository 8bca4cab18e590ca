"""Finite permutation groups stored by full element list.

Groups here are tiny (census-relevant groups have at most a few thousand
elements), so closure is breadth-first multiplication and conjugacy is
tested by brute force.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .arith import CyclotomicSignature

__all__ = [
    "Permutation",
    "PermGroup",
    "ConjClass",
    "identity",
    "from_cycles",
    "parse_group_spec",
    "closure",
    "index",
    "conjugacy_classes",
    "power_action",
    "gamma_orbits",
    "is_transitive",
]

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the image tuple (1-based)."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError("images must be a permutation of {1..n}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def pow(self, k: int) -> "Permutation":
        n = self.degree
        result = identity(n)
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition including fixed points, smallest element first."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def cycle_string(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)


def identity(degree: int) -> Permutation:
    return Permutation(tuple(range(1, degree + 1)))


def from_cycles(cycles: list[tuple[int, ...]], degree: int | None = None) -> Permutation:
    n = degree or max((max(c) for c in cycles if c), default=1)
    images = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b
    return Permutation(tuple(images))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation like "(1 2 3)(4 5 6)"; commas also accepted."""
    cycles = []
    rest = text.strip()
    if not _CYCLE_RE.sub("", rest).strip() == "":
        raise ValueError(f"malformed cycle notation: {text!r}")
    for body in _CYCLE_RE.findall(rest):
        entries = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
        if entries:
            cycles.append(tuple(entries))
    return from_cycles(cycles, degree)


def parse_group_spec(spec: str) -> list[Permutation]:
    """Parse a generator list like "(1 2 3)(4 5 6); (1 4)(2 5)(3 6)".

    An optional "deg=N" entry fixes the degree; otherwise it is inferred
    from the largest moved point.
    """
    degree = None
    parts = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = re.fullmatch(r"deg\s*=\s*(\d+)", chunk)
        if m:
            degree = int(m.group(1))
        else:
            parts.append(chunk)
    if degree is None:
        degree = max(
            (int(tok) for part in parts for tok in re.findall(r"\d+", part)),
            default=1,
        )
    return [parse_permutation(part, degree) for part in parts]


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def exponent(self) -> int:
        return math.lcm(*(g.order() for g in self.elements))


@dataclass(frozen=True)
class ConjClass:
    """A conjugacy class: representative, member positions, Malle index."""

    representative: Permutation
    members: tuple[int, ...]
    index: int


def closure(generators: list[Permutation], cap: int = DEFAULT_CAP) -> PermGroup:
    """Close a generator list under products, breadth-first and deterministic."""
    if not generators:
        raise ValueError("need at least one generator")
    degree = generators[0].degree
    for g in generators:
        if g.degree != degree:
            raise ValueError("generators must share a degree")
    e = identity(degree)
    seen = {e.images}
    order = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y.images not in seen:
                    seen.add(y.images)
                    order.append(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ValueError(f"group exceeds element cap {cap}")
        frontier = nxt
    return PermGroup(degree, tuple(generators), tuple(order))


def index(g: Permutation) -> int:
    """Degree minus number of cycles (fixed points count as cycles)."""
    return g.degree - len(g.cycles())


def conjugacy_classes(G: PermGroup) -> list[ConjClass]:
    """Partition of G into conjugacy classes, deterministically ordered.

    Each class is grown by conjugating with the generators until closed,
    so the total work is linear in |G| times the generator count.  Classes
    are sorted by (index, minimal member images); the representative is
    the lexicographically smallest member.
    """
    pos = {g.images: i for i, g in enumerate(G.elements)}
    conj = [(h, h.inverse()) for h in G.generators]
    unassigned = set(range(len(G.elements)))
    classes = []
    while unassigned:
        i = min(unassigned)
        members = {i}
        frontier = [G.elements[i]]
        while frontier:
            g = frontier.pop()
            for h, hinv in conj:
                c = h * g * hinv
                j = pos[c.images]
                if j not in members:
                    members.add(j)
                    frontier.append(c)
        members_t = tuple(sorted(members))
        rep = min((G.elements[j] for j in members_t), key=lambda p: p.images)
        classes.append(ConjClass(rep, members_t, index(rep)))
        unassigned -= members
    classes.sort(key=lambda c: (c.index, c.representative.images))
    return classes


def class_of(classes: list[ConjClass], G: PermGroup, g: Permutation) -> ConjClass:
    pos = {h.images: i for i, h in enumerate(G.elements)}
    i = pos[g.images]
    for cls in classes:
        if i in cls.members:
            return cls
    raise ValueError("element not in group")


def power_action(
    G: PermGroup, cls: ConjClass, k: int, classes: list[ConjClass] | None = None
) -> ConjClass:
    """The class of representative^k, for k coprime to the group exponent."""
    if math.gcd(k, G.exponent) != 1:
        raise ValueError(f"k={k} not coprime to group exponent {G.exponent}")
    if classes is None:
        classes = conjugacy_classes(G)
    return class_of(classes, G, cls.representative.pow(k))


def gamma_orbits(
    G: PermGroup,
    sig: CyclotomicSignature,
    classes: list[ConjClass],
    all_classes: list[ConjClass] | None = None,
) -> list[list[ConjClass]]:
    """Orbits of the given classes under g -> g^u for u in the signature."""
    if sig.modulus != G.exponent:
        raise ValueError(
            f"signature modulus {sig.modulus} != group exponent {G.exponent}"
        )
    if all_classes is None:
        all_classes = conjugacy_classes(G)
    pos = {h.images: i for i, h in enumerate(G.elements)}
    by_member = {}
    for c in all_classes:
        for j in c.members:
            by_member[j] = c

    def act(c: ConjClass, u: int) -> ConjClass:
        return by_member[pos[c.representative.pow(u).images]]

    remaining = {c.members: c for c in classes}
    orbits = []
    while remaining:
        first = min(remaining.values(), key=lambda c: c.representative.images)
        orbit = {}
        for u in sig.units:
            img = act(first, u)
            orbit[img.members] = img
        for m in orbit:
            remaining.pop(m, None)
        orbits.append(sorted(orbit.values(), key=lambda c: c.representative.images))
    return orbits


def is_transitive(G: PermGroup) -> bool:
    """True iff the group has a single orbit on {1..n}."""
    reached = {1}
    frontier = [1]
    while frontier:
        i = frontier.pop()
        for g in G.generators:
            j = g(i)
            if j not in reached:
                reached.add(j)
                frontier.append(j)
    return len(reached) == G.degree

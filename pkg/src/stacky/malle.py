"""Counting invariants of transitive permutation groups.

The a-invariant is the reciprocal of the minimal index of a nonidentity
element; the b-invariant counts orbits of the minimal-index conjugacy
classes under the cyclotomic action of the base field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import CyclotomicSignature, cyclotomic_image
from .permgrp import (
    ConjClass,
    PermGroup,
    Permutation,
    conjugacy_classes,
    from_cycles,
    gamma_orbits,
    is_transitive,
)

__all__ = [
    "MalleInvariants",
    "a_invariant",
    "minimal_classes",
    "b_invariant",
    "malle_invariants",
    "group_preset",
    "PRESETS",
]


@dataclass(frozen=True)
class MalleInvariants:
    a: Fraction
    min_index: int
    b: int
    minimal_classes: tuple[str, ...]
    orbits: tuple[tuple[str, ...], ...]


def _require_transitive_nontrivial(G: PermGroup) -> None:
    if G.order <= 1:
        raise ValueError("invariants are undefined for the trivial group")
    if not is_transitive(G):
        raise ValueError("group must act transitively")


def a_invariant(G: PermGroup) -> Fraction:
    """1 / min{index(g) : g != 1}."""
    _require_transitive_nontrivial(G)
    return Fraction(1, min_index(G))


def min_index(G: PermGroup) -> int:
    _require_transitive_nontrivial(G)
    return min(c.index for c in conjugacy_classes(G) if c.index > 0)


def minimal_classes(G: PermGroup) -> list[ConjClass]:
    classes = conjugacy_classes(G)
    m = min(c.index for c in classes if c.index > 0)
    return [c for c in classes if c.index == m]


def b_invariant(G: PermGroup, sig: CyclotomicSignature) -> int:
    """Number of cyclotomic orbits of the minimal-index classes."""
    _require_transitive_nontrivial(G)
    orbits = gamma_orbits(G, sig, minimal_classes(G))
    return len(orbits)


def malle_invariants(G: PermGroup, sig: CyclotomicSignature) -> MalleInvariants:
    mins = minimal_classes(G)
    orbits = gamma_orbits(G, sig, mins)
    return MalleInvariants(
        a=a_invariant(G),
        min_index=mins[0].index,
        b=len(orbits),
        minimal_classes=tuple(c.representative.cycle_string() for c in mins),
        orbits=tuple(
            tuple(c.representative.cycle_string() for c in orbit) for orbit in orbits
        ),
    )


def _cyclic_regular(n: int) -> list[Permutation]:
    if not 2 <= n <= 30:
        raise ValueError("cyclic_regular supports 2 <= n <= 30")
    return [from_cycles([tuple(range(1, n + 1))], n)]


def _symmetric(n: int) -> list[Permutation]:
    if not 2 <= n <= 8:
        raise ValueError("symmetric supports 2 <= n <= 8")
    gens = [from_cycles([(1, 2)], n)]
    if n > 2:
        gens.append(from_cycles([tuple(range(1, n + 1))], n))
    return gens


def _kluners_c3wrc2() -> list[Permutation]:
    return [
        from_cycles([(1, 2, 3)], 6),
        from_cycles([(4, 5, 6)], 6),
        from_cycles([(1, 4), (2, 5), (3, 6)], 6),
    ]


PRESETS = {
    "cyclic_regular": _cyclic_regular,
    "symmetric": _symmetric,
    "kluners_c3wrc2": _kluners_c3wrc2,
}


def group_preset(name: str) -> list[Permutation]:
    """Generators for a named group: cyclic_regular(n), symmetric(n),
    or kluners_c3wrc2.  Also accepts colon form "cyclic_regular:6"."""
    name = name.strip()
    if ":" in name:
        base, _, arg = name.partition(":")
        base = base.strip()
        if base not in PRESETS:
            raise ValueError(f"unknown preset {base!r}")
        if base == "kluners_c3wrc2":
            return PRESETS[base]()
        return PRESETS[base](int(arg))
    m = name.replace(" ", "")
    import re

    paren = re.fullmatch(r"(\w+)\((\d+)\)", m)
    if paren:
        base, arg = paren.group(1), int(paren.group(2))
        if base not in PRESETS:
            raise ValueError(f"unknown preset {base!r}")
        return PRESETS[base](arg)
    if name in PRESETS and name == "kluners_c3wrc2":
        return PRESETS[name]()
    raise ValueError(f"unknown preset {name!r}")


def signature_for_field(G: PermGroup, field: str | tuple | list) -> CyclotomicSignature:
    """Cyclotomic signature at the group exponent for the given base field."""
    return cyclotomic_image(G.exponent, field)

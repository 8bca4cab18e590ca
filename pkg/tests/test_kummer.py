import math

import pytest

from stacky.arith import factor
from stacky.kummer import (
    KummerClass,
    canonical,
    discriminant,
    is_irreducible,
    tame_local,
    wild_local,
)


def test_canonical_reduction():
    assert canonical(8, 3).is_trivial
    assert canonical(12, 2).a.value == 3
    assert canonical(-8, 2).a.value == -2
    assert canonical(-8, 3).a.value == 1
    assert canonical(5, 3, den=40).a.value == 1  # 5/40 = 1/8 ~ 1
    assert canonical(2, 4).r == 2
    assert canonical(15, 9).r == 3
    with pytest.raises(ValueError):
        canonical(2, 1)


def test_irreducibility_small_cases():
    assert is_irreducible(canonical(2, 2))
    assert not is_irreducible(KummerClass(2, factor(4)))
    assert not is_irreducible(KummerClass(4, factor(-4)))  # t^4 + 4 splits
    assert not is_irreducible(KummerClass(4, factor(4)))
    assert is_irreducible(KummerClass(4, factor(-1)))
    assert not is_irreducible(KummerClass(8, factor(16)))
    assert is_irreducible(KummerClass(6, factor(72)))
    assert not is_irreducible(KummerClass(6, factor(8)))  # 8 is a cube
    assert not is_irreducible(KummerClass(12, factor(-64)))  # -64 in -4 (Q^x)^4


def test_tame_local():
    cls = canonical(factor(2**1 * 3**2), 4)
    assert tame_local(cls, 3).exponent == 4 - 2
    assert tame_local(cls, 5).exponent == 0
    assert tame_local(cls, 7).tame_d == 4
    with pytest.raises(ValueError):
        tame_local(cls, 2)


def test_wild_local_quadratic():
    assert wild_local(canonical(5, 2), 2).exponent == 0
    assert wild_local(canonical(-3, 2), 2).exponent == 0
    assert wild_local(canonical(3, 2), 2).exponent == 2
    assert wild_local(canonical(2, 2), 2).exponent == 3
    assert wild_local(canonical(-2, 2), 2).exponent == 3
    with pytest.raises(ValueError):
        wild_local(canonical(3, 2), 3)


def test_wild_local_cubic():
    assert wild_local(canonical(10, 3), 3).exponent == 1
    assert wild_local(canonical(17, 3), 3).exponent == 1
    assert wild_local(canonical(2, 3), 3).exponent == 3
    assert wild_local(canonical(3, 3), 3).exponent == 5
    assert wild_local(canonical(9, 3), 3).exponent == 5


def test_wild_local_interval_bound():
    d = wild_local(canonical(2, 4), 2, mode="interval")
    assert (d.lo, d.hi) == (0, 4 * 2 + 3 * 1)
    with pytest.raises(ValueError):
        wild_local(canonical(2, 4), 2, mode="exact")


def test_discriminant_known_quadratic_fields():
    for a, d in [(2, 8), (3, 12), (5, 5), (-1, 4), (-3, 3), (6, 24), (-7, 7)]:
        assert discriminant(canonical(a, 2)).value.abs_value == d


def test_discriminant_known_cubic_fields():
    for a, d in [(2, 108), (3, 243), (5, 675), (10, 300), (17, 867), (9, 243)]:
        assert discriminant(canonical(a, 3)).value.abs_value == d


def test_discriminant_trivial_classes():
    assert discriminant(canonical(1, 2)).value.abs_value == 1
    # Q[t]/(t^3 - 1) = Q x Q(zeta_3) ramifies at 3
    assert discriminant(canonical(1, 3)).value.abs_value == 3


def test_discriminant_modes():
    cls = canonical(6, 4)
    with pytest.raises(ValueError):
        discriminant(cls, "exact")
    tame = discriminant(cls, "tame")
    assert tame.is_exact
    assert tame.value.abs_value == 3**3  # only the tame prime 3 counts
    inter = discriminant(cls, "interval")
    assert not inter.is_exact
    assert inter.lo.abs_value == 27
    assert inter.hi.abs_value == 27 * 2 ** (8 + 3)
    lo, hi = inter.log_abs_interval()
    assert lo <= hi
    with pytest.raises(ValueError):
        inter.value
    with pytest.raises(ValueError):
        discriminant(cls, "fuzzy")


def test_discriminant_exact_log():
    res = discriminant(canonical(10, 3))
    assert math.isclose(res.log_abs(), math.log(300))


def test_discriminant_json():
    obj = discriminant(canonical(3, 2)).to_json()
    assert obj["exactness"] == "exact"
    assert obj["value"] == 12
    assert {(d["p"], d["kind"]) for d in obj["locals"]} == {(2, "wild"), (3, "tame")}
    obj = discriminant(canonical(2, 4), "interval").to_json()
    assert "value_interval" in obj

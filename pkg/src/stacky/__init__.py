"""Cyclic torsors over Q: Kummer classes, discriminant heights, counting
invariants of permutation groups, and desk-scale counting censuses."""

from .arith import (
    CyclotomicSignature,
    FactoredInteger,
    cyclotomic_image,
    factor,
    nth_power_free_reduce,
    unit_group,
    valuation,
)
from .census import CountLadder, FitResult, LadderSpec, count, enumerate_cyclic, enumerate_mu, fit
from .heights import (
    D_aprime,
    HeightValue,
    RaisingFunction,
    SectorTable,
    a_eszb_closed,
    a_eszb_witness,
    abc_invariants,
    darda_global,
    darda_local,
    edd,
    eszb_height,
    index_raising_function,
    raising_height,
    sectors,
)
from .kummer import DiscriminantResult, KummerClass, canonical, discriminant, is_irreducible
from .malle import MalleInvariants, a_invariant, b_invariant, group_preset, malle_invariants
from .permgrp import (
    ConjClass,
    PermGroup,
    Permutation,
    closure,
    conjugacy_classes,
    gamma_orbits,
    index,
    is_transitive,
    power_action,
)

__version__ = "0.1.0"

"""Exact local computations around tame deformations, Tamagawa factors and Iwasawa invariants."""

from .isogeny_selmer import (
    CotorsionReport,
    LocalLatticeAction,
    dual_isogeny_check,
    inertia_invariants,
    lattice_swap,
    tamagawa,
)
from .iwasawa import (
    DistinguishedPoly,
    ElementaryModule,
    FinitePresentation,
    LambdaSeries,
    SubmodulePair,
    g_from_presentation,
    invariants,
    matsuno_check,
    mu_zero_equivalences,
    weierstrass_prepare,
)
from .ledger import (
    GlobalTerms,
    LiftingPlan,
    LocalConditionEntry,
    cok_bound,
    greenberg_bk_bounds,
    minimal_n,
    plan_bound,
    selmer_growth_bound,
    wiles_balance,
)
from .local_cohom import AdAction, AdCocycle, CocycleSpace, cocycle_space, h_dims, n_space, shape_obstruction_check
from .padic import Mat2, PAdicApprox, SnfDecomposition, hensel_sqrt_one, snf2, teichmuller
from .tame_deform import (
    ConditionType,
    ShapeParams,
    TameDeformation,
    TrivialPrime,
    build_condition_member,
    check_relation,
    is_in_condition,
    lift_small_extension,
    obstruction_defect,
    twist,
)

__version__ = "0.1.0"

__all__ = [
    "AdAction",
    "AdCocycle",
    "CocycleSpace",
    "ConditionType",
    "CotorsionReport",
    "DistinguishedPoly",
    "ElementaryModule",
    "FinitePresentation",
    "GlobalTerms",
    "LambdaSeries",
    "LiftingPlan",
    "LocalConditionEntry",
    "LocalLatticeAction",
    "Mat2",
    "PAdicApprox",
    "ShapeParams",
    "SnfDecomposition",
    "SubmodulePair",
    "TameDeformation",
    "TrivialPrime",
    "build_condition_member",
    "check_relation",
    "cocycle_space",
    "cok_bound",
    "dual_isogeny_check",
    "g_from_presentation",
    "greenberg_bk_bounds",
    "h_dims",
    "hensel_sqrt_one",
    "inertia_invariants",
    "invariants",
    "is_in_condition",
    "lattice_swap",
    "lift_small_extension",
    "matsuno_check",
    "minimal_n",
    "mu_zero_equivalences",
    "n_space",
    "obstruction_defect",
    "plan_bound",
    "selmer_growth_bound",
    "shape_obstruction_check",
    "snf2",
    "tamagawa",
    "teichmuller",
    "twist",
    "weierstrass_prepare",
    "wiles_balance",
]

"""Dimension bookkeeping for Selmer-rank lower bounds.

Global inputs that cannot be computed at desk scale appear as named axioms
in the trace; everything else is integer arithmetic checked against the
local computations of the other modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .local_cohom import AdAction, cohomology_dims, h_dims, n_space
from .tame_deform import ConditionType, ShapeParams, TrivialPrime

INFINITY = "inf"
Source = Literal["computed", "table", "config"]

# per-prime cap on delta away from p, and the default cap at p
DELTA_CAP = 2
DELTA_P_DEFAULT = 6
KLR_BUDGET = 2


@dataclass(frozen=True)
class LocalConditionEntry:
    place: str  # a prime as decimal text, or "inf"
    dim_n: int
    h0: int
    source: Source = "table"

    def __post_init__(self):
        if self.dim_n < 0 or self.h0 < 0:
            raise ValueError("dimensions must be non-negative")
        if self.place == INFINITY and self.dim_n != 0:
            raise ValueError("the archimedean local condition is zero")

    @property
    def excess(self) -> int:
        return self.dim_n - self.h0


@dataclass(frozen=True)
class GlobalTerms:
    h0_m: int = 0
    h0_mstar: int = 0


def wiles_balance(entries: Iterable[LocalConditionEntry], globals_: GlobalTerms = GlobalTerms()) -> int:
    """dim Selmer - dim dual Selmer from local condition sizes."""
    entries = list(entries)
    if not any(e.place == INFINITY for e in entries):
        raise ValueError("archimedean place required")
    return globals_.h0_m - globals_.h0_mstar + sum(e.excess for e in entries)


def partial_balance(entries: Iterable[LocalConditionEntry]) -> int:
    """The local sum alone, with no archimedean requirement."""
    return sum(e.excess for e in entries)


def standard_table(p: int, h0_p: int, others: dict[int, int]) -> list[LocalConditionEntry]:
    """Condition sizes h0+1 at p, h0 at other finite primes, 0 at infinity (h0 = 1)."""
    entries = [LocalConditionEntry(str(p), h0_p + 1, h0_p)]
    entries += [LocalConditionEntry(str(ell), h0, h0) for ell, h0 in sorted(others.items())]
    entries.append(LocalConditionEntry(INFINITY, 0, 1))
    return entries


def trivial_prime_entry(prime: TrivialPrime, ctype: ConditionType = ConditionType.III) -> LocalConditionEntry:
    """Entry for a trivial prime with both numbers computed from the cocycle spaces."""
    y = prime.p if ctype.base == "ram" else 0
    params = ShapeParams.of(prime.p, 2, 0, y)
    dim_n = n_space(ctype, params, prime).dim
    h0 = h_dims(AdAction.trivial(prime))[0]
    return LocalConditionEntry(str(prime.ell), dim_n, h0, "computed")


def ramified_quotient_dim(prime: TrivialPrime) -> int:
    return cohomology_dims(AdAction.trivial(prime)).ramified_quotient


def selmer_growth_bound(base_dim: int, added_trivial_primes: int, per_prime: int = 3) -> int:
    """Allowing ramification at each new trivial prime adds at most ``per_prime``."""
    if base_dim < 0 or added_trivial_primes < 0:
        raise ValueError("dimensions must be non-negative")
    return base_dim + per_prime * added_trivial_primes


def greenberg_bk_bounds(
    g_aprime: int,
    deltas: Sequence[int],
    delta_p: int | None = None,
    delta_p_bound: int = DELTA_P_DEFAULT,
) -> int:
    """Lower bound g - sum of deltas; ``deltas`` are the primes away from p."""
    if any(d < 0 or d > DELTA_CAP for d in deltas):
        raise ValueError("violates δ-bounds")
    if delta_p is not None and not 0 <= delta_p <= delta_p_bound:
        raise ValueError("violates δ-bounds")
    return g_aprime - sum(deltas) - (delta_p or 0)


def cok_bound(m_star: int, h0_torsion: int) -> int:
    if m_star < 0 or h0_torsion < 0:
        raise ValueError("inputs must be non-negative")
    return m_star + h0_torsion


@dataclass(frozen=True)
class TraceStep:
    claim: str
    value: int | None
    cite: str
    kind: Literal["computed", "axiom"] = "computed"

    def record(self) -> dict:
        return {"claim": self.claim, "value": self.value, "cite": self.cite, "kind": self.kind}


@dataclass(frozen=True)
class LiftingPlan:
    p: int
    n: int
    m_prime: int
    t_size: int
    z_max: int = KLR_BUDGET
    delta_p_bound: int = DELTA_P_DEFAULT

    def __post_init__(self):
        if min(self.n, self.m_prime, self.t_size, self.z_max) < 0:
            raise ValueError("plan entries must be non-negative")
        if self.z_max > KLR_BUDGET:
            raise ValueError("the auxiliary prime budget can only be lowered")
        if self.delta_p_bound not in (4, 6):
            raise ValueError("delta_p bound is 4 or 6")


@dataclass(frozen=True)
class PlanReport:
    m_bound: int
    selmer_growth_bound: int
    intermediate_bound: int
    final_bound: int
    trace: tuple[TraceStep, ...] = field(default=())

    def record(self) -> dict:
        return {
            "m_bound": self.m_bound,
            "selmer_growth_bound": self.selmer_growth_bound,
            "intermediate_bound": self.intermediate_bound,
            "final_bound": self.final_bound,
        }


def _final(n: int, m_prime: int, t_size: int, z_max: int) -> int:
    return n // 2 - 2 * (max(m_prime, 3) + 3 * z_max + 2 + t_size)


def _intermediate(n: int, m_bound: int, t_size: int) -> int:
    return n // 2 - 2 * (m_bound + t_size) - 4


def plan_bound(plan: LiftingPlan) -> PlanReport:
    base = max(plan.m_prime, 3)
    growth = selmer_growth_bound(base, plan.z_max)
    m_bound = growth
    final = _final(plan.n, plan.m_prime, plan.t_size, plan.z_max)
    middle = _intermediate(plan.n, m_bound, plan.t_size)
    if final != middle:
        raise ArithmeticError("bound forms disagree")
    trace = (
        TraceStep("dim of the unrestricted-at-p Selmer group before auxiliary primes", base, "config input, floored at 3"),
        TraceStep(
            "killing the dual Selmer group with at most z_max trivial primes",
            plan.z_max,
            "Khare-Larsen-Ramakrishna lifting",
            "axiom",
        ),
        TraceStep("each trivial prime adds at most 3 to the Selmer dimension", growth, "local Euler characteristic"),
        TraceStep("the second Tate-Shafarevich group of the enlarged set vanishes", None, "Poitou-Tate duality", "axiom"),
        TraceStep("Type III primes give generators of the dual Selmer module", plan.n // 2, "Nakayama's lemma", "axiom"),
        TraceStep(f"delta at p bounded by {plan.delta_p_bound}", plan.delta_p_bound, "Tamagawa number comparison"),
        TraceStep("deltas vanish at the swapped Type II/III primes", 0, "inertia invariants of the swapped lattice"),
        TraceStep("lower bound on the Bloch-Kato Selmer p-rank", final, "Greenberg-Wiles formula and Cassels cokernel bound"),
    )
    return PlanReport(m_bound, growth, middle, final, trace)


def minimal_n(target: int, m_prime: int, t_size: int, z_max: int = KLR_BUDGET) -> int:
    """Smallest n with final bound at least ``target``."""
    need = target + 2 * (max(m_prime, 3) + 3 * z_max + 2 + t_size)
    n = max(0, 2 * need)
    while n > 0 and _final(n - 1, m_prime, t_size, z_max) >= target:
        n -= 1
    return n

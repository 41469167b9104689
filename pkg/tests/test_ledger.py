import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tameselmer.isogeny_selmer import lattice_swap, random_action, tamagawa
from tameselmer.ledger import (
    INFINITY,
    GlobalTerms,
    LiftingPlan,
    LocalConditionEntry,
    cok_bound,
    greenberg_bk_bounds,
    minimal_n,
    partial_balance,
    plan_bound,
    ramified_quotient_dim,
    selmer_growth_bound,
    standard_table,
    trivial_prime_entry,
    wiles_balance,
)
from tameselmer.local_cohom import AdAction, h_dims
from tameselmer.tame_deform import ConditionType, TrivialPrime


def test_standard_table_balances():
    table = standard_table(5, 1, {3: 2, 7: 0, 11: 3})
    assert wiles_balance(table) == 0


def test_empty_local_set_without_infinity():
    with pytest.raises(ValueError, match="archimedean place required"):
        wiles_balance([])
    assert wiles_balance([LocalConditionEntry(INFINITY, 0, 0)]) == 0


def test_archimedean_condition_is_zero():
    with pytest.raises(ValueError):
        LocalConditionEntry(INFINITY, 1, 1)


@pytest.mark.parametrize("ctype", list(ConditionType))
def test_trivial_prime_entries_are_balanced(prime, ctype):
    table = standard_table(prime.p, 1, {})
    entry = trivial_prime_entry(prime, ctype)
    assert (entry.dim_n, entry.h0) == (3, 3)
    assert entry.h0 == h_dims(AdAction.trivial(prime))[0]
    assert wiles_balance(table + [entry]) == wiles_balance(table)


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=12), st.integers(0, 12), st.integers(0, 3), st.integers(0, 3))
def test_balance_is_additive(pairs, cut, h0m, h0ms):
    entries = [LocalConditionEntry(str(i + 2), a, b) for i, (a, b) in enumerate(pairs)]
    left, right = entries[:cut], entries[cut:]
    inf = LocalConditionEntry(INFINITY, 0, 1)
    g = GlobalTerms(h0m, h0ms)
    assert wiles_balance(entries + [inf], g) == partial_balance(left) + partial_balance(right) - 1 + h0m - h0ms


@pytest.mark.parametrize("base, added, expected", [(3, 2, 9), (0, 0, 0), (5, 1, 8)])
def test_selmer_growth(base, added, expected):
    assert selmer_growth_bound(base, added) == expected


def test_growth_per_prime_matches_cohomology(prime):
    assert ramified_quotient_dim(prime) == 3


@pytest.mark.parametrize(
    "g, deltas, delta_p, expected",
    [(10, [0, 0, 0], None, 10), (10, [0] * 20, None, 10), (7, [2], 6, -1)],
)
def test_greenberg_examples(g, deltas, delta_p, expected):
    assert greenberg_bk_bounds(g, deltas, delta_p=delta_p) == expected


@pytest.mark.parametrize("deltas, delta_p, bound", [([3], None, 6), ([2, 6], None, 6), ([], 7, 6), ([], 5, 4)])
def test_greenberg_rejects_large_deltas(deltas, delta_p, bound):
    with pytest.raises(ValueError, match="δ-bounds"):
        greenberg_bk_bounds(5, deltas, delta_p=delta_p, delta_p_bound=bound)


def test_swapped_deltas_feed_zero():
    rng = random.Random(8)
    prime = TrivialPrime(5, 11)
    deltas = [tamagawa(lattice_swap(random_action(prime, 4, rng, ctype=rng.choice([ConditionType.II, ConditionType.III]), psi_sigma=1))).delta for _ in range(20)]
    assert deltas == [0] * 20
    assert greenberg_bk_bounds(10, deltas) == 10


@pytest.mark.parametrize("m_star, h0, expected", [(0, 0, 0), (2, 0, 2), (3, 1, 4)])
def test_cok_bound(m_star, h0, expected):
    assert cok_bound(m_star, h0) == expected


@pytest.mark.parametrize(
    "n, m_prime, t_size, final",
    [(100, 0, 10, 8), (0, 0, 0, -22), (101, 0, 10, 8), (60, 5, 1, 2)],
)
def test_plan_bound_examples(n, m_prime, t_size, final):
    rep = plan_bound(LiftingPlan(5, n, m_prime, t_size))
    assert rep.final_bound == final
    assert rep.m_bound == max(m_prime, 3) + 6
    assert rep.intermediate_bound == final


def test_plan_trace_marks_axioms():
    rep = plan_bound(LiftingPlan(5, 100, 0, 10))
    kinds = {s.kind for s in rep.trace}
    assert kinds == {"computed", "axiom"}
    assert all(s.cite for s in rep.trace)
    assert rep.trace[-1].value == rep.final_bound


def test_minimal_n():
    assert minimal_n(10, 0, 10) == 104
    assert plan_bound(LiftingPlan(5, 103, 0, 10)).final_bound < 10


def test_budget_only_lowers():
    with pytest.raises(ValueError):
        LiftingPlan(5, 10, 0, 0, z_max=3)
    assert plan_bound(LiftingPlan(5, 100, 0, 10, z_max=1)).final_bound == 14
    with pytest.raises(ValueError):
        LiftingPlan(5, 10, 0, 0, delta_p_bound=5)


def test_bound_forms_agree_on_sweep():
    rng = random.Random(0)
    for _ in range(10_000):
        plan = LiftingPlan(5, rng.randrange(500), rng.randrange(40), rng.randrange(40))
        rep = plan_bound(plan)
        assert rep.final_bound == rep.intermediate_bound


@given(st.integers(0, 400), st.integers(0, 30), st.integers(0, 30))
def test_plan_monotone(n, m_prime, t_size):
    base = plan_bound(LiftingPlan(5, n, m_prime, t_size)).final_bound
    assert plan_bound(LiftingPlan(5, n + 1, m_prime, t_size)).final_bound >= base
    assert plan_bound(LiftingPlan(5, n, m_prime + 1, t_size)).final_bound <= base
    assert plan_bound(LiftingPlan(5, n, m_prime, t_size + 1)).final_bound <= base


@given(st.integers(-20, 60), st.integers(0, 20), st.integers(0, 20))
def test_minimal_n_is_minimal(target, m_prime, t_size):
    n = minimal_n(target, m_prime, t_size)
    assert plan_bound(LiftingPlan(5, n, m_prime, t_size)).final_bound >= target
    if n > 0:
        assert plan_bound(LiftingPlan(5, n - 1, m_prime, t_size)).final_bound < target

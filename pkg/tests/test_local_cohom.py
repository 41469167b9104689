import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tameselmer.local_cohom import (
    AdAction,
    AdCocycle,
    CocycleSpace,
    base_space,
    cocycle_space,
    cohomology_dims,
    h0_dim,
    h_dims,
    is_cocycle,
    n_space,
    q_space,
    ramified_ratio,
    shape_obstruction_check,
    standard_cocycles,
    type_iii_pattern,
    unramified_cocycles,
)
from tameselmer.padic import Mat2
from tameselmer.tame_deform import ConditionType, ShapeParams, TrivialPrime

P5 = TrivialPrime(5, 11)


def intersection_dim(a: CocycleSpace, b: CocycleSpace) -> int:
    count = sum(1 for f in a.elements() if b.contains(f))
    return round(math.log(count, a.p))


def test_trivial_action_dimensions(prime):
    dims = cohomology_dims(AdAction.trivial(prime))
    assert (dims.z1, dims.b1, dims.h1, dims.h1_nr, dims.ramified_quotient) == (6, 0, 6, 3, 3)
    assert h_dims(AdAction.trivial(prime)) == (3, 6, 3)


def test_euler_identity_for_nontrivial_action():
    act = AdAction(5, 11, Mat2.of(5, 1, 1, 0, 0, 4), Mat2.identity(5, 1))
    h0, h1, h2 = h_dims(act)
    assert (h0, h1, h2) == (1, 2, 1)
    assert h0 - h1 + h2 == 0


def test_invalid_action():
    with pytest.raises(ValueError, match="invalid action"):
        AdAction(5, 11, Mat2.of(5, 1, 0, 1, 1, 0), Mat2.of(5, 1, 1, 1, 0, 1))


@pytest.mark.parametrize("name", ["f1", "f2", "g_nr", "g_ram"])
def test_standard_cocycles_are_cocycles(name, prime):
    act = AdAction.trivial(prime)
    assert is_cocycle(act, standard_cocycles(prime.p, 2)[name])


def test_unramified_cocycles_have_zero_tau_value():
    nr = unramified_cocycles(AdAction.trivial(P5))
    assert nr.dim == 3
    assert all(f.tau == (0, 0, 0, 0) for f in nr.basis)


def test_trace_zero_enforced():
    with pytest.raises(ValueError, match="trace zero"):
        AdCocycle(5, (1, 0, 0, 0), (0, 0, 0, 0))


@given(st.lists(st.integers(0, 4), min_size=8, max_size=8))
def test_digit_round_trip(values):
    values[3] = (-values[0]) % 5
    values[7] = (-values[4]) % 5
    f = AdCocycle(5, tuple(values[:4]), tuple(values[4:]))
    assert AdCocycle.from_digits(5, f.digits()) == f
    assert AdCocycle.from_coords(5, f.coords()) == f


@pytest.mark.parametrize("text", ["1 2 3", "0 0 0 0 0 0 0 5", "a b c d e f g h"])
def test_bad_digit_records(text):
    with pytest.raises(ValueError):
        AdCocycle.from_digits(5, text)


def test_ramified_ratio():
    # y = 5 and ell - 1 = 10 give y' = 1/2 = 3 mod 5
    assert ramified_ratio(ShapeParams.of(5, 3, 0, 5), P5) == 3
    with pytest.raises(ValueError):
        ramified_ratio(ShapeParams.of(5, 3, 0, 25), P5)


@pytest.mark.parametrize(
    "ctype, expected",
    [
        (ConditionType.II, ["0 0 1 0 0 0 0 0", "0 0 0 0 0 0 1 0", "0 1 0 0 3 0 0 2"]),
        (ConditionType.III, None),
    ],
)
def test_n_space_basis_digits(ctype, expected):
    space = n_space(ctype, ShapeParams.of(5, 3, 0, 5), P5)
    assert space.dim == 3
    if expected is not None:
        assert [f.digits() for f in space.basis] == expected
    else:
        assert space.basis[2].digits() == "4 1 4 1 3 0 1 2"


@pytest.mark.parametrize("ctype", list(ConditionType))
def test_n_space_inside_cocycles(ctype):
    y = 5 if ctype.base == "ram" else 0
    space = n_space(ctype, ShapeParams.of(5, 3, 0, y), P5)
    z1, _ = cocycle_space(AdAction.trivial(P5))
    assert all(z1.contains(f) for f in space.basis)


@pytest.mark.parametrize("ctype, meet", [(ConditionType.I, 2), (ConditionType.II, 1), (ConditionType.III, 1)])
def test_n_space_meets_unramified(ctype, meet):
    y = 5 if ctype.base == "ram" else 0
    space = n_space(ctype, ShapeParams.of(5, 3, 0, y), P5)
    nr = unramified_cocycles(AdAction.trivial(P5))
    assert intersection_dim(space, nr) == meet


def test_q_space_is_common_to_base_spaces():
    q = q_space(5)
    for ctype in (ConditionType.I, ConditionType.II):
        y = 5 if ctype.base == "ram" else 0
        base = base_space(ctype, ShapeParams.of(5, 3, 0, y), P5)
        assert all(base.contains(f) for f in q.basis)


@pytest.mark.parametrize("y", [5, 10, 15, 20, 30])
def test_type_iii_pattern_formula(y):
    params = ShapeParams.of(5, 3, 0, y)
    yp = ramified_ratio(params, P5)
    space = n_space(ConditionType.III, params, P5)
    for u, v, w in itertools.product(range(5), repeat=3):
        f = space.combination((u, v, w))
        # the basis is conjugated f1, f2, g_ram in that order
        expect_sigma = ((-w) % 5, w % 5, (-w + u) % 5, w % 5)
        expect_tau = ((w * yp) % 5, 0, (v + 2 * w * yp) % 5, (-w * yp) % 5)
        assert f.sigma == expect_sigma
        assert f.tau == expect_tau


def test_type_iii_pattern_map_bijective_onto_image():
    params = ShapeParams.of(5, 3, 0, 5)
    space = n_space(ConditionType.III, params, P5)
    patterns = set()
    for f in space.elements():
        pat = type_iii_pattern(f)
        assert pat is not None
        assert not shape_obstruction_check(f)
        patterns.add(pat)
    assert len(patterns) == 125
    yp = ramified_ratio(params, P5)
    # image: c = a y', everything else free
    assert patterns == {(a, b, a * yp % 5, d) for a in range(5) for b in range(5) for d in range(5)}


def test_shape_obstruction_detects_generic_cocycle():
    assert shape_obstruction_check(AdCocycle(5, (1, 0, 0, 4), (0, 0, 0, 0)))
    assert type_iii_pattern(AdCocycle(5, (0, 0, 0, 0), (0, 1, 0, 0))) is None


@given(st.sampled_from([1, 2, 3, 4]), st.sampled_from([1, 2, 3, 4]))
@settings(max_examples=16)
def test_diagonal_actions_satisfy_euler(a, b):
    act = AdAction(5, 11, Mat2.of(5, 1, a, 0, 0, b), Mat2.identity(5, 1))
    h0, h1, h2 = h_dims(act)
    assert h0 - h1 + h2 == 0
    assert h0 == h0_dim(act)
    assert h0 == (3 if a == b else 1)

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tameselmer.padic import (
    Mat2,
    PAdicApprox,
    hensel_sqrt_one,
    mat_pow,
    smith_exponents,
    snf2,
    teichmuller,
)

primes = st.sampled_from([5, 7, 11])


@st.composite
def approx(draw, unit=False):
    p = draw(primes)
    n = draw(st.integers(1, 6))
    v = draw(st.integers(0, p**n - 1))
    if unit and v % p == 0:
        v += 1
    return PAdicApprox(p, n, v)


@st.composite
def matrices(draw):
    p = draw(primes)
    n = draw(st.integers(1, 5))
    entries = draw(st.lists(st.integers(0, p**n - 1), min_size=4, max_size=4))
    return Mat2(p, n, tuple(entries))


def test_canonical_representative():
    assert PAdicApprox(5, 3, -1).value == 124
    assert PAdicApprox(5, 3, 250).value == 0


@pytest.mark.parametrize(
    "value, expected",
    [(0, 3), (1, 0), (5, 1), (50, 2), (100, 2), (25, 2)],
)
def test_valuation_caps_at_precision(value, expected):
    assert PAdicApprox(5, 3, value).valuation() == expected


def test_mixed_precision_takes_minimum():
    a = PAdicApprox(5, 4, 7)
    b = PAdicApprox(5, 2, 3)
    assert (a + b).n == 2
    assert (a * b).value == 21 % 25


def test_division_by_p_loses_a_digit():
    x = PAdicApprox(5, 3, 10).div_p()
    assert (x.n, x.value) == (2, 2)
    with pytest.raises(ValueError):
        PAdicApprox(5, 3, 11).div_p()


def test_mismatched_primes_rejected():
    with pytest.raises(ValueError):
        PAdicApprox(5, 2, 1) + PAdicApprox(7, 2, 1)


def test_inverse_of_non_unit():
    with pytest.raises(ValueError, match="not a unit"):
        PAdicApprox(5, 3, 10).inverse()


@pytest.mark.parametrize("u, expected", [(1, 1), (2, 57), (6, 1)])
def test_teichmuller_examples(u, expected):
    assert teichmuller(PAdicApprox(5, 3, u)).value == expected


def test_teichmuller_rejects_non_unit():
    with pytest.raises(ValueError, match="not a unit"):
        teichmuller(PAdicApprox(5, 3, 10))


@given(approx(unit=True))
def test_teichmuller_is_a_root_of_unity(u):
    w = teichmuller(u)
    assert w.value % u.p == u.value % u.p
    assert pow(w.value, u.p - 1, u.modulus) == 1
    assert teichmuller(w) == w


def test_teichmuller_brute_force_unique():
    # the only fourth roots of unity mod 125 are the four Teichmuller values
    roots = [x for x in range(125) if pow(x, 4, 125) == 1]
    assert sorted(roots) == sorted(teichmuller(PAdicApprox(5, 3, u)).value for u in range(1, 5))


@pytest.mark.parametrize("p, ell, n", [(5, 11, 3), (5, 11, 6), (7, 29, 4), (5, 31, 5)])
def test_hensel_sqrt_one(p, ell, n):
    s = hensel_sqrt_one(PAdicApprox(p, n, ell))
    assert (s * s).value == ell % p**n
    assert s.value % p == 1
    # brute force: exactly one square root on the branch
    q = p**n
    assert [x for x in range(1, q, p) if x * x % q == ell % q] == [s.value]


def test_hensel_sqrt_wrong_branch():
    with pytest.raises(ValueError, match="wrong branch"):
        hensel_sqrt_one(PAdicApprox(5, 3, 2))


def test_matrix_inverse_and_det():
    m = Mat2.from_rows(5, 3, [[1, 5], [10, 11]])
    assert m.is_invertible()
    assert m * m.inverse() == Mat2.identity(5, 3)
    assert m.det().value == (11 - 50) % 125
    assert not Mat2.from_rows(5, 3, [[5, 0], [0, 1]]).is_invertible()


@given(matrices(), st.integers(0, 40))
@settings(max_examples=60)
def test_mat_pow_matches_repeated_product(m, e):
    expected = Mat2.identity(m.p, m.n)
    for _ in range(e):
        expected = expected * m
    assert mat_pow(m, e) == expected


@given(matrices())
@settings(max_examples=200)
def test_snf_identity(m):
    dec = snf2(m)
    a1, a2 = dec.exponents
    assert a1 <= a2
    assert dec.U.is_invertible() and dec.V.is_invertible()
    assert dec.U * m * dec.V == dec.diagonal()


@pytest.mark.parametrize("p, n", [(5, 2), (7, 2)])
def test_snf_exponents_against_subgroup_index(p, n):
    # brute force: |coker| = p^(a1+a2) on a sample of matrices
    q = p**n
    vectors = list(itertools.product(range(q), repeat=2))
    for m in [Mat2.from_rows(p, n, [[p, 0], [0, 0]]), Mat2.from_rows(p, n, [[p, p], [p, 2 * p]]), Mat2.from_rows(p, n, [[1, p], [0, p]])]:
        image = {((m[0, 0] * x + m[0, 1] * y) % q, (m[1, 0] * x + m[1, 1] * y) % q) for x, y in vectors}
        a1, a2 = snf2(m).exponents
        assert q * q // len(image) == p ** (a1 + a2)


@given(matrices())
@settings(max_examples=100)
def test_general_exponents_agree_with_snf2(m):
    rows = [list(r) for r in m.rows]
    assert tuple(smith_exponents(rows, m.p, m.n)) == snf2(m).exponents
    assert tuple(smith_exponents([list(r) for r in m.transpose().rows], m.p, m.n)) == snf2(m).exponents


def test_rectangular_exponents():
    # cokernel of (p  p^2  0)^T-ish blocks
    assert smith_exponents([[5, 0, 0], [0, 25, 0]], 5, 3) == [1, 2]
    assert smith_exponents([[5], [0]], 5, 3) == [1, 3]

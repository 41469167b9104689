"""Tame local deformations at trivial primes.

A deformation of the trivial residual representation at a trivial prime
is recorded by the images of the two tame generators: Frobenius (sigma)
and a generator of tame inertia (tau), subject to
sigma * tau * sigma^-1 = tau^ell.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np
from sympy import isprime

from . import fp_linalg
from .padic import Mat2, PAdicApprox, hensel_sqrt_one, int_valuation, mat_pow

if TYPE_CHECKING:
    from .local_cohom import AdCocycle


@dataclass(frozen=True)
class TrivialPrime:
    """A prime ell with ell = 1 mod p but not mod p**2."""

    p: int
    ell: int

    def __post_init__(self):
        if self.p < 5 or not isprime(self.p):
            raise ValueError("p must be a prime >= 5")
        if not isprime(self.ell):
            raise ValueError("ell must be prime")
        if self.ell % self.p != 1 or self.ell % self.p**2 == 1:
            raise ValueError("not a trivial prime")

    @classmethod
    def least(cls, p: int) -> TrivialPrime:
        ell = p + 1
        while not (isprime(ell) and ell % p == 1 and ell % p**2 != 1):
            ell += p
        return cls(p, ell)


class ConditionType(Enum):
    """Deformation condition types: a base shape and a fixed conjugator."""

    I = ("nr", (1, 0, 1, 1))
    II = ("ram", (0, 1, 1, 0))
    III = ("ram", (0, 1, 1, 1))

    @property
    def base(self) -> str:
        return self.value[0]

    def conjugator(self, p: int, n: int) -> Mat2:
        return Mat2(p, n, self.value[1])


@dataclass(frozen=True)
class ShapeParams:
    """Upper-right entries x (of sigma) and y (of tau) of the base shape."""

    x: PAdicApprox
    y: PAdicApprox

    @classmethod
    def of(cls, p: int, n: int, x: int, y: int) -> ShapeParams:
        return cls(PAdicApprox(p, n, x), PAdicApprox(p, n, y))

    def admissible(self, base: str) -> bool:
        if self.x.valuation() < 2:
            return False
        if base == "nr":
            return self.y.valuation() >= 2
        return self.y.valuation() == 1 and self.y.n >= 2


@dataclass(frozen=True)
class TameDeformation:
    prime: TrivialPrime
    n: int
    sigma: Mat2
    tau: Mat2
    k: int = 2

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def ell(self) -> int:
        return self.prime.ell

    def reduce(self, m: int) -> TameDeformation:
        return TameDeformation(self.prime, m, self.sigma.reduce(m), self.tau.reduce(m), self.k)

    def conjugate_by(self, a: Mat2) -> TameDeformation:
        inv = a.inverse()
        return TameDeformation(self.prime, self.n, a * self.sigma * inv, a * self.tau * inv, self.k)

    def key(self) -> tuple[int, ...]:
        return self.sigma.entries + self.tau.entries


def weight_scalar(prime: TrivialPrime, k: int, n: int) -> PAdicApprox:
    """ell^((k-2)/2), on the square-root branch congruent to 1 mod p."""
    if k < 2:
        raise ValueError("weight must be at least 2")
    if k % 2 == 0:
        return PAdicApprox(prime.p, n, prime.ell) ** ((k - 2) // 2)
    root = hensel_sqrt_one(PAdicApprox(prime.p, n, prime.ell))
    return root ** (k - 2)


def base_shape(prime: TrivialPrime, params: ShapeParams, k: int = 2) -> tuple[Mat2, Mat2]:
    """The upper-triangular pair (s*(ell x; 0 1), (1 y; 0 1))."""
    p, n = prime.p, params.x.n
    s = weight_scalar(prime, k, n)
    sigma = Mat2(p, n, (prime.ell, params.x.value, 0, 1)) * s
    tau = Mat2(p, n, (1, params.y.value, 0, 1))
    return sigma, tau


def build_condition_member(
    prime: TrivialPrime,
    ctype: ConditionType,
    params: ShapeParams,
    k: int = 2,
    n: int | None = None,
) -> TameDeformation:
    if n is not None and n != params.x.n:
        params = ShapeParams(
            PAdicApprox(prime.p, n, params.x.value), PAdicApprox(prime.p, n, params.y.value)
        )
    n = params.x.n
    if not params.admissible(ctype.base):
        raise ValueError("shape parameter out of class")
    sigma, tau = base_shape(prime, params, k)
    c = ctype.conjugator(prime.p, n)
    c_inv = c.inverse()
    return TameDeformation(prime, n, c * sigma * c_inv, c * tau * c_inv, k)


def check_relation(d: TameDeformation) -> bool:
    sigma, tau = d.sigma, d.tau
    if not (sigma.is_identity_mod(1) and tau.is_identity_mod(1)):
        return False
    if sigma.det() != d.ell ** (d.k - 1) or tau.det() != 1:
        return False
    return sigma * tau * sigma.inverse() == mat_pow(tau, d.ell)


@dataclass(frozen=True)
class Membership:
    """Outcome of a condition-membership query; truthy when a member."""

    member: bool
    conjugator: Mat2 | None = None
    params: ShapeParams | None = None

    def __bool__(self):
        return self.member


def _solve_linear_congruences(equations, p: int, n: int) -> tuple[int, int] | None:
    """Common solutions u of g*u = h (mod p**n) with u = 0 (mod p).

    Returns (r, k) meaning u = r (mod p**k), or None when inconsistent.
    """
    q = p**n
    residue, depth = 0, 1
    for g, h in equations:
        g %= q
        h %= q
        e = int_valuation(g, p, n)
        if e >= n:
            if h != 0:
                return None
            continue
        if int_valuation(h, p, n) < e:
            return None
        pe = p**e
        depth_new = n - e
        r = (h // pe) * pow(g // pe, -1, q) % p**depth_new
        common = min(depth, depth_new)
        if (r - residue) % p**common:
            return None
        if depth_new > depth:
            residue, depth = r, depth_new
    return residue % p**depth, depth


def is_in_condition(d: TameDeformation, ctype: ConditionType) -> Membership:
    """Decide whether some A = I (mod p) conjugates d into the type's shape.

    Every such A factors as (lower unipotent) x (upper triangular), and the
    upper-triangular factor preserves the shape and the admissibility of
    (x, y).  So it suffices to find u = 0 (mod p) with (1 0; u 1) moving the
    C-conjugated pair into upper-triangular form with the right diagonal,
    which is a system of linear congruences in u.
    """
    p, n, ell = d.p, d.n, d.ell
    c = ctype.conjugator(p, n)
    c_inv = c.inverse()
    s = weight_scalar(d.prime, d.k, n).value
    pairs = ((c_inv * d.sigma * c, s * ell, s), (c_inv * d.tau * c, 1, 1))

    equations = []
    for m, top, bottom in pairs:
        a, b, cc, dd = m.entries
        # (1,1) entry of L M L^-1 is a - b*u; (2,1) entry is c + u*(top - d)
        equations.append((b, a - top))
        equations.append((top - dd, -cc))
    solution = _solve_linear_congruences(equations, p, n)
    if solution is None:
        return Membership(False)
    u = solution[0]

    lower = Mat2(p, n, (1, 0, u, 1))
    sigma_shape = lower * pairs[0][0] * lower.inverse()
    tau_shape = lower * pairs[1][0] * lower.inverse()
    x = PAdicApprox(p, n, sigma_shape[0, 1]) / s
    params = ShapeParams(x, PAdicApprox(p, n, tau_shape[0, 1]))
    if not params.admissible(ctype.base):
        return Membership(False)
    expected = base_shape(d.prime, params, d.k)
    if (sigma_shape, tau_shape) != expected:
        return Membership(False)
    return Membership(True, c * lower * c_inv, params)


def _candidate_conjugators(p: int, n: int, full: bool) -> np.ndarray:
    """All A = I (mod p) modulo p**n (full) or modulo p**(n-1).

    When both images are I mod p, conjugation by A and by A + p**(n-1)E
    agree mod p**n, so the reduced family already realises every orbit.
    """
    depth = n - 1 if full else n - 2
    if depth <= 0:
        return np.array([[1, 0, 0, 1]], dtype=np.int64)
    digits = np.arange(p**depth, dtype=np.int64) * p
    grid = np.stack(np.meshgrid(digits, digits, digits, digits, indexing="ij"), axis=-1).reshape(-1, 4)
    grid[:, 0] += 1
    grid[:, 3] += 1
    return grid


def _batch_conjugate(a: np.ndarray, m: tuple[int, ...], q: int, det_inv: np.ndarray) -> np.ndarray:
    a11, a12, a21, a22 = a.T
    m11, m12, m21, m22 = m
    # a * m
    b11 = (a11 * m11 + a12 * m21) % q
    b12 = (a11 * m12 + a12 * m22) % q
    b21 = (a21 * m11 + a22 * m21) % q
    b22 = (a21 * m12 + a22 * m22) % q
    # a^-1 = det^-1 * (a22 -a12; -a21 a11)
    i11, i12, i21, i22 = a22, -a12, -a21, a11
    r11 = (b11 * i11 + b12 * i21) % q * det_inv % q
    r12 = (b11 * i12 + b12 * i22) % q * det_inv % q
    r21 = (b21 * i11 + b22 * i21) % q * det_inv % q
    r22 = (b21 * i12 + b22 * i22) % q * det_inv % q
    return np.stack([r11, r12, r21, r22], axis=-1)


def _batch_inverse_mod(values: np.ndarray, p: int, n: int) -> np.ndarray:
    q = p**n
    exponent = p ** (n - 1) * (p - 1) - 1
    result = np.ones_like(values)
    base = values % q
    while exponent:
        if exponent & 1:
            result = result * base % q
        base = base * base % q
        exponent >>= 1
    return result


def brute_force_membership(d: TameDeformation, ctype: ConditionType, full: bool = False) -> Membership:
    """Oracle: search conjugators A = I (mod p) exhaustively.

    ``full=True`` walks all p**(4(n-1)) candidates; the default walks one
    representative per class modulo p**(n-1), which is equivalent.
    """
    p, n, ell = d.p, d.n, d.ell
    q = p**n
    c = ctype.conjugator(p, n)
    c_inv = c.inverse()
    s = weight_scalar(d.prime, d.k, n).value
    cands = _candidate_conjugators(p, n, full)
    # B = C^-1 A, conjugating d directly into the base shape
    ci = c_inv.entries
    b = np.stack(
        [
            (ci[0] * cands[:, 0] + ci[1] * cands[:, 2]) % q,
            (ci[0] * cands[:, 1] + ci[1] * cands[:, 3]) % q,
            (ci[2] * cands[:, 0] + ci[3] * cands[:, 2]) % q,
            (ci[2] * cands[:, 1] + ci[3] * cands[:, 3]) % q,
        ],
        axis=-1,
    )
    det = (b[:, 0] * b[:, 3] - b[:, 1] * b[:, 2]) % q
    det_inv = _batch_inverse_mod(det, p, n)
    sig = _batch_conjugate(b, d.sigma.entries, q, det_inv)
    tau = _batch_conjugate(b, d.tau.entries, q, det_inv)
    p2 = p * p
    ok = (sig[:, 0] == s * ell % q) & (sig[:, 2] == 0) & (sig[:, 3] == s % q) & (sig[:, 1] % p2 == 0)
    ok &= (tau[:, 0] == 1) & (tau[:, 2] == 0) & (tau[:, 3] == 1)
    if ctype.base == "nr":
        ok &= tau[:, 1] % p2 == 0
    else:
        ok &= (tau[:, 1] % p == 0) & (tau[:, 1] % p2 != 0)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return Membership(False)
    i = int(hits[0])
    a = Mat2(p, n, tuple(int(v) for v in cands[i]))
    x = PAdicApprox(p, n, int(sig[i, 1])) / s
    return Membership(True, a, ShapeParams(x, PAdicApprox(p, n, int(tau[i, 1]))))


def _cocycle_matrix(entries: tuple[int, int, int, int], p: int, n: int) -> Mat2:
    return Mat2(p, n, entries)


def twist(d: TameDeformation, f: AdCocycle, level: int) -> TameDeformation:
    """Multiply each generator image by I + p**level * F."""
    if not 1 <= level <= d.n - 1:
        raise ValueError("level must lie in 1..n-1")
    p, n = d.p, d.n
    scale = p**level
    ident = Mat2.identity(p, n)
    sigma = (ident + _cocycle_matrix(f.sigma, p, n) * scale) * d.sigma
    tau = (ident + _cocycle_matrix(f.tau, p, n) * scale) * d.tau
    out = TameDeformation(d.prime, n, sigma, tau, d.k)
    if not check_relation(out):
        raise ValueError("twist breaks relation")
    return out


def lift_small_extension(d: TameDeformation, ctype: ConditionType) -> TameDeformation:
    """Lift a condition member from precision n to n+1 by zero digits."""
    witness = is_in_condition(d, ctype)
    if not witness:
        raise ValueError("cannot lift outside condition")
    m = d.n + 1
    params = ShapeParams(witness.params.x.lift(m), witness.params.y.lift(m))
    member = build_condition_member(d.prime, ctype, params, d.k)
    a = witness.conjugator.lift(m)
    return member.conjugate_by(a.inverse())


@dataclass(frozen=True)
class ObstructionReport:
    defect: Mat2
    solvable: bool
    sigma_lift: Mat2 | None
    tau_lift: Mat2 | None


def _relation_defect(sigma: Mat2, tau: Mat2, ell: int, n: int) -> Mat2:
    p = sigma.p
    r = sigma * tau * sigma.inverse() * mat_pow(tau, ell).inverse()
    diff = r - Mat2.identity(p, sigma.n)
    if diff.min_valuation() < n:
        raise ValueError("lifts do not reduce to a deformation")
    return Mat2(p, 1, tuple(e // p**n for e in diff.entries))


_TRACE_ZERO_BASIS = ((1, 0, 0, -1), (0, 1, 0, 0), (0, 0, 1, 0))


def obstruction_defect(d: TameDeformation, sigma_lift: Mat2, tau_lift: Mat2) -> ObstructionReport:
    """Defect D with sigma~ tau~ sigma~^-1 (tau~^ell)^-1 = I + p**n D.

    Corrections (I + p**n X, I + p**n Y) with X, Y trace zero change D by
    an F_p-linear map; the defect is killable iff -D lies in its image.
    """
    p, n, ell = d.p, d.n, d.ell
    if sigma_lift.n != n + 1 or tau_lift.n != n + 1:
        raise ValueError("lifts must have precision n+1")
    if sigma_lift.reduce(n) != d.sigma or tau_lift.reduce(n) != d.tau:
        raise ValueError("lifts do not reduce to d")
    defect = _relation_defect(sigma_lift, tau_lift, ell, n)

    ident = Mat2.identity(p, n + 1)
    scale = p**n
    columns = []
    moves = []
    for slot in (0, 1):
        for basis in _TRACE_ZERO_BASIS:
            step = ident + Mat2(p, n + 1, basis) * scale
            s_l, t_l = (step * sigma_lift, tau_lift) if slot == 0 else (sigma_lift, step * tau_lift)
            moved = _relation_defect(s_l, t_l, ell, n)
            columns.append([(x - y) % p for x, y in zip(moved.entries, defect.entries)])
            moves.append((slot, basis))
    matrix = [[columns[j][i] for j in range(len(columns))] for i in range(4)]
    coeffs = fp_linalg.solve(matrix, [(-x) % p for x in defect.entries], p)
    if coeffs is None:
        return ObstructionReport(defect, False, None, None)
    corr = [Mat2.zero(p, n + 1), Mat2.zero(p, n + 1)]
    for c, (slot, basis) in zip(coeffs, moves):
        corr[slot] = corr[slot] + Mat2(p, n + 1, basis) * c
    sigma_new = (ident + corr[0] * scale) * sigma_lift
    tau_new = (ident + corr[1] * scale) * tau_lift
    if _relation_defect(sigma_new, tau_new, ell, n) != Mat2.zero(p, 1):
        raise ArithmeticError("defect correction did not close")
    return ObstructionReport(defect, True, sigma_new, tau_new)


def _fixed_det_lifts(m: Mat2, target: int) -> list[Mat2]:
    p, n = m.p, m.n
    q = p ** (n + 1)
    base = m.lift(n + 1)
    out = []
    for digits in np.ndindex(p, p, p, p):
        cand = base + Mat2(p, n + 1, tuple(int(v) for v in digits)) * p**n
        if cand.det().value == target % q:
            out.append(cand)
    return out


def homomorphism_lifts(d: TameDeformation) -> list[TameDeformation]:
    """Brute force: every pair of lifts to precision n+1 with the fixed
    determinants that still satisfies the tame relation."""
    n = d.n
    det_sigma = d.ell ** (d.k - 1)
    sigmas = _fixed_det_lifts(d.sigma, det_sigma)
    taus = _fixed_det_lifts(d.tau, 1)
    out = []
    for s in sigmas:
        s_inv = s.inverse()
        for t in taus:
            if s * t * s_inv == mat_pow(t, d.ell):
                out.append(TameDeformation(d.prime, n + 1, s, t, d.k))
    return out


def _subgroup_generators(elements: list[Mat2]) -> list[Mat2]:
    """Greedy generating set of the finite group formed by ``elements``."""
    gens: list[Mat2] = []
    closure = {Mat2.identity(elements[0].p, elements[0].n)}
    for g in elements:
        if g in closure:
            continue
        gens.append(g)
        frontier = list(closure)
        while frontier:
            nxt = []
            for h in frontier:
                for k in gens:
                    prod = h * k
                    if prod not in closure:
                        closure.add(prod)
                        nxt.append(prod)
            frontier = nxt
    return gens


def strict_classes(d: TameDeformation, lifts: list[TameDeformation], kernel_level: int = 1) -> int:
    """Number of conjugacy classes among ``lifts`` of ``d`` under A = I mod p**kernel_level.

    Conjugation fixes the set of lifts only through matrices stabilising d,
    and A, A + p**n E act identically at precision n+1.
    """
    p, n = d.p, d.n
    if not lifts:
        return 0
    stab = []
    for digits in _candidate_conjugators(p, n + 1, full=False):
        a = Mat2(p, n, tuple(int(v) for v in digits))
        if not a.is_identity_mod(kernel_level):
            continue
        if d.conjugate_by(a).key() == d.key():
            stab.append(a)
    gens = [g.lift(n + 1) for g in _subgroup_generators(stab)]
    index = {lift.key(): i for i, lift in enumerate(lifts)}
    parent = list(range(len(lifts)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, lift in enumerate(lifts):
        for g in gens:
            j = index.get(lift.conjugate_by(g).key())
            if j is None:
                raise ArithmeticError("conjugation left the lift set")
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    return len({find(i) for i in range(len(lifts))})

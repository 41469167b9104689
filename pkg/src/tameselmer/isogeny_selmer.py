"""Local Tamagawa data for a p-isogenous pair of lattices at a trivial prime.

A lattice T in a two-dimensional p-adic representation gives the discrete
module A = V/T = (Q_p/Z_p)^2.  Everything here is computed from the
images of sigma (Frobenius) and tau (tame inertia) on T, known mod p**n.
Exponents are read at precision n and n-1 and only trusted when they agree.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .padic import Mat2, PAdicApprox, mat_pow, smith_exponents, snf2, teichmuller
from .tame_deform import (
    ConditionType,
    ShapeParams,
    TrivialPrime,
    build_condition_member,
)


@dataclass(frozen=True)
class LocalLatticeAction:
    """sigma, tau images on a lattice basis (e1, e2), twisted by scalar characters."""

    prime: TrivialPrime
    n: int
    s_sigma: Mat2
    s_tau: Mat2
    psi_sigma: int = 1
    psi_tau: int = 1
    swapped: bool = False

    def __post_init__(self):
        q = self.prime.p**self.n
        object.__setattr__(self, "psi_sigma", self.psi_sigma % q)
        object.__setattr__(self, "psi_tau", self.psi_tau % q)
        if self.s_sigma.n != self.n or self.s_tau.n != self.n:
            raise ValueError("matrices must be at the action's precision")
        for psi in (self.psi_sigma, self.psi_tau):
            if pow(psi, self.prime.p - 1, q) != 1:
                raise ValueError("character values must be Teichmuller roots of unity")
        sigma, tau = self.sigma, self.tau
        if not (sigma.is_invertible() and tau.is_invertible()):
            raise ValueError("images must be invertible")
        if sigma * tau * sigma.inverse() != mat_pow(tau, self.prime.ell):
            raise ValueError("images violate the tame relation")
        # residual shape: upper triangular, or lower triangular after a swap
        slot = (0, 1) if self.swapped else (1, 0)
        if sigma[slot] % self.prime.p or tau[slot] % self.prime.p:
            raise ValueError("residual representation must be triangular")

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def sigma(self) -> Mat2:
        return self.s_sigma * self.psi_sigma

    @property
    def tau(self) -> Mat2:
        return self.s_tau * self.psi_tau

    def reduce(self, m: int) -> LocalLatticeAction:
        return LocalLatticeAction(
            self.prime, m, self.s_sigma.reduce(m), self.s_tau.reduce(m), self.psi_sigma, self.psi_tau, self.swapped
        )

    def record(self) -> dict:
        return {
            "p": self.p,
            "ell": self.prime.ell,
            "n": self.n,
            "S_sigma": [list(r) for r in self.s_sigma.rows],
            "S_tau": [list(r) for r in self.s_tau.rows],
            "psi_sigma": self.psi_sigma,
            "psi_tau": self.psi_tau,
            "swapped": self.swapped,
        }


def action_from_member(
    prime: TrivialPrime,
    ctype: ConditionType,
    params: ShapeParams,
    psi_sigma: int = 1,
    psi_tau: int = 1,
) -> LocalLatticeAction:
    d = build_condition_member(prime, ctype, params)
    return LocalLatticeAction(prime, d.n, d.sigma, d.tau, psi_sigma, psi_tau)


ComponentKind = Literal["finite", "divisible"]


@dataclass(frozen=True)
class InertiaComponent:
    kind: ComponentKind
    exponent: int | None  # p**-exponent Z/Z for finite pieces

    def label(self) -> str:
        if self.kind == "divisible":
            return "divisible"
        return f"finite of exponent p^{self.exponent}"


@dataclass(frozen=True)
class InertiaInvariants:
    """A^I = V (sum of components) where V is the change of basis."""

    components: tuple[InertiaComponent, ...]
    basis: Mat2

    def labels(self) -> list[str]:
        return [c.label() for c in self.components]

    @property
    def finite_exponents(self) -> list[int]:
        return [c.exponent for c in self.components if c.kind == "finite" and c.exponent]


def _classify(exp_hi: int, exp_lo: int, n: int) -> InertiaComponent:
    # exp_hi at precision n, exp_lo at precision n-1
    if exp_hi >= n and exp_lo >= n - 1:
        return InertiaComponent("divisible", None)
    if exp_hi == exp_lo and exp_hi < n - 1 and 2 * exp_hi <= n:
        return InertiaComponent("finite", exp_hi)
    raise ValueError("raise precision")


def inertia_invariants(act: LocalLatticeAction) -> InertiaInvariants:
    """Structure of the tau-fixed part of (Q_p/Z_p)^2."""
    n = act.n
    if n < 2:
        raise ValueError("raise precision")
    ident = Mat2.identity(act.p, n)
    hi = snf2(act.tau - ident)
    lo = snf2(act.reduce(n - 1).tau - Mat2.identity(act.p, n - 1))
    comps = tuple(_classify(a, b, n) for a, b in zip(hi.exponents, lo.exponents))
    return InertiaInvariants(comps, hi.V)


@dataclass(frozen=True)
class CotorsionReport:
    inertia_structure: tuple[str, ...]
    tamagawa_order: int
    delta: int
    h0_finite: bool
    h0_order: int | None
    quotient_exponents: tuple[int, ...] = field(default=())

    def record(self) -> dict:
        return {
            "inertia_structure": list(self.inertia_structure),
            "tamagawa_order": self.tamagawa_order,
            "delta": self.delta,
            "h0_finite": self.h0_finite,
            "h0_order": self.h0_order if self.h0_finite else "infinite",
        }


def _h0_exponents(act: LocalLatticeAction) -> list[int]:
    n = act.n
    ident = Mat2.identity(act.p, n)
    ms, mt = act.sigma - ident, act.tau - ident
    # transpose of the stacked 4x2 matrix: same elementary divisors, two of them
    rows = [[ms[0, 0], ms[1, 0], mt[0, 0], mt[1, 0]], [ms[0, 1], ms[1, 1], mt[0, 1], mt[1, 1]]]
    return smith_exponents(rows, act.p, n)


def h0_structure(act: LocalLatticeAction) -> tuple[bool, int | None]:
    """(finite?, order) for the sigma- and tau-fixed part of A."""
    hi = _h0_exponents(act)
    lo = _h0_exponents(act.reduce(act.n - 1))
    n = act.n
    if any(a >= n and b >= n - 1 for a, b in zip(hi, lo)):
        return False, None
    if hi == lo and all(a < n - 1 for a in hi):
        return True, act.p ** sum(hi)
    raise ValueError("raise precision")


def tamagawa(act: LocalLatticeAction) -> CotorsionReport:
    """c = #(finite part of A^I)/(sigma - 1), delta = dim of its p-torsion."""
    p, n = act.p, act.n
    inv = inertia_invariants(act)
    basis = inv.basis
    sigma_z = basis.inverse() * act.sigma * basis
    comps = inv.components

    # sigma must carry A^I into itself
    for i, ci in enumerate(comps):
        if ci.kind == "divisible":
            continue
        for j, cj in enumerate(comps):
            v = sigma_z.entry(i, j).valuation()
            need = (cj.exponent - ci.exponent) if cj.kind == "finite" else n - ci.exponent
            if v < need:
                raise ValueError("inconsistent action")

    finite = [i for i, c in enumerate(comps) if c.kind == "finite" and c.exponent > 0]
    if not finite:
        quotient: list[int] = []
    else:
        exps = [comps[i].exponent for i in finite]
        rows = []
        for r, i in enumerate(finite):
            row = [p ** exps[r] if c == r else 0 for c in range(len(finite))]
            for c, j in enumerate(finite):
                entry = sigma_z[i, j] * p ** (exps[r] - exps[c]) if exps[r] >= exps[c] else sigma_z[i, j] // p ** (exps[c] - exps[r])
                row.append(entry - (1 if i == j else 0))
            rows.append(row)
        quotient = [e for e in smith_exponents(rows, p, n) if e > 0]
    h0_finite, h0_order = h0_structure(act)
    return CotorsionReport(
        tuple(inv.labels()),
        p ** sum(quotient),
        len(quotient),
        h0_finite,
        h0_order,
        tuple(quotient),
    )


def lattice_swap(act: LocalLatticeAction) -> LocalLatticeAction:
    """Action on the index-p lattice spanned by p e1, e2: (a b; c d) -> (a pb; c/p d)."""
    p, n = act.p, act.n
    if n < 2:
        raise ValueError("raise precision")
    out = []
    for m in (act.s_sigma, act.s_tau):
        a, b, c, d = m.entries
        if c % p:
            raise ValueError("lattice not p-isogenous in this basis")
        out.append(Mat2.of(p, n - 1, a, p * b, c // p, d))
    return LocalLatticeAction(act.prime, n - 1, out[0], out[1], act.psi_sigma, act.psi_tau, swapped=True)


def lattice_coswap(act: LocalLatticeAction) -> LocalLatticeAction:
    """Inverse direction: (a b; c d) -> (a b/p; pc d)."""
    p, n = act.p, act.n
    out = []
    for m in (act.s_sigma, act.s_tau):
        a, b, c, d = m.entries
        if b % p:
            raise ValueError("lattice not p-isogenous in this basis")
        out.append(Mat2.of(p, n - 1, a, b // p, p * c, d))
    return LocalLatticeAction(act.prime, n - 1, out[0], out[1], act.psi_sigma, act.psi_tau, swapped=False)


def dual_isogeny_check(act: LocalLatticeAction) -> bool:
    """The isogeny diag(p, 1) intertwines act with its swap, the co-swap
    undoes it, and the two isogenies compose to p."""
    p, n = act.p, act.n
    swapped = lattice_swap(act)
    back = lattice_coswap(swapped)
    if back != act.reduce(n - 2):
        return False
    phi = Mat2.of(p, n - 1, p, 0, 0, 1)
    phi_dual = Mat2.of(p, n - 1, 1, 0, 0, p)
    if phi_dual * phi != Mat2.identity(p, n - 1) * p:
        return False
    low = act.reduce(n - 1)
    for old, new in ((low.sigma, swapped.sigma), (low.tau, swapped.tau)):
        if phi * old != new * phi or old * phi_dual != phi_dual * new:
            return False
    return True


# ---------------------------------------------------------------- oracles


def _vectors(p: int, level: int) -> np.ndarray:
    q = p**level
    grid = np.stack(np.meshgrid(np.arange(q), np.arange(q), indexing="ij"), axis=-1)
    return grid.reshape(-1, 2).astype(np.int64)


def _apply(m: Mat2, vecs: np.ndarray, q: int) -> np.ndarray:
    a, b, c, d = (int(x) % q for x in m.entries)
    return np.stack([(a * vecs[:, 0] + b * vecs[:, 1]) % q, (c * vecs[:, 0] + d * vecs[:, 1]) % q], axis=-1)


def _fixed(m: Mat2, vecs: np.ndarray, q: int) -> np.ndarray:
    return vecs[np.all(_apply(m, vecs, q) == vecs, axis=1)]


def _span(gens: np.ndarray, q: int) -> set[tuple[int, int]]:
    """Subgroup of (Z/q)^2 generated by the rows of ``gens``."""
    group = {(0, 0)}
    for g in {tuple(int(x) for x in row) for row in gens}:
        if g in group:
            continue
        frontier = list(group)
        new = set()
        for h in frontier:
            for k in range(q):
                new.add(((h[0] + k * g[0]) % q, (h[1] + k * g[1]) % q))
        group |= new
    return group


def brute_force_delta(act: LocalLatticeAction, level: int | None = None) -> tuple[int, int]:
    """(c, delta) by enumerating A[p^L] as (Z/p^L)^2, L = ceil(n/2) by default.

    The divisible part of the tau-invariants inside A[p^L] is the image of
    A^I[p^n] under p^(n-L).  This is exact once the finite part has exponent
    at most min(L, n-L).
    """
    p, n = act.p, act.n
    level = (n + 1) // 2 if level is None else level
    if not 1 <= level < n:
        raise ValueError("level must lie in [1, n)")
    q_lo, q_hi = p**level, p**n
    low = act.reduce(level)
    fixed_lo = _fixed(low.tau, _vectors(p, level), q_lo)
    fixed_hi = _fixed(act.tau, _vectors(p, n), q_hi)
    div = fixed_hi % q_lo
    moved = (_apply(low.sigma, fixed_lo, q_lo) - fixed_lo) % q_lo
    sub = _span(np.concatenate([div, moved]), q_lo)
    sub_p = _span(np.concatenate([div, moved, fixed_lo * p % q_lo]), q_lo)
    size = len({tuple(v) for v in fixed_lo.tolist()})
    c = size // len(sub)
    delta = round(math.log(size // len(sub_p), p))
    return c, delta


def brute_force_h0(act: LocalLatticeAction, level: int) -> int:
    """Number of points of A[p^level] fixed by sigma and tau."""
    p = act.p
    low = act.reduce(level)
    q = p**level
    pts = _fixed(low.tau, _vectors(p, level), q)
    return len(_fixed(low.sigma, pts, q))


def random_action(
    prime: TrivialPrime,
    n: int,
    rng: random.Random,
    ctype: ConditionType | None = None,
    psi_sigma: int | None = None,
    conjugate: bool = True,
) -> LocalLatticeAction:
    """A random valid action: a condition member, optionally conjugated by
    A = I mod p, twisted by a Teichmuller value of sigma."""
    p = prime.p
    q = p**n
    ctype = ctype or rng.choice(list(ConditionType))
    x = p * p * rng.randrange(q)
    if ctype.base == "nr":
        y = p * p * rng.randrange(q)
    else:
        y = p * (rng.randrange(1, p) + p * rng.randrange(q))
    member = build_condition_member(prime, ctype, ShapeParams.of(p, n, x, y), n=n)
    if conjugate:
        a = Mat2.of(p, n, *(int(i == 0 or i == 3) + p * rng.randrange(q) for i in range(4)))
        member = member.conjugate_by(a)
    if psi_sigma is None:
        psi_sigma = teichmuller(PAdicApprox(p, n, rng.randrange(1, p))).value
    return LocalLatticeAction(prime, n, member.sigma, member.tau, psi_sigma, 1)


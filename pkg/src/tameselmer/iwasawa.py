"""Truncated arithmetic in Z_p[[T]] and invariants of finitely generated modules.

Series are known modulo (p**N, T**(D+1)).  Module questions are answered on
finite quotients M/(p**N, T**D) M, which are finite abelian p-groups; their
lengths come from Smith exponents over Z/p**N.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .padic import int_valuation, smith_exponents


def _convolve(a: Sequence[int], b: Sequence[int], q: int, length: int) -> list[int]:
    # object dtype keeps products exact for any modulus
    out = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))[:length]
    res = [int(x) % q for x in out]
    return res + [0] * (length - len(res))


def _series_inverse(a: Sequence[int], p: int, n: int, length: int) -> list[int]:
    q = p**n
    inv0 = pow(a[0], -1, q)
    out = [0] * length
    out[0] = inv0
    for k in range(1, length):
        acc = sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
        out[k] = (-acc * inv0) % q
    return out


@dataclass(frozen=True)
class LambdaSeries:
    """c_0 + c_1 T + ... + c_D T^D, coefficients mod p**N."""

    p: int
    N: int
    D: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        q = self.p**self.N
        cs = [int(c) % q for c in self.coeffs][: self.D + 1]
        cs += [0] * (self.D + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, p: int, N: int, D: int, coeffs: Sequence[int]) -> LambdaSeries:
        return cls(p, N, D, tuple(coeffs))

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def _check(self, other: LambdaSeries) -> None:
        if (self.p, self.N, self.D) != (other.p, other.N, other.D):
            raise ValueError("series live at different precisions")

    def __add__(self, other: LambdaSeries) -> LambdaSeries:
        self._check(other)
        return LambdaSeries(self.p, self.N, self.D, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: LambdaSeries) -> LambdaSeries:
        self._check(other)
        return LambdaSeries(self.p, self.N, self.D, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> LambdaSeries:
        return LambdaSeries(self.p, self.N, self.D, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> LambdaSeries:
        if isinstance(other, int):
            return LambdaSeries(self.p, self.N, self.D, tuple(a * other for a in self.coeffs))
        self._check(other)
        return LambdaSeries(self.p, self.N, self.D, tuple(_convolve(self.coeffs, other.coeffs, self.modulus, self.D + 1)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return self.coeffs[0] % self.p != 0

    def inverse(self) -> LambdaSeries:
        if not self.is_unit():
            raise ValueError("not a unit")
        return LambdaSeries(self.p, self.N, self.D, tuple(_series_inverse(self.coeffs, self.p, self.N, self.D + 1)))

    def valuation(self) -> int:
        """Minimum coefficient valuation (N when the series vanishes)."""
        return min(int_valuation(c, self.p, self.N) for c in self.coeffs)

    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def __str__(self):
        terms = [f"{c}*T^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class DistinguishedPoly:
    """Monic polynomial whose lower coefficients are divisible by p."""

    p: int
    N: int
    coeffs: tuple[int, ...]  # c_0 .. c_d with c_d = 1

    def __post_init__(self):
        q = self.p**self.N
        cs = tuple(int(c) % q for c in self.coeffs)
        if not cs or cs[-1] != 1 % q:
            raise ValueError("distinguished polynomials are monic")
        if any(c % self.p for c in cs[:-1]):
            raise ValueError("lower coefficients must be divisible by p")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def of(cls, p: int, N: int, lower: Sequence[int]) -> DistinguishedPoly:
        """From the coefficients below the leading one."""
        return cls(p, N, tuple(lower) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def series(self, D: int) -> LambdaSeries:
        return LambdaSeries(self.p, self.N, D, self.coeffs)


def weierstrass_prepare(f: LambdaSeries) -> tuple[int, LambdaSeries, DistinguishedPoly]:
    """f = p**mu * unit * P with P distinguished.

    The truncated f is treated as a polynomial, so the factorisation is
    exact for it; the unit and P are returned mod p**(N - mu).
    """
    p, N, D = f.p, f.N, f.D
    if f.is_zero():
        raise ValueError("zero series")
    mu = f.valuation()
    n = N - mu
    q = p**n
    g = [(c // p**mu) % q for c in f.coeffs]
    lam = next((i for i, c in enumerate(g) if c % p), None)
    if lam is None or lam >= D:
        raise ValueError("raise T-truncation")
    if lam == 0:
        return mu, LambdaSeries(p, n, D, tuple(g)), DistinguishedPoly(p, n, (1,))
    length = D + 1 + lam * (n + 1)
    low = g[:lam]
    high = g[lam:]
    high_inv = _series_inverse(high, p, n, length)
    u = list(high_inv)
    for _ in range(n + 1):
        ua = _convolve(u, low, q, length + lam)
        shifted = ua[lam:] + [0] * lam
        u = _convolve(high_inv, [(int(i == 0) - s) % q for i, s in enumerate(shifted[:length])], q, length)
    ug = _convolve(u, g, q, length)
    if any(ug[lam + 1 : D + 1]) or ug[lam] != 1 % q:
        raise ArithmeticError("preparation did not converge")
    poly = DistinguishedPoly(p, n, tuple(ug[:lam]) + (1,))
    unit = LambdaSeries(p, n, D, tuple(_series_inverse(u, p, n, D + 1)))
    return mu, unit, poly


# ---------------------------------------------------------------- modules


@dataclass(frozen=True)
class ElementaryModule:
    """Lambda^r + sum Lambda/(p^mu_i) + sum Lambda/(f_j)."""

    p: int
    r: int = 0
    mu_list: tuple[int, ...] = ()
    poly_list: tuple[DistinguishedPoly, ...] = ()

    def __post_init__(self):
        if self.r < 0 or any(m <= 0 for m in self.mu_list):
            raise ValueError("free rank and mu exponents must be non-negative/positive")
        object.__setattr__(self, "mu_list", tuple(self.mu_list))
        object.__setattr__(self, "poly_list", tuple(self.poly_list))

    def direct_sum(self, other: ElementaryModule) -> ElementaryModule:
        return ElementaryModule(
            self.p, self.r + other.r, self.mu_list + other.mu_list, self.poly_list + other.poly_list
        )

    def presentation(self, N: int, D: int) -> FinitePresentation:
        a = self.r + len(self.mu_list) + len(self.poly_list)
        cols = []
        k = self.r
        for mu in self.mu_list:
            col = [LambdaSeries(self.p, N, D, ()) for _ in range(a)]
            col[k] = LambdaSeries(self.p, N, D, (self.p**mu,))
            cols.append(col)
            k += 1
        for f in self.poly_list:
            col = [LambdaSeries(self.p, N, D, ()) for _ in range(a)]
            col[k] = LambdaSeries(self.p, N, D, f.coeffs)
            cols.append(col)
            k += 1
        return FinitePresentation(self.p, a, tuple(tuple(c) for c in cols))


def invariants(m: ElementaryModule) -> tuple[int, int, int]:
    """(mu, lambda, g)."""
    mu = sum(m.mu_list)
    lam = sum(f.degree for f in m.poly_list)
    g = m.r + len(m.mu_list) + sum(1 for f in m.poly_list if f.degree >= 1)
    return mu, lam, g


@dataclass(frozen=True)
class FinitePresentation:
    """Lambda^a modulo the span of the given columns (each a length-a vector of series)."""

    p: int
    a: int
    columns: tuple[tuple[LambdaSeries, ...], ...]

    def __post_init__(self):
        if any(len(c) != self.a for c in self.columns):
            raise ValueError("relation columns must have one entry per generator")


def g_from_presentation(pres: FinitePresentation) -> int:
    """Nakayama: a minus the F_p-rank of the constant terms of the relations."""
    from .fp_linalg import rank

    if not pres.columns:
        return pres.a
    rows = [[col[i].coeffs[0] % pres.p for col in pres.columns] for i in range(pres.a)]
    return pres.a - rank(rows, pres.p)


Vector = tuple[tuple[int, ...], ...]  # one coefficient list per generator


def _flatten(vec: Sequence[Sequence[int]], D: int, q: int) -> list[int]:
    out = []
    for comp in vec:
        cs = [int(c) % q for c in comp][:D]
        out.extend(cs + [0] * (D - len(cs)))
    return out


def _shift(vec: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    return [[0] * k + list(comp) for comp in vec]


def _scale(vec: Sequence[Sequence[int]], c: int) -> list[list[int]]:
    return [[c * x for x in comp] for comp in vec]


class FiniteLevel:
    """The finite quotient M/(p^N, T^D)M of a presented module, as (Z/p^N)^(aD)."""

    def __init__(self, pres: FinitePresentation, N: int, D: int):
        self.p, self.N, self.D, self.a = pres.p, N, D, pres.a
        self.q = self.p**N
        self.relations = []
        for col in pres.columns:
            vec = [list(s.coeffs) for s in col]
            self.relations.extend(self.span_vectors(vec))

    def span_vectors(self, vec: Sequence[Sequence[int]]) -> list[list[int]]:
        """Z/p^N-generators of the Lambda-span of ``vec``: its T-shifts."""
        return [_flatten(_shift(vec, k), self.D, self.q) for k in range(self.D)]

    def max_ideal_vectors(self, vec: Sequence[Sequence[int]]) -> list[list[int]]:
        """Generators of (p, T) times the Lambda-span of ``vec``."""
        out = [_flatten(_scale(_shift(vec, k), self.p), self.D, self.q) for k in range(self.D)]
        out += [_flatten(_shift(vec, k), self.D, self.q) for k in range(1, self.D)]
        return out

    def unit_vectors(self) -> list[list[list[int]]]:
        return [[[1] if j == i else [] for j in range(self.a)] for i in range(self.a)]

    def length(self, extra: Sequence[Sequence[int]] = ()) -> int:
        """log_p of the order of (Z/p^N)^(aD) / (relations + extra)."""
        vectors = self.relations + list(extra)
        size = self.a * self.D
        if not vectors:
            return self.N * size
        rows = [[v[i] for v in vectors] for i in range(size)]
        return sum(smith_exponents(rows, self.p, self.N))

    def generators_needed(self, gens: Sequence[Sequence[Sequence[int]]]) -> int:
        """dim Y/(p, T)Y for Y the image of the Lambda-span of ``gens``."""
        span, small = [], []
        for g in gens:
            span += self.span_vectors(g)
            small += self.max_ideal_vectors(g)
        return self.length(small) - self.length(span)


def _pres_level(pres: FinitePresentation, N: int, D: int) -> FiniteLevel:
    return FiniteLevel(pres, N, D)


@dataclass(frozen=True)
class MuZeroReport:
    no_free_no_mu: bool
    finitely_generated_over_zp: bool
    mod_p_finite: bool
    mod_p_dimension: int | None

    @property
    def consistent(self) -> bool:
        return self.no_free_no_mu == self.finitely_generated_over_zp == self.mod_p_finite


def mu_zero_equivalences(m: ElementaryModule, level: tuple[int, int] = (2, 16)) -> MuZeroReport:
    """Compare r = mu = 0, finiteness of the Z_p-rank, and finiteness of M/pM.

    Finiteness is read as "length of M/(p^N, T^D) stops growing in D".
    """
    N, D = level
    pres = m.presentation(N, D + 1)
    lengths = [_pres_level(pres, N, d).length() for d in (D, D + 1)]
    mod_p = [_pres_level(pres, 1, d).length() for d in (D, D + 1)]
    fg = lengths[0] == lengths[1]
    finite_mod_p = mod_p[0] == mod_p[1]
    if fg != finite_mod_p:
        raise ValueError("raise level")
    mu, _, _ = invariants(m)
    report = MuZeroReport(m.r == 0 and mu == 0, fg, finite_mod_p, mod_p[0] if finite_mod_p else None)
    if not report.consistent:
        raise ValueError("raise level")
    return report


@dataclass(frozen=True)
class SubmodulePair:
    """X presented by ``x``; Y the Lambda-span of ``y_generators`` inside X."""

    x: FinitePresentation
    y_generators: tuple[Vector, ...]
    label: str = ""


def matsuno_check(
    pair: SubmodulePair, levels: Sequence[tuple[int, int]] = ((4, 8), (5, 10))
) -> tuple[int, int, bool]:
    """(gX, gY, 2 gX >= gY) with agreement required across the given levels."""
    seen = []
    for N, D in levels:
        lvl = FiniteLevel(pair.x, N, D)
        gens = [tuple(tuple(c) for c in v) for v in pair.y_generators]
        y_span = [w for g in gens for w in lvl.span_vectors(g)]
        p_x = [w for u in lvl.unit_vectors() for w in lvl.span_vectors(_scale(u, lvl.p))]
        if lvl.length(y_span) != lvl.length(y_span + p_x):
            raise ValueError("pair invalid")
        g_x = lvl.generators_needed(lvl.unit_vectors())
        g_y = lvl.generators_needed(gens)
        seen.append((g_x, g_y))
    if len(set(seen)) != 1:
        raise ValueError("raise level")
    g_x, g_y = seen[0]
    return g_x, g_y, 2 * g_x >= g_y


def _random_distinguished(p: int, N: int, degree: int, rng) -> DistinguishedPoly:
    return DistinguishedPoly.of(p, N, [p * rng.randrange(p ** (N - 1)) for _ in range(degree)])


def curated_pairs(p: int, count: int, rng, N: int = 6) -> list[SubmodulePair]:
    """Index-p style pairs: X a sum of Lambda/(f) with f distinguished, and
    Y either pX plus a few extra elements, or (p, T)X."""
    pairs = [
        SubmodulePair(ElementaryModule(p, 0, (), (DistinguishedPoly.of(p, N, [0]),)).presentation(N, 12), (((p,),),), "T/p"),
        SubmodulePair(
            ElementaryModule(p, 0, (), (DistinguishedPoly.of(p, N, [0]),) * 2).presentation(N, 12),
            (((p,), ()), ((), (p,))),
            "T+T/p",
        ),
    ]
    while len(pairs) < count:
        k = rng.choice([1, 1, 2, 2, 3])
        polys = tuple(_random_distinguished(p, N, rng.randint(1, 3), rng) for _ in range(k))
        x = ElementaryModule(p, 0, (), polys).presentation(N, 12)
        style = rng.choice(["pX+v", "mX", "mX+v", "pX"])
        gens: list[Vector] = []
        gens += [tuple((p,) if j == i else () for j in range(k)) for i in range(k)]
        if style.startswith("mX"):
            gens += [tuple((0, 1) if j == i else () for j in range(k)) for i in range(k)]
        if style.endswith("+v"):
            for _ in range(rng.randint(1, 2)):
                gens.append(tuple(tuple(rng.randrange(p) for _ in range(rng.randint(1, 3))) for _ in range(k)))
        pairs.append(SubmodulePair(x, tuple(gens), style))
    return pairs[:count]

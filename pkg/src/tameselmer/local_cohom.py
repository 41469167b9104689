"""Cocycles of the tame group <sigma, tau | sigma tau sigma^-1 = tau^ell>
with values in trace-zero 2x2 matrices over F_p."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import fp_linalg
from .padic import Mat2, PAdicApprox, mat_pow
from .tame_deform import ConditionType, ShapeParams, TrivialPrime

# coordinates (a, b, c) <-> (a b; c -a)
_BASIS = ((1, 0, 0, -1), (0, 1, 0, 0), (0, 0, 1, 0))


def _to_coords(entries: Sequence[int], p: int) -> tuple[int, int, int]:
    return entries[0] % p, entries[1] % p, entries[2] % p


def _from_coords(coords: Sequence[int], p: int) -> tuple[int, int, int, int]:
    a, b, c = (x % p for x in coords)
    return a, b, c, (-a) % p


@dataclass(frozen=True)
class AdCocycle:
    """Values of a 1-cochain on sigma and tau, each a trace-zero matrix mod p."""

    p: int
    sigma: tuple[int, int, int, int]
    tau: tuple[int, int, int, int]

    def __post_init__(self):
        for name in ("sigma", "tau"):
            m = tuple(int(x) % self.p for x in getattr(self, name))
            if len(m) != 4:
                raise ValueError("cocycle values are 2x2 matrices")
            if (m[0] + m[3]) % self.p:
                raise ValueError("cocycle values must be trace zero")
            object.__setattr__(self, name, m)

    @classmethod
    def zero(cls, p: int) -> AdCocycle:
        return cls(p, (0, 0, 0, 0), (0, 0, 0, 0))

    @classmethod
    def from_coords(cls, p: int, coords: Sequence[int]) -> AdCocycle:
        return cls(p, _from_coords(coords[:3], p), _from_coords(coords[3:], p))

    def coords(self) -> tuple[int, ...]:
        return _to_coords(self.sigma, self.p) + _to_coords(self.tau, self.p)

    def digits(self) -> str:
        """Eight F_p digits: sigma entries then tau entries, row-major."""
        return " ".join(str(x) for x in self.sigma + self.tau)

    @classmethod
    def from_digits(cls, p: int, text: str) -> AdCocycle:
        values = [int(x) for x in text.replace(",", " ").split()]
        if len(values) != 8 or any(not 0 <= v < p for v in values):
            raise ValueError("a cocycle record is eight digits in [0, p)")
        return cls(p, tuple(values[:4]), tuple(values[4:]))

    def __add__(self, other: AdCocycle) -> AdCocycle:
        return AdCocycle(
            self.p,
            tuple(a + b for a, b in zip(self.sigma, other.sigma)),
            tuple(a + b for a, b in zip(self.tau, other.tau)),
        )

    def scale(self, c: int) -> AdCocycle:
        return AdCocycle(self.p, tuple(c * a for a in self.sigma), tuple(c * a for a in self.tau))

    def conjugate_by(self, c: Mat2) -> AdCocycle:
        cm = c.reduce(1)
        inv = cm.inverse()
        return AdCocycle(
            self.p,
            (cm * Mat2(self.p, 1, self.sigma) * inv).entries,
            (cm * Mat2(self.p, 1, self.tau) * inv).entries,
        )


@dataclass(frozen=True)
class AdAction:
    """Residual images of sigma and tau acting on Ad^0 by conjugation."""

    p: int
    ell: int
    sigma: Mat2
    tau: Mat2

    def __post_init__(self):
        s, t = self.sigma.reduce(1), self.tau.reduce(1)
        object.__setattr__(self, "sigma", s)
        object.__setattr__(self, "tau", t)
        if not (s.is_invertible() and t.is_invertible()):
            raise ValueError("invalid action")
        if s * t * s.inverse() != mat_pow(t, self.ell):
            raise ValueError("invalid action")

    @classmethod
    def trivial(cls, prime: TrivialPrime) -> AdAction:
        ident = Mat2.identity(prime.p, 1)
        return cls(prime.p, prime.ell, ident, ident)

    def act(self, g: Mat2, v: Sequence[int]) -> tuple[int, int, int, int]:
        return (g * Mat2(self.p, 1, tuple(v)) * g.inverse()).entries


def _relation_map(action: AdAction) -> list[list[int]]:
    """Matrix (4 x 6) of the cochain value on the relator sigma tau sigma^-1 tau^-ell.

    Fox expansion of f(w) for w = sigma tau sigma^-1 tau^-ell:
        f(sigma) + sigma.f(tau) - (sigma tau sigma^-1).f(sigma)
        - (sigma tau sigma^-1 tau^-ell).sum_{i<ell} tau^i.f(tau)
    """
    p, ell = action.p, action.ell
    s, t = action.sigma, action.tau
    s_inv = s.inverse()
    conj = s * t * s_inv
    whole = conj * mat_pow(t, ell).inverse()
    powers = [mat_pow(t, i) for i in range(ell)]

    def value(cs: Sequence[int], ct: Sequence[int]) -> list[int]:
        total = Mat2(p, 1, tuple(cs))
        total = total + Mat2(p, 1, action.act(s, ct))
        total = total - Mat2(p, 1, action.act(conj, cs))
        orbit = Mat2.zero(p, 1)
        for g in powers:
            orbit = orbit + Mat2(p, 1, action.act(g, ct))
        total = total - Mat2(p, 1, action.act(whole, orbit.entries))
        return list(total.entries)

    zero = (0, 0, 0, 0)
    columns = [value(b, zero) for b in _BASIS] + [value(zero, b) for b in _BASIS]
    return [[columns[j][i] for j in range(6)] for i in range(4)]


@dataclass(frozen=True)
class CocycleSpace:
    """An F_p-subspace of cochains, given by a basis."""

    p: int
    basis: tuple[AdCocycle, ...]
    label: str

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords_matrix(self) -> list[list[int]]:
        return [list(f.coords()) for f in self.basis]

    def contains(self, f: AdCocycle) -> bool:
        return fp_linalg.in_span(f.coords(), self.coords_matrix(), self.p)

    def combination(self, coeffs: Sequence[int]) -> AdCocycle:
        out = AdCocycle.zero(self.p)
        for c, f in zip(coeffs, self.basis):
            out = out + f.scale(c)
        return out

    def elements(self) -> Iterator[AdCocycle]:
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            yield self.combination(coeffs)


def _space(p: int, rows: Sequence[Sequence[int]], label: str) -> CocycleSpace:
    basis = fp_linalg.row_basis(rows, p) if rows else []
    return CocycleSpace(p, tuple(AdCocycle.from_coords(p, r) for r in basis), label)


def is_cocycle(action: AdAction, f: AdCocycle) -> bool:
    m = _relation_map(action)
    x = f.coords()
    return all(sum(a * b for a, b in zip(row, x)) % action.p == 0 for row in m)


def cocycle_space(action: AdAction) -> tuple[CocycleSpace, CocycleSpace]:
    """(Z^1, B^1) for the action."""
    p = action.p
    z1 = fp_linalg.nullspace(_relation_map(action), p, 6)
    b1 = []
    for m in _BASIS:
        sig = [(x - y) % p for x, y in zip(action.act(action.sigma, m), m)]
        tau = [(x - y) % p for x, y in zip(action.act(action.tau, m), m)]
        b1.append(list(_to_coords(sig, p) + _to_coords(tau, p)))
    return _space(p, z1, "Z1"), _space(p, b1, "B1")


def unramified_cocycles(action: AdAction) -> CocycleSpace:
    """Cocycles whose tau-value lies in (tau - 1)Ad^0 (trivial on inertia in H^1)."""
    p = action.p
    z1, _ = cocycle_space(action)
    image = []
    for m in _BASIS:
        image.append(list(_to_coords([(x - y) % p for x, y in zip(action.act(action.tau, m), m)], p)))
    # unknowns: coefficients on the Z^1 basis, then on the image spanning set
    rows = []
    for i in range(3):
        row = [f.coords()[3 + i] for f in z1.basis] + [(-v[i]) % p for v in image]
        rows.append(row)
    null = fp_linalg.nullspace(rows, p, z1.dim + len(image)) if z1.dim else []
    vectors = [z1.combination(v[: z1.dim]).coords() for v in null]
    return _space(p, [list(v) for v in vectors], "H1_nr")


@dataclass(frozen=True)
class CohomologyDims:
    z1: int
    b1: int
    h1: int
    h1_nr: int

    @property
    def ramified_quotient(self) -> int:
        return self.h1 - self.h1_nr


def cohomology_dims(action: AdAction) -> CohomologyDims:
    z1, b1 = cocycle_space(action)
    nr = unramified_cocycles(action)
    return CohomologyDims(z1.dim, b1.dim, z1.dim - b1.dim, nr.dim - b1.dim)


def h0_dim(action: AdAction) -> int:
    p = action.p
    rows = []
    for g in (action.sigma, action.tau):
        images = [[(x - y) % p for x, y in zip(action.act(g, m), m)] for m in _BASIS]
        for i in range(4):
            rows.append([img[i] for img in images])
    return 3 - fp_linalg.rank(rows, p)


def h_dims(action: AdAction) -> tuple[int, int, int]:
    """(h0, h1, h2) with h2 from the vanishing local Euler characteristic."""
    h0 = h0_dim(action)
    h1 = cohomology_dims(action).h1
    return h0, h1, h1 - h0


def standard_cocycles(p: int, y_prime: int = 0) -> dict[str, AdCocycle]:
    """f1, f2, g_nr and g_ram (the last depends on y' = y/(ell-1))."""
    yp = y_prime % p
    return {
        "f1": AdCocycle(p, (0, 1, 0, 0), (0, 0, 0, 0)),
        "f2": AdCocycle(p, (0, 0, 0, 0), (0, 1, 0, 0)),
        "g_nr": AdCocycle(p, (0, 0, 1, 0), (0, 0, 0, 0)),
        "g_ram": AdCocycle(p, (0, 0, 1, 0), (-yp, 0, 0, yp)),
    }


def ramified_ratio(params: ShapeParams, prime: TrivialPrime) -> int:
    """y' = y/(ell-1) mod p; both have valuation one."""
    y = params.y
    if y.valuation() != 1:
        raise ValueError("y must have valuation exactly one")
    ell_minus_one = PAdicApprox(prime.p, y.n, prime.ell - 1)
    return (y.div_p() / ell_minus_one.div_p()).value % prime.p


def base_space(ctype: ConditionType, params: ShapeParams, prime: TrivialPrime) -> CocycleSpace:
    p = prime.p
    if ctype.base == "nr":
        cs = standard_cocycles(p)
        basis = (cs["f1"], cs["f2"], cs["g_nr"])
        label = "P_nr"
    else:
        cs = standard_cocycles(p, ramified_ratio(params, prime))
        basis = (cs["f1"], cs["f2"], cs["g_ram"])
        label = "P_ram"
    return CocycleSpace(p, basis, label)


def n_space(ctype: ConditionType, params: ShapeParams, prime: TrivialPrime) -> CocycleSpace:
    """Conjugate of the base space by the type's conjugator."""
    base = base_space(ctype, params, prime)
    c = ctype.conjugator(prime.p, 1)
    return CocycleSpace(prime.p, tuple(f.conjugate_by(c) for f in base.basis), f"N_{ctype.name}")


def q_space(p: int) -> CocycleSpace:
    cs = standard_cocycles(p)
    return CocycleSpace(p, (cs["f1"], cs["f2"]), "Q")


def type_iii_pattern(f: AdCocycle) -> tuple[int, int, int, int] | None:
    """(a, b, c, d) with f(sigma) = (-a a; b a), f(tau) = (c 0; d -c), or None."""
    p = f.p
    s11, s12, s21, s22 = f.sigma
    t11, t12, t21, t22 = f.tau
    if (s11 + s12) % p or (s22 - s12) % p or t12 % p:
        return None
    return s12, s21, t11, t21


def shape_obstruction_check(f: AdCocycle) -> bool:
    """True iff f(sigma) is not of the form (-a a; b a)."""
    s11, s12, _, s22 = f.sigma
    return (s11 + s12) % f.p != 0 or (s22 - s12) % f.p != 0


def conjugation_twists(d) -> CocycleSpace:
    """Cocycles realised by conjugating a lift of d by I + p Z.

    For d = I + p**(n-1) N_g on each generator, conjugation by I + p Z moves
    a lift to precision n+1 by the twist g -> [Z, N_g] at level n.  Requires
    both images to be I mod p**(n-1).
    """
    p, n = d.p, d.n
    ident = Mat2.identity(p, n)
    normals = []
    for m in (d.sigma, d.tau):
        if not m.is_identity_mod(n - 1):
            raise ValueError("images must be I mod p**(n-1)")
        normals.append(Mat2(p, 1, tuple(e // p ** (n - 1) for e in (m - ident).entries)))
    rows = []
    for z in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        zm = Mat2(p, 1, z)
        values = [(zm * nm - nm * zm).entries for nm in normals]
        rows.append(list(_to_coords(values[0], p) + _to_coords(values[1], p)))
    return _space(p, rows, "B1")

"""Residues modulo p**n with explicit precision, 2x2 matrices over them,
and Smith normal form over the local ring Z/p**n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def int_valuation(value: int, p: int, cap: int) -> int:
    """p-adic valuation of an integer, capped at ``cap`` (zero maps to cap)."""
    if value == 0:
        return cap
    v = 0
    while v < cap and value % p == 0:
        value //= p
        v += 1
    return v


@dataclass(frozen=True)
class PAdicApprox:
    """A residue class modulo p**n.

    ``value`` is always the canonical representative in ``[0, p**n)``.
    Mixed arithmetic with plain integers coerces the integer to the same
    precision; arithmetic between two approximations keeps the smaller
    precision.
    """

    p: int
    n: int
    value: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "value", self.value % self.p**self.n)

    @property
    def modulus(self) -> int:
        return self.p**self.n

    def _common(self, other) -> tuple[int, int, int]:
        # returns (precision, left value, right value)
        if isinstance(other, PAdicApprox):
            if other.p != self.p:
                raise ValueError("mismatched primes")
            n = min(self.n, other.n)
            return n, self.value, other.value
        if isinstance(other, int):
            return self.n, self.value, other
        raise TypeError(f"cannot combine PAdicApprox with {type(other).__name__}")

    def __add__(self, other):
        n, a, b = self._common(other)
        return PAdicApprox(self.p, n, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        n, a, b = self._common(other)
        return PAdicApprox(self.p, n, a - b)

    def __rsub__(self, other):
        n, a, b = self._common(other)
        return PAdicApprox(self.p, n, b - a)

    def __mul__(self, other):
        n, a, b = self._common(other)
        return PAdicApprox(self.p, n, a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PAdicApprox(self.p, self.n, -self.value)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PAdicApprox(self.p, self.n, pow(self.value, e, self.modulus))

    def __truediv__(self, other):
        n, a, b = self._common(other)
        divisor = PAdicApprox(self.p, n, b)
        return PAdicApprox(self.p, n, a) * divisor.inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            return (self.value - other) % self.modulus == 0
        if isinstance(other, PAdicApprox):
            return (self.p, self.n, self.value) == (other.p, other.n, other.value)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.n, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"PAdicApprox({self.value} mod {self.p}^{self.n})"

    def valuation(self) -> int:
        """Valuation in ``0..n``; the value ``n`` means "at least n"."""
        return int_valuation(self.value, self.p, self.n)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def inverse(self) -> PAdicApprox:
        if not self.is_unit():
            raise ValueError("not a unit")
        return PAdicApprox(self.p, self.n, pow(self.value, -1, self.modulus))

    def div_p(self) -> PAdicApprox:
        """Exact division by p; the result loses one digit of precision."""
        if self.value % self.p != 0:
            raise ValueError("not divisible by p")
        if self.n == 1:
            raise ValueError("no precision left after division by p")
        return PAdicApprox(self.p, self.n - 1, self.value // self.p)

    def reduce(self, m: int) -> PAdicApprox:
        if m > self.n:
            raise ValueError("cannot reduce to a higher precision")
        return PAdicApprox(self.p, m, self.value)

    def lift(self, m: int) -> PAdicApprox:
        """Zero-digit lift to precision ``m >= n``."""
        if m < self.n:
            raise ValueError("cannot lift to a lower precision")
        return PAdicApprox(self.p, m, self.value)


def teichmuller(u: PAdicApprox) -> PAdicApprox:
    """The (p-1)-th root of unity congruent to ``u`` modulo p."""
    if not u.is_unit():
        raise ValueError("not a unit")
    x = u.value
    q = u.modulus
    for _ in range(u.n + 1):
        nxt = pow(x, u.p, q)
        if nxt == x:
            break
        x = nxt
    return PAdicApprox(u.p, u.n, x)


def hensel_sqrt_one(ell_val: PAdicApprox) -> PAdicApprox:
    """Square root on the branch congruent to 1 mod p, by Newton iteration."""
    p, q = ell_val.p, ell_val.modulus
    if (ell_val.value - 1) % p != 0:
        raise ValueError("wrong branch precondition")
    x = ell_val.value
    s = 1
    half = pow(2, -1, q)
    for _ in range(ell_val.n.bit_length() + 2):
        s = (s + x * pow(s, -1, q)) * half % q
    return PAdicApprox(p, ell_val.n, s)


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over Z/p**n, stored row-major as canonical residues."""

    p: int
    n: int
    entries: tuple[int, int, int, int]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("precision must be positive")
        q = self.p**self.n
        object.__setattr__(self, "entries", tuple(int(e) % q for e in self.entries))
        if len(self.entries) != 4:
            raise ValueError("a 2x2 matrix needs four entries")

    @classmethod
    def of(cls, p: int, n: int, a: int, b: int, c: int, d: int) -> Mat2:
        return cls(p, n, (a, b, c, d))

    @classmethod
    def from_rows(cls, p: int, n: int, rows: Sequence[Sequence[int]]) -> Mat2:
        (a, b), (c, d) = rows
        return cls(p, n, (a, b, c, d))

    @classmethod
    def identity(cls, p: int, n: int) -> Mat2:
        return cls(p, n, (1, 0, 0, 1))

    @classmethod
    def zero(cls, p: int, n: int) -> Mat2:
        return cls(p, n, (0, 0, 0, 0))

    @property
    def modulus(self) -> int:
        return self.p**self.n

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c, d = self.entries
        return (a, b), (c, d)

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[2 * i + j]

    def entry(self, i: int, j: int) -> PAdicApprox:
        """Entry at zero-based position (i, j) as a PAdicApprox."""
        return PAdicApprox(self.p, self.n, self[i, j])

    def _other(self, other: Mat2) -> tuple[int, tuple[int, ...]]:
        if other.p != self.p:
            raise ValueError("mismatched primes")
        return min(self.n, other.n), other.entries

    def __add__(self, other: Mat2) -> Mat2:
        n, e = self._other(other)
        return Mat2(self.p, n, tuple(x + y for x, y in zip(self.entries, e)))

    def __sub__(self, other: Mat2) -> Mat2:
        n, e = self._other(other)
        return Mat2(self.p, n, tuple(x - y for x, y in zip(self.entries, e)))

    def __neg__(self) -> Mat2:
        return Mat2(self.p, self.n, tuple(-x for x in self.entries))

    def __mul__(self, other) -> Mat2:
        if isinstance(other, Mat2):
            n, (e, f, g, h) = self._other(other)
            a, b, c, d = self.entries
            return Mat2(self.p, n, (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))
        if isinstance(other, PAdicApprox):
            n = min(self.n, other.n)
            return Mat2(self.p, n, tuple(x * other.value for x in self.entries))
        if isinstance(other, int):
            return Mat2(self.p, self.n, tuple(x * other for x in self.entries))
        return NotImplemented

    def __rmul__(self, other) -> Mat2:
        if isinstance(other, (int, PAdicApprox)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int) -> Mat2:
        if e < 0:
            return mat_pow(self.inverse(), -e)
        return mat_pow(self, e)

    def det(self) -> PAdicApprox:
        a, b, c, d = self.entries
        return PAdicApprox(self.p, self.n, a * d - b * c)

    def trace(self) -> PAdicApprox:
        a, _, _, d = self.entries
        return PAdicApprox(self.p, self.n, a + d)

    def is_invertible(self) -> bool:
        return self.det().is_unit()

    def inverse(self) -> Mat2:
        a, b, c, d = self.entries
        inv = self.det().inverse().value
        return Mat2(self.p, self.n, (d * inv, -b * inv, -c * inv, a * inv))

    def transpose(self) -> Mat2:
        a, b, c, d = self.entries
        return Mat2(self.p, self.n, (a, c, b, d))

    def conjugate_by(self, a: Mat2) -> Mat2:
        """Return ``a * self * a^-1``."""
        return a * self * a.inverse()

    def reduce(self, m: int) -> Mat2:
        if m > self.n:
            raise ValueError("cannot reduce to a higher precision")
        return Mat2(self.p, m, self.entries)

    def lift(self, m: int) -> Mat2:
        if m < self.n:
            raise ValueError("cannot lift to a lower precision")
        return Mat2(self.p, m, self.entries)

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def is_identity_mod(self, k: int = 1) -> bool:
        """True when the matrix is congruent to I modulo p**k."""
        pk = self.p ** min(k, self.n)
        a, b, c, d = self.entries
        return (a - 1) % pk == 0 and b % pk == 0 and c % pk == 0 and (d - 1) % pk == 0

    def min_valuation(self) -> int:
        return min(int_valuation(e, self.p, self.n) for e in self.entries)

    def __repr__(self):
        a, b, c, d = self.entries
        return f"Mat2([[{a}, {b}], [{c}, {d}]] mod {self.p}^{self.n})"


def mat_pow(m: Mat2, e: int) -> Mat2:
    """Square-and-multiply power; ``mat_pow(m, 0)`` is the identity."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = Mat2.identity(m.p, m.n)
    base = m
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


@dataclass(frozen=True)
class SnfDecomposition:
    """``U * M * V = diag(p**a1, p**a2)``; an exponent equal to n stands for
    a vanishing divisor ("at least n")."""

    U: Mat2
    V: Mat2
    exponents: tuple[int, int]

    def diagonal(self) -> Mat2:
        p, n = self.U.p, self.U.n
        a1, a2 = self.exponents
        d1 = 0 if a1 >= n else p**a1
        d2 = 0 if a2 >= n else p**a2
        return Mat2(p, n, (d1, 0, 0, d2))


def snf2(m: Mat2) -> SnfDecomposition:
    """Smith normal form over Z/p**n, pivoting on a minimal-valuation entry."""
    p, n, q = m.p, m.n, m.modulus
    rows = [list(m.rows[0]), list(m.rows[1])]
    left = [[1, 0], [0, 1]]
    right = [[1, 0], [0, 1]]

    vals = [int_valuation(rows[i][j], p, n) for i in range(2) for j in range(2)]
    best = min(range(4), key=lambda k: vals[k])
    if vals[best] >= n:
        ident = Mat2.identity(p, n)
        return SnfDecomposition(ident, ident, (n, n))
    i, j = divmod(best, 2)
    if i == 1:
        rows.reverse()
        left.reverse()
    if j == 1:
        for r in rows:
            r.reverse()
        for r in right:
            r.reverse()

    a1 = vals[best]
    unit = rows[0][0] // p**a1
    unit_inv = pow(unit, -1, q)
    rows[0] = [x * unit_inv % q for x in rows[0]]
    left[0] = [x * unit_inv % q for x in left[0]]

    # clear the rest of the pivot column, then the pivot row
    t = rows[1][0] // p**a1
    rows[1] = [(x - t * y) % q for x, y in zip(rows[1], rows[0])]
    left[1] = [(x - t * y) % q for x, y in zip(left[1], left[0])]
    t = rows[0][1] // p**a1
    rows[0][1] = (rows[0][1] - t * rows[0][0]) % q
    rows[1][1] = (rows[1][1] - t * rows[1][0]) % q
    for r in right:
        r[1] = (r[1] - t * r[0]) % q

    rest = rows[1][1]
    a2 = int_valuation(rest, p, n)
    if a2 < n:
        unit_inv = pow(rest // p**a2, -1, q)
        left[1] = [x * unit_inv % q for x in left[1]]

    U = Mat2.from_rows(p, n, left)
    V = Mat2.from_rows(p, n, right)
    return SnfDecomposition(U, V, (a1, a2))


def smith_exponents(rows: Sequence[Sequence[int]], p: int, n: int) -> list[int]:
    """Elementary divisor exponents of an integer matrix over Z/p**n.

    One exponent per row, sorted ascending, so the cokernel of the matrix
    acting on column vectors is the sum of Z/p**e over the returned list
    (an exponent of n marks a free summand of (Z/p**n)).
    """
    q = p**n
    a = [[x % q for x in r] for r in rows]
    k = len(a)
    m = len(a[0]) if k else 0
    out: list[int] = []
    for step in range(min(k, m)):
        best = None
        for i in range(step, k):
            row = a[i]
            for j in range(step, m):
                x = row[j]
                if x:
                    v = int_valuation(x, p, n)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        a[step], a[i] = a[i], a[step]
        if j != step:
            for row in a:
                row[step], row[j] = row[j], row[step]
        pv = p**v
        inv = pow(a[step][step] // pv, -1, q)
        piv = [x * inv % q for x in a[step]]
        a[step] = piv
        for i in range(step + 1, k):
            t = a[i][step] // pv
            if t:
                a[i] = [(x - t * y) % q for x, y in zip(a[i], piv)]
        # remaining pivot-row entries are multiples of the pivot: column
        # operations clear them without touching the rows below
        for j in range(step + 1, m):
            piv[j] = 0
        out.append(v)
    out.extend([n] * (k - len(out)))
    return sorted(out)

"""Linear algebra over F_p, delegated to sympy's DomainMatrix."""

from __future__ import annotations

from typing import Sequence

from sympy import GF
from sympy.polys.matrices import DomainMatrix


def _matrix(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> DomainMatrix:
    field = GF(p)
    rows = [list(r) for r in rows]
    if not rows:
        return DomainMatrix([], (0, ncols or 0), field)
    return DomainMatrix([[field(int(x) % p) for x in r] for r in rows], (len(rows), len(rows[0])), field)


def _to_ints(m: DomainMatrix, p: int) -> list[list[int]]:
    return [[int(x) % p for x in row] for row in m.to_list()]


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 0
    return _matrix(rows, p).rank()


def nullspace(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of {x : rows * x = 0} in F_p**ncols, in reduced echelon form."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    null = _matrix(rows, p).nullspace()
    if null.shape[0] == 0:
        return []
    return _to_ints(null, p)


def row_basis(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Reduced echelon basis of the row span."""
    if not rows:
        return []
    reduced, pivots = _matrix(rows, p).rref()
    return _to_ints(reduced, p)[: len(pivots)]


def solve(rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> list[int] | None:
    """One solution of rows * x = rhs over F_p, or None if inconsistent."""
    ncols = len(rows[0])
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = _matrix(augmented, p).rref()
    if ncols in pivots:
        return None
    table = _to_ints(reduced, p)
    x = [0] * ncols
    for r, col in enumerate(pivots):
        x[col] = table[r][ncols]
    return x


def in_span(vector: Sequence[int], rows: Sequence[Sequence[int]], p: int) -> bool:
    return rank(list(rows) + [list(vector)], p) == rank(rows, p)

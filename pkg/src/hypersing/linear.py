"""Exact linear algebra over the rationals.

Matrices are tuples of row tuples of ``Fraction``. Everything here is small
(at most a handful of rows), so plain Gaussian elimination is all we need.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Coerce a nested sequence of numbers (or 'a/b' strings) to a Matrix."""
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def identity(size: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size))


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix g with g[k][perm[k]] = 1, so that z_k is sent to z_{perm[k]}."""
    size = len(perm)
    if sorted(perm) != list(range(size)):
        raise ValueError(f"not a permutation: {perm}")
    return tuple(
        tuple(Fraction(1) if j == perm[k] else Fraction(0) for j in range(size))
        for k in range(size)
    )


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def _echelon(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int], Fraction]:
    """Row-reduce a copy of ``rows``; return (reduced rows, pivot columns, det factor).

    The det factor is the product of pivots times the sign of the row swaps;
    it only means something for square input of full rank.
    """
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return m, [], Fraction(1)
    ncols = len(m[0])
    pivots = []
    det = Fraction(1)
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            m[r], m[pivot] = m[pivot], m[r]
            det = -det
        pv = m[r][c]
        det *= pv
        inv = 1 / pv
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots, det


def rank(rows: Sequence[Sequence]) -> int:
    return len(_echelon(rows)[1])


def kernel_dim(rows: Sequence[Sequence]) -> int:
    """Dimension of the right null space of a (non-empty) matrix."""
    return len(rows[0]) - rank(rows)


def det(a: Matrix) -> Fraction:
    if any(len(row) != len(a) for row in a):
        raise ValueError("determinant of a non-square matrix")
    _, pivots, d = _echelon(a)
    return d if len(pivots) == len(a) else Fraction(0)


def inverse(a: Matrix) -> Matrix:
    size = len(a)
    if any(len(row) != size for row in a):
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + list(e) for row, e in zip(a, identity(size))]
    m, pivots, _ = _echelon(aug)
    if pivots[:size] != list(range(size)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[size:]) for row in m)

"""Matrices and subspaces over a finite field.

Vectors are row tuples, matrices are tuples of rows, and a matrix acts on
the right: ``v -> v @ M``.  A subspace is identified with its reduced
row-echelon basis, which is unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .field import GF

Matrix = tuple[tuple[int, ...], ...]


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(F: GF, a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = F.add(s, F.mul(x, y))
            out_row.append(s)
        out.append(tuple(out_row))
    return tuple(out)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def rref(F: GF, rows) -> Matrix:
    """Reduced row-echelon form with zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    pivot_row = 0
    for c in range(ncols):
        pr = next((i for i in range(pivot_row, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[pivot_row], m[pr] = m[pr], m[pivot_row]
        inv = F.inv(m[pivot_row][c])
        m[pivot_row] = [F.mul(inv, x) for x in m[pivot_row]]
        for i in range(len(m)):
            if i != pivot_row and m[i][c]:
                factor = m[i][c]
                m[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(m[i], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return tuple(tuple(r) for r in m[:pivot_row])


def rank(F: GF, rows) -> int:
    return len(rref(F, rows))


def determinant(F: GF, a: Matrix) -> int:
    m = [list(r) for r in a]
    n = len(m)
    det = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = F.neg(det)
        det = F.mul(det, m[c][c])
        inv = F.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                factor = F.mul(m[i][c], inv)
                m[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(m[i], m[c])]
    return det


def inverse(F: GF, a: Matrix) -> Matrix:
    n = len(a)
    aug = [tuple(r) + identity(n)[i] for i, r in enumerate(a)]
    red = rref(F, aug)
    if len(red) < n or any(red[i][:n] != identity(n)[i] for i in range(n)):
        raise ValueError("matrix is singular")
    return tuple(r[n:] for r in red)


def null_space(F: GF, rows, n: int) -> Matrix:
    """Basis (in RREF) of ``{x : rows @ x^T = 0}``."""
    red = rref(F, rows)
    pivots = [next(j for j, x in enumerate(r) if x) for r in red]
    basis = []
    for free in (j for j in range(n) if j not in pivots):
        vec = [0] * n
        vec[free] = 1
        for r, pc in zip(red, pivots):
            vec[pc] = F.neg(r[free])
        basis.append(vec)
    return rref(F, basis)


def frobenius_matrix(F: GF, a: Matrix) -> Matrix:
    return tuple(tuple(F.frobenius(x) for x in r) for r in a)


@dataclass(frozen=True)
class MatrixGL:
    """An invertible matrix over ``field``."""

    entries: Matrix
    field: GF

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(r) != n for r in self.entries):
            raise ValueError("matrix must be square")
        if determinant(self.field, self.entries) == 0:
            raise ValueError("matrix is singular")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: MatrixGL) -> MatrixGL:
        return MatrixGL(mat_mul(self.field, self.entries, other.entries), self.field)

    def det(self) -> int:
        return determinant(self.field, self.entries)

    def inverse(self) -> MatrixGL:
        return MatrixGL(inverse(self.field, self.entries), self.field)


@dataclass(frozen=True, order=True)
class ProjSubspace:
    """A subspace of ``GF(q)^n`` held by its reduced row-echelon basis."""

    basis: Matrix
    n: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, F: GF, rows, n: int) -> ProjSubspace:
        return cls(rref(F, rows), n)

    def image(self, F: GF, g: Matrix) -> ProjSubspace:
        return ProjSubspace(rref(F, mat_mul(F, self.basis, g)), self.n)

    def contains(self, F: GF, other: ProjSubspace) -> bool:
        return rank(F, self.basis + other.basis) == self.dim

    def perp(self, F: GF) -> ProjSubspace:
        """Orthogonal complement for the standard dot product."""
        if not self.basis:
            return ProjSubspace(identity(self.n), self.n)
        return ProjSubspace(null_space(F, self.basis, self.n), self.n)


def echelon_forms(F: GF, n: int, i: int):
    """Every i x n reduced echelon matrix, grouped by pivot columns."""
    for pivots in combinations(range(n), i):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for values in product(range(F.q), repeat=len(free)):
            m = [[0] * n for _ in range(i)]
            for r, pc in enumerate(pivots):
                m[r][pc] = 1
            for (r, c), x in zip(free, values):
                m[r][c] = x
            yield tuple(tuple(row) for row in m)

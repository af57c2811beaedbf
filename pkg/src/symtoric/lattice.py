"""Exact integer linear algebra: Smith normal form and lattice-summand tests.

Everything here runs on Python's arbitrary-precision integers; no floating
point enters this module.  The Smith routine uses smallest-nonzero-pivot
selection to limit entry growth; outputs are canonical only up to the
contracts stated on :class:`SmithDecomposition`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


class LatticeError(ValueError):
    """Malformed lattice data: dimension mismatch, zero vector, bad entries."""


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense integer matrix with row-major entries; empty shapes allowed."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise LatticeError("negative matrix shape")
        if len(self.entries) != self.rows:
            raise LatticeError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise LatticeError("ragged matrix rows")
            for x in row:
                if not isinstance(x, int):
                    raise LatticeError(f"non-integer entry {x!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise LatticeError("shape mismatch in matrix product")
        data = tuple(
            tuple(
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)
            )
            for i in range(self.rows)
        )
        return IntegerMatrix(self.rows, other.cols, data)

    def transpose(self) -> "IntegerMatrix":
        data = tuple(
            tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)
        )
        return IntegerMatrix(self.cols, self.rows, data)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise LatticeError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if piv is None:
                    return 0
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """left @ matrix @ right == diag(diag); left and right have |det| = 1.

    ``diag`` holds nonnegative elementary divisors in a divisibility chain
    (trailing zeros allowed); its length is min(rows, cols).
    """

    left: IntegerMatrix
    diag: tuple[int, ...]
    right: IntegerMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)

    def diagonal_matrix(self, rows: int, cols: int) -> IntegerMatrix:
        data = tuple(
            tuple(self.diag[i] if i == j and i < len(self.diag) else 0 for j in range(cols))
            for i in range(rows)
        )
        return IntegerMatrix(rows, cols, data)


def smith_normal_form(m: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with transforms, smallest-|pivot| selection."""
    nr, nc = m.rows, m.cols
    a = [list(row) for row in m.entries]
    left = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    right = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_add(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + f * y for x, y in zip(left[dst], left[src])]

    def col_add(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in right:
            row[dst] += f * row[src]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    for t in range(min(nr, nc)):
        while True:
            pivot = None
            for i in range(t, nr):
                for j in range(t, nc):
                    v = abs(a[i][j])
                    if v and (pivot is None or v < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (t, t):
                if pivot[0] != t:
                    row_swap(t, pivot[0])
                if pivot[1] != t:
                    col_swap(t, pivot[1])
            if a[t][t] < 0:
                row_negate(t)
            # Euclidean clearing of column t then row t; a leftover smaller
            # remainder becomes the new pivot and the loop repeats.
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    row_add(i, t, -(a[i][t] // a[t][t]))
            if any(a[i][t] for i in range(t + 1, nr)):
                continue
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    col_add(j, t, -(a[t][j] // a[t][t]))
            if any(a[t][j] for j in range(t + 1, nc)):
                continue
            viol = next(
                (
                    i
                    for i in range(t + 1, nr)
                    for j in range(t + 1, nc)
                    if a[i][j] % a[t][t] != 0
                ),
                None,
            )
            if viol is not None:
                row_add(t, viol, 1)
                continue
            break

    diag = tuple(a[i][i] for i in range(min(nr, nc)))
    return SmithDecomposition(
        IntegerMatrix.from_rows(left, nr),
        diag,
        IntegerMatrix.from_rows(right, nc),
    )


def elementary_divisors(m: IntegerMatrix) -> tuple[int, ...]:
    return smith_normal_form(m).diag


def is_basis_of_lattice_summand(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors extend to a Z-basis of the ambient lattice.

    Equivalent test: all nonzero elementary divisors equal 1 and their
    count equals the number of vectors.  The empty set qualifies.
    """
    vs = [tuple(int(x) for x in v) for v in vectors]
    if not vs:
        return True
    n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise LatticeError("dimension mismatch among vectors")
    diag = smith_normal_form(IntegerMatrix.from_rows(vs, n)).diag
    nonzero = [d for d in diag if d != 0]
    return len(nonzero) == len(vs) and all(d == 1 for d in nonzero)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """v divided by the gcd of its entries, orientation preserved."""
    w = tuple(int(x) for x in v)
    g = gcd(*(abs(x) for x in w)) if w else 0
    if g == 0:
        raise LatticeError("zero vector has no primitive representative")
    return tuple(x // g for x in w)

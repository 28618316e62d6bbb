"""Exact integer linear algebra: Hermite and Smith normal forms.

Matrices are lists of rows of Python ints.  Nothing here uses floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    n = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row) if a) for j in range(n)] for row in A]


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def hermite_rows(rows: Matrix, ncols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns a basis in echelon form: each row's leading entry (pivot) is
    positive, pivots move strictly right, and every entry above a pivot lies in
    ``[0, pivot)``.  The result is unique for the lattice.
    """
    A = [list(r) for r in rows if any(r)]
    basis: Matrix = []
    col = 0
    while A and col < ncols:
        nz = [r for r in A if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in A if r[col] == 0]
        # Euclid on column ``col`` until one row is left.
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        A = rest
        col += 1
    # reduce entries above pivots
    for i, row in enumerate(basis):
        p = next(j for j, x in enumerate(row) if x)
        for k in range(i):
            q = basis[k][p] // row[p]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], row)]
    return basis


def pivot_columns(hnf: Matrix) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in hnf]


def reduce_mod(x: list[int], hnf: Matrix, pivots: list[int] | None = None) -> tuple[int, ...]:
    """Canonical representative of ``x`` modulo the row lattice of ``hnf``."""
    x = list(x)
    pivots = pivot_columns(hnf) if pivots is None else pivots
    for row, p in zip(hnf, pivots):
        q = x[p] // row[p]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return tuple(x)


@dataclass
class SmithForm:
    U: Matrix  # m x m, unimodular
    D: Matrix  # m x n, diagonal, d1 | d2 | ...
    V: Matrix  # n x n, unimodular
    rank: int

    @property
    def invariants(self) -> list[int]:
        return [self.D[i][i] for i in range(self.rank)]


def smith_normal_form(A: Matrix, ncols: int | None = None) -> SmithForm:
    """Return ``U, D, V`` with ``U @ A @ V == D``."""
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    D = [list(r) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for M in (D, V):
            for row in M:
                row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, q)
                    if D[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, q)
                    if D[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility: the pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            i, _ = bad
            D[t] = [a + b for a, b in zip(D[t], D[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SmithForm(U, D, V, t)


def integer_kernel(A: Matrix, ncols: int) -> Matrix:
    """Canonical (Hermite) basis of ``{x in Z^n : A x = 0}`` as rows."""
    if not A:
        return identity(ncols)
    snf = smith_normal_form(A, ncols)
    cols = transpose(snf.V)[snf.rank:]
    return hermite_rows(cols, ncols)


def rank_q(rows: list[list]) -> int:
    """Rank over the rationals by fraction-exact elimination."""
    A = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not A:
        return 0
    ncols = len(A[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for i in range(rank + 1, len(A)):
            if A[i][col] != 0:
                f = A[i][col] / p
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
        if rank == len(A):
            break
    return rank


def solve_q(A: list[list], b: list) -> list[Fraction] | None:
    """One rational solution of ``A x = b`` (free variables set to zero)."""
    n = len(A[0]) if A else 0
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        M[r] = [x / p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in M[r:]):
        return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = M[i][-1]
    return x

"""Hermite and Smith normal forms over Python integers.

Matrices are lists of rows.  Lattices are row spans.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: upper echelon, positive pivots, entries above
    each pivot reduced into ``[0, pivot)``.
    """
    A = [list(map(int, r)) for r in rows]
    r0 = 0
    for col in range(ncols):
        # gcd-combine the column into row r0
        active = [i for i in range(r0, len(A)) if A[i][col]]
        if not active:
            continue
        while True:
            active = [i for i in range(r0, len(A)) if A[i][col]]
            piv = min(active, key=lambda i: abs(A[i][col]))
            A[r0], A[piv] = A[piv], A[r0]
            done = True
            for i in range(r0 + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[r0][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r0])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if A[r0][col] < 0:
            A[r0] = [-a for a in A[r0]]
        p = A[r0][col]
        for i in range(r0):
            q = A[i][col] // p
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r0])]
        r0 += 1
    return A[:r0]


def solve_in_lattice(basis: Matrix, y: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``y`` in an HNF basis, or None if ``y`` is not in it."""
    y = list(y)
    coeffs = []
    col = 0
    for row in basis:
        while row[col] == 0:
            if y[col] != 0:
                return None
            col += 1
        q, rem = divmod(y[col], row[col])
        if rem:
            return None
        coeffs.append(q)
        if q:
            y = [a - q * b for a, b in zip(y, row)]
        col += 1
    if any(y):
        return None
    return coeffs


def determinant(M: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] * inv
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def inverse(M: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [a * inv for a in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def smith(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Smith normal form ``S = U M V`` with unimodular ``U``, ``V``.

    Returns ``(S, U, V, V_inv)``.  Diagonal entries are nonnegative and each
    divides the next.
    """
    A = [list(map(int, r)) for r in M]
    m, n = len(A), len(A[0]) if A else 0
    U, V, Vi = identity(m), identity(n), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for row in R:
                row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for R in (A, V):
            for row in R:
                row[dst] -= q * row[src]
        Vi[src] = [a + q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not nz:
                return A, U, V, Vi
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V, Vi

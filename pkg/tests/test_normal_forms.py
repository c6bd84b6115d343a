from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from fanomld import normal_forms as nf


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=n, max_size=n)
)
rect = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: st.lists(st.lists(st.integers(-20, 20), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0])
)


@settings(max_examples=300, deadline=None)
@given(rect)
def test_smith_against_sympy(M):
    S, U, V, Vi = nf.smith(M)
    assert matmul(matmul(U, M), V) == S
    assert matmul(V, Vi) == nf.identity(len(V))
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    ref = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    ref_diag = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)))
    assert sorted(diag) == ref_diag


@settings(max_examples=300, deadline=None)
@given(square)
def test_determinant_and_inverse(M):
    det = nf.determinant(M)
    assert det == sympy.Matrix(M).det()
    if det:
        inv = nf.inverse(M)
        assert matmul(M, inv) == [[Fraction(int(i == j)) for j in range(len(M))] for i in range(len(M))]


@settings(max_examples=300, deadline=None)
@given(rect, st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_hermite_membership(rows, coeffs):
    ncols = len(rows[0])
    H = nf.hermite_rows(rows, ncols)
    # pivots positive and strictly to the right, entries above pivots reduced
    pivots = []
    for row in H:
        p = next(j for j, x in enumerate(row) if x)
        assert row[p] > 0
        pivots.append(p)
    assert pivots == sorted(set(pivots))
    for i, p in enumerate(pivots):
        assert all(0 <= H[k][p] < H[i][p] for k in range(i))
    # same lattice: every input row solves, and a random combination solves
    for row in rows:
        assert nf.solve_in_lattice(H, row) is not None
    combo = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(ncols)]
    sol = nf.solve_in_lattice(H, combo)
    assert sol is not None
    assert [sum(s * h[j] for s, h in zip(sol, H)) for j in range(ncols)] == combo


def test_solve_rejects_non_member():
    H = nf.hermite_rows([[2, 0], [0, 3]], 2)
    assert nf.solve_in_lattice(H, [1, 0]) is None
    assert nf.solve_in_lattice(H, [4, 9]) == [2, 3]

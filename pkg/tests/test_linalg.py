from fractions import Fraction
from itertools import combinations, product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricgkz.errors import RankDeficient
from toricgkz.linalg import (SolveKind, det, hnf, hnf_pivots, identity, integer_kernel_basis, matmul,
                             matvec, rank, same_lattice, solve_affine, spans_lattice, transpose)
from toricgkz.ratfunc import RatFunc

A8 = [[1, 1, 1, 1, 1, 1], [1, 2, 1, 2, 3, 0], [0, 2, 2, 0, 1, 1]]


def is_row_hnf(H):
    piv = hnf_pivots(H)
    cols = [c for _, c in piv]
    if cols != sorted(cols) or len(set(cols)) != len(cols):
        return False
    nonzero = [i for i, r in enumerate(H) if any(r)]
    if nonzero != list(range(len(piv))):
        return False
    for r, c in piv:
        if H[r][c] <= 0 or any(H[i][c] for i in range(r + 1, len(H))):
            return False
        if any(not 0 <= H[i][c] < H[r][c] for i in range(r)):
            return False
    return True


def test_hnf_small():
    H, U = hnf([[2, 4], [1, 3]])
    # above-pivot entries are reduced into [0, pivot), so [[1,3],[0,2]] becomes this
    assert H == ((1, 1), (0, 2))
    assert matmul(U, [[2, 4], [1, 3]]) == H
    assert abs(det(U)) == 1


def test_hnf_identity_and_zero():
    assert hnf(identity(3)) == (identity(3), identity(3))
    H, U = hnf([[0, 0]])
    assert H == ((0, 0),) and abs(det(U)) == 1


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_hnf_property(M):
    H, U = hnf(M)
    assert matmul(U, M) == H
    assert abs(det(U)) == 1
    assert is_row_hnf(H)
    assert len(hnf_pivots(H)) == rank(M)


def test_kernel_conic_matches_brute_force():
    A = [[1, 1, 1], [0, 1, 2]]
    B = integer_kernel_basis(A)
    assert len(B) == 3 and len(B[0]) == 1
    col = tuple(r[0] for r in B)
    # every primitive kernel vector in the box is +-col
    brute = {v for v in product(range(-3, 4), repeat=3)
             if any(v) and not any(matvec(A, v))}
    prim = {v for v in brute if all(tuple(x // k for x in v) not in brute or k == 1
                                    for k in (2, 3) if all(x % k == 0 for x in v))}
    assert prim == {col, tuple(-x for x in col)}


def test_kernel_empty():
    B = integer_kernel_basis([[1, 1], [0, 1]])
    assert B == ((), ())


def test_kernel_worked_example():
    B = integer_kernel_basis(A8)
    assert len(B) == 6 and len(B[0]) == 3
    assert all(not any(matvec(A8, col)) for col in transpose(B))
    cand = transpose([[0, 0, 1, 1, -1, -1], [1, 1, 0, 0, -1, -1], [3, 0, 0, -3, 1, -1]])
    assert same_lattice(B, cand)
    assert maximal_minor_gcd(B) == 1


def maximal_minor_gcd(B):
    """gcd of the m x m minors; 1 iff the columns span a saturated lattice."""
    m = len(B[0])
    out = 0
    for rows in combinations(range(len(B)), m):
        out = gcd(out, det([B[r] for r in rows]))
    return abs(out)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=n - 1)))
def test_kernel_basis_is_saturated(A):
    if rank(A) < len(A):
        return
    B = integer_kernel_basis(A)
    assert all(not any(matvec(A, col)) for col in transpose(B))
    assert len(B[0]) == len(A[0]) - len(A)
    assert maximal_minor_gcd(B) == 1


def test_kernel_rank_deficient():
    with pytest.raises(RankDeficient):
        integer_kernel_basis([[1, 1, 1], [2, 2, 2]])


@pytest.mark.parametrize("A, expected", [
    (A8, True), ([[1, 1], [0, 2]], False), ([[1, 1, 1], [0, 1, 2]], True), ([[1, 1, 1], [0, 2, 4]], False),
])
def test_spans_lattice(A, expected):
    assert spans_lattice(A) is expected


def test_solve_affine_identity():
    sol = solve_affine(identity(3), (Fraction(1, 2), 3, -1))
    assert sol.kind is SolveKind.UNIQUE and sol.x == (Fraction(1, 2), 3, -1)


def test_solve_affine_inconsistent():
    assert solve_affine(((0,),), (1,)).kind is SolveKind.INCONSISTENT
    assert solve_affine(((1, 1), (2, 2)), (1, 3)).kind is SolveKind.INCONSISTENT


def test_solve_affine_underdetermined():
    assert solve_affine(((1, 1),), (1,)).kind is SolveKind.UNDERDETERMINED


def test_solve_affine_symbolic_pair():
    # pair (d4, {1,6}) of the worked example with beta = (1+a, 2, a)
    a = RatFunc.var()
    eta = (0, 0, 0, 1, 0, 0)
    beta = (1 + a, 2, a)
    M = tuple((row[0], row[5]) for row in A8)
    rhs = tuple(b - r for b, r in zip(beta, matvec(A8, eta)))
    sol = solve_affine(M, rhs)
    assert sol.kind is SolveKind.UNIQUE
    assert sol.x == (0, a)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=2, max_size=4),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.integers(-2, 2))
def test_solve_affine_unique_solves(M, b, c):
    a = RatFunc.var()
    rhs = [x + c * a for x in b[:len(M)]]
    sol = solve_affine(M, rhs)
    if sol.kind is SolveKind.UNIQUE:
        assert all(sum(m * x for m, x in zip(row, sol.x)) == r for row, r in zip(M, rhs))

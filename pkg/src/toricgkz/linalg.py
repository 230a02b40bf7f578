"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples.  Integer matrices hold Python ints (so
entries are unbounded); rational/symbolic matrices hold ``Fraction`` or
:class:`~toricgkz.ratfunc.RatFunc` entries.  Nothing here uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import RankDeficient
from .ratfunc import RatFunc, simplify

IntMatrix = tuple  # tuple[tuple[int, ...], ...]


class ScalarField(Enum):
    RATIONAL = "Rational"
    RATIONAL_FUNCTION = "RationalFunction"


def field_of(values) -> ScalarField:
    for v in values:
        if isinstance(v, RatFunc) and not v.is_constant():
            return ScalarField.RATIONAL_FUNCTION
    return ScalarField.RATIONAL


def as_matrix(rows) -> IntMatrix:
    return tuple(tuple(r) for r in rows)


def shape(M) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M) -> IntMatrix:
    if not M:
        return ()
    return tuple(zip(*M))


def matmul(M, N) -> IntMatrix:
    Nt = transpose(N)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Nt) for row in M)


def matvec(M, v) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def det(M) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(M) -> int:
    """Rank over Q (entries may be ints, Fractions or RatFuncs)."""
    rows = [list(r) for r in M]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = Fraction(rows[i][c]) / p if not isinstance(p, RatFunc) else rows[i][c] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(M) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ M``, ``U`` unimodular, ``H`` in row
    echelon form with positive pivots and entries above each pivot reduced
    into ``[0, pivot)``.
    """
    nrows, ncols = shape(M)
    H = [list(r) for r in M]
    U = [list(r) for r in identity(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # gcd-combine all rows below r into row r for column c
        for i in range(r + 1, nrows):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            H[r], H[i] = ([x * u + y * v for u, v in zip(H[r], H[i])],
                          [-q * u + p * v for u, v in zip(H[r], H[i])])
            U[r], U[i] = ([x * u + y * v for u, v in zip(U[r], U[i])],
                          [-q * u + p * v for u, v in zip(U[r], U[i])])
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-u for u in H[r]]
            U[r] = [-u for u in U[r]]
        piv = H[r][c]
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [u - f * v for u, v in zip(H[i], H[r])]
                U[i] = [u - f * v for u, v in zip(U[i], U[r])]
        r += 1
    return as_matrix(H), as_matrix(U)


def hnf_pivots(H) -> list[tuple[int, int]]:
    """(row, column) of each pivot of an echelon matrix."""
    out = []
    for i, row in enumerate(H):
        j = next((j for j, x in enumerate(row) if x != 0), None)
        if j is not None:
            out.append((i, j))
    return out


def spans_lattice(A) -> bool:
    """True iff the columns of ``A`` generate Z^d."""
    d = len(A)
    H, _ = hnf(transpose(A))
    piv = hnf_pivots(H)
    return len(piv) == d and all(H[i][j] == 1 for i, j in piv)


def lll_reduce(basis: Sequence[Sequence[int]], delta=Fraction(3, 4)) -> list[list[int]]:
    """LLL-reduce a list of linearly independent integer vectors (exact)."""
    b = [list(v) for v in basis]
    k = len(b)
    if k <= 1:
        return b

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar, mu = [], [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bstar[j])) / dot(bstar[j], bstar[j])
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
        return bstar, mu

    bstar, mu = gram_schmidt()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                bstar, mu = gram_schmidt()
        lhs = dot(bstar[i], bstar[i])
        rhs = (delta - mu[i][i - 1] ** 2) * dot(bstar[i - 1], bstar[i - 1])
        if lhs >= rhs:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            bstar, mu = gram_schmidt()
            i = max(i - 1, 1)
    return b


def integer_kernel_basis(A, reduce: bool = True) -> IntMatrix:
    """An n x m matrix whose columns are a Z-basis of ker_Z(A).

    Computed from the row HNF of A^T: the rows of the transform matching
    zero rows of the HNF span the left kernel.  With ``reduce`` the basis is
    LLL-reduced and each column sign-normalized (first nonzero entry
    positive) for readable, short lattice coordinates.
    """
    d, n = shape(A)
    H, U = hnf(transpose(A))
    nonzero = len(hnf_pivots(H))
    if nonzero < d:
        raise RankDeficient(f"matrix has rank {nonzero} < {d}")
    cols = [list(U[i]) for i in range(nonzero, n)]
    if reduce and cols:
        cols = lll_reduce(cols)
        for c in cols:
            lead = next(x for x in c if x != 0)
            if lead < 0:
                c[:] = [-x for x in c]
    if not cols:
        return tuple(() for _ in range(n))
    return transpose(cols)


def same_lattice(B1, B2) -> bool:
    """True iff the column lattices of two integer matrices coincide."""
    H1, _ = hnf(transpose(B1))
    H2, _ = hnf(transpose(B2))
    strip = lambda H: tuple(r for r in H if any(r))
    return strip(H1) == strip(H2)


def solve_rational(M, b) -> tuple | None:
    """Unique-or-None rational solve of a square nonsingular system."""
    sol = solve_affine(M, b)
    return sol.x if sol.kind is SolveKind.UNIQUE else None


class SolveKind(Enum):
    UNIQUE = "Unique"
    INCONSISTENT = "Inconsistent"
    UNDERDETERMINED = "Underdetermined"


@dataclass(frozen=True)
class AffineSolution:
    kind: SolveKind
    x: tuple | None = None
    # residual right-hand sides that must vanish for consistency
    residuals: tuple = ()


def solve_affine(M, b) -> AffineSolution:
    """Classify and solve ``M x = b`` exactly over Q or Q(a).

    ``M`` may be symbolic too, but in this package it is always rational
    while ``b`` carries the parameter.  For an inconsistent system the
    leftover right-hand sides after elimination are returned in
    ``residuals``; a specialization of ``a`` makes the system consistent
    exactly when all of them vanish.
    """
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    rows = [[_lift(x) for x in M[i]] + [_lift(b[i])] for i in range(nrows)]
    pivcols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not _is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(nrows):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivcols.append(c)
        r += 1
    residuals = tuple(simplify(rows[i][ncols]) for i in range(r, nrows)
                      if not _is_zero(rows[i][ncols]))
    if residuals:
        return AffineSolution(SolveKind.INCONSISTENT, None, residuals)
    if r < ncols:
        return AffineSolution(SolveKind.UNDERDETERMINED)
    x = [None] * ncols
    for i, c in enumerate(pivcols):
        x[c] = simplify(rows[i][ncols])
    return AffineSolution(SolveKind.UNIQUE, tuple(x))


def _lift(x):
    return x if isinstance(x, RatFunc) else Fraction(x)


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, RatFunc) else x == 0

"""Exact rational polyhedra {z : c.z <= k}.

Everything is decided by Fourier-Motzkin elimination over ``Fraction``:
feasibility, boundedness (through the recession cone), projections used to
drive lattice-point enumeration, and the normalized volume of a point
configuration through a placing triangulation.  Coordinates are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import kernels
from .errors import DegenerateConfiguration
from .linalg import det, hnf, hnf_pivots, identity, transpose

DEFAULT_CAP = 50

Constraint = tuple  # (coeffs: tuple[Fraction, ...], rhs: Fraction)


def _normalize(coeffs, rhs) -> Constraint:
    """Scale to a primitive integer coefficient vector (rhs stays rational)."""
    coeffs = [Fraction(c) for c in coeffs]
    rhs = Fraction(rhs)
    nz = [c for c in coeffs if c]
    if not nz:
        return tuple(coeffs), rhs
    den = lcm(*(c.denominator for c in nz))
    ints = [int(c * den) for c in coeffs]
    g = gcd(*ints)
    scale = Fraction(den, g)
    return tuple(Fraction(x // g) for x in ints), rhs * scale


@dataclass(frozen=True)
class IneqSystem:
    """The system ``c . z <= k`` for each ``(c, k)`` in ``constraints``."""

    dim: int
    constraints: tuple = ()
    labels: tuple | None = None

    def __post_init__(self):
        for c, _ in self.constraints:
            if len(c) != self.dim:
                raise ValueError(f"constraint of length {len(c)} in dimension {self.dim}")
        if self.labels is not None:
            if len(self.labels) != len(self.constraints):
                raise ValueError("one label per constraint")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("labels must be unique")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], rhs: Sequence, labels=None) -> "IneqSystem":
        cons = tuple((tuple(Fraction(x) for x in r), Fraction(k)) for r, k in zip(rows, rhs))
        dim = len(rows[0]) if rows else 0
        return cls(dim, cons, tuple(labels) if labels is not None else None)

    def add(self, coeffs, rhs, label=None) -> "IneqSystem":
        labels = None
        if self.labels is not None:
            labels = self.labels + (label,)
        return IneqSystem(self.dim, self.constraints + ((tuple(Fraction(c) for c in coeffs),
                                                         Fraction(rhs)),), labels)

    def without(self, j: int) -> "IneqSystem":
        cons = self.constraints[:j] + self.constraints[j + 1:]
        labels = None if self.labels is None else self.labels[:j] + self.labels[j + 1:]
        return IneqSystem(self.dim, cons, labels)

    def reversed_at(self, j: int) -> "IneqSystem":
        """Replace ``c.z <= k`` by ``c.z >= k``."""
        c, k = self.constraints[j]
        new = (tuple(-x for x in c), -k)
        cons = self.constraints[:j] + (new,) + self.constraints[j + 1:]
        return IneqSystem(self.dim, cons, self.labels)

    def homogenized(self) -> "IneqSystem":
        return IneqSystem(self.dim, tuple((c, Fraction(0)) for c, _ in self.constraints))

    def contains(self, z) -> bool:
        return all(sum(a * x for a, x in zip(c, z)) <= k for c, k in self.constraints)

    def box(self, radius: int) -> "IneqSystem":
        """Intersect with the L-infinity ball of the given radius."""
        out = self
        for i in range(self.dim):
            e = [0] * self.dim
            e[i] = 1
            out = out.add(e, radius, None if self.labels is None else ("box+", i))
            e[i] = -1
            out = out.add(e, radius, None if self.labels is None else ("box-", i))
        return out


@dataclass
class LatticePointReport:
    points: list = field(default_factory=list)
    exhaustive: bool = True
    search_radius_used: int = 0


def _reduce_constraints(cons) -> tuple[list, bool]:
    """Deduplicate; keep the tightest rhs per direction.  Returns (list, infeasible)."""
    best: dict = {}
    infeasible = False
    for c, k in cons:
        c, k = _normalize(c, k)
        if not any(c):
            if k < 0:
                infeasible = True
            continue
        if c not in best or k < best[c]:
            best[c] = k
    return sorted(best.items()), infeasible


def eliminate(S: IneqSystem, coord: int) -> IneqSystem:
    """Fourier-Motzkin projection eliminating coordinate ``coord``."""
    if not 0 <= coord < S.dim:
        raise IndexError(f"coordinate {coord} outside dimension {S.dim}")
    pos, neg, zero = [], [], []
    for c, k in S.constraints:
        a = c[coord]
        rest = c[:coord] + c[coord + 1:]
        if a > 0:
            pos.append((tuple(x / a for x in rest), k / a))
        elif a < 0:
            neg.append((tuple(x / -a for x in rest), k / -a))
        else:
            zero.append((rest, k))
    combined = list(zero)
    for cp, kp in pos:
        for cn, kn in neg:
            combined.append((tuple(x + y for x, y in zip(cp, cn)), kp + kn))
    cons, infeasible = _reduce_constraints(combined)
    if infeasible:
        cons.append(((Fraction(0),) * (S.dim - 1), Fraction(-1)))
    return IneqSystem(S.dim - 1, tuple(cons))


def is_feasible(S: IneqSystem) -> bool:
    cons, infeasible = _reduce_constraints(S.constraints)
    if infeasible:
        return False
    T = IneqSystem(S.dim, tuple(cons))
    while T.dim:
        T = eliminate(T, T.dim - 1)
        if any(k < 0 and not any(c) for c, k in T.constraints):
            return False
    return all(k >= 0 for _, k in T.constraints)


def is_bounded(S: IneqSystem) -> bool:
    """True iff the recession cone ``{z : c.z <= 0}`` is ``{0}``.

    For a nonempty system this is ordinary boundedness; for an empty one it
    is the criterion that the reversal lemma counts.
    """
    if S.dim == 0:
        return True
    cone = S.homogenized()
    for i in range(S.dim):
        for s in (1, -1):
            e = [0] * S.dim
            e[i] = -s  # s * z_i >= 1
            if is_feasible(cone.add(e, -1)):
                return False
    return True


def projections(S: IneqSystem) -> list[IneqSystem]:
    """``out[k]`` is the shadow of S on the first ``k + 1`` coordinates."""
    cons, infeasible = _reduce_constraints(S.constraints)
    if infeasible:
        cons.append(((Fraction(0),) * S.dim, Fraction(-1)))
    T = IneqSystem(S.dim, tuple(cons))
    out = [T]
    while T.dim > 1:
        T = eliminate(T, T.dim - 1)
        out.append(T)
    out.reverse()
    return out


def _integer_levels(levels: list[IneqSystem]) -> list[list]:
    out = []
    for T in levels:
        lev = []
        for c, k in T.constraints:
            den = lcm(*(x.denominator for x in c), k.denominator)
            ci = tuple(int(x * den) for x in c)
            ki = (k * den).numerator  # exact: k * den is an integer
            lev.append((ci, ki))
        out.append(lev)
    return out


def _bounded_points(S: IneqSystem, backend=None) -> list[tuple]:
    if S.dim == 0:
        return [()] if all(k >= 0 for _, k in S.constraints) else []
    levels = projections(S)
    # integers points of c.z <= k coincide with those of c.z <= floor(k) once
    # c is integral, which _integer_levels guarantees.
    return kernels.nested_points(_integer_levels(levels), backend=backend)


def enumerate_lattice_points(S: IneqSystem, cap: int = DEFAULT_CAP, backend=None) -> LatticePointReport:
    """All of Z^m in S when bounded; otherwise the points within ``cap``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if is_bounded(S):
        return LatticePointReport(_bounded_points(S, backend), True, 0)
    return LatticePointReport(_bounded_points(S.box(cap), backend), False, cap)


def _recession_coordinates(S: IneqSystem):
    """Unimodular ``U`` and ``r`` such that in ``z = U^T y`` the coordinates
    ``y_0..y_{r-1}`` are bounded on S and the rest span the recession cone."""
    cone = S.homogenized()
    eq = [[int(x) for x in c] for c, _ in cone.constraints if not is_feasible(cone.add(c, -1))]
    if not eq:
        return identity(S.dim), 0
    H, U = hnf(transpose(eq))
    return U, len(hnf_pivots(H))


def _box_search(S: IneqSystem, exclude_origin=False, backend=None):
    """First lattice point by growing radius; S must contain one."""
    origin = (0,) * S.dim
    r = 1
    while True:
        for p in _bounded_points(S.box(r), backend):
            if not (exclude_origin and p == origin):
                return p
        r *= 2


def exact_lattice_point(S: IneqSystem, exclude_origin=False, backend=None) -> tuple | None:
    """A lattice point of S, or None when there is none.  Exact.

    After the change of coordinates of ``_recession_coordinates`` the bounded
    coordinates take finitely many integer values.  Each nonempty fiber over
    one of them has a full-dimensional recession cone, so it contains
    lattice points.
    """
    if not is_feasible(S):
        return None
    m = S.dim
    origin = (0,) * m
    if is_bounded(S):
        for p in _bounded_points(S, backend):
            if not (exclude_origin and p == origin):
                return p
        return None
    U, r = _recession_coordinates(S)
    Ut = transpose(U)
    rows = [tuple(sum(c[a] * Ut[a][b] for a in range(m)) for b in range(m)) for c, _ in S.constraints]
    rhs = [k for _, k in S.constraints]
    T = IneqSystem.from_rows(rows, rhs)
    proj = T
    for coord in reversed(range(r, m)):
        proj = eliminate(proj, coord)
    tops = _bounded_points(proj, backend) if r else [()]
    for t in tops:
        fiber = IneqSystem.from_rows(
            [c[r:] for c, _ in T.constraints],
            [k - sum(a * b for a, b in zip(c[:r], t)) for c, k in T.constraints])
        if not is_feasible(fiber):
            continue
        y = tuple(t) + _box_search(fiber, backend=backend)
        z = tuple(sum(Ut[a][b] * y[b] for b in range(m)) for a in range(m))
        if exclude_origin and z == origin:
            # step along an integral recession direction
            rcone = IneqSystem.from_rows([c[r:] for c, _ in T.constraints], [0] * len(rows))
            ray = (0,) * r + _box_search(rcone, exclude_origin=True, backend=backend)
            z = tuple(sum(Ut[a][b] * ray[b] for b in range(m)) for a in range(m))
        return z
    return None


def find_lattice_point(S: IneqSystem, cap: int = DEFAULT_CAP, exclude_origin=False,
                       backend=None) -> tuple[tuple | None, bool]:
    """Search for one lattice point, growing the box radius geometrically.

    Returns ``(point_or_None, exhaustive)``.  Points within ``cap`` are tried
    first so that short answers come back; beyond the cap the answer is
    decided by ``exact_lattice_point``, so ``exhaustive`` is always True here.
    """
    origin = (0,) * S.dim
    if not is_feasible(S):
        return None, True
    if is_bounded(S):
        for p in _bounded_points(S, backend):
            if not (exclude_origin and p == origin):
                return p, True
        return None, True
    r = 1
    while True:
        r = min(r, cap)
        for p in _bounded_points(S.box(r), backend):
            if not (exclude_origin and p == origin):
                return p, True
        if r == cap:
            return exact_lattice_point(S, exclude_origin, backend), True
        r *= 2


def maximize_over_lattice(S: IneqSystem, objective, cap: int = DEFAULT_CAP,
                          backend=None) -> tuple[list, bool]:
    """Lattice maximizers of a linear objective over S.

    Returns ``(maximizers, exact)``.  ``exact`` is False when the answer could
    not be certified (a cap-limited slab).  An empty S or an unbounded
    objective yields ``([], True)``.
    """
    objective = tuple(Fraction(x) for x in objective)
    if not is_feasible(S):
        return [], True
    if is_bounded(S):
        pts = _bounded_points(S, backend)
        return _argmax(pts, objective), True
    cone = S.homogenized()
    # objective unbounded iff some recession direction has objective >= 1
    if is_feasible(cone.add(tuple(-x for x in objective), -1)):
        return [], True
    p, _ = find_lattice_point(S, cap, backend=backend)
    if p is None:
        return [], False
    level = sum(a * x for a, x in zip(objective, p))
    slab = S.add(tuple(-x for x in objective), -level)
    if is_bounded(slab):
        return _argmax(_bounded_points(slab, backend), objective), True
    pts = _bounded_points(slab.box(cap), backend)
    return _argmax(pts, objective), False


def _argmax(pts, objective) -> list:
    best, arg = None, []
    for p in pts:
        v = sum(a * x for a, x in zip(objective, p))
        if best is None or v > best:
            best, arg = v, [p]
        elif v == best:
            arg.append(p)
    return arg


def unbounded_reversals(S: IneqSystem) -> set[int]:
    """Indices j for which reversing constraint j gives an unbounded set."""
    return {j for j in range(len(S.constraints)) if not is_bounded(S.reversed_at(j))}


# -- normalized volume ----------------------------------------------------------

def _affine_rank(points: list[tuple]) -> int:
    from .linalg import rank
    if not points:
        return -1
    base = points[0]
    return rank([tuple(x - y for x, y in zip(p, base)) for p in points[1:]]) if len(points) > 1 else 0


def placing_triangulation(A) -> list[tuple[int, ...]]:
    """Placing triangulation of the columns of a homogeneous matrix.

    Columns are inserted in order.  A column outside the current affine hull
    is coned over every simplex; otherwise it is joined to each boundary
    facet it sees strictly.  Simplices are returned as sorted index tuples.
    """
    d = len(A)
    n = len(A[0])
    cols = [tuple(A[i][j] for i in range(d)) for j in range(n)]
    simplices: list[tuple[int, ...]] = []
    placed: list[int] = []
    hull_dim = -1
    coords: list[int] = []  # rows giving a full-rank chart of the current hull

    def chart_det(idx, extra):
        return det([[cols[j][r] for r in coords] for j in (*idx, extra)])

    for j in range(n):
        if not placed:
            placed.append(j)
            simplices = [(j,)]
            hull_dim = 0
            coords = []
            continue
        if _affine_rank([cols[i] for i in placed + [j]]) > hull_dim:
            simplices = [tuple(sorted(s + (j,))) for s in simplices]
            placed.append(j)
            hull_dim += 1
            coords = _chart_rows(cols, simplices[0], d)
            continue
        # facets of the boundary of the current triangulation
        count: dict = {}
        opposite: dict = {}
        for s in simplices:
            for v in s:
                f = tuple(x for x in s if x != v)
                count[f] = count.get(f, 0) + 1
                opposite[f] = v
        new = []
        for f, c in count.items():
            if c != 1:
                continue
            inner = chart_det(f, opposite[f])
            side = chart_det(f, j)
            if side != 0 and (side > 0) != (inner > 0):
                new.append(tuple(sorted(f + (j,))))
        simplices.extend(new)
        placed.append(j)
    if hull_dim != d - 1:
        raise DegenerateConfiguration(
            f"conv(A) has dimension {hull_dim}, expected {d - 1}")
    return simplices


def _chart_rows(cols, simplex, d) -> list[int]:
    """Row indices of A on which the simplex's columns are independent."""
    from itertools import combinations
    k = len(simplex)
    for rows in combinations(range(d), k):
        if det([[cols[j][r] for r in rows] for j in simplex]) != 0:
            return list(rows)
    raise DegenerateConfiguration("no chart for simplex")


def normalized_volume(A) -> int:
    """Normalized lattice volume of conv(columns of A), A homogeneous."""
    d = len(A)
    cols = list(zip(*A))
    total = 0
    for s in placing_triangulation(A):
        total += abs(det([[cols[j][r] for r in range(d)] for j in s]))
    return total

"""Fake exponents, negative supports and truncated canonical series.

Parameters and exponents are vectors over Q or Q(a): entries are Fractions
or :class:`RatFunc`.  Every exponent produced here is affine in ``a`` (the
matrix is constant, the parameter affine), which lets series coefficients be
kept as :class:`LinearProduct` values instead of general rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Sequence

from .binomial import (BinomialIdeal, Configuration, MonomialIdeal, TermOrder, as_monomial_ideal,
                       initial_ideal, realize_order_weight, toric_ideal, pivot_order)
from .errors import DegeneratePair, ZeroDenominator
from .linalg import SolveKind, matvec, solve_affine
from .polyhedra import IneqSystem, enumerate_lattice_points, find_lattice_point
from .ratfunc import LinearProduct, RatFunc, is_integer_value, rational_roots, simplify
from .stdpairs import StandardPair, standard_pairs

DEFAULT_RADIUS = 6
DEFAULT_CAP = 50


class Tri(Enum):
    YES = "Yes"
    NO = "No"
    INCONCLUSIVE = "InconclusiveAtCap"


# -- cached ideal data ------------------------------------------------------------

@lru_cache(maxsize=64)
def cached_toric_ideal(cfg: Configuration) -> BinomialIdeal:
    return toric_ideal(cfg)


@dataclass(frozen=True)
class WeightData:
    """A generic weight together with its monomial initial ideal and pairs."""

    w: tuple
    ideal: MonomialIdeal
    pairs: tuple


@lru_cache(maxsize=256)
def weight_data(cfg: Configuration, w: tuple) -> WeightData:
    J = initial_ideal(cfg, w, cached_toric_ideal(cfg))
    M = as_monomial_ideal(J)  # raises unless w is generic
    return WeightData(tuple(w), M, tuple(standard_pairs(M)))


@lru_cache(maxsize=64)
def pivot_weight(cfg: Configuration, pivot: int) -> tuple:
    """Integer weight realizing ``-e_pivot`` refined by graded reverse lex."""
    return realize_order_weight(cached_toric_ideal(cfg), pivot_order(cfg.n, pivot))


def default_weight(cfg: Configuration) -> tuple:
    return pivot_weight(cfg, 0)


# -- vectors over Q(a) --------------------------------------------------------

def as_scalar(x):
    return simplify(x) if isinstance(x, RatFunc) else Fraction(x)


def vec(xs) -> tuple:
    return tuple(as_scalar(x) for x in xs)


def vec_key(v) -> tuple:
    return tuple((1, x.sort_key()) if isinstance(x, RatFunc) else (0, x) for x in v)


def vec_str(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def nsupp(v) -> frozenset:
    """Indices whose entry is a negative integer constant."""
    return frozenset(i for i, x in enumerate(v) if is_integer_value(x) and as_scalar(x) < 0)


def _sub(u, v):
    return tuple(as_scalar(a - b) for a, b in zip(u, v))


def _add(u, v):
    return tuple(as_scalar(a + b) for a, b in zip(u, v))


@dataclass(frozen=True)
class FakeExponent:
    v: tuple
    sources: tuple = ()
    nsupp: frozenset = frozenset()
    minimal: Tri | None = None

    def __str__(self):
        return vec_str(self.v)


# -- fake exponents -------------------------------------------------------------

@dataclass
class FakeExponentTable:
    exponents: list
    # pairs whose system is inconsistent over Q(a), with the values of a
    # where they would become consistent
    inconsistent: list = field(default_factory=list)

    def exceptional_values(self) -> list:
        out = set()
        for _, roots in self.inconsistent:
            out |= set(roots)
        return sorted(out)


def _consistency_roots(residuals) -> list:
    roots = None
    for r in residuals:
        if isinstance(r, RatFunc):
            rs = set(rational_roots(r.num))
        else:
            rs = set()  # a nonzero constant never vanishes
        roots = rs if roots is None else roots & rs
    return sorted(roots or ())


def solve_pair(cfg: Configuration, beta, p: StandardPair):
    """Solve ``theta_i = eta_i (i not in sigma), A theta = beta`` for one pair."""
    sigma = sorted(p.sigma)
    M = tuple(tuple(row[j] for j in sigma) for row in cfg.A)
    rhs = _sub(beta, matvec(cfg.A, p.eta))
    return solve_affine(M, rhs), sigma


def fake_exponent_table(cfg: Configuration, beta, w=None, cap: int = DEFAULT_CAP,
                        minimality: bool = True) -> FakeExponentTable:
    w = tuple(w) if w is not None else default_weight(cfg)
    beta = vec(beta)
    data = weight_data(cfg, w)
    found: dict = {}
    inconsistent = []
    for p in data.pairs:
        sol, sigma = solve_pair(cfg, beta, p)
        if sol.kind is SolveKind.UNDERDETERMINED:
            raise DegeneratePair(f"standard pair {p} gives an underdetermined system")
        if sol.kind is SolveKind.INCONSISTENT:
            inconsistent.append((p, _consistency_roots(sol.residuals)))
            continue
        v = list(Fraction(x) for x in p.eta)
        for j, x in zip(sigma, sol.x):
            v[j] = x
        v = vec(v)
        found.setdefault(v, []).append(p)
    out = []
    for v in sorted(found, key=vec_key):
        tri = has_minimal_negative_support(cfg, v, cap) if minimality else None
        out.append(FakeExponent(v, tuple(found[v]), nsupp(v), tri))
    return FakeExponentTable(out, inconsistent)


def fake_exponents(cfg: Configuration, beta, w=None, cap: int = DEFAULT_CAP,
                   minimality: bool = True) -> list[FakeExponent]:
    """Distinct fake exponents of H_A(beta) with respect to a generic weight."""
    return fake_exponent_table(cfg, beta, w, cap, minimality).exponents


# -- negative support ---------------------------------------------------------------

def _ge_rows(cfg, idx_rhs) -> IneqSystem:
    """Constraints ``(B z)_i >= k`` given as ``[(i, k), ...]``."""
    rows = [tuple(-x for x in cfg.gale[i]) for i, _ in idx_rhs]
    rhs = [-k for _, k in idx_rhs]
    return _system(cfg, rows, rhs)


def _system(cfg, rows, rhs) -> IneqSystem:
    if not rows:
        return IneqSystem(cfg.m)
    return IneqSystem.from_rows(rows, rhs)


def has_minimal_negative_support(cfg: Configuration, v, cap: int = DEFAULT_CAP) -> Tri:
    """Is there no lattice vector u with nsupp(v + u) strictly inside nsupp(v)?"""
    v = vec(v.v if isinstance(v, FakeExponent) else v)
    S = nsupp(v)
    if not S:
        return Tri.YES
    ints = [i for i in range(cfg.n) if i not in S and is_integer_value(v[i])]
    inconclusive = False
    for j in sorted(S):
        # u = B z with (v + u)_i >= 0 for integral i outside S and (v + u)_j >= 0
        region = _ge_rows(cfg, [(i, -v[i]) for i in ints] + [(j, -v[j])])
        z, exhaustive = find_lattice_point(region, cap)
        if z is not None:
            return Tri.NO
        inconclusive |= not exhaustive
    return Tri.INCONCLUSIVE if inconclusive else Tri.YES


def same_nsupp_region(cfg: Configuration, v) -> IneqSystem:
    """``{z : nsupp(v + B z) = nsupp(v)}`` as a polyhedron."""
    S = nsupp(v)
    rows, rhs = [], []
    for i in range(cfg.n):
        if i in S:
            rows.append(cfg.gale[i])  # (B z)_i <= -v_i - 1
            rhs.append(-v[i] - 1)
        elif is_integer_value(v[i]):
            rows.append(tuple(-x for x in cfg.gale[i]))  # (B z)_i >= -v_i
            rhs.append(v[i])
    return _system(cfg, rows, rhs)


def series_support_is_trivial(cfg: Configuration, v, cap: int = DEFAULT_CAP) -> Tri:
    """Certify that the only z with nsupp(v + B z) = nsupp(v) is z = 0."""
    region = same_nsupp_region(cfg, vec(v))
    rep = enumerate_lattice_points(region, cap)
    if not rep.exhaustive:
        # an unbounded polyhedron through the origin holds a nonzero lattice point
        return Tri.NO
    return Tri.YES if rep.points == [(0,) * cfg.m] else Tri.NO


# -- series ---------------------------------------------------------------------------

def _lp(x) -> LinearProduct:
    return LinearProduct.of_affine(x)


def falling(x, k: int) -> LinearProduct:
    """``x (x - 1) ... (x - k + 1)``."""
    out = LinearProduct(1)
    for j in range(k):
        out = out * _lp(as_scalar(x - j))
    return out


def series_coefficient(v, u) -> LinearProduct:
    num = LinearProduct(1)
    den = LinearProduct(1)
    for vi, ui in zip(v, u):
        if ui < 0:
            for j in range(1, -ui + 1):
                num = num * _lp(as_scalar(vi - j + 1))
        elif ui > 0:
            for j in range(1, ui + 1):
                den = den * _lp(as_scalar(vi + j))
    if den.is_zero():
        raise ZeroDenominator(f"vanishing denominator at u = {u}")
    return num / den


@dataclass(frozen=True)
class SeriesTerm:
    z: tuple
    u: tuple
    coeff: LinearProduct

    def coeff_value(self):
        return self.coeff.to_scalar()


@dataclass
class TruncatedSeries:
    base: tuple
    terms: list
    truncation_radius: int

    def coefficient_map(self) -> dict:
        return {t.z: t.coeff for t in self.terms}

    def exponent(self, t: SeriesTerm) -> tuple:
        return _add(self.base, t.u)

    def __str__(self):
        return series_str(self)


def canonical_series(cfg: Configuration, v, radius: int = DEFAULT_RADIUS) -> TruncatedSeries:
    """Terms of phi_v with lattice coordinates ``|z|_inf <= radius``."""
    if isinstance(v, FakeExponent):
        if v.minimal not in (None, Tri.YES):
            raise ValueError(f"exponent {v} does not have minimal negative support")
        v = v.v
    v = vec(v)
    region = same_nsupp_region(cfg, v)
    pts = enumerate_lattice_points(region.box(radius), cap=max(radius, 1)).points if cfg.m else [()]
    terms = []
    for z in pts:
        u = cfg.gale_image(z) if cfg.m else (0,) * cfg.n
        terms.append(SeriesTerm(tuple(z), tuple(u), series_coefficient(v, u)))
    terms.sort(key=lambda t: (any(t.z), sum(abs(x) for x in t.z), t.z))
    return TruncatedSeries(v, terms, radius)


def verify_solution(cfg: Configuration, beta, s: TruncatedSeries, I: BinomialIdeal | None = None) -> bool:
    """Check the Euler operators exactly and the toric operators up to truncation.

    For a generator ``d^p - d^q`` with ``p - q = B c`` the coefficient of
    ``x^(v + B z - p)`` in the result is
    ``coeff(z) [v + B z]_p - coeff(z - c) [v + B (z - c)]_q``; it is checked
    for every z with both z and z - c inside the truncation ball.
    """
    beta = vec(beta)
    v = s.base
    if vec(matvec(cfg.A, v)) != beta:
        return False
    if any(any(matvec(cfg.A, t.u)) for t in s.terms):
        return False
    if cfg.m == 0:
        return True
    I = cached_toric_ideal(cfg) if I is None else I
    r = s.truncation_radius
    ball = list(product(range(-r, r + 1), repeat=cfg.m))
    shifts = []
    for g in I.generators:
        diff = tuple(a - b for a, b in zip(g.plus, g.minus))
        sol = solve_affine(cfg.gale, diff)
        shifts.append((g, tuple(int(x) for x in sol.x)))
    if all(isinstance(x, Fraction) for x in v):
        return _verify_rational(cfg, s, ball, shifts)
    coeffs = s.coefficient_map()
    zero = LinearProduct(0)
    exps = {z: _add(v, cfg.gale_image(z)) for z in ball}
    for g, c in shifts:
        for z in ball:
            zc = tuple(a - b for a, b in zip(z, c))
            if any(abs(x) > r for x in zc):
                continue
            a = coeffs.get(z, zero)
            b = coeffs.get(zc, zero)
            if a.is_zero() and b.is_zero():
                continue
            lhs = a * _falling_vec(exps[z], g.plus) if not a.is_zero() else zero
            rhs = b * _falling_vec(exps[zc], g.minus) if not b.is_zero() else zero
            if lhs != rhs:
                return False
    return True


def _verify_rational(cfg, s, ball, shifts) -> bool:
    # Over Q write v = N / D.  Toric generators are homogeneous, so both sides
    # of each comparison carry the same power of D and it cancels.
    v = s.base
    D = lcm(*(x.denominator for x in v))
    r = s.truncation_radius
    coeffs = {t.z: Fraction(t.coeff.to_scalar()) for t in s.terms}
    num = {z: tuple(int(x * D) + D * u for x, u in zip(v, cfg.gale_image(z))) for z in ball}

    def ff(x, p):
        out = 1
        for xi, pi in zip(x, p):
            for j in range(pi):
                out *= xi - j * D
        return out

    for g, c in shifts:
        for z in ball:
            zc = tuple(a - b for a, b in zip(z, c))
            if any(abs(x) > r for x in zc):
                continue
            a = coeffs.get(z, 0)
            b = coeffs.get(zc, 0)
            if not a and not b:
                continue
            lhs = a.numerator * ff(num[z], g.plus) * b.denominator if a else 0
            rhs = b.numerator * ff(num[zc], g.minus) * a.denominator if b else 0
            if lhs != rhs:
                return False
    return True


def _falling_vec(x, p) -> LinearProduct:
    out = LinearProduct(1)
    for xi, pi in zip(x, p):
        if pi:
            out = out * falling(xi, pi)
    return out


# -- rendering ----------------------------------------------------------------------

def _exp_str(x) -> str:
    s = str(x)
    if isinstance(x, RatFunc) and not (len(x.num) == 2 and x.num == (0, 1) and len(x.den) == 1):
        return f"({s})"
    if isinstance(x, Fraction) and (x.denominator != 1 or x < 0):
        return f"({s})"
    return s


def monomial_str(exps, var: str = "x") -> str:
    parts = []
    for i, e in enumerate(exps):
        if isinstance(e, Fraction) and e == 0:
            continue
        if isinstance(e, Fraction) and e == 1:
            parts.append(f"{var}{i + 1}")
        else:
            parts.append(f"{var}{i + 1}^{_exp_str(e)}")
    return " ".join(parts) if parts else "1"


def series_str(s: TruncatedSeries) -> str:
    out = ""
    for k, t in enumerate(s.terms):
        mono = monomial_str(s.exponent(t))
        c = t.coeff_value()
        if isinstance(c, Fraction):
            neg = c < 0
            mag = -c if neg else c
            body = mono if mag == 1 else (f"{mag} {mono}" if mono != "1" else str(mag))
            if mag == 1 and mono == "1":
                body = "1"
        else:
            neg = False
            body = f"({c}) {mono}"
        if k == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"

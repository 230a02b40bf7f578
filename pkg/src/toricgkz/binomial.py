"""Configurations, toric ideals and Buchberger's algorithm for binomials.

Every ideal handled here is generated by pure-difference binomials
``x^a - x^b`` and monomials ``x^a``.  Reducing either term of such a binomial
by another one only ever produces a monomial again, so the whole Groebner
machinery runs on exponent vectors without coefficients.

Exponent vectors are tuples of nonnegative ints; variables are 0-based
internally and printed 1-based (``d1 d2^2``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import kernels
from .errors import InvalidConfiguration
from .linalg import integer_kernel_basis, matvec, rank, spans_lattice, transpose

Monomial = tuple  # exponent vector


def mono_str(u: Sequence[int], var: str = "d", sep: str = " ") -> str:
    parts = []
    for i, e in enumerate(u):
        if e == 1:
            parts.append(f"{var}{i + 1}")
        elif e:
            parts.append(f"{var}{i + 1}^{e}")
    return sep.join(parts) if parts else "1"


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


# -- configuration ------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """A homogeneous d x n integer matrix together with its Gale dual."""

    A: tuple
    gale: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        object.__setattr__(self, "A", A)
        if not A or not A[0]:
            raise InvalidConfiguration("empty matrix")
        n = len(A[0])
        if any(len(r) != n for r in A):
            raise InvalidConfiguration("rows of unequal length")
        if any(x != 1 for x in A[0]):
            raise InvalidConfiguration("first row must be all ones")
        cols = list(zip(*A))
        if len(set(cols)) != n:
            raise InvalidConfiguration("columns must be distinct")
        if rank(A) < len(A):
            raise InvalidConfiguration("matrix must have full row rank")
        if not spans_lattice(A):
            raise InvalidConfiguration("columns do not generate Z^d")
        object.__setattr__(self, "gale", integer_kernel_basis(A))

    @property
    def d(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def m(self) -> int:
        return self.n - self.d

    @property
    def columns(self) -> list[tuple]:
        return list(zip(*self.A))

    def degree_of(self, u) -> tuple:
        """The A-degree ``A . u``."""
        return matvec(self.A, u)

    def gale_image(self, z) -> tuple:
        """``B . z`` for a lattice coordinate vector ``z``."""
        return matvec(self.gale, z)


# -- term orders --------------------------------------------------------------

@dataclass(frozen=True)
class TermOrder:
    """Total degree, then ``weight``, then graded reverse lexicographic.

    ``perm`` lists variables from largest to smallest for the reverse
    lexicographic tiebreak.  Every ideal in this package is homogeneous for
    the standard grading, so the leading total-degree comparison only makes
    the order a well-order; it never decides between terms of a binomial.
    """

    weight: tuple
    perm: tuple

    @classmethod
    def grevlex(cls, n: int, last: int | None = None) -> "TermOrder":
        perm = list(range(n))
        if last is not None:
            perm.remove(last)
            perm.append(last)
        return cls((Fraction(0),) * n, tuple(perm))

    @classmethod
    def weighted(cls, weight: Sequence, perm: Sequence[int] | None = None) -> "TermOrder":
        n = len(weight)
        return cls(tuple(Fraction(x) for x in weight), tuple(perm) if perm else tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.perm)

    def key(self, u) -> tuple:
        return (sum(u), sum(w * x for w, x in zip(self.weight, u)),
                tuple(-u[self.perm[k]] for k in range(len(self.perm) - 1, -1, -1)))

    def weight_of(self, u):
        return sum(w * x for w, x in zip(self.weight, u))


# -- ideals -------------------------------------------------------------------

@dataclass(frozen=True)
class Binomial:
    """``d^plus - d^minus``."""

    plus: tuple
    minus: tuple

    def __post_init__(self):
        if self.plus == self.minus:
            raise ValueError("binomial with equal terms is zero")

    @property
    def degree(self) -> int:
        return sum(self.plus)

    def difference(self) -> tuple:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    def unordered(self) -> frozenset:
        return frozenset((self.plus, self.minus))

    def oriented(self, order: TermOrder) -> "Binomial":
        if order.key(self.plus) >= order.key(self.minus):
            return self
        return Binomial(self.minus, self.plus)

    def __str__(self):
        return f"{mono_str(self.plus)} - {mono_str(self.minus)}"


@dataclass(frozen=True)
class BinomialIdeal:
    n: int
    generators: tuple = ()
    monomials: tuple = ()

    def __post_init__(self):
        gens, seen = [], set()
        for g in self.generators:
            k = g.unordered()
            if k not in seen:
                seen.add(k)
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "monomials", tuple(dict.fromkeys(tuple(m) for m in self.monomials)))

    def __len__(self):
        return len(self.generators) + len(self.monomials)

    def is_zero(self) -> bool:
        return len(self) == 0

    def as_strings(self) -> list[str]:
        return [str(g) for g in self.generators] + [mono_str(m) for m in self.monomials]


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal stored by its minimal generators (sorted)."""

    n: int
    generators: tuple = ()

    def __post_init__(self):
        gens = sorted(set(tuple(g) for g in self.generators), key=lambda g: (sum(g), g))
        minimal = []
        for g in gens:
            if not any(_divides(h, g) for h in minimal):
                minimal.append(g)
        object.__setattr__(self, "generators", tuple(sorted(minimal)))

    def contains(self, u) -> bool:
        return any(_divides(g, u) for g in self.generators)

    def as_strings(self) -> list[str]:
        return [mono_str(g) for g in self.generators]


# -- Buchberger ---------------------------------------------------------------

class _GB:
    """Working state of one Buchberger run: elements are ``(lead, tail|None)``."""

    def __init__(self, n: int, order: TermOrder):
        self.n = n
        self.order = order
        self.elems: list[tuple] = []
        self.reducer = kernels.MonomialReducer(n)

    def reduce_pair(self, p, q):
        """Reduce ``x^p - x^q`` (``q`` may be None); return an element or None."""
        p = self.reducer.reduce(p)
        q = None if q is None else self.reducer.reduce(q)
        if p is None and q is None:
            return None
        if p is None:
            return (q, None)
        if q is None:
            return (p, None)
        if p == q:
            return None
        if self.order.key(p) < self.order.key(q):
            p, q = q, p
        return (p, q)

    def add(self, elem):
        self.elems.append(elem)
        self.reducer.add(elem[0], elem[1])


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _gb_raw(n: int, binomials: Iterable[tuple], monomials: Iterable[tuple], order: TermOrder) -> list[tuple]:
    st = _GB(n, order)
    heap: list = []
    pending: set = set()

    def push_pairs(j):
        lj, tj = st.elems[j]
        for i in range(j):
            li, ti = st.elems[i]
            if ti is None and tj is None:
                continue
            if all(min(x, y) == 0 for x, y in zip(li, lj)):
                continue  # coprime leads
            L = _lcm(li, lj)
            heapq.heappush(heap, (sum(L), L, i, j))
            pending.add((i, j))

    for m in monomials:
        e = st.reduce_pair(tuple(m), None)
        if e is not None:
            st.add(e)
            push_pairs(len(st.elems) - 1)
    for a, b in binomials:
        e = st.reduce_pair(tuple(a), tuple(b))
        if e is not None:
            st.add(e)
            push_pairs(len(st.elems) - 1)

    while heap:
        _, L, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        if _chain_redundant(st.elems, pending, i, j, L):
            continue
        li, ti = st.elems[i]
        lj, tj = st.elems[j]
        si = None if ti is None else tuple(x - y + z for x, y, z in zip(L, li, ti))
        sj = None if tj is None else tuple(x - y + z for x, y, z in zip(L, lj, tj))
        if si is None:
            si, sj = sj, None
        e = st.reduce_pair(si, sj)
        if e is not None:
            st.add(e)
            push_pairs(len(st.elems) - 1)
    return st.elems


def _chain_redundant(elems, pending, i, j, L) -> bool:
    for k, (lk, _) in enumerate(elems):
        if k == i or k == j or not _divides(lk, L):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _reduce_basis(n: int, elems: list[tuple], order: TermOrder) -> list[tuple]:
    """Turn a Groebner basis into the reduced one."""
    # monomials first so that equal leads keep the monomial
    ordered = sorted(elems, key=lambda e: (e[1] is not None, order.key(e[0])))
    minimal = []
    for e in ordered:
        if not any(_divides(f[0], e[0]) for f in minimal):
            minimal = [f for f in minimal if not _divides(e[0], f[0])]
            minimal.append(e)
    red = kernels.MonomialReducer(n)
    for lead, tail in minimal:
        red.add(lead, tail)
    out = []
    for lead, tail in minimal:
        if tail is None:
            out.append((lead, None))
        else:
            out.append((lead, red.reduce(tail)))
    out.sort(key=lambda e: order.key(e[0]))
    return out


def _split(I: BinomialIdeal):
    return [(g.plus, g.minus) for g in I.generators], list(I.monomials)


def _to_ideal(n: int, elems: list[tuple]) -> BinomialIdeal:
    gens = tuple(Binomial(l, t) for l, t in elems if t is not None)
    monos = tuple(l for l, t in elems if t is None)
    return BinomialIdeal(n, gens, monos)


def groebner_elements(I: BinomialIdeal, order: TermOrder) -> list[tuple]:
    """Reduced Groebner basis as ``(lead, tail|None)`` pairs."""
    b, m = _split(I)
    return _reduce_basis(I.n, _gb_raw(I.n, b, m, order), order)


def buchberger(I: BinomialIdeal, order: TermOrder) -> BinomialIdeal:
    """Reduced Groebner basis of I; binomials come out with ``plus`` leading."""
    return _to_ideal(I.n, groebner_elements(I, order))


def s_pairs_reduce_to_zero(G: BinomialIdeal, order: TermOrder) -> bool:
    """Buchberger's criterion, checked directly on every pair of G."""
    elems = [(g.plus, g.minus) for g in G.generators] + [(m, None) for m in G.monomials]
    red = kernels.MonomialReducer(G.n)
    for l, t in elems:
        red.add(l, t)
    for j in range(len(elems)):
        for i in range(j):
            (li, ti), (lj, tj) = elems[i], elems[j]
            L = _lcm(li, lj)
            si = None if ti is None else red.reduce(tuple(x - y + z for x, y, z in zip(L, li, ti)))
            sj = None if tj is None else red.reduce(tuple(x - y + z for x, y, z in zip(L, lj, tj)))
            if si != sj:
                return False
    return True


def normal_form(f, G: BinomialIdeal, order: TermOrder):
    """Remainder of a Binomial or monomial modulo a Groebner basis.

    Returns ``None`` for zero, a monomial tuple, or a Binomial.
    """
    red = kernels.MonomialReducer(G.n)
    for g in G.generators:
        g = g.oriented(order)
        red.add(g.plus, g.minus)
    for m in G.monomials:
        red.add(m, None)
    if isinstance(f, Binomial):
        p, q = red.reduce(f.plus), red.reduce(f.minus)
        if p is None and q is None or p == q:
            return None
        if p is None:
            return q
        if q is None:
            return p
        return Binomial(p, q)
    return red.reduce(tuple(f))


def contains(G: BinomialIdeal, f, order: TermOrder) -> bool:
    return normal_form(f, G, order) is None


def ideals_equal(I: BinomialIdeal, J: BinomialIdeal, order: TermOrder | None = None) -> bool:
    order = order or TermOrder.grevlex(I.n)
    return groebner_elements(I, order) == groebner_elements(J, order)


def is_monomial(I: BinomialIdeal) -> bool:
    """True iff the ideal is a monomial ideal (decided on its reduced basis)."""
    if not I.generators:
        return True
    return all(t is None for _, t in groebner_elements(I, TermOrder.grevlex(I.n)))


def minimal_generators(I: BinomialIdeal, order: TermOrder | None = None) -> BinomialIdeal:
    """A minimal generating subset, scanning generators by increasing degree."""
    order = order or TermOrder.grevlex(I.n)
    cands = [(sum(m), 0, order.key(m), m) for m in I.monomials]
    cands += [(g.degree, 1, order.key(g.oriented(order).plus), g) for g in I.generators]
    cands.sort(key=lambda c: c[:3])
    kept: list = []
    basis = BinomialIdeal(I.n)
    dirty = False
    for *_, g in cands:
        if dirty:
            basis = buchberger(_ideal_of(I.n, kept), order)
            dirty = False
        if kept and contains(basis, g, order):
            continue
        kept.append(g)
        dirty = True
    return _ideal_of(I.n, kept)


def _ideal_of(n, items) -> BinomialIdeal:
    return BinomialIdeal(n, tuple(g for g in items if isinstance(g, Binomial)),
                         tuple(g for g in items if not isinstance(g, Binomial)))


# -- toric ideals ---------------------------------------------------------------

def lattice_ideal(cfg: Configuration) -> BinomialIdeal:
    """``<d^{b+} - d^{b-}>`` over the columns b of the Gale dual."""
    gens = []
    order = TermOrder.grevlex(cfg.n)
    for b in transpose(cfg.gale) if cfg.m else ():
        plus = tuple(max(x, 0) for x in b)
        minus = tuple(max(-x, 0) for x in b)
        gens.append(Binomial(plus, minus).oriented(order))
    return BinomialIdeal(cfg.n, tuple(gens))


def saturate(I: BinomialIdeal, var: int) -> BinomialIdeal:
    """``I : x_var^infinity`` for a homogeneous binomial ideal."""
    order = TermOrder.grevlex(I.n, last=var)
    out_b, out_m = [], []
    for lead, tail in groebner_elements(I, order):
        if tail is None:
            lead = tuple(0 if i == var else x for i, x in enumerate(lead))
            out_m.append(lead)
            continue
        k = min(lead[var], tail[var])
        lead = tuple(x - k if i == var else x for i, x in enumerate(lead))
        tail = tuple(x - k if i == var else x for i, x in enumerate(tail))
        out_b.append(Binomial(lead, tail))
    return BinomialIdeal(I.n, tuple(out_b), tuple(out_m))


def toric_ideal(cfg: Configuration) -> BinomialIdeal:
    """Minimal binomial generators of I_A, oriented by graded reverse lex."""
    I = lattice_ideal(cfg)
    if I.is_zero():
        return I
    for j in range(cfg.n):
        I = saturate(I, j)
    order = TermOrder.grevlex(cfg.n)
    return _oriented(minimal_generators(buchberger(I, order), order), order)


def _oriented(I: BinomialIdeal, order: TermOrder) -> BinomialIdeal:
    return BinomialIdeal(I.n, tuple(g.oriented(order) for g in I.generators), I.monomials)


def vanishes_on_monomial_map(cfg: Configuration, g: Binomial) -> bool:
    """``d_j -> t^{a_j}`` sends ``g`` to zero, i.e. ``A . plus = A . minus``."""
    return cfg.degree_of(g.plus) == cfg.degree_of(g.minus)


# -- initial ideals -------------------------------------------------------------

def initial_ideal(cfg: Configuration, w: Sequence, I: BinomialIdeal | None = None,
                  perm: Sequence[int] | None = None) -> BinomialIdeal:
    """Ideal of w-initial forms of I_A (ties stay binomials), minimally generated."""
    I = toric_ideal(cfg) if I is None else I
    order = TermOrder.weighted(w, perm)
    forms_b, forms_m = [], []
    for lead, tail in groebner_elements(I, order):
        if tail is not None and order.weight_of(lead) == order.weight_of(tail):
            forms_b.append(Binomial(lead, tail))
        else:
            forms_m.append(lead)
    J = BinomialIdeal(I.n, tuple(forms_b), tuple(forms_m))
    return _oriented(minimal_generators(buchberger(J, order), order), order)


def leading_ideal(I: BinomialIdeal, order: TermOrder) -> MonomialIdeal:
    """The monomial initial ideal of I for a term order."""
    return MonomialIdeal(I.n, tuple(l for l, _ in groebner_elements(I, order)))


def as_monomial_ideal(I: BinomialIdeal) -> MonomialIdeal:
    if not is_monomial(I):
        raise ValueError("ideal is not monomial")
    return MonomialIdeal(I.n, tuple(l for l, _ in groebner_elements(I, TermOrder.grevlex(I.n))))


def pivot_order(n: int, pivot: int) -> TermOrder:
    """Weight ``-e_pivot`` refined by graded reverse lex."""
    return TermOrder.weighted(tuple(-1 if i == pivot else 0 for i in range(n)))


def realize_order_weight(I: BinomialIdeal, order: TermOrder) -> tuple:
    """An integer weight w with in_w(I) equal to the leading ideal of ``order``.

    Starting from ``N * order.weight`` plus a weight that simulates the
    reverse lexicographic tiebreak on the relevant degrees, N is doubled
    until w picks the same leading term on every reduced basis element;
    that is enough for the two initial ideals to agree.
    """
    G = groebner_elements(I, order)
    n = I.n
    binoms = [(l, t) for l, t in G if t is not None]
    maxdeg = max((sum(l) for l, _ in G), default=0)
    M = maxdeg + 2
    tie = [0] * n
    for k, v in enumerate(order.perm):
        tie[v] = -(M ** k)
    den = lcm(*(Fraction(x).denominator for x in order.weight)) if n else 1
    base = [int(Fraction(x) * den) for x in order.weight]
    N = 1
    while True:
        w = tuple(N * b + t for b, t in zip(base, tie))
        if all(_dot(w, l) > _dot(w, t) for l, t in binoms):
            return w
        N *= 2


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def is_generic(cfg: Configuration, I: BinomialIdeal | None = None) -> bool:
    """Every minimal generator of I_A involves every variable."""
    I = toric_ideal(cfg) if I is None else I
    return all(all(x != 0 for x in g.difference()) for g in I.generators)


def hilbert_function_ideal(cfg: Configuration, D: int) -> int:
    """dim of (R / I_A) in degree D: the number of distinct A-degrees."""
    from itertools import combinations_with_replacement
    seen = set()
    for combo in combinations_with_replacement(range(cfg.n), D):
        u = [0] * cfg.n
        for i in combo:
            u[i] += 1
        seen.add(cfg.degree_of(u))
    return len(seen)


def hilbert_function_monomial(M: MonomialIdeal, D: int) -> int:
    from itertools import combinations_with_replacement
    count = 0
    for combo in combinations_with_replacement(range(M.n), D):
        u = [0] * M.n
        for i in combo:
            u[i] += 1
        if not M.contains(u):
            count += 1
    return count

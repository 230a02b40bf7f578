"""Standard pairs of monomial ideals.

A pair ``(eta, sigma)`` with ``eta_i = 0`` on ``sigma`` is admissible for M
when the whole coset ``x^eta * k[x_i : i in sigma]`` avoids M; the standard
pairs are the admissible pairs that are maximal for coset inclusion.  Their
cosets cover the standard monomials of M (they may overlap).

Two backends: a memoized recursion that splits on one variable at a time,
and a brute-force scan over a box used as an oracle.  A third, polyhedral
test decides whether a single pair is standard for a toric initial ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product

from .binomial import Configuration, MonomialIdeal, mono_str
from .errors import BoxTooSmall
from .linalg import rank
from .polyhedra import IneqSystem, find_lattice_point, is_bounded, enumerate_lattice_points


@dataclass(frozen=True, order=True)
class StandardPair:
    eta: tuple
    sigma: frozenset

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(self.eta))
        object.__setattr__(self, "sigma", frozenset(self.sigma))
        if any(self.eta[i] for i in self.sigma):
            raise ValueError("eta must vanish on sigma")

    @property
    def n(self) -> int:
        return len(self.eta)

    def complement(self) -> frozenset:
        return frozenset(range(self.n)) - self.sigma

    def sort_key(self):
        return (sorted(self.sigma), self.eta)

    def contains(self, u) -> bool:
        """Is ``x^u`` in the coset of this pair?"""
        return all(u[i] == self.eta[i] for i in range(self.n) if i not in self.sigma)

    def __str__(self):
        s = ",".join(str(i + 1) for i in sorted(self.sigma))
        return f"({mono_str(self.eta)}, {{{s}}})"


class PairClass(Enum):
    TOP_DIMENSIONAL = "TopDimensional"
    EMBEDDED = "Embedded"


def classify(p: StandardPair, m: int) -> PairClass:
    return PairClass.TOP_DIMENSIONAL if len(p.complement()) == m else PairClass.EMBEDDED


def is_admissible(gens, eta, sigma) -> bool:
    """No generator divides a monomial of the coset ``(eta, sigma)``."""
    for g in gens:
        if all(g[j] <= eta[j] for j in range(len(eta)) if j not in sigma):
            return False
    return True


def _minimize(gens) -> frozenset:
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(x <= y for x, y in zip(h, g)) for h in out):
            out.append(g)
    return frozenset(out)


@lru_cache(maxsize=65536)
def _pairs(gens: frozenset, active: frozenset, n: int) -> frozenset:
    if not gens:
        return frozenset({((0,) * n, active)})
    if any(not any(g) for g in gens):
        return frozenset()
    i = min(v for v in active if any(g[v] for g in gens))
    D = max(g[i] for g in gens)
    rest = active - {i}
    drop = lambda g: g[:i] + (0,) + g[i + 1:]
    inf_gens = _minimize(drop(g) for g in gens)
    out = set()
    for eta, sigma in _pairs(inf_gens, rest, n):
        out.add((eta, sigma | {i}))
    for k in range(D):
        nk = _minimize(drop(g) for g in gens if g[i] <= k)
        for eta, sigma in _pairs(nk, rest, n):
            if is_admissible(inf_gens, eta, sigma):
                continue
            out.add((eta[:i] + (k,) + eta[i + 1:], sigma))
    return frozenset(out)


def standard_pairs(M: MonomialIdeal) -> list[StandardPair]:
    """All standard pairs of M, sorted by (sigma, eta)."""
    n = M.n
    gens = frozenset(M.generators)
    if not gens:
        return [StandardPair((0,) * n, frozenset(range(n)))]
    raw = _pairs(gens, frozenset(range(n)), n)
    return sorted((StandardPair(e, s) for e, s in raw), key=StandardPair.sort_key)


def brute_force_standard_pairs(M: MonomialIdeal, box: int) -> list[StandardPair]:
    """Maximal admissible pairs with ``eta`` in ``[0, box]^n``.

    A pair is dominated exactly when it can be enlarged by moving one more
    variable into sigma, so maximality is a local test.
    """
    n = M.n
    gens = M.generators
    if any(max(g) > box for g in gens):
        raise BoxTooSmall(f"generator exponent exceeds box {box}")
    out = []
    for bits in product((0, 1), repeat=n):
        sigma = frozenset(i for i in range(n) if bits[i])
        free = [i for i in range(n) if not bits[i]]
        for vals in product(range(box + 1), repeat=len(free)):
            eta = [0] * n
            for i, v in zip(free, vals):
                eta[i] = v
            if not is_admissible(gens, eta, sigma):
                continue
            if any(is_admissible(gens, eta[:j] + [0] + eta[j + 1:], sigma | {j}) for j in free):
                continue
            out.append(StandardPair(tuple(eta), sigma))
    return sorted(out, key=StandardPair.sort_key)


def standard_monomials(M: MonomialIdeal, degree: int) -> list[tuple]:
    from itertools import combinations_with_replacement
    out = []
    for combo in combinations_with_replacement(range(M.n), degree):
        u = [0] * M.n
        for i in combo:
            u[i] += 1
        if not M.contains(u):
            out.append(tuple(u))
    return out


def associated_primes(M: MonomialIdeal, pairs=None) -> set[frozenset]:
    """Faces (as the set of prime generators' indices) of the associated primes."""
    pairs = standard_pairs(M) if pairs is None else pairs
    return {p.complement() for p in pairs}


def embedded_primes(M: MonomialIdeal, pairs=None) -> set[frozenset]:
    primes = associated_primes(M, pairs)
    return {p for p in primes if any(q < p for q in primes)}


def degree(M: MonomialIdeal, m: int, pairs=None) -> int:
    pairs = standard_pairs(M) if pairs is None else pairs
    return sum(1 for p in pairs if len(p.complement()) == m)


def check_chain_property(M: MonomialIdeal, pairs=None) -> bool:
    """Each embedded prime contains an associated prime with one fewer generator."""
    primes = associated_primes(M, pairs)
    for p in embedded_primes(M, pairs):
        if not any(q < p and len(q) == len(p) - 1 for q in primes):
            return False
    return True


def gale_rows_have_full_rank(cfg: Configuration, p: StandardPair) -> bool:
    """The Gale dual rows indexed by the complement of sigma have rank m."""
    rows = [cfg.gale[j] for j in sorted(p.complement())]
    return (rank(rows) if rows and cfg.m else 0) == cfg.m


# -- polyhedral test ------------------------------------------------------------

def pair_polytope(cfg: Configuration, w, p: StandardPair, drop: int | None = None) -> IneqSystem:
    """``{y : (B y)_j <= eta_j for j not in sigma, -w.(B y) <= 0}``, optionally
    without the constraint of row ``drop``."""
    B = cfg.gale
    rows, rhs, labels = [], [], []
    for j in sorted(p.complement()):
        if j == drop:
            continue
        rows.append(B[j])
        rhs.append(p.eta[j])
        labels.append(("row", j))
    wB = tuple(-sum(w[i] * B[i][k] for i in range(cfg.n)) for k in range(cfg.m))
    rows.append(wB)
    rhs.append(0)
    labels.append("weight")
    return IneqSystem.from_rows(rows, rhs, labels) if cfg.m else IneqSystem(0, tuple(
        ((), k) for k in rhs), tuple(labels))


def is_standard_pair_polyhedral(cfg: Configuration, w, p: StandardPair, cap: int = 50) -> bool:
    """Decide standardness for in_w(I_A) from lattice points of polytopes.

    The pair is standard iff 0 is the only lattice point of the polytope and
    dropping any row constraint lets a nonzero lattice point in.  An
    unbounded rational polyhedron through 0 always holds nonzero lattice
    points (multiples of an integral recession ray), so no search here is
    cap-limited: bounded sets are enumerated exhaustively.
    """
    if len(p.eta) != cfg.n:
        raise ValueError("pair has the wrong length")
    P = pair_polytope(cfg, w, p)
    if not is_bounded(P):
        return False
    origin = (0,) * cfg.m
    if enumerate_lattice_points(P, cap).points != [origin]:
        return False
    for j in sorted(p.complement()):
        Pj = pair_polytope(cfg, w, p, drop=j)
        if not is_bounded(Pj):
            continue
        z, _ = find_lattice_point(Pj, cap, exclude_origin=True)
        if z is None:
            return False
    return True

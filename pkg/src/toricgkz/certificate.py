"""Exceptional-parameter construction and the rank lower-bound certificate.

Given a pivot variable p with an embedded standard pair ``(eta, {p} + tau)``
of the (generically refined) ``-e_p`` initial ideal, the parameter
``beta = A (eta + alpha - e_p)`` has rank at least ``vol(A) + 1`` for generic
``alpha`` supported on tau.  The evidence assembled here is:

* K, the fake exponents of ``A (eta + alpha)`` with minimal negative
  support and p-th coordinate 0, each with a one-term series;
* cokernel witnesses ``u - e_p`` (u in K) plus at least one more exponent
  found by maximizing the weight over a lattice region;
* exact verification that all these series solve their systems up to the
  truncation radius.

The certificate never states an exact rank.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .binomial import Configuration, is_generic
from .errors import (AmbiguousConstruction, GenericityExhausted, NoEmbeddedPair,
                     WitnessSearchInconclusive)
from .hypergeo import (DEFAULT_CAP, DEFAULT_RADIUS, FakeExponent, Tri, _add, _sub,
                       cached_toric_ideal, canonical_series, fake_exponent_table,
                       has_minimal_negative_support, nsupp, pivot_weight,
                       series_support_is_trivial, vec, vec_key, verify_solution, weight_data)
from .linalg import SolveKind, matvec, solve_affine
from .polyhedra import IneqSystem, is_bounded, is_feasible, maximize_over_lattice, normalized_volume
from .ratfunc import RatFunc, is_integer_value, rational_roots
from .stdpairs import PairClass, StandardPair, classify, pair_polytope

RETRY_BUDGET = 32


@dataclass(frozen=True)
class Selection:
    pivot: int
    pair: StandardPair
    permutation: tuple
    weight: tuple
    # row of the Gale dual parallel to the pivot row, if that case applies
    coincident_row: int | None = None


def _proportional_negative(r, s) -> bool:
    """Is r a negative rational multiple of s (both nonzero)?"""
    if not any(r) or not any(s):
        return False
    k = next(i for i, x in enumerate(s) if x)
    lam = Fraction(r[k], s[k])
    return lam < 0 and all(Fraction(x) == lam * y for x, y in zip(r, s))


def _observation_holds(cfg: Configuration, w, p: int, pair: StandardPair):
    """Return (ok, coincident_row).  Raises on several coincident rows."""
    P = pair_polytope(cfg, w, pair)
    B = cfg.gale
    rows = [r for r in sorted(pair.complement()) if _proportional_negative(B[r], B[p])]
    if len(rows) > 1:
        raise AmbiguousConstruction(
            f"several Gale rows {[r + 1 for r in rows]} are negative multiples of row {p + 1}")
    if is_bounded(P.reversed_at(len(P.constraints) - 1)):
        return True, None
    if rows and pair.eta[rows[0]] > 0:
        return True, rows[0]
    return False, None


def _shift_to(cfg: Configuration, p: int, nu: StandardPair, mu: StandardPair):
    """The p-th coordinate of B y where mu = nu - B y on the complement of sigma."""
    idx = sorted(nu.complement())
    M = tuple(cfg.gale[i] for i in idx)
    rhs = tuple(nu.eta[i] - mu.eta[i] for i in idx)
    sol = solve_affine(M, rhs)
    if sol.kind is not SolveKind.UNIQUE:
        return None
    return sum(Fraction(b) * y for b, y in zip(cfg.gale[p], sol.x))


def _maximal_translate(cfg: Configuration, p: int, nu: StandardPair, pairs) -> StandardPair:
    best, best_val = nu, None
    for mu in pairs:
        if mu.sigma != nu.sigma or mu == nu:
            continue
        val = _shift_to(cfg, p, nu, mu)
        if val is None or val.denominator != 1 or val >= 0:
            continue
        if best_val is None or val > best_val:
            best, best_val = mu, val
    return best


def select_embedded_pair(cfg: Configuration) -> Selection:
    """First pivot (lowest index) carrying an embedded pair of the required shape."""
    if cfg.m == 0:
        raise NoEmbeddedPair("zero toric ideal")
    for p in range(cfg.n):
        w = pivot_weight(cfg, p)
        pairs = weight_data(cfg, w).pairs
        for nu in pairs:
            if p not in nu.sigma or len(nu.sigma) != cfg.d - 1:
                continue
            ok, _ = _observation_holds(cfg, w, p, nu)
            if not ok:
                continue
            eta = _maximal_translate(cfg, p, nu, pairs)
            ok, row = _observation_holds(cfg, w, p, eta)
            if not ok:
                continue
            tau = sorted(eta.sigma - {p})
            perm = (p,) + tuple(sorted(eta.complement())) + tuple(tau)
            return Selection(p, eta, perm, w, row)
    raise NoEmbeddedPair("no pivot has an embedded standard pair of the required shape")


# -- parameters -----------------------------------------------------------------------

@dataclass
class AlphaAssignment:
    tau: tuple
    symbolic_slot: int | None
    values: dict  # slot -> Fraction or RatFunc
    attempts: int = 1
    # values of the symbolic a at which the construction degenerates
    excluded_embedded: list = field(default_factory=list)
    excluded_first_zero: list = field(default_factory=list)

    def vector(self, n: int) -> tuple:
        return tuple(self.values.get(i, Fraction(0)) for i in range(n))


def _sample_rational(rng: random.Random) -> Fraction:
    while True:
        q = Fraction(rng.randint(-40, 40), rng.choice((2, 3, 5, 7, 11, 13)))
        if q.denominator != 1:
            return q


def genericity_violations(cfg: Configuration, sel: Selection, alpha: AlphaAssignment,
                          cap: int = DEFAULT_CAP):
    """Return (violations, table) for the two genericity predicates."""
    p = sel.pivot
    tau = set(alpha.tau)
    beta_p = vec(matvec(cfg.A, _add(sel.pair.eta, alpha.vector(cfg.n))))
    table = fake_exponent_table(cfg, beta_p, sel.weight, cap)
    bad = []
    for u in table.exponents:
        if u.v[p] == 0 and any(is_integer_value(u.v[i]) for i in tau):
            bad.append(f"(a) exponent {u} has an integral coordinate in tau")
    F = [u for u in table.exponents if u.minimal is Tri.YES]
    K = [u for u in F if u.v[p] == 0]
    for u in K:
        for v in F:
            if all(is_integer_value(x) for x in _sub(v.v, u.v)) and p in v.nsupp:
                bad.append(f"(b) exponent {v} is an integer translate of {u} with p in nsupp")
    return bad, table


def sample_alpha(cfg: Configuration, sel: Selection, seed: int = 0, cap: int = DEFAULT_CAP) -> AlphaAssignment:
    """Fix all tau slots but the last to random non-integers; keep the last symbolic."""
    tau = tuple(sorted(sel.pair.sigma - {sel.pivot}))
    rng = random.Random(seed)
    last = tau[-1] if tau else None
    reasons = []
    for attempt in range(1, RETRY_BUDGET + 1):
        values = {i: _sample_rational(rng) for i in tau[:-1]}
        if last is not None:
            values[last] = RatFunc.var()
        alpha = AlphaAssignment(tau, last, values, attempt)
        bad, table = genericity_violations(cfg, sel, alpha, cap)
        if not bad:
            alpha.excluded_embedded = table.exceptional_values()
            first = set()
            for u in table.exponents:
                x = u.v[sel.pivot]
                if isinstance(x, RatFunc):
                    first |= set(rational_roots(x.num))
            alpha.excluded_first_zero = sorted(first)
            return alpha
        reasons = bad
    raise GenericityExhausted(f"{RETRY_BUDGET} samples failed; last violation: {reasons[0]}")


# -- kernel and cokernel -----------------------------------------------------------------

def kernel_K(cfg: Configuration, beta_prime, pivot: int, w=None, cap: int = DEFAULT_CAP):
    """Minimal-support fake exponents with vanishing pivot coordinate.

    Returns ``(K, certified)``; ``certified[i]`` records that the series of
    ``K[i]`` is the single monomial (its lattice region is {0}).
    """
    w = pivot_weight(cfg, pivot) if w is None else w
    table = fake_exponent_table(cfg, beta_prime, w, cap)
    K = [u for u in table.exponents if u.minimal is Tri.YES and u.v[pivot] == 0]
    return K, [series_support_is_trivial(cfg, u.v, cap) is Tri.YES for u in K]


@dataclass
class WitnessSearch:
    row: int
    status: str  # "found", "unbounded", "not-unique", "empty", "inconclusive"
    z: tuple | None = None


def cokernel_witnesses(cfg: Configuration, sel: Selection, alpha: AlphaAssignment, K,
                       cap: int = DEFAULT_CAP):
    """Witness exponents of H_A(beta) and the per-row search log."""
    p = sel.pivot
    n = cfg.n
    e_p = tuple(Fraction(int(i == p)) for i in range(n))
    eta = sel.pair.eta
    base = _sub(_add(eta, alpha.vector(n)), e_p)
    out = [_sub(u.v, e_p) for u in K]
    log = []
    tau = set(alpha.tau)
    objective = tuple(sum(Fraction(sel.weight[k]) * cfg.gale[k][j] for k in range(n))
                      for j in range(cfg.m))
    for i in sorted(sel.pair.complement()):
        rows, rhs = [], []
        for j in range(n):
            if j in tau or j == i:
                continue
            rows.append(cfg.gale[j])
            rhs.append(eta[j] - int(j == p))
        rows.append(tuple(-x for x in cfg.gale[i]))
        rhs.append(-(eta[i] + 1))
        region = IneqSystem.from_rows(rows, rhs)
        best, exact = maximize_over_lattice(region, objective, cap)
        if not exact:
            log.append(WitnessSearch(i, "inconclusive"))
            continue
        if not best:
            log.append(WitnessSearch(i, "empty" if not is_feasible(region) else "unbounded"))
            continue
        if len(best) > 1:
            log.append(WitnessSearch(i, "not-unique"))
            continue
        z = best[0]
        v = _sub(base, cfg.gale_image(z))
        log.append(WitnessSearch(i, "found", z))
        if v not in out:
            out.append(v)
    return out, log


# -- certificate ----------------------------------------------------------------------------

@dataclass
class RankCertificate:
    cfg: Configuration
    beta: tuple
    vol: int
    K: list
    kernel_dim: int
    cokernel_witnesses: list
    extra_span_dim: int
    asserted_lower_bound: int
    selection: Selection | None = None
    alpha: AlphaAssignment | None = None
    beta_prime: tuple = ()
    logfree_count: int = 0
    series_verified: bool = False
    kernel_certified: bool = False
    image_disjoint: bool = False
    witness_log: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    verdict: str = "certified"

    @property
    def headline(self) -> int:
        return max(self.asserted_lower_bound, self.logfree_count)

    @property
    def beta_line(self) -> tuple:
        return self.beta


def _image_exponents(cfg, F, pivot, radius):
    """Exponents of d_p phi_v for v in F, up to the radius."""
    out = set()
    for v in F:
        s = canonical_series(cfg, v, radius)
        for t in s.terms:
            x = s.exponent(t)
            if x[pivot] != 0:
                out.add(tuple(xi - int(i == pivot) for i, xi in enumerate(x)))
    return {vec(x) for x in out}


def rank_certificate(cfg: Configuration, seed: int = 0, radius: int = DEFAULT_RADIUS,
                     cap: int = DEFAULT_CAP) -> RankCertificate:
    """Run the construction and audit it; raises NoEmbeddedPair when none exists."""
    vol = normalized_volume(cfg.A)
    sel = select_embedded_pair(cfg)
    alpha = sample_alpha(cfg, sel, seed, cap)
    p = sel.pivot
    n = cfg.n
    e_p = tuple(int(i == p) for i in range(n))
    eta_alpha = _add(sel.pair.eta, alpha.vector(n))
    beta_prime = vec(matvec(cfg.A, eta_alpha))
    beta = vec(_sub(beta_prime, cfg.columns[p]))
    K, certified = kernel_K(cfg, beta_prime, p, sel.weight, cap)
    warnings = []
    witnesses, log = cokernel_witnesses(cfg, sel, alpha, K, cap)
    if any(entry.status == "inconclusive" for entry in log):
        warnings.append(str(WitnessSearchInconclusive("weight maximization hit the cap")))

    table_beta = fake_exponent_table(cfg, beta, sel.weight, cap)
    by_vector = {u.v: u for u in table_beta.exponents}
    wit_fe = []
    for v in witnesses:
        fe = by_vector.get(v)
        if fe is None:
            warnings.append(f"witness {v} is not a fake exponent of beta")
            fe = FakeExponent(v, (), nsupp(v), has_minimal_negative_support(cfg, v, cap))
        wit_fe.append(fe)
    for entry in log:
        if entry.status == "found":
            v = _sub(_sub(eta_alpha, e_p), cfg.gale_image(entry.z))
            if nsupp(v) != {entry.row}:
                warnings.append(f"witness {v} has unexpected negative support")
    logfree = sum(1 for u in table_beta.exponents if u.minimal is Tri.YES)
    if any(u.minimal is Tri.INCONCLUSIVE for u in table_beta.exponents):
        warnings.append("some minimality checks hit the cap")

    series_ok = True
    for u in K:
        s = canonical_series(cfg, u, radius)
        series_ok &= len(s.terms) == 1 and verify_solution(cfg, beta_prime, s)
    for fe in wit_fe:
        if fe.minimal is not Tri.YES:
            series_ok = False
            continue
        series_ok &= verify_solution(cfg, beta, canonical_series(cfg, fe, radius))

    F = [u for u in fake_exponent_table(cfg, beta_prime, sel.weight, cap).exponents
         if u.minimal is Tri.YES]
    image = _image_exponents(cfg, F, p, radius)
    disjoint = not any(fe.v in image for fe in wit_fe)

    distinct = len({fe.v for fe in wit_fe}) == len(wit_fe)
    all_minimal = all(fe.minimal is Tri.YES for fe in wit_fe)
    shape_ok = len(wit_fe) >= len(K) + 1
    proven = shape_ok and all_minimal and distinct and series_ok and all(certified)
    extras = sum(1 for entry in log if entry.status == "found"
                 and _sub(_sub(eta_alpha, e_p), cfg.gale_image(entry.z)) != _sub(eta_alpha, e_p))
    cert = RankCertificate(
        cfg=cfg, beta=beta, vol=vol, K=K, kernel_dim=len(K), cokernel_witnesses=wit_fe,
        extra_span_dim=1 + extras, asserted_lower_bound=vol + 1 if proven else vol,
        selection=sel, alpha=alpha, beta_prime=beta_prime, logfree_count=logfree,
        series_verified=series_ok, kernel_certified=all(certified), image_disjoint=disjoint,
        witness_log=log, warnings=warnings, verdict="certified" if proven else "unproven")
    return cert


def is_cohen_macaulay_generic(cfg: Configuration) -> str:
    """"CM", "NotCM" or "NotApplicable" (the criterion needs a generic I_A)."""
    I = cached_toric_ideal(cfg)
    if not is_generic(cfg, I):
        return "NotApplicable"
    for p in range(cfg.n):
        data = weight_data(cfg, pivot_weight(cfg, p))
        if any(classify(q, cfg.m) is PairClass.EMBEDDED for q in data.pairs):
            return "NotCM"
    return "CM"

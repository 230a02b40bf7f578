from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricgkz.binomial import (Binomial, BinomialIdeal, Configuration, TermOrder, as_monomial_ideal,
                               buchberger, contains, hilbert_function_ideal, hilbert_function_monomial,
                               ideals_equal, initial_ideal, is_generic, is_monomial, lattice_ideal,
                               leading_ideal, minimal_generators, normal_form, realize_order_weight,
                               s_pairs_reduce_to_zero, toric_ideal, pivot_order)
from toricgkz.errors import InvalidConfiguration
from toricgkz.hypergeo import default_weight

A8 = [[1, 1, 1, 1, 1, 1], [1, 2, 1, 2, 3, 0], [0, 2, 2, 0, 1, 1]]
CONIC = [[1, 1, 1], [0, 1, 2]]
CUBIC = [[1, 1, 1, 1], [0, 1, 2, 3]]


def unordered(I):
    return {g.unordered() for g in I.generators}


def b(p, q):
    return Binomial(tuple(p), tuple(q)).unordered()


@pytest.mark.parametrize("A, msg", [
    ([[1, 1], [2, 0, 1]], "unequal"),
    ([[1, 2, 1], [0, 1, 2]], "all ones"),
    ([[1, 1, 1], [0, 1, 1]], "distinct"),
    ([[1, 1, 1], [0, 2, 4]], "generate"),
    ([], "empty"),
])
def test_invalid_configurations(A, msg):
    with pytest.raises(InvalidConfiguration, match=msg):
        Configuration(A)


def test_conic_toric_ideal():
    I = toric_ideal(Configuration(CONIC))
    assert unordered(I) == {b((0, 2, 0), (1, 0, 1))}
    # graded reverse lex puts d2^2 first
    assert I.generators[0].plus == (0, 2, 0)


def test_twisted_cubic_toric_ideal():
    I = toric_ideal(Configuration(CUBIC))
    assert unordered(I) == {b((0, 2, 0, 0), (1, 0, 1, 0)), b((0, 0, 2, 0), (0, 1, 0, 1)),
                            b((0, 1, 1, 0), (1, 0, 0, 1))}


def test_square_configuration_has_zero_ideal():
    I = toric_ideal(Configuration([[1, 1], [0, 1]]))
    assert I.is_zero() and is_monomial(I)


def test_lattice_ideal_of_worked_example():
    cfg = Configuration(A8)
    L = lattice_ideal(cfg)
    assert len(L.generators) == 3
    assert all(cfg.degree_of(g.plus) == cfg.degree_of(g.minus) for g in L.generators)
    # the lattice ideal is strictly smaller than its saturation
    I = toric_ideal(cfg)
    order = TermOrder.grevlex(6)
    G = buchberger(L, order)
    assert not all(contains(G, g, order) for g in I.generators)


def test_buchberger_principal():
    order = TermOrder.grevlex(3)
    I = BinomialIdeal(3, (Binomial((0, 2, 0), (1, 0, 1)),))
    G = buchberger(I, order)
    assert unordered(G) == unordered(I)
    assert s_pairs_reduce_to_zero(G, order)


def test_buchberger_transitivity():
    order = TermOrder.grevlex(3)
    I = BinomialIdeal(3, (Binomial((1, 0, 0), (0, 1, 0)), Binomial((0, 1, 0), (0, 0, 1))))
    G = buchberger(I, order)
    assert contains(G, Binomial((1, 0, 0), (0, 0, 1)), order)
    assert s_pairs_reduce_to_zero(G, order)


def test_normal_form_conic():
    order = TermOrder.grevlex(3)
    G = buchberger(toric_ideal(Configuration(CONIC)), order)
    assert normal_form((0, 2, 0), G, order) == (1, 0, 1)
    assert normal_form((0, 3, 0), G, order) == (1, 1, 1)
    assert normal_form(Binomial((0, 4, 0), (2, 0, 2)), G, order) is None
    assert normal_form((1, 0, 1), G, order) == (1, 0, 1)


def test_initial_ideal_conic_by_weight():
    cfg = Configuration(CONIC)
    for w, lead in [((1, 0, 0), (1, 0, 1)), ((0, 1, 0), (0, 2, 0))]:
        J = initial_ideal(cfg, w)
        assert is_monomial(J) and as_monomial_ideal(J).generators == (lead,)
        # brute force: compare w-weights of the two terms
        terms = [(1, 0, 1), (0, 2, 0)]
        assert lead == max(terms, key=lambda u: sum(x * y for x, y in zip(w, u)))


def test_initial_ideal_tie_keeps_binomial():
    J = initial_ideal(Configuration(CONIC), (0, 0, 0))
    assert not is_monomial(J)


def test_is_monomial_decided_on_reduced_basis():
    # x - y and x are both listed, so the ideal is <x, y>
    I = BinomialIdeal(2, (Binomial((1, 0), (0, 1)),), ((1, 0),))
    assert is_monomial(I)
    assert not is_monomial(BinomialIdeal(2, (Binomial((1, 0), (0, 1)),)))


def test_minimal_generators_drops_redundant():
    order = TermOrder.grevlex(3)
    gens = (Binomial((1, 0, 0), (0, 1, 0)), Binomial((0, 1, 0), (0, 0, 1)), Binomial((1, 0, 0), (0, 0, 1)))
    M = minimal_generators(BinomialIdeal(3, gens), order)
    assert len(M) == 2
    assert ideals_equal(M, BinomialIdeal(3, gens))


def test_minimal_generators_monomials():
    I = BinomialIdeal(2, (), ((1, 0), (2, 0), (1, 1)))
    assert minimal_generators(I).monomials == ((1, 0),)


def test_genericity():
    assert is_generic(Configuration(CONIC))
    assert not is_generic(Configuration(CUBIC))


def test_realized_weight_of_pivot_order():
    cfg = Configuration(A8)
    I = toric_ideal(cfg)
    order = pivot_order(6, 0)
    w = realize_order_weight(I, order)
    assert w == default_weight(cfg)
    assert as_monomial_ideal(initial_ideal(cfg, w, I)) == leading_ideal(I, order)


def test_tiebreak_does_not_matter_for_generic_weight():
    cfg = Configuration(A8)
    w = default_weight(cfg)
    J1 = initial_ideal(cfg, w)
    J2 = initial_ideal(cfg, w, perm=(5, 4, 3, 2, 1, 0))
    assert as_monomial_ideal(J1) == as_monomial_ideal(J2)


@pytest.mark.parametrize("A", [CONIC, CUBIC, A8, [[1, 1, 1, 1], [0, 1, 3, 4]]])
@pytest.mark.parametrize("D", [1, 2, 3, 4])
def test_hilbert_function_of_initial_ideal(A, D):
    cfg = Configuration(A)
    I = toric_ideal(cfg)
    M = leading_ideal(I, TermOrder.grevlex(cfg.n))
    assert hilbert_function_monomial(M, D) == hilbert_function_ideal(cfg, D)


monomials3 = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(tuple)


@settings(max_examples=100, deadline=None)
@given(monomials3, st.sampled_from([CONIC, CUBIC]))
def test_normal_form_idempotent_and_degree_preserving(u, A):
    cfg = Configuration(A)
    u = u + (0,) * (cfg.n - 3)
    order = TermOrder.grevlex(cfg.n)
    G = buchberger(toric_ideal(cfg), order)
    r = normal_form(u, G, order)
    assert normal_form(r, G, order) == r
    assert cfg.degree_of(r) == cfg.degree_of(u)


def test_standard_monomials_are_unique_per_degree():
    # the normal forms of the monomials of degree 3 are the standard monomials,
    # one per A-degree
    cfg = Configuration(CUBIC)
    order = TermOrder.grevlex(4)
    G = buchberger(toric_ideal(cfg), order)
    forms = {}
    for u in product(range(4), repeat=4):
        if sum(u) == 3:
            forms.setdefault(cfg.degree_of(u), set()).add(normal_form(u, G, order))
    assert all(len(v) == 1 for v in forms.values())

from itertools import product

import pytest

from toricgkz.binomial import Configuration, MonomialIdeal
from toricgkz.errors import BoxTooSmall
from toricgkz.hypergeo import default_weight, weight_data
from toricgkz.stdpairs import (PairClass, StandardPair, associated_primes, brute_force_standard_pairs,
                               check_chain_property, classify, degree, embedded_primes,
                               is_standard_pair_polyhedral, standard_pairs)

A8 = [[1, 1, 1, 1, 1, 1], [1, 2, 1, 2, 3, 0], [0, 2, 2, 0, 1, 1]]


def P(eta, sigma):
    return StandardPair(eta, sigma)


def test_single_variable():
    assert standard_pairs(MonomialIdeal(2, [(1, 0)])) == [P((0, 0), {1})]


def test_product_of_variables():
    got = standard_pairs(MonomialIdeal(2, [(1, 1)]))
    assert set(got) == {P((0, 0), {0}), P((0, 0), {1})}


def test_square_of_variable():
    M = MonomialIdeal(2, [(2, 0)])
    assert set(standard_pairs(M)) == {P((0, 0), {1}), P((1, 0), {1})}
    assert brute_force_standard_pairs(M, 5) == standard_pairs(M)


def test_zero_ideal():
    pairs = standard_pairs(MonomialIdeal(3))
    assert pairs == [P((0, 0, 0), {0, 1, 2})]
    assert degree(MonomialIdeal(3), 0) == 1


def test_unit_ideal_has_no_pairs():
    assert standard_pairs(MonomialIdeal(2, [(0, 0)])) == []


def test_cosets_cover_but_may_overlap():
    M = MonomialIdeal(2, [(1, 1)])
    pairs = standard_pairs(M)
    for u in product(range(5), repeat=2):
        hits = [p for p in pairs if p.contains(u)]
        assert bool(hits) == (not M.contains(u))
    assert sum(p.contains((0, 0)) for p in pairs) == 2


def test_worked_example_box_six():
    cfg = Configuration(A8)
    M = weight_data(cfg, default_weight(cfg)).ideal
    assert brute_force_standard_pairs(M, 6) == standard_pairs(M)


def test_box_too_small():
    with pytest.raises(BoxTooSmall):
        brute_force_standard_pairs(MonomialIdeal(2, [(3, 0)]), 2)


def test_eta_must_vanish_on_sigma():
    with pytest.raises(ValueError):
        StandardPair((1, 0), {0})


def test_associated_and_embedded_primes():
    M = MonomialIdeal(2, [(2, 0), (1, 1)])
    pairs = standard_pairs(M)
    assert set(pairs) == {P((0, 0), {1}), P((1, 0), set())}
    assert associated_primes(M) == {frozenset({0}), frozenset({0, 1})}
    assert embedded_primes(M) == {frozenset({0, 1})}
    assert check_chain_property(M)
    assert classify(P((1, 0), set()), 1) is PairClass.EMBEDDED


def test_chain_property_can_fail():
    # <x^2, xy, xz>: the maximal ideal is embedded over <x> with nothing between
    M = MonomialIdeal(3, [(2, 0, 0), (1, 1, 0), (1, 0, 1)])
    assert associated_primes(M) == {frozenset({0}), frozenset({0, 1, 2})}
    assert not check_chain_property(M)


def test_degree_of_worked_example():
    cfg = Configuration(A8)
    data = weight_data(cfg, default_weight(cfg))
    assert degree(data.ideal, 3, data.pairs) == 8


def test_polyhedral_embedded_pair():
    cfg = Configuration(A8)
    w = default_weight(cfg)
    assert is_standard_pair_polyhedral(cfg, w, P((0, 0, 0, 1, 0, 0), {0, 5}))


def test_polyhedral_agrees_with_decomposition_nearby():
    cfg = Configuration(A8)
    w = default_weight(cfg)
    pairs = set(weight_data(cfg, w).pairs)
    for eta in [(0, 0, 0, 2, 0, 0), (0, 1, 0, 1, 0, 0), (0, 0, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0)]:
        p = P(eta, {0, 5})
        assert is_standard_pair_polyhedral(cfg, w, p) == (p in pairs)


def test_polyhedral_rejects_wrong_length():
    cfg = Configuration(A8)
    with pytest.raises(ValueError):
        is_standard_pair_polyhedral(cfg, default_weight(cfg), P((0, 0), {0}))


def test_rendering():
    assert str(P((0, 0, 0, 1, 0, 0), {0, 5})) == "(d4, {1,6})"

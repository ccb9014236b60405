"""Permutation arithmetic and the stabilizer chain, checked against brute-force closure."""

import itertools
import random

import pytest
from conftest import CORPUS_NAMES, _corpus

from ctbl.groups import alternating, symmetric
from ctbl.perm import (
    PermGroup,
    Permutation,
    centralizer,
    conjugacy_orbit,
    derived_subgroup,
    is_solvable,
    membership,
    normal_closure,
    p_part,
    prime_factors,
    schreier_sims,
    sylow_subgroup,
)

P = Permutation.from_cycles


def closure(gens):
    """Breadth-first closure of a generating set; the independent oracle."""
    gens = list(gens)
    e = Permutation.identity(gens[0].degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def test_right_action_convention():
    p, q = P(3, (0, 1)), P(3, (1, 2))
    assert (p * q)(0) == q(p(0))
    # conjugation x ** g = g^-1 x g
    assert p**q == q.inverse() * p * q


def test_schreier_sims_orders():
    assert schreier_sims([P(4, (0, 1)), P(4, (0, 1, 2, 3))]).order() == 24
    assert schreier_sims([Permutation.identity(4)]).order() == 1
    a5 = [P(5, (0, 1, 2)), P(5, (2, 3, 4))]
    assert schreier_sims(a5).order() == len(closure(a5)) == 60


def test_empty_generators_give_trivial_group():
    assert schreier_sims([], degree=3).order() == 1


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_order_matches_closure(name):
    G = _corpus()[name]
    if G.order() > 2000:
        pytest.skip("closure oracle kept to small groups")
    assert G.order() == len(closure(G.generators))


def test_membership_examples():
    A5 = alternating(5)
    assert not membership(A5, P(5, (0, 1)))
    assert membership(A5, Permutation.identity(5))
    assert membership(symmetric(4), P(4, (0, 2), (1, 3)))


def test_membership_degree_mismatch():
    with pytest.raises(ValueError):
        membership(alternating(5), Permutation([1, 0, 2]))


def test_random_words_are_members():
    rng = random.Random(3)
    for G in (alternating(5), _corpus()["2^4:A5"], _corpus()["2-group-128"]):
        for _ in range(50):
            w = Permutation.identity(G.degree)
            for _ in range(rng.randint(1, 20)):
                w = w * rng.choice(G.generators)
            assert membership(G, w)


def test_membership_against_enumeration():
    S4 = symmetric(4)
    A4 = alternating(4)
    elements = closure(A4.generators)
    for images in itertools.permutations(range(4)):
        x = Permutation(images)
        assert membership(A4, x) == (x in elements)
        assert membership(S4, x)


def test_centralizer_examples():
    S3, S4 = symmetric(3), symmetric(4)
    assert centralizer(S3, P(3, (0, 1, 2))).order() == 3
    assert centralizer(S4, P(4, (0, 1))).order() == 4
    assert centralizer(S4, Permutation.identity(4)).order() == 24


def test_centralizer_brute_force():
    S4 = symmetric(4)
    elements = closure(S4.generators)
    for x in elements:
        brute = {g for g in elements if g * x == x * g}
        assert set(centralizer(S4, x).elements()) == brute


def test_centralizer_rejects_non_member():
    with pytest.raises(ValueError):
        centralizer(alternating(5), P(5, (0, 1)))


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_orbit_stabilizer(name):
    from conftest import header_of

    G = _corpus()[name]
    for cc in header_of(name).classes:
        x = cc.representative
        assert centralizer(G, x).order() * len(conjugacy_orbit(G, x)) == G.order()


def test_normal_closure_examples():
    S4 = symmetric(4)
    V = normal_closure(S4, P(4, (0, 1), (2, 3)))
    assert V.order() == 4
    assert normal_closure(S4, P(4, (0, 1, 2))).order() == 12
    assert normal_closure(alternating(5), P(5, (0, 1, 2))).order() == 60


def test_normal_closure_conjugation_invariant():
    rng = random.Random(5)
    G = _corpus()["2^4:A5"]
    g = G.generators[-1]
    base = set(normal_closure(G, g).elements())
    for _ in range(5):
        h = G.random_element(rng)
        assert set(normal_closure(G, g**h).elements()) == base


def test_sylow_examples():
    S4 = symmetric(4)
    D = sylow_subgroup(S4, 2)
    assert D.order() == 8 and not D.is_abelian()
    assert sylow_subgroup(S4, 3).order() == 3
    assert sylow_subgroup(alternating(5), 5).order() == 5


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_sylow_orders(name):
    G = _corpus()[name]
    n = G.order()
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]:
        S = sylow_subgroup(G, p)
        assert S.order() == p_part(n, p)
        assert S.is_subgroup_of(G)


def test_prime_helpers():
    assert prime_factors(360) == [2, 3, 5]
    assert p_part(360, 2) == 8
    assert p_part(360, 7) == 1


def test_derived_and_solvable():
    assert derived_subgroup(symmetric(4)).order() == 12
    assert is_solvable(symmetric(4))
    assert not is_solvable(alternating(5))


def test_group_is_immutable_value():
    G = PermGroup([P(4, (0, 1))])
    assert G.order() == 2
    assert G.order() == 2

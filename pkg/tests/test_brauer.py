"""Elementary subgroups and the class-level induction formula."""

from fractions import Fraction

import pytest
from conftest import CORPUS_NAMES, _corpus, header_of

from ctbl.brauer import (
    build_brauer_subgroups,
    characters_of_subgroup,
    crt_exponent,
    induce_from_product,
    induce_naive,
    induced_characters,
    make_brauer_subgroup,
)
from ctbl.classes import table_header
from ctbl.classfunction import ClassFunction, regular_character
from ctbl.groups import alternating, symmetric
from ctbl.lll import extract_irreducibles, norm
from ctbl.perm import PermGroup, Permutation


def test_crt_examples():
    assert crt_exponent(3, 4) == [9, 1, 5]
    assert crt_exponent(5, 1) == [0, 1, 2, 3, 4]
    assert crt_exponent(1, 8) == [1]
    with pytest.raises(ValueError):
        crt_exponent(4, 6)


def test_crt_congruences():
    for n in range(1, 20):
        for e in (1, 2, 3, 4, 5, 7, 8, 9, 16, 27):
            if n % 2 == 0 and e % 2 == 0 or n % 3 == 0 and e % 3 == 0:
                continue
            if any(n % p == 0 and e % p == 0 for p in (5, 7)):
                continue
            M = crt_exponent(n, e)
            for i, m in enumerate(M):
                assert 0 <= m < n * e
                assert m % n == i % n
                assert m % e == 1 % e


def _trivial(G):
    return PermGroup([], degree=G.degree)


def test_s4_subgroup_set():
    G = symmetric(4)
    H = table_header(G)
    subs = build_brauer_subgroups(G, H)
    at_identity = [B for B in subs if B.x.is_identity()]
    assert sorted(B.P.order() for B in at_identity) == [1, 8]
    assert not at_identity[-1].P.is_abelian()
    assert len([B for B in subs if B.P.order() == 1]) == len(H)


def test_cyclic_group_has_only_cyclic_entries():
    G = _corpus()["C6"]
    subs = build_brauer_subgroups(G, header_of("C6"))
    assert len(subs) == 6
    assert all(B.P.order() == 1 for B in subs)


def test_a4_order_three_classes():
    G = alternating(4)
    H = table_header(G)
    subs = build_brauer_subgroups(G, H)
    for B in subs:
        if B.n == 3:
            assert B.P.order() == 1


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_subgroup_structure(name):
    G = _corpus()[name]
    H = header_of(name)
    for B in build_brauer_subgroups(G, H):
        assert B.P.is_subgroup_of(G)
        for g in B.P.generators:
            assert g * B.x == B.x * g
        assert B.order % B.n == 0
        if B.P.order() > 1:
            assert B.P.exponent() != B.P.order()


def test_regular_character_from_trivial_subgroup():
    G = symmetric(4)
    H = table_header(G)
    B = make_brauer_subgroup(G, H, Permutation.identity(4), _trivial(G))
    chi = induce_from_product(B, ClassFunction([1]), 0, H)
    assert chi.values == regular_character(len(H), 24).values


def test_s3_example():
    G = symmetric(3)
    H = table_header(G)
    B = make_brauer_subgroup(G, H, Permutation.from_cycles(3, (0, 1, 2)), _trivial(G))
    assert induce_from_product(B, ClassFunction([1]), 1, H).values == ClassFunction([2, 0, -1]).values
    assert induce_from_product(B, ClassFunction([1]), 2, H).values == ClassFunction([2, 0, -1]).values


def test_permutation_character_degree():
    G = alternating(5)
    H = table_header(G)
    for cc in H.classes:
        B = make_brauer_subgroup(G, H, cc.representative, _trivial(G))
        chi = induce_from_product(B, ClassFunction([1]), 0, H)
        assert chi[0] == Fraction(60, cc.rep_order)


def test_length_mismatch_raises():
    G = symmetric(3)
    H = table_header(G)
    B = make_brauer_subgroup(G, H, Permutation.identity(3), _trivial(G))
    with pytest.raises(ValueError):
        induce_from_product(B, ClassFunction([1, 1]), 0, H)


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "A5", "D8", "C2xC4"])
def test_formula_matches_naive_induction(name):
    G = _corpus()[name]
    H = header_of(name)
    for B in build_brauer_subgroups(G, H):
        for chi in B.p_characters():
            for j in range(B.n):
                fast = induce_from_product(B, chi, j, H)
                assert fast.values == induce_naive(G, H, B, chi, j).values


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_degree_and_integrality(name):
    G = _corpus()[name]
    H = header_of(name)
    for B in build_brauer_subgroups(G, H):
        for chi in B.p_characters():
            psi = induce_from_product(B, chi, 1 % B.n, H)
            assert psi[0] == Fraction(G.order(), B.order) * chi[0]
            n = norm(psi, H)
            assert n > 0 and n.denominator == 1


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_span_contains_all_irreducibles(name):
    G = _corpus()[name]
    H = header_of(name)
    chars = induced_characters(H, build_brauer_subgroups(G, H))
    irr, _ = extract_irreducibles(chars, H)
    assert len(irr) == len(H)


def test_parallel_induction_is_identical():
    G = _corpus()["SL(2,3)"]
    H = header_of("SL(2,3)")
    subs = build_brauer_subgroups(G, H)
    a = induced_characters(H, subs, jobs=1)
    b = induced_characters(H, subs, jobs=3)
    assert [c.to_strings() for c in a] == [c.to_strings() for c in b]


def test_characters_of_subgroup_count():
    G = symmetric(4)
    H = table_header(G)
    for B in build_brauer_subgroups(G, H):
        assert len(characters_of_subgroup(B, H)) == B.n * len(B.p_header)

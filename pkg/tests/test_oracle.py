"""Dixon-Schneider reference tables, checked against hand tables and permutation characters."""

import pytest
from conftest import CORPUS_NAMES, _corpus, header_of, oracle_of
from test_perm import closure

from ctbl.classes import table_header
from ctbl.classfunction import ClassFunction
from ctbl.cyclotomic import root_of_unity as E
from ctbl.groups import cyclic, symmetric
from ctbl.lll import inner_product
from ctbl.oracle import choose_prime, class_matrices, oracle_table
from ctbl.pipeline import check_orthogonality


def test_choose_prime():
    for order, e in [(6, 6), (24, 12), (60, 30), (960, 60), (128, 8)]:
        p = choose_prime(order, e)
        assert (p - 1) % e == 0
        assert p * p > 4 * order
        assert all(p % q for q in range(2, int(p**0.5) + 1))


def test_s3_table():
    rows = {c.values for c in oracle_table(symmetric(3))}
    expected = [ClassFunction(v) for v in ([1, 1, 1], [1, -1, 1], [2, 0, -1])]
    assert rows == {c.values for c in expected}


def test_s4_table():
    rows = {c.values for c in oracle_of("S4")}
    # classes: 1, (01)(23), (01), (012), (0123)
    expected = [
        [1, 1, 1, 1, 1],
        [1, 1, -1, 1, -1],
        [2, 2, 0, -1, 0],
        [3, -1, 1, 0, -1],
        [3, -1, -1, 0, 1],
    ]
    assert rows == {ClassFunction(v).values for v in expected}


def test_cyclic_table():
    G = cyclic(5)
    H = table_header(G)
    rows = oracle_table(G, H)
    gen = G.generators[0]
    k = H.class_of(gen)
    got = {chi[k] for chi in rows}
    assert got == {E(5, j) for j in range(5)}


def test_a5_golden_ratio_values():
    H = header_of("A5")
    fives = [c for c, o in enumerate(H.orders) if o == 5]
    threes = [chi for chi in oracle_of("A5") if chi.degree == 3]
    assert len(threes) == 2
    golden = E(5) + E(5, 4)
    for chi in threes:
        assert {chi[c] for c in fives} == {-golden, -(E(5, 2) + E(5, 3))}


def test_class_matrices_against_brute_force():
    G = symmetric(4)
    H = table_header(G)
    elements = closure(G.generators)
    members = [[x for x in elements if H.class_of(x) == c] for c in range(len(H))]
    mats = class_matrices(G, H)
    k = len(H)
    # entry [j][l] of matrix i: how many (x, y) in C_i x C_j with xy = z_l
    for i in range(k):
        for j in range(k):
            for l, z in enumerate(H.representatives):
                count = sum(1 for x in members[i] for y in members[j] if x * y == z)
                assert count in (mats[i][j][l], mats[i][l][j])


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_oracle_orthogonality(name):
    H = header_of(name)
    chars = oracle_of(name)
    assert len(chars) == len(H)
    assert check_orthogonality(chars, H)


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_permutation_character_decomposes(name):
    G = _corpus()[name]
    H = header_of(name)
    pi = ClassFunction([sum(1 for i in range(G.degree) if x(i) == i) for x in H.representatives])
    total = ClassFunction([0] * len(H))
    for chi in oracle_of(name):
        m = inner_product(pi, chi, H)
        assert m >= 0 and m.denominator == 1
        total = total + chi * int(m)
    assert total.values == pi.values


def test_size_limit():
    from ctbl.groups import alternating

    with pytest.raises(ValueError):
        oracle_table(alternating(9))

"""Hybrid PC/permutation groups: construction, arithmetic, presentations."""

import copy
import json
import random

import pytest
from conftest import CORPUS_NAMES, _corpus, header_of

from ctbl.groups import abelian, alternating, symmetric
from ctbl.hybrid import (
    HybridError,
    PcPresentation,
    build_from_perm_group,
    dumps_presentation,
    enumerate_cosets,
    export_presentation,
    find_seed,
    format_word,
    hybrid_class_count,
    import_presentation,
    parse_word,
    verify_presentation,
)
from ctbl.perm import Permutation

P = Permutation.from_cycles
TRIALS = 1000


@pytest.fixture(scope="module")
def s4():
    return build_from_perm_group(symmetric(4), P(4, (0, 1), (2, 3)))


@pytest.fixture(scope="module")
def affine():
    G = _corpus()["2^4:A5"]
    return G, build_from_perm_group(G, find_seed(G))


def _build(name):
    G = _corpus()[name]
    return G, build_from_perm_group(G, find_seed(G))


def test_words_round_trip():
    assert format_word([(2, 2), (4, 1)], "g") == "g3^2*g5"
    assert parse_word("g3^2*g5", "g") == [(2, 2), (4, 1)]
    assert format_word([], "q") == "1"
    assert parse_word("1", "q") == []
    assert parse_word(format_word([(0, -1), (1, 3)], "q"), "q") == [(0, -1), (1, 3)]


def test_coset_enumeration():
    # S3 = <a, b | a^2, b^3, (ab)^2>
    assert enumerate_cosets(2, [[(0, 2)], [(1, 3)], [(0, 1), (1, 1), (0, 1), (1, 1)]]) == 6
    # A5 = <a, b | a^2, b^3, (ab)^5>
    assert enumerate_cosets(2, [[(0, 2)], [(1, 3)], [(0, 1), (1, 1)] * 5]) == 60
    assert enumerate_cosets(1, [], limit=50) is None


def test_pc_presentation_of_cyclic_group():
    pc = PcPresentation([2, 2], [(0, 1), (0, 0)], {})
    assert pc.order == 4
    assert pc.is_consistent()
    g = pc.unit(0)
    assert pc.pow(g, 4) == pc.identity
    assert pc.pow(g, 2) == pc.unit(1)
    assert PcPresentation.from_json(pc.to_json()).to_json() == pc.to_json()


def test_inconsistent_pc_presentation():
    # g1^2 = g2 forces g1 to commute with g2, contradicting g2^g1 = g2^2
    pc = PcPresentation([2, 3], [(0, 1), (0, 0)], {(0, 1): (0, 2)})
    assert not pc.is_consistent()


def test_s4_structure(s4):
    assert s4.report.normal_subgroup_order == 4
    assert s4.report.quotient_action == "vectors"
    assert s4.report.quotient_degree == 3
    assert s4.order == 24
    assert s4.radical.is_consistent()


def test_affine_structure(affine):
    G, H = affine
    assert H.report.normal_subgroup_order == 16
    assert H.order == 960
    assert H.quotient_order == 60
    rec = export_presentation(H)
    for key in ("quotient_relators", "action", "tails", "pc_relators"):
        assert rec[key]
    assert verify_presentation(rec, [H.to_permutation(g) for g in H.generators()], G.order())


def test_elementary_abelian_group_is_pure_pc():
    G = abelian(2, 2, 2)
    H = build_from_perm_group(G, G.generators[0])
    assert H.quotient_order == 1
    rec = export_presentation(H)
    assert rec["quotient_relators"] == [] and rec["action"] == [] and rec["tails"] == []
    assert rec["pc_relators"]["relative_orders"] == [2, 2, 2]


def test_bad_seeds():
    with pytest.raises(HybridError):
        build_from_perm_group(symmetric(4), P(4, (0, 1, 2)))
    with pytest.raises(HybridError):
        build_from_perm_group(alternating(4), P(4, (0, 1)))


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_multiplication_matches_permutations(name):
    G, H = _build(name)
    assert H.order == G.order()
    rng = random.Random(hash(name) & 0xFFFF)
    e = H.identity()
    for _ in range(TRIALS // 10):
        a, b = H.random_element(rng), H.random_element(rng)
        assert H.to_permutation(H.multiply(a, b)) == H.to_permutation(a) * H.to_permutation(b)
        assert H.multiply(a, e) == a
        assert H.multiply(a, H.inverse(a)) == e
        assert H.from_permutation(H.to_permutation(a)) == a


def test_thousand_random_products(s4, affine):
    for H in (s4, affine[1]):
        rng = random.Random(99)
        for _ in range(TRIALS):
            a, b = H.random_element(rng), H.random_element(rng)
            assert H.to_permutation(H.multiply(a, b)) == H.to_permutation(a) * H.to_permutation(b)


def test_associativity(affine):
    H = affine[1]
    rng = random.Random(5)
    for _ in range(TRIALS):
        a, b, c = (H.random_element(rng) for _ in range(3))
        assert H.multiply(H.multiply(a, b), c) == H.multiply(a, H.multiply(b, c))


@pytest.mark.parametrize("name", [n for n in CORPUS_NAMES if _corpus()[n].order() <= 200])
def test_class_count_via_hybrid(name):
    _, H = _build(name)
    assert hybrid_class_count(H) == len(header_of(name))


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_export_import_export(name):
    G, H = _build(name)
    text = dumps_presentation(export_presentation(H))
    H2 = import_presentation(json.loads(text))
    assert H2.order == G.order()
    assert dumps_presentation(export_presentation(H2)) == text


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_self_verification(name):
    G, H = _build(name)
    rec = export_presentation(H)
    assert verify_presentation(rec, [H.to_permutation(g) for g in H.generators()], G.order())
    H2 = import_presentation(rec)
    if H2.order <= 200:
        res = verify_presentation(rec, H2.generators(), G.order(), H2.multiply, H2.inverse, H2.identity())
        assert res


def test_s4_against_permutation_generators(s4):
    rec = export_presentation(s4)
    images = [s4.to_permutation(g) for g in s4.generators()]
    assert all(isinstance(x, Permutation) and x.degree == 4 for x in images)
    assert verify_presentation(rec, images, 24)


def test_identity_image_fails(s4):
    rec = export_presentation(s4)
    images = [s4.to_permutation(g) for g in s4.generators()]
    images[0] = Permutation.identity(4)
    res = verify_presentation(rec, images, 24)
    assert not res


def test_tampered_tail_rejected(affine):
    G, H = affine
    rec = export_presentation(H)
    bad = copy.deepcopy(rec)
    k = next(i for i, t in enumerate(bad["tails"]))
    bad["tails"][k] = "g%d" % len(bad["pc_relators"]["relative_orders"]) if bad["tails"][k] == "1" else "1"
    images = [H.to_permutation(g) for g in H.generators()]
    res = verify_presentation(bad, images, G.order())
    assert not res
    assert res.section == "quotient"
    with pytest.raises(HybridError):
        import_presentation(bad)

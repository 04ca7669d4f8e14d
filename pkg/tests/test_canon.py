import itertools

import pytest

from topodeck import space as sp
from topodeck.canon import (
    are_homeomorphic,
    canonical_form,
    canonical_key,
    degree_profile,
    find_homeomorphism,
    key_from_hex,
    key_hex,
    space_from_key,
)
from topodeck.enumeration import labeled_preorders

from tests.conftest import random_perm, random_space


def test_discrete_key_is_labeling_independent():
    keys = {canonical_key(sp.relabel(sp.discrete(3), perm)) for perm in itertools.permutations(range(3))}
    assert len(keys) == 1


def test_two_point_spaces_have_distinct_keys():
    keys = {canonical_key(s) for s in (sp.sierpinski(), sp.discrete(2), sp.indiscrete(2))}
    assert len(keys) == 3


def test_three_point_labeled_topologies_collapse_to_nine_classes():
    labeled = list(labeled_preorders(3))
    assert len(labeled) == 29
    assert len({canonical_key(s) for s in labeled}) == 9


def test_key_encoding():
    key = canonical_key(sp.chain(3))
    assert key[0] == 3
    assert len(key) == 1 + 2
    assert key_from_hex(key_hex(key)) == key
    assert key_hex(key) == key_hex(key).lower()
    # 规范形为 0 ≤ 1 ≤ 2，上三角全为 1
    assert space_from_key(key) == sp.chain(3)


def test_space_from_key_round_trip(rng):
    for _ in range(200):
        s = random_space(rng, rng.randint(1, 7))
        key = canonical_key(s)
        assert canonical_key(space_from_key(key)) == key
        assert are_homeomorphic(canonical_form(s), s)


def test_are_homeomorphic_examples(rng, block_sum):
    c = sp.chain(3)
    assert are_homeomorphic(c, sp.relabel(c, random_perm(rng, 3)))
    assert not are_homeomorphic(c, block_sum)
    assert find_homeomorphism(c, block_sum) is None
    assert are_homeomorphic(block_sum, block_sum)
    assert not are_homeomorphic(sp.point(), sp.discrete(2))


@pytest.mark.parametrize("n", range(1, 8))
def test_relabel_invariance(rng, n):
    for _ in range(150):
        s = random_space(rng, n)
        assert canonical_key(sp.relabel(s, random_perm(rng, n))) == canonical_key(s)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 8))
def test_relabel_invariance_thousand(rng, n):
    for _ in range(1000):
        s = random_space(rng, n)
        assert canonical_key(sp.relabel(s, random_perm(rng, n))) == canonical_key(s)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_agrees_with_bijection_search_on_catalog(catalog_of, n):
    reps = [e.space for e in catalog_of(n).entries]
    for a, b in itertools.product(reps, repeat=2):
        assert are_homeomorphic(a, b) == (find_homeomorphism(a, b) is not None)


def test_agrees_with_bijection_search_on_labeled_four_points(rng):
    labeled = list(labeled_preorders(4))
    for _ in range(400):
        a, b = rng.choice(labeled), rng.choice(labeled)
        assert are_homeomorphic(a, b) == (find_homeomorphism(a, b) is not None)


@pytest.mark.slow
def test_agrees_with_bijection_search_on_all_five_point_pairs(catalog_of):
    reps = [e.space for e in catalog_of(5).entries]
    for a, b in itertools.combinations(reps, 2):
        assert find_homeomorphism(a, b) is None


@pytest.mark.slow
def test_ten_thousand_random_relabeled_pairs(rng):
    for _ in range(10000):
        n = rng.randint(1, 7)
        s = random_space(rng, n)
        t = sp.relabel(s, random_perm(rng, n))
        assert are_homeomorphic(s, t)
        if n <= 5:
            other = random_space(rng, n)
            assert are_homeomorphic(s, other) == (find_homeomorphism(s, other) is not None)


def test_found_homeomorphism_preserves_relation(rng):
    s = random_space(rng, 6)
    perm = random_perm(rng, 6)
    t = sp.relabel(s, perm)
    f = find_homeomorphism(s, t)
    assert f is not None
    assert all(s.rel(x, y) == t.rel(f[x], f[y]) for x in range(6) for y in range(6))


def test_equal_keys_have_equal_degree_profiles(rng):
    for _ in range(300):
        n = rng.randint(2, 6)
        s = random_space(rng, n)
        rep = space_from_key(canonical_key(s))
        assert degree_profile(rep) == degree_profile(s)

import pytest

from topodeck import space as sp
from topodeck.canon import canonical_key, key_from_hex
from topodeck.deck import (
    card_keys,
    cards,
    deck,
    deck_document,
    deck_fingerprint,
    fingerprint,
    is_reconstructible,
    multideck,
    reconstructions,
    same_deck,
    same_multideck,
)
from topodeck.errors import SpaceTooSmall
from topodeck.model_types import MultiDeck

from tests.conftest import random_perm, random_space

POINT = canonical_key(sp.point())
SIERPINSKI = canonical_key(sp.sierpinski())
DISCRETE2 = canonical_key(sp.discrete(2))
INDISCRETE2 = canonical_key(sp.indiscrete(2))


def test_cards_examples(block_sum):
    assert cards(sp.sierpinski()) == [sp.point(), sp.point()]
    assert card_keys(sp.chain(3)) == [SIERPINSKI] * 3
    assert card_keys(block_sum) == [DISCRETE2, DISCRETE2, INDISCRETE2]


def test_cards_need_two_points():
    with pytest.raises(SpaceTooSmall):
        cards(sp.point())


def test_deck_and_multideck(block_sum):
    assert deck(sp.sierpinski()).keys == (POINT,)
    assert deck(block_sum).keys == (DISCRETE2, INDISCRETE2)
    md = multideck(block_sum)
    assert [c for _, c in md.entries] == [2, 1]
    assert md.total == 3
    assert md.keys == deck(block_sum).keys


def test_multideck_total_is_point_count(rng):
    for _ in range(100):
        s = random_space(rng, rng.randint(2, 6))
        assert multideck(s).total == s.n
        assert set(multideck(s).keys) == set(deck(s).keys)


def test_same_deck_examples():
    assert same_deck(sp.chain(3), sp.chain(3))
    assert same_deck(sp.discrete(2), sp.sierpinski())
    assert same_multideck(sp.discrete(2), sp.sierpinski())
    assert not same_deck(sp.discrete(3), sp.chain(3))
    assert not same_deck(sp.discrete(2), sp.discrete(3))


def test_deck_is_a_topological_invariant(rng):
    for _ in range(100):
        n = rng.randint(2, 6)
        s = random_space(rng, n)
        t = sp.relabel(s, random_perm(rng, n))
        assert deck(s) == deck(t)
        assert multideck(s) == multideck(t)
        assert fingerprint(s, "multi-deck") == fingerprint(t, "multi-deck")


def test_fingerprint_separates_modes(block_sum):
    set_fp = fingerprint(block_sum)
    multi_fp = fingerprint(block_sum, "multi-deck")
    assert set_fp != multi_fp
    assert len(set_fp) == 32
    assert deck_fingerprint(deck(block_sum)) == set_fp


def test_fingerprint_sees_multiplicities():
    md = multideck(sp.chain(3))
    doubled = MultiDeck(n=3, entries=((SIERPINSKI, 2),))
    assert deck_fingerprint(md) != deck_fingerprint(doubled)
    assert deck_fingerprint(md) != deck_fingerprint(deck(sp.chain(3)))


def test_deck_document(block_sum):
    doc = deck_document(sp.chain(3))
    assert doc == {"deck": [SIERPINSKI.hex()], "multideck": [[SIERPINSKI.hex(), 3]]}
    doc = deck_document(block_sum)
    assert [key_from_hex(k) for k in doc["deck"]] == [DISCRETE2, INDISCRETE2]
    assert doc["multideck"][0][1] == 2


def test_reconstructions_in_two_point_catalog(catalog_of):
    catalog = catalog_of(2)
    found = reconstructions(sp.sierpinski(), catalog)
    assert sorted(found) == sorted(catalog.keys)
    assert not is_reconstructible(sp.sierpinski(), catalog)


def test_discrete_three_class(catalog_of):
    catalog = catalog_of(3)
    found = reconstructions(sp.discrete(3), catalog)
    assert canonical_key(sp.discrete(3)) in found
    for key in found:
        entry = next(e for e in catalog.entries if e.key == key)
        assert deck(entry.space).keys == (DISCRETE2,)


def test_reconstructions_rejects_wrong_size(catalog_of):
    with pytest.raises(ValueError):
        reconstructions(sp.chain(3), catalog_of(2))

"""
卡片、卡组与多重卡组

卡组只保存卡片的规范键，需要卡片本身时用 canon.space_from_key 还原。
"""

import hashlib
from collections import Counter
from typing import TYPE_CHECKING, List, Literal, Union

from topodeck.canon import canonical_key
from topodeck.errors import SpaceTooSmall
from topodeck.model_types import CanonicalKey, Deck, FiniteSpace, MultiDeck
from topodeck.space import delete_point

if TYPE_CHECKING:
    from topodeck.model_types import Catalog

DeckMode = Literal["set-deck", "multi-deck"]
DECK_MODES = ("set-deck", "multi-deck")


def cards(space: FiniteSpace) -> List[FiniteSpace]:
    """第 i 张卡片为 X∖{i}"""
    if space.n < 2:
        raise SpaceTooSmall(space.n)
    return [delete_point(space, x) for x in space.points]


def card_keys(space: FiniteSpace) -> List[CanonicalKey]:
    return [canonical_key(card) for card in cards(space)]


def deck(space: FiniteSpace) -> Deck:
    return Deck(n=space.n, keys=tuple(sorted(set(card_keys(space)))))


def multideck(space: FiniteSpace) -> MultiDeck:
    counts = Counter(card_keys(space))
    return MultiDeck(n=space.n, entries=tuple(sorted(counts.items())))


def same_deck(a: FiniteSpace, b: FiniteSpace) -> bool:
    return a.n == b.n and deck(a) == deck(b)


def same_multideck(a: FiniteSpace, b: FiniteSpace) -> bool:
    return a.n == b.n and multideck(a) == multideck(b)


def deck_fingerprint(d: Union[Deck, MultiDeck]) -> str:
    """对按序拼接的键（多重卡组附带计数）做 blake2b 摘要"""
    h = hashlib.blake2b(digest_size=16)
    h.update(bytes([d.n]))
    if isinstance(d, MultiDeck):
        for key, count in d.entries:
            h.update(key)
            h.update(count.to_bytes(2, "big"))
    else:
        for key in d.keys:
            h.update(key)
    return h.hexdigest()


def fingerprint(space: FiniteSpace, mode: DeckMode = "set-deck") -> str:
    """按模式计算空间卡组的指纹"""
    if mode == "multi-deck":
        return deck_fingerprint(multideck(space))
    return deck_fingerprint(deck(space))


def deck_document(space: FiniteSpace) -> dict:
    """卡组 JSON：{"deck": [...], "multideck": [[key, count], ...]}"""
    return {
        "deck": [k.hex() for k in deck(space).keys],
        "multideck": [[k.hex(), c] for k, c in multideck(space).entries],
    }


def reconstructions(space: FiniteSpace, catalog: "Catalog", mode: DeckMode = "set-deck") -> List[CanonicalKey]:
    """
    目录中所有卡组与 space 相同的空间（即 space 的重构）

    multi-deck 模式对应弱重构。
    """
    if catalog.n != space.n:
        raise ValueError(f"目录点数 {catalog.n} 与空间点数 {space.n} 不符")
    target = fingerprint(space, mode)
    return [e.key for e in catalog.entries if fingerprint(e.space, mode) == target]


def is_reconstructible(space: FiniteSpace, catalog: "Catalog", mode: DeckMode = "set-deck") -> bool:
    """目录中的重构只有 space 自身的同胚类"""
    found = reconstructions(space, catalog, mode)
    return found == [canonical_key(space)]

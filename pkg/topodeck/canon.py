"""
规范形与同胚判定

对特殊化预序做迭代划分细化，再在细化后的有序单元内回溯，选出字典序最小的
重标号关系矩阵。规范键为该矩阵的编码，因此两个空间同胚当且仅当键相等。
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from topodeck.bitset import iter_bits, popcount
from topodeck.errors import SpaceTooLarge
from topodeck.model_types import CanonicalKey, FiniteSpace

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 8


def _rank(signatures: Sequence) -> List[int]:
    """把可比较的签名映射为其在去重排序后的名次"""
    order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [order[sig] for sig in signatures]


def refine(space: FiniteSpace) -> List[int]:
    """
    迭代细化点的颜色，返回每个点的颜色名次

    初始颜色为 (|U_x|, |cl{x}|)，之后每轮并入下方邻居与上方邻居的颜色多重集，
    直到单元数不再增加。
    """
    down = space.min_open
    up = space.closures
    colors = _rank([(popcount(down[x]), popcount(up[x])) for x in space.points])
    while True:
        signatures = [
            (
                colors[x],
                tuple(sorted(colors[z] for z in iter_bits(down[x]) if z != x)),
                tuple(sorted(colors[z] for z in iter_bits(up[x]) if z != x)),
            )
            for x in space.points
        ]
        refined = _rank(signatures)
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def _twins(space: FiniteSpace, colors: Sequence[int]) -> List[int]:
    """twins[x]：同色且交换后关系不变的点集（对换是自同构）"""
    n = space.n
    down = space.min_open
    up = space.closures
    twins = [0] * n
    for x in range(n):
        for y in range(x + 1, n):
            if colors[x] != colors[y]:
                continue
            pair = (1 << x) | (1 << y)
            if (down[x] & ~pair) != (down[y] & ~pair) or (up[x] & ~pair) != (up[y] & ~pair):
                continue
            if space.rel(x, y) != space.rel(y, x):
                continue
            twins[x] |= 1 << y
            twins[y] |= 1 << x
    return twins


def _shell(space: FiniteSpace, v: int, placed: Sequence[int]) -> int:
    """把 v 放在下一个位置时新增的关系位：与已放置点的双向关系"""
    bits = 0
    for u in placed:
        bits = (bits << 2) | (space.rel(v, u) << 1) | space.rel(u, v)
    return bits


def canonical_labeling(space: FiniteSpace) -> List[int]:
    """
    返回规范排列 order，order[p] 为放在位置 p 的原始点

    位置按颜色名次分配给单元；在单元内回溯，比较逐层新增关系位组成的序列，
    保留字典序最小者。同一层中互为孪生的候选只展开一个。
    """
    n = space.n
    colors = refine(space)
    slots = sorted(colors)
    twins = _twins(space, colors)

    best: Optional[List[int]] = None
    best_order: List[int] = []
    shells: List[int] = []
    order: List[int] = []

    def search(used: int) -> None:
        nonlocal best, best_order
        p = len(order)
        if p == n:
            if best is None or shells < best:
                best = list(shells)
                best_order = list(order)
            return
        tried = 0
        for v in range(n):
            if (used >> v) & 1 or colors[v] != slots[p] or twins[v] & tried:
                continue
            tried |= 1 << v
            shell = _shell(space, v, order)
            if best is not None and shells + [shell] > best[: p + 1]:
                continue
            shells.append(shell)
            order.append(v)
            search(used | (1 << v))
            order.pop()
            shells.pop()

    search(0)
    return best_order


def _encode(n: int, rel) -> CanonicalKey:
    """n 一个字节，随后是 n² 个关系位，按行主序、高位在前打包"""
    value = 0
    for x in range(n):
        for y in range(n):
            value = (value << 1) | bool(rel(x, y))
    nbits = n * n
    nbytes = (nbits + 7) // 8
    value <<= nbytes * 8 - nbits
    return bytes([n]) + value.to_bytes(nbytes, "big")


def canonical_key(space: FiniteSpace) -> CanonicalKey:
    """空间的规范键；与点的编号无关"""
    order = canonical_labeling(space)
    return _encode(space.n, lambda i, j: space.rel(order[i], order[j]))


def canonical_form(space: FiniteSpace) -> FiniteSpace:
    """按规范标号重排后的空间，其关系矩阵即规范键所编码的矩阵"""
    return space_from_key(canonical_key(space))


def space_from_key(key: CanonicalKey) -> FiniteSpace:
    """从规范键还原一个代表空间"""
    n = key[0]
    value = int.from_bytes(key[1:], "big")
    nbytes = len(key) - 1
    value >>= nbytes * 8 - n * n
    min_open = [0] * n
    for x in range(n):
        for y in range(n):
            bit = (value >> (n * n - 1 - (x * n + y))) & 1
            if bit:
                min_open[y] |= 1 << x
    return FiniteSpace(n=n, min_open=tuple(min_open))


def key_hex(key: CanonicalKey) -> str:
    return key.hex()


def key_from_hex(text: str) -> CanonicalKey:
    return bytes.fromhex(text)


def are_homeomorphic(a: FiniteSpace, b: FiniteSpace) -> bool:
    if a.n != b.n:
        return False
    return canonical_key(a) == canonical_key(b)


def find_homeomorphism(a: FiniteSpace, b: FiniteSpace) -> Optional[Dict[int, int]]:
    """
    穷举点双射寻找同胚 f: a → b（要求 n ≤ 8）

    同胚即保持特殊化预序的双射：rel_a(x, y) ⇔ rel_b(f(x), f(y))。
    """
    if a.n != b.n:
        return None
    if a.n > BRUTE_FORCE_LIMIT:
        raise SpaceTooLarge(a.n, BRUTE_FORCE_LIMIT)
    n = a.n
    if sorted(map(popcount, a.min_open)) != sorted(map(popcount, b.min_open)):
        return None
    for perm in itertools.permutations(range(n)):
        if all(
            a.rel(x, y) == b.rel(perm[x], perm[y])
            for x in range(n)
            for y in range(n)
        ):
            return dict(enumerate(perm))
    return None


def degree_profile(space: FiniteSpace) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """(|U_x| 排序向量, |cl{x}| 排序向量)"""
    return (
        tuple(sorted(popcount(u) for u in space.min_open)),
        tuple(sorted(popcount(c) for c in space.closures)),
    )

"""
有限拓扑空间的构造、校验与变换

空间有两种等价表示：开集族 OpenFamily，以及特殊化预序（FiniteSpace.min_open）。
"""

import logging
from typing import Iterable, List, Sequence, Tuple

import networkx as nx

from topodeck.bitset import collapse, full_mask, iter_bits, mask_of, points_of, sort_key
from topodeck.errors import (
    MissingEmptyOrFull,
    NotAPreorder,
    NotIntersectionClosed,
    NotUnionClosed,
    PointOutOfRange,
    SpaceTooLarge,
    SpaceTooSmall,
    SpaceValidationError,
)
from topodeck.model_types import MAX_POINTS, FiniteSpace, OpenFamily

logger = logging.getLogger(__name__)


def _check_count(n: int) -> None:
    if n < 1:
        raise SpaceTooSmall(n, 1)
    if n > MAX_POINTS:
        raise SpaceTooLarge(n, MAX_POINTS)


def normalize(masks: Iterable[int]) -> Tuple[int, ...]:
    """去重并按 (基数, 数值) 排序"""
    return tuple(sorted(set(masks), key=sort_key))


def validate(family: Iterable[Iterable[int]], n: int) -> OpenFamily:
    """
    校验原始子集列表是否构成 n 点上的拓扑

    先检查并、交封闭性（报告第一对反例），再检查空集和全集。
    """
    _check_count(n)
    masks = []
    for subset in family:
        subset = list(subset)
        for p in subset:
            if not 0 <= p < n:
                raise PointOutOfRange(p, n)
        masks.append(mask_of(subset))
    opens = normalize(masks)
    members = set(opens)

    for i, a in enumerate(opens):
        for b in opens[i + 1:]:
            if a | b not in members:
                raise NotUnionClosed(points_of(a), points_of(b))
    for i, a in enumerate(opens):
        for b in opens[i + 1:]:
            if a & b not in members:
                raise NotIntersectionClosed(points_of(a), points_of(b))

    full = full_mask(n)
    if 0 not in members or full not in members:
        raise MissingEmptyOrFull(n, 0 not in members, full not in members)
    return OpenFamily(n=n, opens=opens)


def to_space(family: OpenFamily) -> FiniteSpace:
    """开集族 → 特殊化预序：U_x 为所有包含 x 的开集之交"""
    n = family.n
    min_open = []
    for x in range(n):
        u = full_mask(n)
        for o in family.opens:
            if (o >> x) & 1:
                u &= o
        min_open.append(u)
    return FiniteSpace(n=n, min_open=tuple(min_open))


def open_masks(space: FiniteSpace) -> Tuple[int, ...]:
    """所有下闭集（即开集），已规范化"""
    opens = {0}
    for u in set(space.min_open):
        opens |= {o | u for o in opens}
    return normalize(opens)


def from_space(space: FiniteSpace) -> OpenFamily:
    """特殊化预序 → 开集族"""
    return OpenFamily(n=space.n, opens=open_masks(space))


def from_min_open(min_open: Sequence[int]) -> FiniteSpace:
    return FiniteSpace(n=len(min_open), min_open=tuple(min_open))


def from_preorder(matrix: Sequence[Sequence[object]]) -> FiniteSpace:
    """由 n×n 关系矩阵构造空间，matrix[x][y] 表示 rel(x, y)"""
    n = len(matrix)
    _check_count(n)
    for row in matrix:
        if len(row) != n:
            raise SpaceValidationError(f"预序矩阵必须是 {n}×{n} 的方阵")
    rel = [[bool(matrix[x][y]) for y in range(n)] for x in range(n)]
    for x in range(n):
        if not rel[x][x]:
            raise NotAPreorder(x, x)
    for x in range(n):
        for y in range(n):
            if not rel[x][y]:
                continue
            for z in range(n):
                if rel[y][z] and not rel[x][z]:
                    raise NotAPreorder(x, y, z)
    return FiniteSpace(n=n, min_open=tuple(mask_of(x for x in range(n) if rel[x][y]) for y in range(n)))


def from_relation(n: int, pairs: Iterable[Tuple[int, int]]) -> FiniteSpace:
    """生成关系的自反传递闭包；(x, y) 表示 x ≤ y"""
    _check_count(n)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise PointOutOfRange(x if not 0 <= x < n else y, n)
        graph.add_edge(x, y)
    closure = nx.transitive_closure(graph, reflexive=True)
    min_open = [1 << y for y in range(n)]
    for x, y in closure.edges:
        min_open[y] |= 1 << x
    return FiniteSpace(n=n, min_open=tuple(min_open))


def relabel(space: FiniteSpace, perm: Sequence[int]) -> FiniteSpace:
    """按 perm 重新编号：点 x 变为 perm[x]"""
    if sorted(perm) != list(range(space.n)):
        raise ValueError(f"{list(perm)} 不是 0..{space.n - 1} 的排列")
    min_open = [0] * space.n
    for y, u in enumerate(space.min_open):
        min_open[perm[y]] = mask_of(perm[z] for z in iter_bits(u))
    return FiniteSpace(n=space.n, min_open=tuple(min_open))


def subspace(space: FiniteSpace, keep: int) -> FiniteSpace:
    """
    keep 上的子空间，保序重新编号为 0..|keep|-1

    子空间中的最小开集是 U_y ∩ keep，也就是诱导子预序。
    """
    if keep == 0:
        raise SpaceTooSmall(0, 1)
    if keep & ~full_mask(space.n):
        raise PointOutOfRange((keep & ~full_mask(space.n)).bit_length() - 1, space.n)
    return FiniteSpace(
        n=keep.bit_count(),
        min_open=tuple(collapse(space.min_open[y], keep) for y in iter_bits(keep)),
    )


def delete_point(space: FiniteSpace, x: int) -> FiniteSpace:
    """删除点 x 得到的子空间 X∖{x}"""
    if not 0 <= x < space.n:
        raise PointOutOfRange(x, space.n)
    if space.n < 2:
        raise SpaceTooSmall(space.n)
    return subspace(space, full_mask(space.n) & ~(1 << x))


def disjoint_sum(a: FiniteSpace, b: FiniteSpace) -> FiniteSpace:
    """不交并 a ⊕ b：b 的点整体平移 a.n 位，预序为分块对角"""
    _check_count(a.n + b.n)
    return FiniteSpace(n=a.n + b.n, min_open=a.min_open + tuple(u << a.n for u in b.min_open))


def multiple(k: int, space: FiniteSpace) -> FiniteSpace:
    """k·X：k 个 X 的不交并"""
    if k < 1:
        raise ValueError(f"k 必须为正整数，得到 {k}")
    result = space
    for _ in range(k - 1):
        result = disjoint_sum(result, space)
    return result


def discrete(k: int) -> FiniteSpace:
    _check_count(k)
    return FiniteSpace(n=k, min_open=tuple(1 << x for x in range(k)))


def indiscrete(k: int) -> FiniteSpace:
    _check_count(k)
    return FiniteSpace(n=k, min_open=(full_mask(k),) * k)


def chain(k: int) -> FiniteSpace:
    """k 点链：开集为 ∅ ⊂ {0} ⊂ {0,1} ⊂ ... ⊂ {0..k-1}"""
    _check_count(k)
    return FiniteSpace(n=k, min_open=tuple(full_mask(x + 1) for x in range(k)))


def sierpinski() -> FiniteSpace:
    """Sierpiński 空间 {∅, {0}, {0,1}}"""
    return chain(2)


def point() -> FiniteSpace:
    return discrete(1)


def named(tag: str, size: int = 1) -> FiniteSpace:
    """按标签构造具名空间"""
    if tag == "discrete":
        return discrete(size)
    if tag == "indiscrete":
        return indiscrete(size)
    if tag == "chain":
        return chain(size)
    if tag == "sierpinski":
        if size not in (1, 2):
            logger.debug("sierpinski 规模固定为 2，忽略 size=%d", size)
        return sierpinski()
    if tag == "point":
        return point()
    raise ValueError(f"未知的空间标签: {tag}")


def open_sets_as_lists(space: FiniteSpace) -> List[List[int]]:
    """规范化开集族，每个开集为升序点列表"""
    return [points_of(o) for o in open_masks(space)]


def closed_masks(space: FiniteSpace) -> Tuple[int, ...]:
    full = full_mask(space.n)
    return normalize(full & ~o for o in open_masks(space))


def down_closure(space: FiniteSpace, mask: int) -> int:
    """包含 mask 的最小开集"""
    result = 0
    for x in iter_bits(mask):
        result |= space.min_open[x]
    return result

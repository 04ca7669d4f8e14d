"""
同胚意义下无重复地枚举所有 n 点拓扑，以及独立的带标号预序枚举（校验用）

生成方法：先逐层添加极大元枚举同构意义下的偏序集，再给偏序集的每个元素分配
重数（各重数 ≥ 1，总和为 n），展开成预序。同构的重数分配按规范键去重。
"""

import heapq
import itertools
import logging
import multiprocessing
from datetime import datetime
from typing import Callable, Iterable, Iterator, List, Sequence, Tuple, TypeVar

from topodeck.bitset import full_mask, iter_bits
from topodeck.canon import canonical_key, space_from_key
from topodeck.errors import ScaleUnsupported
from topodeck.model_types import CanonicalKey, Catalog, CatalogEntry, FiniteSpace
from topodeck.properties import compute_properties
from topodeck.space import open_masks, point

logger = logging.getLogger(__name__)

MIN_N = 1
MAX_N = 7
STRETCH_N = 8
ORACLE_MAX_N = 5
METHOD = "poset-multiplicity"

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """有序并行映射；结果顺序与输入一致，与进程数无关"""
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    chunksize = max(1, len(items) // (workers * 8))
    with multiprocessing.Pool(processes=workers) as pool:
        return pool.map(func, items, chunksize=chunksize)


def merge_unique(chunks: Iterable[List[CanonicalKey]]) -> List[CanonicalKey]:
    """合并各自有序的键列表并去重"""
    merged: List[CanonicalKey] = []
    for key in heapq.merge(*chunks):
        if not merged or merged[-1] != key:
            merged.append(key)
    return merged


def _maximal_extensions(parent_key: CanonicalKey) -> List[CanonicalKey]:
    """在偏序集上添加一个新的极大元，其下方是父偏序集的任一下闭集"""
    parent = space_from_key(parent_key)
    k = parent.n
    keys = {
        canonical_key(FiniteSpace(n=k + 1, min_open=parent.min_open + (down | 1 << k,)))
        for down in open_masks(parent)
    }
    return sorted(keys)


def posets_upto_iso(k: int, workers: int = 1) -> List[List[CanonicalKey]]:
    """
    返回 1..k 各层的偏序集规范键（各层有序）

    每个 m+1 元偏序集删去一个极大元都得到某个 m 元偏序集，所以逐层扩展是完备的。
    """
    levels = [[canonical_key(point())]]
    while len(levels) < k:
        children = parallel_map(_maximal_extensions, levels[-1], workers)
        levels.append(merge_unique(children))
        logger.debug("%d 元偏序集: %d 个", len(levels), len(levels[-1]))
    return levels


def _blow_up(poset: FiniteSpace, sizes: Sequence[int]) -> FiniteSpace:
    """把偏序集第 i 个元素替换为 sizes[i] 个等价点"""
    blocks = []
    start = 0
    for size in sizes:
        blocks.append(full_mask(size) << start)
        start += size
    min_open = []
    for i, size in enumerate(sizes):
        u = 0
        for j in iter_bits(poset.min_open[i]):
            u |= blocks[j]
        min_open.extend([u] * size)
    return FiniteSpace(n=start, min_open=tuple(min_open))


def compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """n 拆成 k 个正整数之和的所有有序拆分"""
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def _expand_task(task: Tuple[CanonicalKey, int]) -> List[CanonicalKey]:
    poset_key, n = task
    poset = space_from_key(poset_key)
    keys = {canonical_key(_blow_up(poset, sizes)) for sizes in compositions(n, poset.n)}
    return sorted(keys)


def _check_scale(n: int, hi: int) -> None:
    if not MIN_N <= n <= hi:
        raise ScaleUnsupported(n, MIN_N, hi)


def class_keys(n: int, workers: int = 1, allow_stretch: bool = False) -> List[CanonicalKey]:
    """n 点拓扑所有同胚类的规范键，升序"""
    _check_scale(n, STRETCH_N if allow_stretch else MAX_N)
    levels = posets_upto_iso(n, workers)
    tasks = [(key, n) for level in levels for key in level]
    logger.info("n=%d: 从 %d 个偏序集展开预序", n, len(tasks))
    return merge_unique(parallel_map(_expand_task, tasks, workers))


def _entry_for(key: CanonicalKey) -> CatalogEntry:
    space = space_from_key(key)
    return CatalogEntry(key=key, space=space, props=compute_properties(space))


def enumerate_upto_homeo(n: int, workers: int = 1, allow_stretch: bool = False) -> Catalog:
    """
    n 点拓扑的完整目录：每个同胚类一个代表（规范标号形式）及其不变量

    支持 1 ≤ n ≤ 7；allow_stretch 时允许 n = 8。
    """
    keys = class_keys(n, workers, allow_stretch)
    logger.info("n=%d: %d 个同胚类，计算不变量", n, len(keys))
    entries = parallel_map(_entry_for, keys, workers)
    return Catalog(n=n, entries=entries, method=METHOD, generated_at=datetime.now().isoformat())


# ---------------------------------------------------------------- 带标号预序（校验基准）

def _columns(n: int) -> List[List[int]]:
    """第 y 列的候选 U_y：所有包含 y 的子集"""
    full = full_mask(n)
    return [[u for u in range(full + 1) if (u >> y) & 1] for y in range(n)]


def _transitive(min_open: Sequence[int]) -> bool:
    for u in min_open:
        for x in iter_bits(u):
            if min_open[x] & ~u:
                return False
    return True


def _labeled_with_first(task: Tuple[int, int]) -> List[Tuple[int, ...]]:
    n, first = task
    columns = _columns(n)[1:]
    return [
        (first,) + rest
        for rest in itertools.product(*columns)
        if _transitive((first,) + rest)
    ]


def _labeled_tuples(n: int, workers: int = 1) -> List[Tuple[int, ...]]:
    _check_scale(n, ORACLE_MAX_N)
    tasks = [(n, first) for first in _columns(n)[0]]
    chunks = parallel_map(_labeled_with_first, tasks, workers)
    return [t for chunk in chunks for t in chunk]


def labeled_preorders(n: int, workers: int = 1) -> Iterator[FiniteSpace]:
    """
    枚举 n 个带标号点上的所有自反传递关系

    对 2^(n²-n) 种非对角位模式逐一做传递性过滤，只用于 n ≤ 5 的校验。
    """
    for min_open in _labeled_tuples(n, workers):
        yield FiniteSpace(n=n, min_open=min_open)


def oracle_labeled_count(n: int, workers: int = 1) -> int:
    """带标号预序（即带标号拓扑）的个数"""
    return len(_labeled_tuples(n, workers))


def oracle_class_keys(n: int, workers: int = 1) -> List[CanonicalKey]:
    """所有带标号预序的规范键去重后的升序列表"""
    spaces = list(labeled_preorders(n, workers))
    return sorted({canonical_key(s) for s in spaces})

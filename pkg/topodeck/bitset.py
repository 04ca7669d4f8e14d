"""
点集的位集表示

n 个点的子集编码为一个整数，第 x 位为 1 表示 x 属于该子集。n 最大为 16。
"""

from typing import Iterable, Iterator, List


def mask_of(points: Iterable[int]) -> int:
    """点列表转换为位集"""
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


def full_mask(n: int) -> int:
    """全集 {0..n-1}"""
    return (1 << n) - 1


def iter_bits(mask: int) -> Iterator[int]:
    """按升序迭代位集中的点"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def points_of(mask: int) -> List[int]:
    return list(iter_bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    """a ⊆ b"""
    return a & ~b == 0


def collapse(mask: int, keep: int) -> int:
    """
    把 mask 限制到 keep 上，并按保序方式重新编号

    keep 中第 k 小的点映射为 k。删除单点时 keep = 全集去掉该点。
    """
    result = 0
    for k, p in enumerate(iter_bits(keep)):
        if (mask >> p) & 1:
            result |= 1 << k
    return result


def sort_key(mask: int):
    """规范化排序键：(基数, 数值)"""
    return (mask.bit_count(), mask)

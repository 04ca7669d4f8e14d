"""
topodeck 的数据类型定义
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, List, Literal, Tuple

from topodeck.bitset import full_mask, iter_bits
from topodeck.errors import NotAPreorder, PointOutOfRange, SpaceTooLarge, SpaceTooSmall

if TYPE_CHECKING:
    from topodeck.properties import PropertyVector


# 规范键：首字节为 n，其后是 n×n 关系位（按行主序打包）
CanonicalKey = bytes

MAX_POINTS = 16


@dataclass(frozen=True)
class OpenFamily:
    """开集族，opens 已按 (基数, 数值) 排序且去重"""
    n: int
    opens: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.opens)


@dataclass(frozen=True)
class FiniteSpace:
    """
    有限拓扑空间

    min_open[x] 是包含 x 的最小开集 U_x。特殊化预序 rel(x, y) 当且仅当 x ∈ U_y，
    开集恰好是该预序下的下闭集。
    """
    n: int
    min_open: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise SpaceTooSmall(self.n, 1)
        if self.n > MAX_POINTS:
            raise SpaceTooLarge(self.n, MAX_POINTS)
        if len(self.min_open) != self.n:
            raise ValueError(f"min_open 长度 {len(self.min_open)} 与 n={self.n} 不符")
        full = full_mask(self.n)
        for y, u in enumerate(self.min_open):
            if u & ~full:
                raise PointOutOfRange((u & ~full).bit_length() - 1, self.n)
            if not (u >> y) & 1:
                raise NotAPreorder(y, y)
        # 传递性：x ∈ U_y 蕴含 U_x ⊆ U_y
        for y, u in enumerate(self.min_open):
            for x in iter_bits(u):
                outside = self.min_open[x] & ~u
                if outside:
                    raise NotAPreorder(outside.bit_length() - 1, x, y)

    def rel(self, x: int, y: int) -> bool:
        """x ≤ y，即每个包含 y 的开集都包含 x"""
        return (self.min_open[y] >> x) & 1 == 1

    @cached_property
    def preorder(self) -> Tuple[Tuple[bool, ...], ...]:
        return tuple(tuple(self.rel(x, y) for y in range(self.n)) for x in range(self.n))

    @cached_property
    def closures(self) -> Tuple[int, ...]:
        """cl{x} = {y : x ∈ U_y}"""
        cl = [0] * self.n
        for y, u in enumerate(self.min_open):
            for x in iter_bits(u):
                cl[x] |= 1 << y
        return tuple(cl)

    @property
    def points(self) -> range:
        return range(self.n)


SpaceTag = Literal["discrete", "indiscrete", "sierpinski", "chain", "point"]


@dataclass(frozen=True)
class NamedSpace:
    """具名空间：构造器标签加规模参数"""
    tag: SpaceTag
    size: int = 1

    def build(self) -> FiniteSpace:
        from topodeck import space
        return space.named(self.tag, self.size)


@dataclass(frozen=True)
class Deck:
    """卡组：所有卡片规范键的有序集合"""
    n: int
    keys: Tuple[CanonicalKey, ...]


@dataclass(frozen=True)
class MultiDeck:
    """多重卡组：(规范键, 出现次数)，按键排序"""
    n: int
    entries: Tuple[Tuple[CanonicalKey, int], ...]

    @property
    def keys(self) -> Tuple[CanonicalKey, ...]:
        return tuple(k for k, _ in self.entries)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.entries)


@dataclass
class DeckClass:
    """卡组相同的一组空间"""
    fingerprint: str
    n: int
    members: List[CanonicalKey] = field(default_factory=list)

    @property
    def is_collision(self) -> bool:
        return len(self.members) >= 2


@dataclass
class CatalogEntry:
    """目录条目"""
    key: CanonicalKey
    space: FiniteSpace
    props: "PropertyVector"


@dataclass
class Catalog:
    """n 点拓扑在同胚意义下的完整目录"""
    n: int
    entries: List[CatalogEntry]
    method: str
    generated_at: str = ""

    @property
    def count(self) -> int:
        return len(self.entries)

    @property
    def keys(self) -> List[CanonicalKey]:
        return [e.key for e in self.entries]

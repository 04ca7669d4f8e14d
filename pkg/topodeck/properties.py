"""
有限空间的拓扑不变量

包括分离公理、孤立点数 i(X)、权 w(X)、稠密度 d(X)、胞腔数、散度，以及连通性数据。
这些量是重构审计的输入。
"""

import itertools
import logging
from typing import Callable, Dict, List

import networkx as nx
from pydantic import BaseModel, ConfigDict

from topodeck.bitset import full_mask, is_subset, iter_bits, popcount
from topodeck.errors import SpaceTooLarge, SpaceTooSmall
from topodeck.model_types import FiniteSpace
from topodeck.space import closed_masks, delete_point, down_closure, open_masks, subspace

logger = logging.getLogger(__name__)

# 需要穷举子集的量只在此规模内计算
BRUTE_FORCE_LIMIT = 8

SpacePredicate = Callable[[FiniteSpace], bool]


class SeparationAxioms(BaseModel):
    """分离公理；t3 以后为累积定义（高阶公理包含 T1）"""
    model_config = ConfigDict(frozen=True)

    t0: bool
    t1: bool
    t2: bool
    regular: bool
    completely_regular: bool
    normal: bool
    hereditarily_normal: bool
    perfectly_normal: bool
    t3: bool
    t3_5: bool
    t4: bool
    t5: bool
    t6: bool


class PropertyVector(BaseModel):
    """一个空间的全部不变量，序列化为扁平 JSON 对象"""
    model_config = ConfigDict(frozen=True)

    size: int
    open_count: int
    t0: bool
    t1: bool
    t2: bool
    regular: bool
    completely_regular: bool
    normal: bool
    hereditarily_normal: bool
    perfectly_normal: bool
    t3: bool
    t3_5: bool
    t4: bool
    t5: bool
    t6: bool
    isolated_count: int
    weight: int
    density: int
    cellularity: int
    spread: int
    connected: bool
    component_count: int
    totally_disconnected: bool
    locally_connected: bool
    locally_totally_disconnected: bool
    dispersion_points: List[int]
    cut_points: List[int]

    def audit_view(self) -> Dict[str, object]:
        """与编号无关的标量视图：点集字段换成其基数"""
        view = self.model_dump(exclude={"dispersion_points", "cut_points"})
        view["dispersion_count"] = len(self.dispersion_points)
        view["cut_point_count"] = len(self.cut_points)
        return view


def _require_small(space: FiniteSpace) -> None:
    if space.n > BRUTE_FORCE_LIMIT:
        raise SpaceTooLarge(space.n, BRUTE_FORCE_LIMIT)


# ---------------------------------------------------------------- 分离公理

def is_t0(space: FiniteSpace) -> bool:
    return len(set(space.min_open)) == space.n


def is_t1(space: FiniteSpace) -> bool:
    return all(u == 1 << x for x, u in enumerate(space.min_open))


def is_t2(space: FiniteSpace) -> bool:
    """不同两点有不交的开邻域；最小开邻域不交即可"""
    return all(
        space.min_open[x] & space.min_open[y] == 0
        for x, y in itertools.combinations(space.points, 2)
    )


def is_regular(space: FiniteSpace) -> bool:
    """点与不含它的闭集可由不交开集分离"""
    for a in closed_masks(space):
        around_a = down_closure(space, a)
        for x in space.points:
            if not (a >> x) & 1 and space.min_open[x] & around_a:
                return False
    return True


def is_completely_regular(space: FiniteSpace) -> bool:
    """不同的最小开集构成点集的一个划分"""
    distinct = set(space.min_open)
    return all(u & v == 0 for u, v in itertools.combinations(distinct, 2))


def completely_regular_by_functions(space: FiniteSpace) -> bool:
    """
    用连续函数分离的穷举判定

    有限空间映到 [0,1] 的连续函数的像是离散的有限集，可以复合成 {0,1} 值函数，
    所以只需枚举 f^{-1}(1) 为既开又闭集的 {0,1} 值函数。
    """
    _require_small(space)
    full = full_mask(space.n)
    opens = set(open_masks(space))
    clopens = [c for c in opens if full & ~c in opens]
    for a in closed_masks(space):
        for x in space.points:
            if (a >> x) & 1:
                continue
            if not any((c >> x) & 1 and c & a == 0 for c in clopens):
                return False
    return True


def is_normal(space: FiniteSpace) -> bool:
    """不交闭集对可由不交开集分离；包含 A 的最小开集是 A 的下闭包"""
    closed = [c for c in closed_masks(space) if c]
    around = {c: down_closure(space, c) for c in closed}
    for i, a in enumerate(closed):
        for b in closed[i + 1:]:
            if a & b == 0 and around[a] & around[b]:
                return False
    return True


def normal_by_points(space: FiniteSpace) -> bool:
    """
    逐点判定正规性

    若不交闭集 A、B 无法分离，则有 z ∈ U_a ∩ U_b，其中 a ∈ A、b ∈ B；此时
    cl{a} ⊆ A 与 cl{b} ⊆ B 同样无法分离。所以正规当且仅当 cl{a} ∩ cl{b} = ∅ 时
    总有 U_a ∩ U_b = ∅。
    """
    up = space.closures
    down = space.min_open
    return all(
        up[a] & up[b] or not down[a] & down[b]
        for a, b in itertools.combinations(space.points, 2)
    )


def is_hereditarily_normal(space: FiniteSpace) -> bool:
    """所有子空间都正规"""
    _require_small(space)
    full = full_mask(space.n)
    for keep in range(1, full + 1):
        if keep.bit_count() < 2:
            continue
        if not normal_by_points(subspace(space, keep)):
            return False
    return True


def is_perfectly_normal(space: FiniteSpace) -> bool:
    """正规且每个闭集都是 G_δ；有限空间中 G_δ 就是开集"""
    if not is_normal(space):
        return False
    opens = set(open_masks(space))
    return all(c in opens for c in closed_masks(space))


def separation_axioms(space: FiniteSpace) -> SeparationAxioms:
    t1 = is_t1(space)
    regular = is_regular(space)
    completely_regular = is_completely_regular(space)
    normal = is_normal(space)
    hereditarily_normal = is_hereditarily_normal(space)
    perfectly_normal = is_perfectly_normal(space)
    return SeparationAxioms(
        t0=is_t0(space),
        t1=t1,
        t2=is_t2(space),
        regular=regular,
        completely_regular=completely_regular,
        normal=normal,
        hereditarily_normal=hereditarily_normal,
        perfectly_normal=perfectly_normal,
        t3=t1 and regular,
        t3_5=t1 and completely_regular,
        t4=t1 and normal,
        t5=t1 and hereditarily_normal,
        t6=t1 and perfectly_normal,
    )


# ---------------------------------------------------------------- 基数不变量

def isolated_points(space: FiniteSpace) -> List[int]:
    return [x for x, u in enumerate(space.min_open) if u == 1 << x]


def isolated_count(space: FiniteSpace) -> int:
    return len(isolated_points(space))


def weight(space: FiniteSpace) -> int:
    """
    不同最小开集 U_x 的个数

    每个 U_x 都不是更小开集的并，任何基都必须包含它们，而 {U_x} 本身是基。
    """
    return len(set(space.min_open))


def _is_base(space: FiniteSpace, family) -> bool:
    for o in open_masks(space):
        covered = 0
        for b in family:
            if is_subset(b, o):
                covered |= b
        if covered != o:
            return False
    return True


def weight_by_base_search(space: FiniteSpace) -> int:
    """按基数递增穷举开集子族，返回最小基的大小"""
    _require_small(space)
    candidates = [o for o in open_masks(space) if o]
    for k in range(1, len(candidates) + 1):
        for family in itertools.combinations(candidates, k):
            if _is_base(space, family):
                return k
    return len(candidates)


def density(space: FiniteSpace) -> int:
    """包含关系下极小的不同 U_x 的个数；每个极小 U_m 取一点即稠密"""
    distinct = set(space.min_open)
    return sum(
        1 for u in distinct
        if not any(v != u and is_subset(v, u) for v in distinct)
    )


def density_by_hitting_set(space: FiniteSpace) -> int:
    """与所有非空开集相交的最小点集（暴力穷举）"""
    _require_small(space)
    targets = [o for o in open_masks(space) if o]
    for k in range(1, space.n + 1):
        for chosen in itertools.combinations(space.points, k):
            hit = sum(1 << p for p in chosen)
            if all(o & hit for o in targets):
                return k
    return space.n


def cellularity(space: FiniteSpace) -> int:
    """两两不交的非空开集族的最大规模（穷举）"""
    _require_small(space)
    opens = [o for o in open_masks(space) if o]
    best = 0

    def extend(start: int, used: int, count: int) -> None:
        nonlocal best
        best = max(best, count)
        if count + popcount(full_mask(space.n) & ~used) <= best:
            return
        for i in range(start, len(opens)):
            if opens[i] & used == 0:
                extend(i + 1, used | opens[i], count + 1)

    extend(0, 0, 0)
    return best


def spread(space: FiniteSpace) -> int:
    """子空间为离散空间的最大子集规模（穷举）"""
    _require_small(space)
    for k in range(space.n, 0, -1):
        for chosen in itertools.combinations(space.points, k):
            keep = sum(1 << p for p in chosen)
            if all(space.min_open[p] & keep == 1 << p for p in chosen):
                return k
    return 1


# ---------------------------------------------------------------- 连通性

def comparability_graph(space: FiniteSpace) -> nx.Graph:
    """可比图：x–y 有边当且仅当 rel(x,y) 或 rel(y,x)"""
    graph = nx.Graph()
    graph.add_nodes_from(space.points)
    for y, u in enumerate(space.min_open):
        graph.add_edges_from((x, y) for x in iter_bits(u) if x != y)
    return graph


def components(space: FiniteSpace) -> List[List[int]]:
    """连通分支，即可比图的连通分支，按最小点排序"""
    parts = [sorted(c) for c in nx.connected_components(comparability_graph(space))]
    return sorted(parts)


def connected(space: FiniteSpace) -> bool:
    return nx.is_connected(comparability_graph(space))


def totally_disconnected(space: FiniteSpace) -> bool:
    return len(components(space)) == space.n


def connected_by_clopens(space: FiniteSpace) -> bool:
    """定义式判定：不存在非空真子集既开又闭"""
    full = full_mask(space.n)
    opens = set(open_masks(space))
    return not any(0 < o < full and full & ~o in opens for o in opens)


def dispersion_points(space: FiniteSpace) -> List[int]:
    """连通空间中删去后剩余部分完全不连通的点"""
    if space.n < 2:
        raise SpaceTooSmall(space.n)
    if not connected(space):
        return []
    return [x for x in space.points if totally_disconnected(delete_point(space, x))]


def cut_points(space: FiniteSpace) -> List[int]:
    """删去后空间不连通的点"""
    if space.n < 2:
        raise SpaceTooSmall(space.n)
    return [x for x in space.points if not connected(delete_point(space, x))]


def locally(space: FiniteSpace, predicate: SpacePredicate) -> bool:
    """
    局部性质：每个 U_x 作为子空间满足 predicate

    有限空间中 U_x 是 x 的最小邻域，所以邻域滤子有满足性质的基当且仅当 U_x 满足。
    """
    verdicts: Dict[int, bool] = {}
    for u in space.min_open:
        if u not in verdicts:
            verdicts[u] = predicate(subspace(space, u))
        if not verdicts[u]:
            return False
    return True


def compute_properties(space: FiniteSpace) -> PropertyVector:
    """计算完整的不变量向量（n ≤ 8）"""
    _require_small(space)
    axioms = separation_axioms(space)
    parts = components(space)
    small = space.n < 2
    return PropertyVector(
        size=space.n,
        open_count=len(open_masks(space)),
        **axioms.model_dump(),
        isolated_count=isolated_count(space),
        weight=weight(space),
        density=density(space),
        cellularity=cellularity(space),
        spread=spread(space),
        connected=len(parts) == 1,
        component_count=len(parts),
        totally_disconnected=len(parts) == space.n,
        locally_connected=locally(space, connected),
        locally_totally_disconnected=locally(space, totally_disconnected),
        dispersion_points=[] if small else dispersion_points(space),
        cut_points=[] if small else cut_points(space),
    )

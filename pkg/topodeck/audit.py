"""
重构审计：按卡组分组、碰撞搜索、性质可重构性判定，以及定理验证套件

定理检查对目录中每个空间及其全部卡片逐一验证。已证明的定理出现失败说明实现有误；
涉及无穷基数约定的结论（权、稠密度）以及尚无定论的问题只作为“有限类比”记录发现。
"""

import logging
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from topodeck.canon import canonical_key, space_from_key
from topodeck.deck import DeckMode, card_keys, fingerprint
from topodeck.enumeration import parallel_map
from topodeck.errors import SpaceTooSmall
from topodeck.model_types import CanonicalKey, Catalog, DeckClass
from topodeck.properties import PropertyVector, compute_properties
from topodeck.space import disjoint_sum, point

logger = logging.getLogger(__name__)

# 检查编号 → (说明, 最小点数)
THEOREM_CHECKS: Dict[str, Tuple[str, int]] = {
    "a": ("X 是 T_i 当且仅当每张卡片是 T_i（i ∈ {0,1,2,3,3½,5,6}）", 3),
    "b": ("所有卡片 T_3 且其中一张 T_4 时 X 是 T_4", 3),
    "c": ("T1 空间孤立点数规则：i(Y) ∈ {i(X)-1, i(X)} 及其分情形公式", 2),
    "d": ("孤立点数为正且有限的 T1 空间可重构，且 X ≅ Y ⊕ 点", 3),
    "g": ("Kline：连通空间至多一个散点；一张卡片完全不连通时其余卡片连通", 3),
    "h": ("X 完全不连通当且仅当每张卡片完全不连通", 3),
    "i": ("多于三点且所有卡片连通则 X 连通；无孤立点且有一张连通卡片则 X 连通", 2),
    "j": ("T1 空间中局部性质（连通、完全不连通）可由卡组判定", 2),
}

ANALOG_CHECKS: Dict[str, Tuple[str, int]] = {
    "e": ("有限类比：w(X) = max w(Y)", 3),
    "f": ("有限类比：d(X) = min d(Y)", 3),
    "k": ("有限类比：X 正规当且仅当每张卡片正规（无 T_3 假设）", 3),
    "l": ("有限类比：非 T1 空间中局部性质可由卡组判定", 3),
}

SEPARATION_FLAGS = ("t0", "t1", "t2", "t3", "t3_5", "t5", "t6")


class ClassRecord(BaseModel):
    fingerprint: str
    members: List[str]
    degenerate: bool = False


class PropertyVerdict(BaseModel):
    scope: str
    reconstructible: bool
    classes_checked: int
    witness: Optional[ClassRecord] = None


class CheckOutcome(BaseModel):
    description: str
    kind: str
    status: str
    examined: int
    failures: int
    witness: Optional[str] = None


class TheoremSuite(BaseModel):
    n: int
    theorems: Dict[str, str]
    analogs: Dict[str, CheckOutcome]
    details: Dict[str, CheckOutcome]

    @property
    def passed(self) -> bool:
        return all(status != "fail" for status in self.theorems.values())


class AuditReport(BaseModel):
    n: int
    mode: str
    degenerate: bool
    classes: List[ClassRecord]
    collisions: List[ClassRecord]
    property_audit: Dict[str, PropertyVerdict]
    theorems: Dict[str, str]
    analogs: Dict[str, CheckOutcome]
    theorem_details: Dict[str, CheckOutcome]


# ---------------------------------------------------------------- 分组与碰撞

def _fingerprint_task(task: Tuple[CanonicalKey, str]) -> str:
    key, mode = task
    return fingerprint(space_from_key(key), mode)


def group_by_deck(catalog: Catalog, mode: DeckMode = "set-deck", workers: int = 1) -> List[DeckClass]:
    """按卡组（或多重卡组）指纹划分目录；类按首个成员的键排序"""
    if catalog.n < 2:
        raise SpaceTooSmall(catalog.n)
    tasks = [(e.key, mode) for e in catalog.entries]
    prints = parallel_map(_fingerprint_task, tasks, workers)
    groups: Dict[str, DeckClass] = {}
    for entry, fp in zip(catalog.entries, prints):
        groups.setdefault(fp, DeckClass(fingerprint=fp, n=catalog.n)).members.append(entry.key)
    classes = sorted(groups.values(), key=lambda c: c.members[0])
    logger.info("n=%d %s: %d 个卡组类", catalog.n, mode, len(classes))
    return classes


def find_collisions(
    catalog: Catalog,
    mode: DeckMode = "set-deck",
    workers: int = 1,
    classes: Optional[Sequence[DeckClass]] = None,
) -> List[DeckClass]:
    """
    成员不少于两个的卡组类，即不可重构空间的见证

    n = 2 时三个空间共享卡组 {点}，这是已知的退化情形，由报告单独标注。
    """
    if classes is None:
        classes = group_by_deck(catalog, mode, workers)
    return [c for c in classes if c.is_collision]


def _record(cls: DeckClass) -> ClassRecord:
    return ClassRecord(
        fingerprint=cls.fingerprint,
        members=[k.hex() for k in cls.members],
        degenerate=cls.n == 2,
    )


# ---------------------------------------------------------------- 性质审计

def property_audit(
    catalog: Catalog,
    mode: DeckMode = "set-deck",
    workers: int = 1,
    classes: Optional[Sequence[DeckClass]] = None,
) -> Dict[str, PropertyVerdict]:
    """
    对每个不变量，检查它在每个碰撞类内是否取常值

    isolated_count 另外在 T1 成员范围内单独判定。
    """
    collisions = find_collisions(catalog, mode, workers, classes)
    views = {e.key: e.props.audit_view() for e in catalog.entries}
    t1 = {e.key: e.props.t1 for e in catalog.entries}
    fields = list(next(iter(views.values())).keys()) if views else []

    def verdict(name: str, scope: str, members_of) -> PropertyVerdict:
        checked = 0
        for cls in collisions:
            members = members_of(cls)
            if len(members) < 2:
                continue
            checked += 1
            if len({views[k][name] for k in members}) > 1:
                witness = DeckClass(fingerprint=cls.fingerprint, n=cls.n, members=list(members))
                return PropertyVerdict(scope=scope, reconstructible=False, classes_checked=checked, witness=_record(witness))
        return PropertyVerdict(scope=scope, reconstructible=True, classes_checked=checked)

    table = {name: verdict(name, "all", lambda c: c.members) for name in fields}
    table["isolated_count[t1]"] = verdict(
        "isolated_count", "t1", lambda c: [k for k in c.members if t1[k]]
    )
    return table


# ---------------------------------------------------------------- 定理套件

@lru_cache(maxsize=None)
def card_properties(key: CanonicalKey) -> PropertyVector:
    """卡片不变量，按规范键缓存"""
    return compute_properties(space_from_key(key))


def _implies(hypothesis: bool, conclusion: bool) -> Optional[bool]:
    """假设不成立时返回 None（不计入检查）"""
    return conclusion if hypothesis else None


def _isolated_rules(x: PropertyVector, cards: Sequence[PropertyVector]) -> bool:
    i = x.isolated_count
    values = {c.isolated_count for c in cards}
    if not values <= {i - 1, i}:
        return False
    if len(values) > 1:
        return i == max(values)
    m = values.pop()
    return i == (0 if m == 0 else m + 1)


def _kline(x: PropertyVector, cards: Sequence[PropertyVector]) -> bool:
    if len(x.dispersion_points) > 1:
        return False
    for p, card in enumerate(cards):
        if card.totally_disconnected:
            if not all(other.connected for q, other in enumerate(cards) if q != p):
                return False
    return True


def _splits_off_isolated_point(key: CanonicalKey, x: PropertyVector, keys: Sequence[CanonicalKey], cards: Sequence[PropertyVector]) -> bool:
    """存在 i(Y) = i(X) - 1 的卡片 Y，使 Y ⊕ 点 ≅ X"""
    for card_key, card in zip(keys, cards):
        if card.isolated_count == x.isolated_count - 1:
            if canonical_key(disjoint_sum(space_from_key(card_key), point())) == key:
                return True
    return False


def evaluate_space(task: Tuple[CanonicalKey, PropertyVector]) -> Dict[str, Optional[bool]]:
    """
    对单个空间运行全部检查

    返回 检查编号 → True（成立）/ False（反例）/ None（不适用）。
    检查 d 中“碰撞类只含自身”这一半由 theorem_suite 在分组后补充。
    """
    key, x = task
    n = x.size
    results: Dict[str, Optional[bool]] = {c: None for c in (*THEOREM_CHECKS, *ANALOG_CHECKS)}
    if n < 2:
        return results
    keys = card_keys(space_from_key(key))
    cards = [card_properties(k) for k in keys]

    def every(flag: str) -> bool:
        return all(getattr(c, flag) for c in cards)

    def some(flag: str) -> bool:
        return any(getattr(c, flag) for c in cards)

    if x.t1:
        results["c"] = _isolated_rules(x, cards)
        results["j"] = (
            x.locally_connected == every("locally_connected")
            and x.locally_totally_disconnected == every("locally_totally_disconnected")
        )
    part_two = _implies(x.isolated_count == 0 and some("connected"), x.connected)
    if n >= 4:
        part_one = _implies(every("connected"), x.connected)
        outcomes = [r for r in (part_one, part_two) if r is not None]
        results["i"] = all(outcomes) if outcomes else None
    else:
        results["i"] = part_two

    if n < 3:
        return results

    results["a"] = all(getattr(x, flag) == every(flag) for flag in SEPARATION_FLAGS)
    results["b"] = _implies(every("t3") and some("t4"), x.t4)
    if x.t1 and x.isolated_count > 0:
        results["d"] = _splits_off_isolated_point(key, x, keys, cards)
    results["g"] = _implies(x.connected, _kline(x, cards))
    results["h"] = x.totally_disconnected == every("totally_disconnected")
    results["e"] = x.weight == max(c.weight for c in cards)
    results["f"] = x.density == min(c.density for c in cards)
    results["k"] = x.normal == every("normal")
    if not x.t1:
        results["l"] = (
            x.locally_connected == every("locally_connected")
            and x.locally_totally_disconnected == every("locally_totally_disconnected")
        )
    return results


def _outcome(description: str, kind: str, verdicts: Sequence[Tuple[CanonicalKey, Optional[bool]]]) -> CheckOutcome:
    applicable = [(k, v) for k, v in verdicts if v is not None]
    failed = [k for k, v in applicable if not v]
    if not applicable:
        status = "skip"
    elif kind == "theorem":
        status = "fail" if failed else "pass"
    else:
        status = "counterexample" if failed else "holds"
    return CheckOutcome(
        description=description,
        kind=kind,
        status=status,
        examined=len(applicable),
        failures=len(failed),
        witness=failed[0].hex() if failed else None,
    )


def theorem_suite(catalog: Catalog, workers: int = 1, classes: Optional[Sequence[DeckClass]] = None) -> TheoremSuite:
    """在整个目录上运行定理检查 (a)–(d)、(g)–(j) 与有限类比 (e)、(f)、(k)、(l)"""
    tasks = [(e.key, e.props) for e in catalog.entries]
    per_space = parallel_map(evaluate_space, tasks, workers)

    # 检查 d 的另一半：这样的空间所在的卡组类只有它自己
    if catalog.n >= 3:
        if classes is None:
            classes = group_by_deck(catalog, "set-deck", workers)
        class_size = {k: len(c.members) for c in classes for k in c.members}
        for (key, _), results in zip(tasks, per_space):
            if results["d"] is not None:
                results["d"] = results["d"] and class_size[key] == 1

    details: Dict[str, CheckOutcome] = {}
    for check, (description, min_n) in THEOREM_CHECKS.items():
        verdicts = [(key, r[check]) for (key, _), r in zip(tasks, per_space)] if catalog.n >= min_n else []
        details[check] = _outcome(description, "theorem", verdicts)
    analogs: Dict[str, CheckOutcome] = {}
    for check, (description, min_n) in ANALOG_CHECKS.items():
        verdicts = [(key, r[check]) for (key, _), r in zip(tasks, per_space)] if catalog.n >= min_n else []
        analogs[check] = _outcome(description, "finite-analog", verdicts)

    for check, outcome in details.items():
        if outcome.status == "fail":
            logger.error("定理检查 (%s) 失败，反例 %s", check, outcome.witness)
    return TheoremSuite(
        n=catalog.n,
        theorems={check: outcome.status for check, outcome in details.items()},
        analogs=analogs,
        details=details,
    )


def run_audit(catalog: Catalog, mode: DeckMode = "set-deck", workers: int = 1) -> AuditReport:
    """完整审计：分组、碰撞、性质判定与定理套件"""
    classes = group_by_deck(catalog, mode, workers)
    collisions = find_collisions(catalog, mode, workers, classes)
    set_classes = classes if mode == "set-deck" else group_by_deck(catalog, "set-deck", workers)
    suite = theorem_suite(catalog, workers, set_classes)
    if catalog.n == 2:
        logger.info("n=2 为退化情形：所有 2 点空间共享卡组 {点}")
    else:
        logger.info("n=%d %s: %d 个碰撞类", catalog.n, mode, len(collisions))
    return AuditReport(
        n=catalog.n,
        mode=mode,
        degenerate=catalog.n == 2,
        classes=[_record(c) for c in classes],
        collisions=[_record(c) for c in collisions],
        property_audit=property_audit(catalog, mode, workers, classes),
        theorems=suite.theorems,
        analogs=suite.analogs,
        theorem_details=suite.details,
    )

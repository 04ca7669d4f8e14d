"""
topodeck 的异常定义

所有异常的字符串形式都以类名开头，命令行直接输出即可指明错误类型。
"""

from typing import Optional, Sequence


class TopoDeckError(Exception):
    """topodeck 异常基类"""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def __str__(self) -> str:
        return f"{type(self).__name__}: {self.detail}"


class SpaceValidationError(TopoDeckError):
    """输入的空间不合法"""


def _fmt(points: Sequence[int]) -> str:
    return "{" + ",".join(str(p) for p in points) + "}"


class MissingEmptyOrFull(SpaceValidationError):
    def __init__(self, n: int, missing_empty: bool, missing_full: bool):
        parts = []
        if missing_empty:
            parts.append("空集")
        if missing_full:
            parts.append(f"全集 {_fmt(range(n))}")
        super().__init__(f"开集族缺少{'和'.join(parts)}")
        self.missing_empty = missing_empty
        self.missing_full = missing_full


class NotUnionClosed(SpaceValidationError):
    def __init__(self, a: Sequence[int], b: Sequence[int]):
        super().__init__(f"{_fmt(a)} ∪ {_fmt(b)} 不在开集族中")
        self.witness = (list(a), list(b))


class NotIntersectionClosed(SpaceValidationError):
    def __init__(self, a: Sequence[int], b: Sequence[int]):
        super().__init__(f"{_fmt(a)} ∩ {_fmt(b)} 不在开集族中")
        self.witness = (list(a), list(b))


class NotAPreorder(SpaceValidationError):
    """关系矩阵不自反或不传递"""

    def __init__(self, x: int, y: int, z: Optional[int] = None):
        if z is None:
            detail = f"rel({x},{x}) 不成立，关系不自反"
        else:
            detail = f"rel({x},{y}) 与 rel({y},{z}) 成立但 rel({x},{z}) 不成立"
        super().__init__(detail)
        self.witness = (x, y, z)


class PointOutOfRange(SpaceValidationError):
    def __init__(self, x: int, n: int):
        super().__init__(f"点 {x} 不在 0..{n - 1} 范围内")
        self.point = x
        self.n = n


class SpaceTooSmall(SpaceValidationError):
    def __init__(self, n: int, needed: int = 2):
        super().__init__(f"空间只有 {n} 个点，至少需要 {needed} 个")
        self.n = n


class SpaceTooLarge(SpaceValidationError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"空间有 {n} 个点，超过上限 {limit}")
        self.n = n
        self.limit = limit


class ScaleUnsupported(TopoDeckError):
    """请求的规模超出支持范围"""

    def __init__(self, n: int, lo: int, hi: int):
        super().__init__(f"n={n} 不受支持，支持范围为 {lo}..{hi}")
        self.n = n


class CatalogError(TopoDeckError):
    """目录文件格式错误、被截断或内部不一致"""


class StorageError(TopoDeckError):
    """读写文件失败"""

"""
topodeck 的文件存储模块

空间与报告保存为单个 JSON 文档；目录保存为 JSON Lines，首行为头部。
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, ValidationError, model_validator

from topodeck.canon import canonical_key, key_from_hex
from topodeck.errors import CatalogError, SpaceValidationError, StorageError
from topodeck.model_types import Catalog, CatalogEntry, FiniteSpace
from topodeck.properties import PropertyVector
from topodeck.space import from_preorder, open_sets_as_lists, to_space, validate

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class SpaceDocument(BaseModel):
    """空间 JSON：{"n", "opens"} 或 {"n", "preorder"}"""
    n: int
    opens: Optional[List[List[int]]] = None
    preorder: Optional[List[List[int]]] = None

    @model_validator(mode="after")
    def _one_form(self):
        if (self.opens is None) == (self.preorder is None):
            raise ValueError("必须且只能提供 opens 或 preorder 之一")
        return self


class CatalogHeader(BaseModel):
    n: int
    method: str
    count: int


class CatalogLine(BaseModel):
    key: str
    space: SpaceDocument
    props: PropertyVector


def space_to_document(space: FiniteSpace) -> SpaceDocument:
    """写出时总是使用规范化的 opens 形式"""
    return SpaceDocument(n=space.n, opens=open_sets_as_lists(space))


def space_from_document(doc: SpaceDocument) -> FiniteSpace:
    if doc.opens is not None:
        return to_space(validate(doc.opens, doc.n))
    if len(doc.preorder) != doc.n:
        raise SpaceValidationError(f"preorder 有 {len(doc.preorder)} 行，而 n={doc.n}")
    return from_preorder(doc.preorder)


def _read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise StorageError(f"读取 {path} 时出错: {e}") from e


def _write_text(path: PathLike, text: str) -> None:
    try:
        target = Path(path)
        if target.parent and not target.parent.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise StorageError(f"写入 {path} 时出错: {e}") from e


def read_space(path: PathLike) -> FiniteSpace:
    """读取并校验空间 JSON 文件"""
    text = _read_text(path)
    try:
        doc = SpaceDocument.model_validate_json(text)
    except ValidationError as e:
        raise SpaceValidationError(f"{path} 不是合法的空间 JSON: {e.errors()[0]['msg']}") from e
    return space_from_document(doc)


def write_space(space: FiniteSpace, path: PathLike) -> None:
    _write_text(path, space_to_document(space).model_dump_json(exclude_none=True) + "\n")


def write_catalog(catalog: Catalog, path: PathLike) -> None:
    """写出 JSONL 目录：头部一行，其后每个同胚类一行"""
    header = CatalogHeader(n=catalog.n, method=catalog.method, count=catalog.count)
    lines = [header.model_dump_json()]
    for entry in catalog.entries:
        line = CatalogLine(key=entry.key.hex(), space=space_to_document(entry.space), props=entry.props)
        lines.append(line.model_dump_json(exclude_none=True))
    _write_text(path, "\n".join(lines) + "\n")
    logger.info("目录已写入 %s（%d 个条目）", path, catalog.count)


def read_catalog(path: PathLike) -> Catalog:
    """
    读取 JSONL 目录并检查内部一致性

    头部计数必须为正且与条目数一致，键严格递增，且每个代表空间的规范键等于其键。
    """
    lines = [line for line in _read_text(path).splitlines() if line.strip()]
    if not lines:
        raise CatalogError(f"{path} 为空")
    try:
        header = CatalogHeader.model_validate_json(lines[0])
    except ValidationError as e:
        raise CatalogError(f"{path} 第 1 行不是合法的目录头部") from e
    if header.count < 1:
        raise CatalogError(f"{path} 头部声明 {header.count} 个条目，目录不能为空")

    entries: List[CatalogEntry] = []
    previous = None
    for number, line in enumerate(lines[1:], start=2):
        try:
            record = CatalogLine.model_validate_json(line)
            key = key_from_hex(record.key)
            space = space_from_document(record.space)
        except (ValidationError, ValueError, SpaceValidationError) as e:
            raise CatalogError(f"{path} 第 {number} 行无法解析: {e}") from e
        if space.n != header.n or record.props.size != header.n:
            raise CatalogError(f"{path} 第 {number} 行的点数与头部 n={header.n} 不符")
        if previous is not None and key <= previous:
            raise CatalogError(f"{path} 第 {number} 行的键未严格递增")
        if canonical_key(space) != key:
            raise CatalogError(f"{path} 第 {number} 行的代表空间与键 {record.key} 不符")
        entries.append(CatalogEntry(key=key, space=space, props=record.props))
        previous = key

    if len(entries) != header.count:
        raise CatalogError(f"{path} 头部声明 {header.count} 个条目，实际读到 {len(entries)} 个")
    return Catalog(n=header.n, entries=entries, method=header.method)


def dump_document(document: Union[BaseModel, dict]) -> str:
    """单个 JSON 文档的文本形式"""
    if isinstance(document, BaseModel):
        return document.model_dump_json(indent=2)
    return json.dumps(document, ensure_ascii=False, indent=2)


def write_report(document: Union[BaseModel, dict], path: Optional[PathLike] = None) -> str:
    """写出报告；path 为空时只返回文本"""
    text = dump_document(document)
    if path is not None:
        _write_text(path, text + "\n")
        logger.info("报告已写入 %s", path)
    return text

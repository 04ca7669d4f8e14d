import json

import pytest

from topodeck import space as sp
from topodeck.errors import CatalogError, NotAPreorder, NotUnionClosed, SpaceValidationError, StorageError
from topodeck.storage import (
    SpaceDocument,
    dump_document,
    read_catalog,
    read_space,
    space_from_document,
    write_catalog,
    write_report,
    write_space,
)


def _write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_space_round_trip(tmp_path, star):
    path = tmp_path / "star.json"
    write_space(star, path)
    assert read_space(path) == star
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc == {"n": 3, "opens": [[], [0], [0, 1], [0, 2], [0, 1, 2]]}


def test_read_preorder_form(tmp_path):
    path = _write_json(tmp_path / "s.json", {"n": 2, "preorder": [[1, 1], [0, 1]]})
    assert read_space(path) == sp.sierpinski()


def test_read_rejects_invalid_family(tmp_path):
    path = _write_json(tmp_path / "bad.json", {"n": 2, "opens": [[], [0], [1]]})
    with pytest.raises(NotUnionClosed) as info:
        read_space(path)
    assert str(info.value).startswith("NotUnionClosed")


def test_read_rejects_non_transitive_preorder(tmp_path):
    path = _write_json(tmp_path / "bad.json", {"n": 3, "preorder": [[1, 1, 0], [0, 1, 1], [0, 0, 1]]})
    with pytest.raises(NotAPreorder):
        read_space(path)


@pytest.mark.parametrize("data", [
    {"n": 2},
    {"n": 2, "opens": [[], [0, 1]], "preorder": [[1, 1], [1, 1]]},
    {"opens": [[]]},
    [1, 2, 3],
])
def test_read_rejects_malformed_documents(tmp_path, data):
    path = _write_json(tmp_path / "bad.json", data)
    with pytest.raises(SpaceValidationError):
        read_space(path)


def test_preorder_row_count_must_match():
    with pytest.raises(SpaceValidationError):
        space_from_document(SpaceDocument(n=3, preorder=[[1, 1], [0, 1]]))


def test_missing_file_is_a_storage_error(tmp_path):
    with pytest.raises(StorageError):
        read_space(tmp_path / "missing.json")


def test_catalog_round_trip(tmp_path, catalog_of):
    path = tmp_path / "c3.jsonl"
    write_catalog(catalog_of(3), path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert json.loads(lines[0]) == {"n": 3, "method": "poset-multiplicity", "count": 9}
    assert len(lines) == 10
    loaded = read_catalog(path)
    assert loaded.keys == catalog_of(3).keys
    assert [e.props for e in loaded.entries] == [e.props for e in catalog_of(3).entries]


def test_catalog_output_is_stable(tmp_path, catalog_of):
    write_catalog(catalog_of(4), tmp_path / "a.jsonl")
    write_catalog(read_catalog(tmp_path / "a.jsonl"), tmp_path / "b.jsonl")
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()


def test_truncated_catalog(tmp_path, catalog_of):
    path = tmp_path / "c3.jsonl"
    write_catalog(catalog_of(3), path)
    lines = path.read_text(encoding="utf-8").splitlines()
    path.write_text("\n".join(lines[:-2]) + "\n", encoding="utf-8")
    with pytest.raises(CatalogError):
        read_catalog(path)


def test_cut_line_is_rejected(tmp_path, catalog_of):
    path = tmp_path / "c3.jsonl"
    write_catalog(catalog_of(3), path)
    text = path.read_text(encoding="utf-8")
    path.write_text(text[: len(text) // 2], encoding="utf-8")
    with pytest.raises(CatalogError):
        read_catalog(path)


def test_mismatched_key_is_rejected(tmp_path, catalog_of):
    path = tmp_path / "c2.jsonl"
    write_catalog(catalog_of(2), path)
    lines = path.read_text(encoding="utf-8").splitlines()
    first, second = json.loads(lines[1]), json.loads(lines[2])
    first["space"], second["space"] = second["space"], first["space"]
    lines[1], lines[2] = json.dumps(first), json.dumps(second)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(CatalogError):
        read_catalog(path)


def test_unsorted_keys_are_rejected(tmp_path, catalog_of):
    path = tmp_path / "c2.jsonl"
    write_catalog(catalog_of(2), path)
    lines = path.read_text(encoding="utf-8").splitlines()
    lines[1], lines[2] = lines[2], lines[1]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(CatalogError):
        read_catalog(path)


def test_empty_catalog_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("", encoding="utf-8")
    with pytest.raises(CatalogError):
        read_catalog(path)


def test_write_report(tmp_path):
    text = write_report({"n": 2, "名称": "报告"}, tmp_path / "out" / "r.json")
    assert json.loads((tmp_path / "out" / "r.json").read_text(encoding="utf-8")) == {"n": 2, "名称": "报告"}
    assert text == dump_document({"n": 2, "名称": "报告"})
    assert write_report({"n": 1}) == dump_document({"n": 1})


def test_catalog_without_entries_is_rejected(tmp_path):
    path = tmp_path / "c0.jsonl"
    path.write_text(json.dumps({"n": 3, "method": "poset-multiplicity", "count": 0}) + "\n", encoding="utf-8")
    with pytest.raises(CatalogError):
        read_catalog(path)

# test/test_loader.py
import json

import pytest

from catalog.loader import describe, load_catalog
from util.errors import HypothesisError, SchemaError

TORI = ["cat-map", "fibonacci", "cat-3-1", "gauss", "identity", "shear", "elliptic-id"]


def write(tmp_path, payload):
    path = tmp_path / "catalog.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_bundled_catalog(catalog):
    assert [e.label for e in catalog.tori()] == TORI
    assert "e10-coxeter" in catalog.labels()
    assert catalog.get("toy-43").kind == "hodge"


def test_unknown_label(catalog):
    with pytest.raises(SchemaError, match="unknown instance"):
        catalog.get("nope")
    with pytest.raises(SchemaError):
        catalog.get(None)


def test_plain_list_is_accepted(tmp_path):
    cat = load_catalog(write(tmp_path, [{"type": "torus", "label": "t", "A": [[2, 1], [1, 1]]}]))
    assert cat.labels() == ["t"]


@pytest.mark.parametrize(
    "entries",
    [
        [{"type": "torus", "label": "t"}],
        [{"type": "sphere", "label": "s"}],
        [{"type": "torus", "A": [[1]]}],
        [{"type": "torus", "label": "t", "A": [[1]]}, {"type": "torus", "label": "t", "A": [[1]]}],
        [{"type": "cartesian", "label": "c", "factors": ["a", "b"]}],
        [{"type": "hodge", "label": "h", "action": {"dim": 1, "blocks": [{"r": 0, "s": 0}]}}],
        [{"type": "hodge", "label": "h", "action": {"dim": 2, "blocks": 5}}],
        [{"type": "hodge", "label": "h", "action": [1, 2]}],
        [{"type": "hodge", "label": "h", "action": {"dim": 1, "blocks": [{"r": 0, "s": 0, "re": 5}]}}],
        [{"type": "coxeter", "label": "x", "nodes": None, "edges": []}],
        [{"type": "coxeter", "label": "x", "nodes": 3, "edges": 7}],
        [{"type": "coxeter", "label": "x", "nodes": 3, "edges": [[0, None]]}],
        [{"type": "coxeter", "label": "x", "nodes": 2, "edges": [[0, 1]], "order": [5]}],
    ],
)
def test_malformed_entries(tmp_path, entries):
    with pytest.raises(SchemaError):
        load_catalog(write(tmp_path, {"instances": entries}))


def test_top_level_must_list_instances(tmp_path):
    with pytest.raises(SchemaError):
        load_catalog(write(tmp_path, {"entries": []}))
    with pytest.raises(SchemaError):
        load_catalog(write(tmp_path, "catalog"))


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(json.JSONDecodeError):
        load_catalog(path)


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_catalog(tmp_path / "absent.json")


def test_non_isometry_entry(tmp_path):
    entry = {"type": "isometry", "label": "bad", "M": [[2, 0], [0, 1]], "G": [[1, 0], [0, -1]]}
    with pytest.raises(HypothesisError):
        load_catalog(write(tmp_path, [entry]))


def test_describe_torus(catalog):
    info = describe(catalog.get("cat-map"))
    assert info["det"] == ["1/1", "0/1"]
    assert info["hyperbolic"] is True
    assert info["hodge_numbers"]["1,1"] == 4
    assert info["A_real"][0] == [2, 0, 1, 0]


def test_describe_lattice(catalog):
    info = describe(catalog.get("e10-coxeter"))
    assert info["fragment"] is True
    assert info["rank"] == 10
    assert info["signature"] == [1, 9]
    assert info["hodge_numbers"] == {"1,1": 10}

# catalog/loader.py

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from catalog.cartesian import cartesian_action
from catalog.isometry import (
    LatticeIsometry,
    coxeter_isometry,
    gram_from_edges,
    isometry_action,
    lattice_isometry,
    signature,
)
from catalog.torus import TorusAutomorphism, torus_from_matrix
from cohomology.hodge import HodgeAction, format_rational
from cohomology.spectrum import Numerics
from util.errors import SchemaError

LOG = logging.getLogger("kahlermix.catalog")

ENTRY_TYPES = ("torus", "isometry", "coxeter", "hodge", "cartesian")


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    kind: str
    label: str
    action: HodgeAction
    torus: Optional[TorusAutomorphism] = None
    isometry: Optional[LatticeIsometry] = None
    raw: dict = field(default_factory=dict, repr=False)


@dataclass
class Catalog:
    path: str
    entries: Dict[str, CatalogEntry] = field(default_factory=dict)

    def labels(self) -> List[str]:
        return list(self.entries)

    def get(self, label: Optional[str]) -> CatalogEntry:
        if not label:
            raise SchemaError("an --instance label is required")
        try:
            return self.entries[label]
        except KeyError:
            raise SchemaError(
                f"unknown instance '{label}' (known: {', '.join(self.entries)})"
            ) from None

    def tori(self) -> List[CatalogEntry]:
        return [e for e in self.entries.values() if e.torus is not None]


def _require(raw: dict, key: str, label: str):
    if key not in raw:
        raise SchemaError(f"catalog entry '{label}' is missing '{key}'")
    return raw[key]


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _require_list(raw: dict, key: str, label: str) -> list:
    value = _require(raw, key, label)
    if not isinstance(value, list):
        raise SchemaError(
            f"catalog entry '{label}': '{key}' must be a list, got {type(value).__name__}"
        )
    return value


def parse_entry(raw: dict, known: Dict[str, CatalogEntry], numerics: Numerics) -> CatalogEntry:
    if not isinstance(raw, dict):
        raise SchemaError(f"catalog entries are objects, got {type(raw).__name__}")
    kind = raw.get("type")
    label = raw.get("label")
    if kind not in ENTRY_TYPES:
        raise SchemaError(f"entry '{label}': type must be one of {ENTRY_TYPES}")
    if not isinstance(label, str) or not label:
        raise SchemaError("every catalog entry needs a non-empty string label")
    if label in known:
        raise SchemaError(f"duplicate catalog label '{label}'")

    if kind == "torus":
        T = torus_from_matrix(_require(raw, "A", label), label, numerics)
        return CatalogEntry(kind, label, T.hodge, torus=T, raw=raw)
    if kind == "isometry":
        L = lattice_isometry(_require(raw, "M", label), _require(raw, "G", label), label)
        return CatalogEntry(kind, label, isometry_action(L), isometry=L, raw=raw)
    if kind == "coxeter":
        if "G" in raw:
            G = raw["G"]
        else:
            nodes, diagonal = _require(raw, "nodes", label), raw.get("diagonal", -2)
            if not _is_int(nodes) or nodes < 1:
                raise SchemaError(f"entry '{label}': 'nodes' must be a positive integer")
            if not _is_int(diagonal):
                raise SchemaError(f"entry '{label}': 'diagonal' must be an integer")
            edges = _require_list(raw, "edges", label)
            if not all(isinstance(e, list) and len(e) == 2 for e in edges):
                raise SchemaError(f"entry '{label}': edges are [i, j] pairs")
            G = gram_from_edges(nodes, edges, diagonal)
        order = raw.get("order", [])
        if not isinstance(order, list) or not all(_is_int(i) for i in order):
            raise SchemaError(f"entry '{label}': 'order' must be a list of node indices")
        L = coxeter_isometry(G, order, label)
        return CatalogEntry(kind, label, isometry_action(L), isometry=L, raw=raw)
    if kind == "hodge":
        action = _require(raw, "action", label)
        if not isinstance(action, dict):
            raise SchemaError(f"entry '{label}': 'action' must be an object")
        data = dict(action)
        data["label"] = label
        return CatalogEntry(kind, label, HodgeAction.from_json(data), raw=raw)

    factors = _require(raw, "factors", label)
    if not isinstance(factors, list) or len(factors) != 2 or not all(isinstance(f, str) for f in factors):
        raise SchemaError(f"entry '{label}': 'factors' lists two earlier labels")
    missing = [f for f in factors if f not in known]
    if missing:
        raise SchemaError(f"entry '{label}': unknown factors {missing} (define them first)")
    H = cartesian_action(known[factors[0]].action, known[factors[1]].action, label)
    return CatalogEntry(kind, label, H, raw=raw)


def load_catalog(path, numerics: Numerics = Numerics()) -> Catalog:
    """Read and validate a catalog file; OSError and JSONDecodeError propagate."""
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    if isinstance(data, dict):
        items = data.get("instances")
        if not isinstance(items, list):
            raise SchemaError("catalog object must carry an 'instances' list")
    elif isinstance(data, list):
        items = data
    else:
        raise SchemaError("catalog must be a list of entries")
    catalog = Catalog(str(path))
    for i, raw in enumerate(items):
        try:
            entry = parse_entry(raw, catalog.entries, numerics)
        except TypeError as e:
            raise SchemaError(f"catalog entry {i}: malformed value ({e})") from e
        catalog.entries[entry.label] = entry
    LOG.info("Catalog %s: %d instances", Path(path).name, len(catalog.entries))
    return catalog


def describe(entry: CatalogEntry) -> dict:
    """Derived invariants of one entry (exact data only)."""
    H = entry.action
    out = {
        "type": entry.kind,
        "label": entry.label,
        "dim": H.dim,
        "fragment": H.fragment,
        "hodge_numbers": {f"{r},{s}": H.hodge_number(r, s) for r, s in H.bidegrees()},
    }
    if entry.torus is not None:
        T = entry.torus
        det = T.determinant()
        out["det"] = [format_rational(det.x), format_rational(det.y)]
        out["hyperbolic"] = T.hyperbolic
        out["A_real"] = [list(row) for row in T.A_real]
    if entry.isometry is not None:
        L = entry.isometry
        pos, neg, _ = signature(L.G)
        out["rank"] = L.rank
        out["signature"] = [pos, neg]
        out["isometry_holds"] = True
    return out

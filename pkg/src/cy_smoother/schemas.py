"""JSON inputs and outputs.

Degeneration files look like

    {"k3": {"gram": [[4]], "classes": ["h"], "polarization": [1]},
     "Y1": {"base": "P3", "centers": [[5]]},
     "Y2": {"base": "P3", "centers": [[3]]}}

with component bases resolved against the Fano catalog (the base must
have b2 = 1).  Cubic tensors are {"rank": 3, "entries": {"111": 2, ...}}
with symmetric completion applied on load; for ranks above 9 the index
keys are comma-separated.  All emitted JSON is deterministic: sorted
keys, fixed indentation, trailing newline.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .catalog import FanoFamily, find_family
from .components import BlownComponent, build_component
from .exact_lattice import IntMatrix
from .invariant_forms import CubicTensor
from .smoothing import NormalCrossingModel, SmoothingReport
from .surface import K3Model


class SchemaError(ValueError):
    """Input does not match the expected schema; message carries the location."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__("%s: %s" % (location, message) if location else message)


def _expect(cond: bool, message: str, location: str):
    if not cond:
        raise SchemaError(message, location)


def _int_list(raw, location: str) -> list[int]:
    _expect(isinstance(raw, list), "expected a list of integers", location)
    out = []
    for i, v in enumerate(raw):
        _expect(isinstance(v, int) and not isinstance(v, bool),
                "expected an integer", "%s[%d]" % (location, i))
        out.append(v)
    return out


def parse_k3(raw, location: str = "k3") -> K3Model:
    _expect(isinstance(raw, dict), "expected an object", location)
    for key in ("gram", "classes", "polarization"):
        _expect(key in raw, "missing field %r" % key, location)
    gram_rows = raw["gram"]
    _expect(isinstance(gram_rows, list) and gram_rows, "gram must be a nonempty matrix",
            location + ".gram")
    rows = [_int_list(r, "%s.gram[%d]" % (location, i)) for i, r in enumerate(gram_rows)]
    n = len(rows)
    _expect(all(len(r) == n for r in rows), "gram must be square", location + ".gram")
    classes = raw["classes"]
    _expect(
        isinstance(classes, list) and all(isinstance(c, str) for c in classes),
        "classes must be a list of strings",
        location + ".classes",
    )
    pol = _int_list(raw["polarization"], location + ".polarization")
    try:
        return K3Model(IntMatrix.from_rows(rows), tuple(classes), tuple(pol))
    except ValueError as exc:
        raise SchemaError(str(exc), location) from exc


def parse_component(
    raw, k3: K3Model, catalog: Iterable[FanoFamily], location: str
) -> BlownComponent:
    _expect(isinstance(raw, dict), "expected an object", location)
    _expect("base" in raw, "missing field 'base'", location)
    _expect(isinstance(raw["base"], str), "base must be a catalog id string",
            location + ".base")
    try:
        family = find_family(catalog, raw["base"])
    except ValueError as exc:
        raise SchemaError(str(exc), location + ".base") from exc
    centers_raw = raw.get("centers", [])
    _expect(isinstance(centers_raw, list), "centers must be a list of vectors",
            location + ".centers")
    centers = [
        _int_list(c, "%s.centers[%d]" % (location, i)) for i, c in enumerate(centers_raw)
    ]
    try:
        return build_component(family.as_base(), k3, centers)
    except ValueError as exc:
        raise SchemaError(str(exc), location) from exc


def parse_degeneration(raw, catalog: Iterable[FanoFamily]) -> NormalCrossingModel:
    _expect(isinstance(raw, dict), "expected a top-level object", "$")
    for key in ("k3", "Y1", "Y2"):
        _expect(key in raw, "missing field %r" % key, "$")
    k3 = parse_k3(raw["k3"], "k3")
    y1 = parse_component(raw["Y1"], k3, catalog, "Y1")
    y2 = parse_component(raw["Y2"], k3, catalog, "Y2")
    try:
        return NormalCrossingModel(y1, y2)
    except ValueError as exc:
        raise SchemaError(str(exc), "$") from exc


def load_degeneration(path, catalog: Iterable[FanoFamily]) -> NormalCrossingModel:
    return parse_degeneration(_load_json(path), catalog)


def degeneration_to_dict(model: NormalCrossingModel) -> dict:
    k3 = model.k3
    return {
        "k3": {
            "gram": k3.gram.to_rows(),
            "classes": list(k3.class_names),
            "polarization": list(k3.polarization),
        },
        "Y1": {
            "base": model.y1.base.name,
            "centers": [list(c) for c in model.y1.centers],
        },
        "Y2": {
            "base": model.y2.base.name,
            "centers": [list(c) for c in model.y2.centers],
        },
    }


def _entry_key(idx: tuple[int, ...]) -> str:
    if max(idx) <= 9:
        return "".join(str(i) for i in idx)
    return ",".join(str(i) for i in idx)


def _parse_entry_key(key: str, location: str) -> tuple[int, ...]:
    try:
        if "," in key:
            parts = tuple(int(p) for p in key.split(","))
        else:
            parts = tuple(int(ch) for ch in key)
    except ValueError as exc:
        raise SchemaError("bad tensor index key %r" % key, location) from exc
    if len(parts) != 3:
        raise SchemaError("tensor index %r does not have three entries" % key, location)
    return parts


def parse_tensor(raw, location: str = "$") -> CubicTensor:
    _expect(isinstance(raw, dict), "expected an object", location)
    _expect("rank" in raw and "entries" in raw, "need fields 'rank' and 'entries'", location)
    rank = raw["rank"]
    _expect(isinstance(rank, int) and rank >= 0, "rank must be a nonnegative integer",
            location + ".rank")
    entries_raw = raw["entries"]
    _expect(isinstance(entries_raw, dict), "entries must be an object", location + ".entries")
    entries = {}
    for key, val in entries_raw.items():
        idx = _parse_entry_key(str(key), location + ".entries")
        _expect(isinstance(val, int) and not isinstance(val, bool),
                "entry %r must be an integer" % key, location + ".entries")
        entries[idx] = val
    try:
        return CubicTensor(rank, entries)
    except ValueError as exc:
        raise SchemaError(str(exc), location) from exc


def load_tensor(path) -> CubicTensor:
    return parse_tensor(_load_json(path))


def tensor_to_dict(tensor: CubicTensor) -> dict:
    return {
        "rank": tensor.rank,
        "entries": {_entry_key(k): v for k, v in tensor.entries.items()},
    }


def report_to_dict(report: SmoothingReport) -> dict:
    out = {
        "torsion_note": report.torsion_note,
        "hypotheses": [
            {
                "key": v.key,
                "description": v.description,
                "status": v.status,
                "note": v.note,
            }
            for v in report.hypothesis_verdicts
        ],
        "hypotheses_ok": report.hypotheses_ok,
        "h11": report.h11,
        "h12": report.h12,
        "euler": report.euler,
        "picard_rank": report.picard_rank,
        "picard_generators": [
            {"Y1": list(l1), "Y2": list(l2)} for l1, l2 in report.picard_generators
        ],
        "cubic_tensor": None
        if report.cubic_tensor is None
        else tensor_to_dict(report.cubic_tensor),
        "c2_covector": None if report.c2_covector is None else list(report.c2_covector),
        "consur_unimodular": report.consur_unimodular,
        "consur_gram": None if report.consur_gram is None else report.consur_gram.to_rows(),
    }
    return out


def dump_json(payload) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _load_json(path):
    p = Path(path)
    if not p.exists():
        raise SchemaError("file %s does not exist" % p, "$")
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError("invalid JSON: %s" % exc, str(p)) from exc

"""JSON documents: graph, configuration, scenario.  Structure via jsonschema, then
semantic checks that a schema language cannot express (symmetry, known labels)."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .errors import SchemaError

SCHEMA_VERSION = 1

_num = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
_divisor = {"type": "object", "additionalProperties": _num}
_provenance = {
    "type": "object",
    "required": ["status"],
    "properties": {"status": {"enum": ["stated", "reconstructed", "reconstructed-complete",
                                       "reconstructed-partial", "derived"]}},
}
_common = {
    "schema_version": {"const": SCHEMA_VERSION},
    "kind": {"type": "string"},
    "name": {"type": "string"},
    "provenance": _provenance,
    "notes": {"type": "array", "items": {"type": "string"}},
}

SCHEMAS = {
    "graph": {
        "type": "object",
        "required": ["schema_version", "kind", "name", "vertices", "edges", "provenance"],
        "properties": {
            **_common,
            "vertices": {"type": "array", "items": {
                "type": "object", "required": ["id", "kind"],
                "properties": {"id": {"type": "string"},
                               "kind": {"enum": ["minus2", "minus1root", "unknown"]}}}},
            "edges": {"type": "array", "items": {
                "type": "array", "minItems": 3, "maxItems": 3,
                "prefixItems": [{"type": "string"}, {"type": "string"}, {"enum": [1, 2]}]}},
            "fibration": {"type": "object"},
            "assumptions": {"type": "array"},
            "expected": {"type": "object"},
            "model": {"type": "string"},
            "exclusion": {"type": "object"},
        },
    },
    "configuration": {
        "type": "object",
        "required": ["schema_version", "kind", "name", "curves", "pairs", "provenance"],
        "properties": {
            **_common,
            "curves": {"type": "array", "items": {
                "type": "object", "required": ["name", "self", "role"],
                "properties": {"name": {"type": "string"},
                               "self": {"type": ["integer", "null"]},
                               "role": {"enum": ["boundary", "minus2", "minus1", "other"]}}}},
            "pairs": {"type": "array", "items": {
                "type": "array", "minItems": 3, "maxItems": 3,
                "prefixItems": [{"type": "string"}, {"type": "string"}, _num]}},
            "unknown_pairs": {"type": "array", "items": {
                "type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "string"}}},
            "canonical": {"oneOf": [_divisor, {"type": "null"}]},
            "ambient": {"type": "object", "required": ["basis", "diagonal"],
                        "properties": {"basis": {"type": "array", "items": {"type": "string"}},
                                       "diagonal": {"type": "array", "items": {"type": "integer"}}}},
            "classes": {"type": "object", "additionalProperties": _divisor},
            "canonical_ambient": _divisor,
            "roots": {"type": "object", "additionalProperties": _divisor},
        },
    },
    "scenario": {
        "type": "object",
        "required": ["schema_version", "kind", "name", "config-ref", "D", "integral",
                     "degIsolated", "provenance"],
        "properties": {
            **_common,
            "config-ref": {"type": "string"},
            "D": _divisor,
            "integral": {"type": "array", "items": {"type": "string"}},
            "degIsolated": {"type": "integer", "minimum": 0},
            "contraction_order": {"type": "array", "items": {"type": "string"}},
            "expected": {"type": "object"},
            "derivation": {"type": "string"},
        },
    },
}


def _where(path) -> str:
    return "/".join(str(p) for p in path) or "<root>"


def parse_number(x) -> Fraction:
    return Fraction(x) if isinstance(x, str) else Fraction(int(x))


def validate(doc: Any, source: str = "<document>") -> dict:
    """Check a decoded document; raise SchemaError naming the field at fault."""
    if not isinstance(doc, dict):
        raise SchemaError(f"{source}: top level must be an object", where="<root>")
    kind = doc.get("kind")
    if kind not in SCHEMAS:
        raise SchemaError(f"{source}: unknown document kind {kind!r}", where="kind")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"{source}: schema_version must be {SCHEMA_VERSION}, "
                          f"got {doc.get('schema_version')!r}", where="schema_version")
    try:
        jsonschema.validate(doc, SCHEMAS[kind], cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{source}: {exc.message}", where=_where(exc.absolute_path)) from None
    {"graph": _check_graph, "configuration": _check_configuration,
     "scenario": _check_scenario}[kind](doc, source)
    return doc


def _check_graph(doc, source):
    ids = [v["id"] for v in doc["vertices"]]
    seen = set()
    for i, v in enumerate(ids):
        if v in seen:
            raise SchemaError(f"{source}: duplicate vertex {v}", where=f"vertices/{i}")
        seen.add(v)
    pairs = {}
    for i, (a, b, w) in enumerate(doc["edges"]):
        for x in (a, b):
            if x not in seen:
                raise SchemaError(f"{source}: edge uses unknown vertex {x}", where=f"edges/{i}")
        if a == b:
            raise SchemaError(f"{source}: self-loop at {a}", where=f"edges/{i}")
        key = frozenset((a, b))
        if key in pairs:
            raise SchemaError(f"{source}: edge ({a}, {b}) listed twice", where=f"edges/{i}")
        pairs[key] = w


def _check_configuration(doc, source):
    names = {}
    for i, c in enumerate(doc["curves"]):
        if c["name"] in names:
            raise SchemaError(f"{source}: duplicate curve {c['name']}", where=f"curves/{i}")
        names[c["name"]] = c
        expect = {"boundary": -4, "minus2": -2, "minus1": -1}.get(c["role"])
        if expect is not None and c["self"] not in (expect, None):
            raise SchemaError(f"{source}: curve {c['name']} has role {c['role']} but "
                              f"self-intersection {c['self']}", where=f"curves/{i}/self")
    table = {}
    for i, (a, b, m) in enumerate(doc["pairs"]):
        for x in (a, b):
            if x not in names:
                raise SchemaError(f"{source}: pair names unknown curve {x}", where=f"pairs/{i}")
        m = parse_number(m)
        if a == b:
            if names[a]["self"] is not None and m != names[a]["self"]:
                raise SchemaError(f"{source}: diagonal entry ({a}, {a}) = {m} disagrees with "
                                  f"self-intersection {names[a]['self']}", where=f"pairs/{i}")
            continue
        if (b, a) in table and table[(b, a)][0] != m:
            raise SchemaError(f"{source}: asymmetric entry ({a}, {b}) = {m} but ({b}, {a}) = "
                              f"{table[(b, a)][0]} at pairs/{table[(b, a)][1]}", where=f"pairs/{i}")
        if (a, b) in table and table[(a, b)][0] != m:
            raise SchemaError(f"{source}: entry ({a}, {b}) given twice with values "
                              f"{table[(a, b)][0]} and {m}", where=f"pairs/{i}")
        table[(a, b)] = (m, i)
    for key in ("canonical",):
        for lab in (doc.get(key) or {}):
            if lab not in names:
                raise SchemaError(f"{source}: {key} names unknown curve {lab}", where=f"{key}/{lab}")
    amb = doc.get("ambient")
    if amb is not None:
        if len(amb["basis"]) != len(amb["diagonal"]):
            raise SchemaError(f"{source}: ambient basis and diagonal differ in length",
                              where="ambient")
        basis = set(amb["basis"])
        for lab, cls in (doc.get("classes") or {}).items():
            bad = set(cls) - basis
            if bad:
                raise SchemaError(f"{source}: class of {lab} uses unknown basis vectors "
                                  f"{sorted(bad)}", where=f"classes/{lab}")


def _check_scenario(doc, source):
    if not doc["config-ref"]:
        raise SchemaError(f"{source}: empty config-ref", where="config-ref")


def load_json(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read ({exc.strerror})", where="<file>") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}",
                          where=f"line {exc.lineno}") from None
    return validate(doc, str(path.name))

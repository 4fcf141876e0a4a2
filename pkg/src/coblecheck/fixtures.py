"""Bundled fixture registry: graphs, curve configurations, quotient scenarios, tables."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from .cm import Assumption, Fibration
from .dynkin import RootGraph
from .errors import SchemaError
from .lattice import DivisorClass, GramMatrix
from .quotient import DerivationScenario
from .schema import load_json, parse_number, validate
from .surface import Curve, CurveConfiguration, kodaira_fiber

FIBER_TYPES = ("I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8", "I9", "II", "III", "IV",
               "I0*", "I1*", "I2*", "I3*", "I4*", "II*", "III*", "IV*")


@dataclass(frozen=True)
class GraphFixture:
    name: str
    graph: RootGraph
    fibration: Fibration | None
    assumptions: tuple
    expected: Mapping
    provenance: Mapping
    model: str | None = None
    exclusion: Mapping | None = None
    notes: tuple = ()

    @property
    def is_variant(self) -> bool:
        return "variant_of" in self.expected


def _div(d) -> DivisorClass:
    return DivisorClass({k: parse_number(v) for k, v in (d or {}).items()})


def graph_from_doc(doc: dict) -> GraphFixture:
    g = RootGraph([v["id"] for v in doc["vertices"]], [tuple(e) for e in doc["edges"]],
                  kinds={v["id"]: v["kind"] for v in doc["vertices"]}, name=doc["name"])
    f = doc.get("fibration")
    fib = None
    if f:
        fib = Fibration(f["kind"], tuple(tuple(c) for c in f["components"]),
                        f.get("two_section"), f.get("ref", ""), f.get("anchor", ""))
    ass = tuple(Assumption(tuple(map(tuple, a["when"])), tuple(map(tuple, a["force"])),
                           a.get("ref", ""), a.get("anchor", ""))
                for a in doc.get("assumptions", []))
    return GraphFixture(doc["name"], g, fib, ass, MappingProxyType(doc.get("expected", {})),
                        MappingProxyType(doc["provenance"]), doc.get("model"),
                        doc.get("exclusion"), tuple(doc.get("notes", ())))


def config_from_doc(doc: dict) -> CurveConfiguration:
    curves = [Curve(c["name"], c["role"], c["self"]) for c in doc["curves"]]
    pairs = {(a, b): parse_number(m) for a, b, m in doc["pairs"]}
    amb = doc.get("ambient")
    kw = {}
    if amb:
        kw = dict(ambient=GramMatrix.diagonal(amb["basis"], amb["diagonal"]),
                  classes={k: _div(v) for k, v in doc["classes"].items()},
                  canonical_ambient=_div(doc["canonical_ambient"]))
    canonical = doc.get("canonical")
    try:
        return CurveConfiguration(curves, pairs, None if canonical is None else _div(canonical),
                                  unknown_pairs=[tuple(p) for p in doc.get("unknown_pairs", [])],
                                  name=doc["name"], **kw)
    except (ValueError, KeyError) as exc:
        raise SchemaError(f"{doc['name']}: {exc}", where="pairs") from None


def scenario_from_doc(doc: dict, configs: Mapping[str, CurveConfiguration]) -> DerivationScenario:
    ref = doc["config-ref"]
    if ref not in configs:
        raise SchemaError(f"{doc['name']}: config-ref {ref!r} is not a known configuration",
                          where="config-ref")
    return DerivationScenario(doc["name"], configs[ref], _div(doc["D"]), doc["integral"],
                              doc["degIsolated"], contraction_order=tuple(doc.get("contraction_order", ())),
                              provenance=dict(doc["provenance"]), expected=dict(doc.get("expected", {})))


@dataclass(frozen=True)
class Registry:
    graphs: Mapping
    configs: Mapping
    scenarios: Mapping
    tables: Mapping
    fibers: Mapping
    comparisons: Mapping
    config_docs: Mapping = field(repr=False, default=MappingProxyType({}))
    root: str = ""

    def graph(self, name: str) -> GraphFixture:
        try:
            return self.graphs[name]
        except KeyError:
            raise SchemaError(f"no graph fixture named {name!r}; known: "
                              f"{', '.join(self.graphs)}", where="graph") from None

    def table1_graphs(self) -> list[GraphFixture]:
        return [g for g in self.graphs.values() if not g.is_variant]


def _freeze(d: dict) -> Mapping:
    return MappingProxyType(dict(d))


def _data_root(path) -> Path:
    if path is not None:
        return Path(path)
    return Path(str(resources.files("coblecheck") / "data"))


def _load_dir(root: Path, sub: str) -> list[dict]:
    d = root / sub
    if not d.is_dir():
        return []
    return [load_json(p) for p in sorted(d.glob("*.json"))]


def load_registry(path: str | Path | None = None) -> Registry:
    """Load every fixture under ``path`` (default: the bundled data directory)."""
    if path is None:
        return _bundled()
    return _load(_data_root(path))


@lru_cache(maxsize=1)
def _bundled() -> Registry:
    return _load(_data_root(None))


def _load(root: Path) -> Registry:
    if not root.is_dir():
        raise SchemaError(f"fixture directory {root} does not exist", where="<fixtures>")
    graphs = {}
    for doc in _load_dir(root, "graphs"):
        if doc["kind"] != "graph":
            raise SchemaError(f"{doc['name']}: expected a graph document", where="kind")
        graphs[doc["name"]] = graph_from_doc(doc)
    config_docs, configs = {}, {}
    for doc in _load_dir(root, "configs"):
        config_docs[doc["name"]] = doc
        configs[doc["name"]] = config_from_doc(doc)
    scenarios = {}
    for doc in _load_dir(root, "scenarios"):
        scenarios[doc["name"]] = scenario_from_doc(doc, configs)
    tables, comparisons = {}, {}
    tdir = root / "tables"
    if (tdir / "extremal.json").is_file():
        tables = json.loads((tdir / "extremal.json").read_text())
    elif root != _data_root(None):
        tables = _bundled().tables
    if (tdir / "comparison.json").is_file():
        comparisons = {"I1*+I3+I2": json.loads((tdir / "comparison.json").read_text())}
    fibers = {t: kodaira_fiber(t) for t in FIBER_TYPES}
    return Registry(_freeze(graphs), _freeze(configs), _freeze(scenarios), _freeze(tables),
                    _freeze(fibers), _freeze(comparisons), _freeze(config_docs), str(root))


def load_document(path: str | Path) -> dict:
    """A single user-supplied document, validated."""
    return load_json(path)


__all__ = ["GraphFixture", "Registry", "load_registry", "load_document", "graph_from_doc",
           "config_from_doc", "scenario_from_doc", "validate", "FIBER_TYPES"]

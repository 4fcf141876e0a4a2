"""Deterministic reports: named checks with verdicts, witnesses and source anchors."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

VERDICT_TEXT = {True: "PASS", False: "FAIL", None: "UNDECIDED"}


def plain(x: Any) -> Any:
    """Convert nested values into JSON-ready ones; Fractions become ints or 'p/q'."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if isinstance(x, Mapping):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [plain(v) for v in x]
        if isinstance(x, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    if hasattr(x, "item"):          # numpy scalar
        return x.item()
    return str(x)


@dataclass
class Check:
    name: str
    verdict: bool | None
    witness: Any = None
    ref: str = ""
    anchor: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "verdict": VERDICT_TEXT[self.verdict]}
        if self.witness is not None:
            out["witness"] = plain(self.witness)
        if self.ref or self.anchor:
            out["source"] = {"ref": self.ref, "anchor": self.anchor}
        return out


@dataclass
class Section:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    provenance: dict | None = None
    lines: list = field(default_factory=list)        # free text shown in text mode

    def add(self, name, verdict, witness=None, ref="", anchor="") -> Check:
        c = Check(name, verdict, witness, ref, anchor)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        out = {"title": self.title, "checks": [c.to_json() for c in self.checks]}
        if self.data:
            out["data"] = plain(self.data)
        if self.provenance is not None:
            out["provenance"] = plain(self.provenance)
        return out


@dataclass
class Report:
    command: str
    arguments: dict
    sections: list = field(default_factory=list)
    summary: list = field(default_factory=list)       # text lines printed last
    table: dict | None = None

    @property
    def run_id(self) -> str:
        blob = json.dumps({"command": self.command, "arguments": plain(self.arguments)},
                          sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:12]

    def section(self, title: str, provenance=None) -> Section:
        s = Section(title, provenance=provenance)
        self.sections.append(s)
        return s

    def checks(self):
        for s in self.sections:
            yield from s.checks

    @property
    def failures(self) -> list:
        return [(s.title, c) for s in self.sections for c in s.checks if c.verdict is False]

    @property
    def exit_status(self) -> int:
        return 1 if self.failures else 0

    def counts(self) -> dict:
        out = {"PASS": 0, "FAIL": 0, "UNDECIDED": 0}
        for c in self.checks():
            out[VERDICT_TEXT[c.verdict]] += 1
        return out

    def to_json(self) -> dict:
        out = {"run_id": self.run_id, "command": self.command,
               "arguments": plain(self.arguments),
               "sections": [s.to_json() for s in self.sections],
               "counts": self.counts(), "exit_status": self.exit_status}
        if self.table is not None:
            out["table"] = plain(self.table)
        return out

    def render_json(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def render_text(self, verbose: bool = False) -> str:
        out = [f"coblecheck {self.command}  run {self.run_id}"]
        for s in self.sections:
            out.append("")
            out.append(f"== {s.title}")
            if verbose and s.provenance is not None:
                out.append("   provenance: " + _inline(s.provenance))
            for line in s.lines:
                out.append(f"   {line}")
            for c in s.checks:
                head = f"   {VERDICT_TEXT[c.verdict]:<9} {c.name}"
                if c.witness is not None and (verbose or c.verdict is not True):
                    head += f"  [{_inline(c.witness)}]"
                out.append(head)
                if (c.verdict is False or verbose) and (c.ref or c.anchor):
                    out.append(f"             source: {c.ref}: \"{c.anchor}\"")
        if self.summary:
            out.append("")
            out.extend(self.summary)
        k = self.counts()
        out.append("")
        out.append(f"{k['PASS']} passed, {k['FAIL']} failed, {k['UNDECIDED']} undecided; "
                   f"exit {self.exit_status}")
        return "\n".join(out) + "\n"

    def render(self, fmt: str = "text", verbose: bool = False) -> str:
        return self.render_json() if fmt == "json" else self.render_text(verbose)


def _inline(x) -> str:
    x = plain(x)
    if isinstance(x, str):
        return x
    return json.dumps(x, sort_keys=True, separators=(", ", ": "))

"""Command-line front end.

    coblecheck [--format text|json] [--verbose] [--fixtures DIR] COMMAND ...

Exit status: 0 when every executed check passed, 1 when a check failed,
2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cm import (EffectiveRoot, build_cm, boundary_count, decompose_fiber, propagate_labels,
                 roots_graph)
from .conductrix import (ConductrixProblem, simple_fiber_conductrix, solve_conductrix,
                         validate_conductrix)
from .dynkin import classify_connected, gram_rank, nondegeneracy_check, vinberg_check
from .errors import (CannotBlowUp, CobleCheckError, Inadmissible, SchemaError,
                     SearchBoundExceeded, Unsatisfiable)
from .fixtures import (GraphFixture, config_from_doc, graph_from_doc, load_document,
                       load_registry, scenario_from_doc)
from .lattice import DivisorClass, inner
from .quotient import euler_identity_check, quotient_surface
from .report import Report
from .schema import parse_number
from .surface import blowup_fiber, check_fiber_identities, normalize_type

VINBERG_RANK = 9
EXPECTED_RANK = 10


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------------
# graphs

def _model_realization(reg, model_name):
    doc = reg.config_docs[model_name]
    m = build_cm(reg.configs[model_name])
    roots = {v: DivisorClass({k: parse_number(x) for k, x in cls.items()})
             for v, cls in doc["roots"].items()}
    return m, {v: m.coordinates(r) for v, r in roots.items()}


def evaluate_graph(rep: Report, fx: GraphFixture, reg, verbose=False):
    g = fx.graph
    exp = fx.expected
    fib = fx.fibration
    ref = fib.ref if fib else fx.provenance.get("ref", "")
    sec = rep.section(f"graph {fx.name}", provenance=dict(fx.provenance))
    sec.data["vertices"] = len(g.vertices)
    rk = gram_rank(g)
    sec.add(f"Gram rank {EXPECTED_RANK}", rk == EXPECTED_RANK, {"rank": rk}, ref)
    if fx.model and fx.model in reg.configs:
        m, real = _model_realization(reg, fx.model)
        ok = nondegeneracy_check(g, m.cm_gram, real)
        sec.add(f"roots span CM(S) in model {fx.model}", ok, {"n": m.n}, ref)
        bad = [(a, b) for i, a in enumerate(g.vertices) for b in g.vertices[i:]
               if inner(real[a], real[b], m.cm_gram) != g.pairing(a, b)]
        sec.add("model reproduces every edge weight", not bad, bad or None, ref)
    t = time.perf_counter()
    v = vinberg_check(g, VINBERG_RANK)
    dt = time.perf_counter() - t
    w = {"connected_parabolics": len(v.witnesses) + len(v.counterexamples)}
    if v.counterexamples:
        w["without_completion"] = [list(c.vertices) for c in v.counterexamples]
    sec.add(f"Vinberg condition (r = {VINBERG_RANK})", v.passed, w, "Vinberg's criterion",
            "every connected parabolic subdiagram")
    if verbose:
        sec.lines.append(f"vinberg: {dt:.2f} s")
        for comp, par in sorted(v.witnesses.items(), key=lambda kv: (len(kv[0]), kv[0])):
            sec.lines.append(f"  {'-'.join(comp)} <= {' + '.join(par.types)}")
    try:
        lr = propagate_labels(g, fx.assumptions)
    except Unsatisfiable as exc:
        sec.add("label propagation", False, {"reason": str(exc), "clashes": exc.clashes}, ref)
        return None
    forced = sorted((x for x, k in lr.forced.items() if k == "minus2"), key=g.vertices.index)
    if "forced_minus2" in exp:
        sec.add("forced (-2) labels", set(forced) == set(exp["forced_minus2"]),
                {"forced": forced, "recorded": list(exp["forced_minus2"])}, ref,
                "represented by $(-2)$-curves")
    else:
        sec.data["forced_minus2"] = forced
    if "label_restrictions" in exp:
        r = exp["label_restrictions"]
        got = lr.restrictions(r["vertices"])
        sec.add(f"labelings of {len(r['vertices'])} single-edge vertices", len(got) == r["count"],
                {"count": len(got), "kinds": [sorted(set(x)) for x in got]}, ref,
                "only $(-1)$-roots or by only $(-2)$-curves")
    sec.data["labelings"] = len(lr.labelings)
    for a in fx.assumptions:
        sec.lines.append(f"assumption ({a.ref}): {a.anchor}")
    if fib is None:
        return None
    try:
        bc = boundary_count(g, lr.labelings, fib, fx.assumptions)
    except Unsatisfiable as exc:
        if fx.exclusion is not None:
            sec.add("no Halphen scenario survives (geometric exclusion)", True,
                    {"reason": str(exc)}, fx.exclusion["ref"], fx.exclusion["note"])
            sec.lines.append(f"exclusion: \"{fx.exclusion['note']}\"")
            return ()
        sec.add("boundary count", False, {"reason": str(exc)}, fib.ref, fib.anchor)
        return None
    ns = list(bc.n_values)
    if "n_set" in exp:
        sec.add("boundary count n-set", ns == list(exp["n_set"]),
                {"n": ns, "recorded": list(exp["n_set"])}, fib.ref, fib.anchor)
        if fx.exclusion is not None:
            sec.add("geometric exclusion", False, {"n": ns}, fx.exclusion["ref"],
                    fx.exclusion["note"])
    else:
        sec.data["n_set"] = ns
    for sc in bc.scenarios:
        sec.lines.append(sc.describe())
    return ns


def cmd_table1(args, reg) -> Report:
    rep = Report("table1", {"fixtures": args.fixtures or "<bundled>"})
    rows, notes = [], []
    t = time.perf_counter()
    for fx in reg.table1_graphs():
        ns = evaluate_graph(rep, fx, reg, args.verbose)
        if fx.exclusion is not None:
            notes.append(f"{fx.name}: excluded ({fx.exclusion['ref']}): "
                         f"\"{fx.exclusion['note']}\"")
            continue
        for row in fx.expected.get("rows", []):
            rows.append({"graph": fx.name, "n": row["n"], "aut": row["aut"],
                         "moduli": row["moduli"],
                         "n_derived": ns is not None and row["n"] in ns})
    elapsed = time.perf_counter() - t
    rows.sort(key=lambda r: (-r["n"], r["graph"]))
    rep.table = {"rows": rows, "notes": notes}
    lines = ["Table 1", f"  {'dual graph':<14} {'n':>3}  {'Aut':<6} {'moduli':>6}  n derived"]
    for r in rows:
        lines.append(f"  {r['graph']:<14} {r['n']:>3}  {r['aut']:<6} {r['moduli']:>6}  "
                     f"{'yes' if r['n_derived'] else 'NO'}")
    lines.append(f"  {len(rows)} surfaces over {len({r['graph'] for r in rows})} dual graphs")
    lines.extend("  " + n for n in notes)
    if args.verbose:
        lines.append(f"  elapsed {elapsed:.2f} s")
    rep.summary = lines
    return rep


def cmd_graph(args, reg) -> Report:
    rep = Report("graph", {"target": args.target})
    fx = _resolve_graph(args.target, reg)
    evaluate_graph(rep, fx, reg, args.verbose)
    exp = fx.expected.get("vinberg")
    if exp == "fail":
        rep.summary = [f"{fx.name} is recorded as a negative control; the Vinberg check is "
                       "expected to fail"]
    return rep


def _resolve_graph(target, reg) -> GraphFixture:
    p = Path(target)
    if p.suffix == ".json" or p.exists():
        doc = load_document(p)
        if doc["kind"] != "graph":
            raise SchemaError(f"{p.name}: expected a graph document, got {doc['kind']}",
                              where="kind")
        return graph_from_doc(doc)
    return reg.graph(target)


# ----------------------------------------------------------------------------
# conductrix

CONDUCTRIX_SOURCES = {
    "A^2 = -2": ("Properties of the conductrix", "we conclude $A^2 = -2$"),
    "numerically 1-connected": ("Proposition numerically connected",
                                "$A$ is numerically $1$-connected"),
}


def cmd_conductrix(args, reg) -> Report:
    try:
        t = normalize_type(args.fiber)
    except CannotBlowUp as exc:
        raise UsageError(str(exc)) from None
    kind = "quasi-elliptic" if args.quasi_elliptic else "elliptic"
    try:
        p = ConductrixProblem.make(t, multiple=args.multiple, kind=kind,
                                   two_section=args.two_section, cusp=args.cusp)
    except (Inadmissible, CannotBlowUp, ValueError) as exc:
        raise UsageError(str(exc)) from None
    rep = Report("conductrix", {"fiber": t, "multiple": args.multiple, "kind": kind,
                                "two_section": args.two_section, "cusp": p.cusp,
                                "slack": args.slack})
    sec = rep.section(f"conductrix of {p.describe()}",
                      provenance={"status": "derived", "method": "exhaustive search with "
                                  f"coefficients up to m + {args.slack}"})
    try:
        res = solve_conductrix(p, slack=args.slack)
    except SearchBoundExceeded as exc:
        sec.add("search bound not reached", False, {"reason": str(exc)}, "Properties of the conductrix",
                "we list up the possibilities of the conductrices")
        rep.summary = [f"rerun with --slack {args.slack + 1} to widen the search"]
        return rep
    sec.data.update({"searched": res.searched, "candidates": res.candidates,
                     "solutions": [s.conductrix.pretty() for s in res.solutions]})
    sec.add("search bound not reached", True, {"searched": res.searched})
    host = p.host()
    if not res.solutions:
        sec.lines.append("A = 0 (no conductrix)")
    for i, s in enumerate(res.solutions, 1):
        a = s.conductrix
        sec.lines.append(f"A{i} = {a.pretty()}  ({s.status})")
        v = validate_conductrix(a, p, host)
        vals = {"A^2 = -2": v.A_squared, "A.K = 0": v.A_dot_K}
        for name, ok in v.items():
            ref, anchor = CONDUCTRIX_SOURCES.get(name, ("Properties of the conductrix", ""))
            sec.add(f"A{i}: {name}", ok, vals.get(name), ref, anchor)
        if args.verbose:
            sec.lines.extend(f"    {line}" for line in s.trace)
    if args.verbose and res.rejected:
        sec.lines.append("rejected candidates:")
        for text, why in sorted(res.rejected.items()):
            sec.lines.append(f"    {text}: {why}")
    if not p.multiple and not p.quasi:
        want = simple_fiber_conductrix(p.fiber)
        got = [a.divisor for a in res.conductrices]
        expect = [] if want.is_zero else [want.divisor]
        sec.add("agrees with the floor(m/2) formula", got == expect,
                {"formula": want.pretty()}, "Theorem ellipticsimple",
                "[m_i/2]")
    return rep


# ----------------------------------------------------------------------------
# quotient

def cmd_quotient(args, reg) -> Report:
    configs = dict(reg.configs)
    scenarios = []
    loaded = []
    for target in args.targets or list(reg.scenarios):
        p = Path(target)
        if p.suffix == ".json" or p.exists():
            doc = load_document(p)
            loaded.append(doc)
            if doc["kind"] == "configuration":
                configs[doc["name"]] = config_from_doc(doc)
        elif target in reg.scenarios:
            scenarios.append(reg.scenarios[target])
        else:
            raise UsageError(f"no scenario named {target!r}; known: {', '.join(reg.scenarios)}")
    for doc in loaded:
        if doc["kind"] == "scenario":
            scenarios.append(scenario_from_doc(doc, configs))
        elif doc["kind"] == "graph":
            raise UsageError(f"{doc['name']}: quotient takes scenario or configuration documents")
    rep = Report("quotient", {"targets": list(args.targets)})
    for doc in loaded:
        if doc["kind"] == "configuration" and not any(s.host.name == doc["name"] for s in scenarios):
            sec = rep.section(f"configuration {doc['name']}", provenance=doc["provenance"])
            sec.add("document validates", True, {"curves": len(doc["curves"])})
    for s in scenarios:
        _quotient_section(rep, s)
    return rep


def _quotient_section(rep, s):
    exp = s.expected
    ref = s.provenance.get("ref", "")
    sec = rep.section(f"scenario {s.name}", provenance=dict(s.provenance))
    q = quotient_surface(s)
    e = euler_identity_check(s)
    sec.data.update({"pullback_K": q.pullback_K.pretty(), "two_K": q.two_K_before.pretty(),
                     "contracted": q.contracted, "two_K_after": q.two_K_quotient.pretty(),
                     "boundary": q.boundary, "n": q.n})
    sec.lines += [f"pi^*K' = {q.pullback_K.pretty()}",
                  f"2K' = {q.two_K_before.pretty()}",
                  f"contract {', '.join(q.contracted) or 'nothing'}; 2K = {q.two_K_quotient.pretty()}",
                  f"boundary {', '.join(q.boundary)}; n = {q.n}"]
    if "two_K" in exp:
        want = DivisorClass({k: parse_number(v) for k, v in exp["two_K"].items()})
        sec.add("2K' on the quotient", q.two_K_before == want, {"recorded": want.pretty()}, ref,
                "2K_{Y^D}")
    if "boundary" in exp:
        sec.add("boundary curves", q.boundary == list(exp["boundary"]),
                {"recorded": exp["boundary"]}, ref, "boundary")
    if "n" in exp:
        sec.add("n = number of boundary curves", q.n == exp["n"], {"n": q.n}, ref)
    for key, val, label in (("D_squared", e.D_squared, "(D)^2"), ("K_dot_D", e.K_dot_D, "K.(D)")):
        if key not in exp:
            continue
        if val is None:
            sec.add(f"{label} = {exp[key]}", None, {"reason": "host pairings unknown"}, ref,
                    "(D)^2 = -12")
        else:
            sec.add(f"{label} = {exp[key]}", val == exp[key], {"computed": val}, ref, "(D)^2 = -12")
    sec.add("Euler identity c2(Y) = deg<D> - K.(D) - (D)^2", e.passed,
            None if e.passed is None and not e.detail else
            ({"c2": e.c2_computed, "expected": e.c2_expected} if e.passed is not None
             else {"reason": e.detail}), "formula euler", "c_2(Y)")
    for name, ok in q.checks.items():
        sec.add(f"quotient: {name}", ok, None, ref)
    sec.lines.extend(f"note: {n}" for n in q.notes)


# ----------------------------------------------------------------------------
# fiber check

BLOWUP_TYPES = ("In", "II", "III", "IV")
IN_RANGE = range(2, 10)
RECORDED_G = {"II": {"E": 1}, "III": {"E1": 1, "E2": 2},
              "IV": {"B4": 1, "E1": 2, "E2": 2, "E3": 2}}


def _recorded_G(t):
    if t in RECORDED_G:
        return DivisorClass(RECORDED_G[t])
    n = 1 if t == "I1" else int(t[1:])
    return DivisorClass({f"E{i}": 1 for i in range(1, n + 1)})


def _fiber_checks(sec, t, verbose):
    h = blowup_fiber(t)
    c = h.result
    tag = f"{t}: " if sec.title.startswith("I_n") else ""
    r = check_fiber_identities(c, h.fiber)
    sec.add(f"{tag}F^2 = 0", r.F_squared == 0, {"F^2": r.F_squared}, "Remark HalphenBlowUp")
    sec.add(f"{tag}F.K = 0", r.F_dot_K == 0, {"F.K": r.F_dot_K}, "Remark HalphenBlowUp")
    bad = [x for x in c.labels if c.intersect(h.fiber, {x: 1}) != 0]
    sec.add(f"{tag}F.C = 0 for every curve", not bad, bad or None, "Remark HalphenBlowUp")
    sec.add(f"{tag}F = reduced boundary + 2G", h.fiber == h.reduced_boundary + 2 * h.G,
            {"F": h.fiber.pretty(), "G": h.G.pretty()}, "Remark G_0,G", "we write up $G$")
    sec.add(f"{tag}G matches the recorded form", h.G == _recorded_G(t), None, "Remark G_0,G",
            "we write up $G$")
    if verbose:
        sec.lines.append(f"{t}: F = {h.fiber.pretty()}, G = {h.G.pretty()}")
    if t in ("II", "I1"):
        sec.lines.append(f"{t}: irreducible before blow-up; no root decomposition")
        return
    try:
        parts = decompose_fiber(h)
    except CobleCheckError as exc:
        sec.add(f"{tag}root decomposition", False, {"reason": str(exc)}, "Remark two-double")
        return
    g = roots_graph(parts, c)
    cl = classify_connected(g, g.vertices)
    kinds = {k: sum(1 for r, _ in parts if r.kind == k) for k in ("minus1root", "minus2root")}
    if t == "III":
        want_type, want_kinds = "A~1", {"minus1root": 1, "minus2root": 1}
    elif t == "IV":
        want_type, want_kinds = "A~2", {"minus1root": 3, "minus2root": 0}
    else:
        n = int(t[1:])
        want_type, want_kinds = f"A~{n - 1}", {"minus1root": n, "minus2root": 0}
    total = DivisorClass()
    for root, k in parts:
        total = total + k * root.cls
    sec.add(f"{tag}root decomposition is coefficient-exact", total == h.fiber,
            {"F": " + ".join(f"{k}({r.cls.pretty()})" if k != 1 else f"({r.cls.pretty()})"
                             for r, k in parts)}, "Remark two-double", "sum of $n$ $(-1)$-roots")
    sec.add(f"{tag}roots form {want_type}", cl.type == want_type and kinds == want_kinds,
            {"type": cl.type, **kinds}, "Remark two-double",
            "forming a dual graph of type $\\tilde{A}_{n-1}$")


def cmd_fiber_check(args, reg) -> Report:
    targets = args.types or list(BLOWUP_TYPES)
    rep = Report("fiber-check", {"types": targets})
    for t in targets:
        if t in ("In", "I_n"):
            sec = rep.section("I_n (n = 2..9)", provenance={"status": "derived",
                              "method": "explicit blow-up of the plane model of the fiber"})
            for n in IN_RANGE:
                _fiber_checks(sec, f"I{n}", args.verbose)
            continue
        try:
            nt = normalize_type(t)
            blowup_fiber(nt)
        except CannotBlowUp as exc:
            raise UsageError(str(exc)) from None
        sec = rep.section(nt, provenance={"status": "derived",
                          "method": "explicit blow-up of the plane model of the fiber"})
        _fiber_checks(sec, nt, args.verbose)
    n_ok = sum(1 for s in rep.sections if all(c.verdict is not False for c in s.checks))
    rep.summary = [f"{n_ok}/{len(rep.sections)} blow-up types pass"]
    return rep


# ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--fixtures", metavar="DIR", default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="coblecheck", parents=[common],
                                 description="Exact checks for Coble surfaces with finite "
                                             "automorphism group.")
    ap.add_argument("--version", action="version", version=f"coblecheck {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("table1", parents=[common], help="reproduce the classification table")
    g = sub.add_parser("graph", parents=[common], help="check one dual graph")
    g.add_argument("target", help="bundled graph name or a graph JSON file")
    c = sub.add_parser("conductrix", parents=[common], help="solve for the conductrix of a fiber")
    c.add_argument("fiber", help="Kodaira type, e.g. II*, I1*, IV")
    m = c.add_mutually_exclusive_group()
    m.add_argument("--simple", dest="multiple", action="store_false")
    m.add_argument("--multiple", dest="multiple", action="store_true")
    c.set_defaults(multiple=False)
    c.add_argument("--quasi-elliptic", action="store_true")
    c.add_argument("--two-section", metavar="LABEL")
    c.add_argument("--cusp", metavar="LABEL", help="component met by the curve of cusps, or 'tangent'")
    c.add_argument("--slack", type=int, default=1, help="coefficient bound is m + SLACK")
    q = sub.add_parser("quotient", parents=[common], help="quotient by a derivation")
    q.add_argument("targets", nargs="*", help="bundled scenario names or JSON documents")
    f = sub.add_parser("fiber-check", parents=[common], help="blown-up fiber identities")
    f.add_argument("types", nargs="*", help="In, II, III, IV or a specific I_n such as I5")
    return ap


COMMANDS = {"table1": cmd_table1, "graph": cmd_graph, "conductrix": cmd_conductrix,
            "quotient": cmd_quotient, "fiber-check": cmd_fiber_check}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    args.format = getattr(args, "format", "text")
    args.verbose = getattr(args, "verbose", False)
    args.fixtures = getattr(args, "fixtures", None)
    if args.command == "conductrix" and args.slack < 0:
        ap.error("--slack must be non-negative")
    try:
        reg = load_registry(args.fixtures)
        rep = COMMANDS[args.command](args, reg)
    except (SchemaError, UsageError) as exc:
        print(f"coblecheck: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.render(args.format, args.verbose))
    for title, c in rep.failures:
        print(f"coblecheck: check failed: {title}: {c.name}", file=sys.stderr)
    return rep.exit_status


if __name__ == "__main__":
    sys.exit(main())
